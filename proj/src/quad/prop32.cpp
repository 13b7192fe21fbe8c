#include "quad/prop32.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ff/matrix.hpp"
#include "ff/space.hpp"
#include "util/error.hpp"
#include "util/parallel.hpp"
#include "util/rng.hpp"

namespace vc2::quad {

namespace {

constexpr std::uint64_t kScanLimit = 1'000'000;

[[noreturn]] void inapplicable(const std::string& why) { fail(ErrorCode::invalid_argument, "inapplicable: " + why); }

void check_grid(const QgsSet& a, const std::vector<Vector>& x, const std::vector<Vector>& y, std::size_t m) {
  if (x.size() != 4 || y.size() != 4) inapplicable("X and Y need 4 points each");
  for (const auto* pts : {&x, &y})
    for (const auto& v : *pts)
      if (!(v.field() == a.field()) || v.size() != a.dimension()) inapplicable("point of the wrong shape");
  if (!x[0].is_zero() || !y[0].is_zero()) inapplicable("x_0 and y_0 must be 0");
  if (m < 1 || m > a.basis().size()) inapplicable("level m out of range");
  for (std::size_t t = 1; t < m; ++t)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (a.cross_term(t, x[i], y[j]) != 0)
          inapplicable("cross-term at t=" + std::to_string(t) + ", (" + std::to_string(i) + "," + std::to_string(j) +
                       ") is nonzero");
}

std::optional<Residue> constant_mu(const QgsSet& a, const std::vector<Vector>& x, const std::vector<Vector>& y,
                                   std::size_t m) {
  const Residue mu = a.cross_term(m, x[1], y[1]);
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t j = 1; j < 4; ++j)
      if (a.cross_term(m, x[i], y[j]) != mu) return std::nullopt;
  return mu;
}

/// Membership bitmap of the whole group, for index-arithmetic scans.
struct Table {
  ff::Space space;
  std::vector<std::uint8_t> member;
};

Table make_table(const QgsSet& a) {
  Table t{ff::Space(a.field(), a.dimension(), kScanLimit), {}};
  t.member.resize(t.space.size());
  for (std::uint64_t i = 0; i < t.space.size(); ++i) t.member[i] = a.contains(t.space.at(i)) ? 1 : 0;
  return t;
}

/// Indices of every z realising prop32_phi (either value at (0,0)).
std::vector<std::uint64_t> realizing(const Table& t, const std::vector<Vector>& x, const std::vector<Vector>& y) {
  const ContainmentMap phi = prop32_phi();
  std::vector<std::uint64_t> cell(16);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) cell[i * 4 + j] = t.space.index_of(x[i] + y[j]);
  std::vector<std::uint64_t> out;
  for (std::uint64_t z = 0; z < t.space.size(); ++z) {
    bool ok = true;
    for (std::size_t c = 1; c < 16 && ok; ++c)
      ok = (t.member[t.space.add(cell[c], z)] != 0) == phi.at(c / 4, c % 4);
    if (ok) out.push_back(z);
  }
  return out;
}

}  // namespace

ContainmentMap prop32_phi() {
  ContainmentMap phi(4, 0, 0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != 0 || j != 0) phi.set(i, j, true);
  const std::initializer_list<std::pair<std::size_t, std::size_t>> complement{{0, 1}, {0, 2}, {1, 0},
                                                                              {2, 0}, {2, 3}, {3, 2}};
  for (auto [i, j] : complement) phi.set(i, j, false);
  return phi;
}

Prop32Result check_prop32_conclusion(const QgsSet& a, const std::vector<Vector>& x, const std::vector<Vector>& y,
                                     std::size_t m, const Vector& z) {
  check_grid(a, x, y, m);
  if (!shatter::vc2_realizes(a, x, y, prop32_phi(), z)) inapplicable("z does not realise the map");

  Prop32Result r;
  auto require_zero = [&](std::size_t t, const Vector& v, const std::string& what) {
    if (r.passed && a.eval_q(t, v) != 0) {
      r.passed = false;
      r.detail = "Q_" + std::to_string(t) + "(" + what + ") != 0";
    }
  };
  auto level = [&](std::size_t t) {
    for (std::size_t i = 1; i < 4; ++i) require_zero(t, x[i] + z, "x_" + std::to_string(i) + "+z");
    for (std::size_t j = 1; j < 4; ++j) require_zero(t, y[j] + z, "y_" + std::to_string(j) + "+z");
  };
  for (std::size_t t = 1; t < m; ++t) {
    require_zero(t, z, "z");
    level(t);
  }

  r.mu = constant_mu(a, x, y, m);
  if (r.mu) {
    r.level_m_checked = true;
    level(m);
    if (r.passed && a.eval_q(m, z) != *r.mu) {
      r.passed = false;
      r.detail = "Q_" + std::to_string(m) + "(z) differs from the constant cross-term";
    }
  }
  return r;
}

Prop32InstanceReport run_prop32_instance(const QgsSet& a, const Prop32Instance& inst) {
  check_grid(a, inst.x, inst.y, inst.m);
  const Table t = make_table(a);
  Prop32InstanceReport rep;
  rep.m = inst.m;
  rep.constant_mu = constant_mu(a, inst.x, inst.y, inst.m);
  for (std::uint64_t zi : realizing(t, inst.x, inst.y)) {
    const Vector z = t.space.at(zi);
    ++rep.realizing_z;
    (t.member[zi] ? rep.realized_with_a : rep.realized_with_ac) = true;
    const Prop32Result r = check_prop32_conclusion(a, inst.x, inst.y, inst.m, z);
    if (!r.passed && rep.passed) {
      rep.passed = false;
      rep.detail = r.detail;
    }
  }
  if (rep.passed && rep.constant_mu && *rep.constant_mu != 0 && rep.realized_with_a && rep.realized_with_ac) {
    rep.passed = false;
    rep.detail = "constant cross-term is nonzero although both values of phi(0,0) are realised";
  }
  return rep;
}

std::vector<Prop32Instance> prop32_instances(const QgsSet& a, std::size_t count, std::uint64_t seed,
                                             std::size_t tries) {
  const Field& f = a.field();
  const std::size_t n = a.dimension();
  const Table table = make_table(a);
  const Residue half = f.inverse(2);
  std::vector<Prop32Instance> out;
  for (std::size_t idx = 0; idx < count; ++idx) {
    Rng rng = Rng::derive(seed, "prop32-instance", idx);
    const bool forced = idx % 3 == 2;
    const std::size_t m = forced ? 1 : 1 + idx % 2;
    std::optional<Prop32Instance> fallback;
    for (std::size_t attempt = 0; attempt < tries; ++attempt) {
      auto rand_vec = [&] {
        Vector v(f, n);
        for (std::size_t i = 0; i < n; ++i) v.set(i, static_cast<std::int64_t>(rng.below(f.p())));
        return v;
      };
      std::vector<Vector> x{Vector(f, n)};
      while (x.size() < 4) {
        Vector v = rand_vec();
        if (!v.is_zero() && std::find(x.begin(), x.end(), v) == x.end()) x.push_back(std::move(v));
      }
      // y must satisfy x_i^T M_t y = 0 for t < m, and, for forced
      // instances, x_i^T M_m y = c / 2 for a random c.
      std::vector<Vector> rows;
      std::vector<Residue> rhs;
      for (std::size_t t = 1; t < m; ++t)
        for (std::size_t i = 1; i < 4; ++i) {
          rows.push_back(a.basis().mat(t).apply(x[i]));
          rhs.push_back(0);
        }
      if (forced) {
        const Residue c = static_cast<Residue>(rng.below(f.p()));
        for (std::size_t i = 1; i < 4; ++i) {
          rows.push_back(a.basis().mat(m).apply(x[i]));
          rhs.push_back(f.mul(c, half));
        }
      }
      std::vector<Vector> y{Vector(f, n)};
      if (rows.empty()) {
        while (y.size() < 4) {
          Vector v = rand_vec();
          if (!v.is_zero() && std::find(y.begin(), y.end(), v) == y.end()) y.push_back(std::move(v));
        }
      } else {
        const auto sol = ff::solve_affine(ff::Matrix::from_row_vectors(f, rows, n), Vector(f, rhs));
        if (!sol) continue;
        std::uint64_t size = 1;
        for (std::size_t d = 0; d < sol->dimension(); ++d) size *= f.p();
        if (size < 4) continue;
        for (int draw = 0; draw < 64 && y.size() < 4; ++draw) {
          Vector v = sol->particular;
          for (const auto& b : sol->null_basis) v.add_scaled(static_cast<Residue>(rng.below(f.p())), b);
          if (!v.is_zero() && std::find(y.begin(), y.end(), v) == y.end()) y.push_back(std::move(v));
        }
        if (y.size() < 4) continue;
      }
      Prop32Instance inst{std::move(x), std::move(y), m};
      if (!realizing(table, inst.x, inst.y).empty()) {
        fallback = std::move(inst);
        break;
      }
      if (!fallback) fallback = std::move(inst);
    }
    if (!fallback) fail(ErrorCode::internal, "could not generate a qualifying instance");
    out.push_back(std::move(*fallback));
  }
  return out;
}

Prop32SuiteReport run_prop32_suite(const QgsSet& a, std::size_t count, std::uint64_t seed, unsigned threads) {
  const auto instances = prop32_instances(a, count, seed);
  Prop32SuiteReport rep;
  rep.instances.resize(instances.size());
  parallel_for(instances.size(), resolve_threads(threads),
               [&](std::size_t i) { rep.instances[i] = run_prop32_instance(a, instances[i]); });
  for (const auto& r : rep.instances) {
    rep.passed = rep.passed && r.passed;
    rep.checked_z += r.realizing_z;
    if (r.vacuous()) ++rep.vacuous;
  }
  return rep;
}

bool lemma33_range_holds(const ff::Field& field, const std::vector<Residue>& mus) {
  const std::uint32_t p = field.p();
  const std::set<Residue> allowed{0, 1, 2 % p, p - 1, p - 2};
  for (Residue v : mus)
    if (!allowed.count(v % p)) return false;
  return true;
}

std::vector<Residue> lemma33_mus(const QgsSet& a, const shatter::QuadShatterCertificate& cert, std::size_t m) {
  const std::size_t side = cert.x.size();
  if (side < 2 || cert.y.size() != side) fail(ErrorCode::invalid_argument, "hypotheses unverifiable: bad grid");
  if (!(cert.field == a.field()) || cert.n != a.dimension())
    fail(ErrorCode::invalid_argument, "hypotheses unverifiable: certificate is for another group");
  if (m < 1 || m > a.basis().size()) fail(ErrorCode::invalid_argument, "level m out of range");
  const std::uint64_t maps = ContainmentMap::count(side);
  if (cert.witnesses.size() != maps)
    fail(ErrorCode::invalid_argument, "hypotheses unverifiable: certificate does not cover every map");
  std::vector<bool> seen(maps, false);
  for (const auto& [phi, z] : cert.witnesses) {
    if (phi.side() != side || seen[phi.bits()] || !shatter::vc2_realizes(a, cert.x, cert.y, phi, z))
      fail(ErrorCode::invalid_argument, "hypotheses unverifiable: certificate witness does not check");
    seen[phi.bits()] = true;
  }
  for (std::size_t t = 1; t < m; ++t)
    for (const auto& xi : cert.x)
      for (const auto& yj : cert.y)
        if (a.cross_term(t, xi, yj) != 0)
          fail(ErrorCode::invalid_argument, "hypotheses unverifiable: cross-terms do not vanish below m");
  std::vector<Residue> mus;
  for (std::size_t i = 1; i < side; ++i)
    for (std::size_t j = 1; j < side; ++j) mus.push_back(a.cross_term(m, cert.x[i], cert.y[j]));
  return mus;
}

bool check_lemma33_range(const QgsSet& a, const shatter::QuadShatterCertificate& cert, std::size_t m) {
  return lemma33_range_holds(a.field(), lemma33_mus(a, cert, m));
}

}  // namespace vc2::quad
