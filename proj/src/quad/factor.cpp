#include "quad/factor.hpp"

#include <algorithm>
#include <set>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ff/json_codec.hpp"
#include "ff/matrix.hpp"
#include "ff/space.hpp"
#include "util/error.hpp"
#include "util/parallel.hpp"
#include "util/rng.hpp"

namespace vc2::quad {

using ff::Matrix;

void validate_factor(const QuadraticFactor& f, const HighRankBasis& basis) {
  const std::size_t n = basis.n();
  for (const auto& v : f.linear) require(v.field() == basis.field() && v.size() == n, "linear form has the wrong shape");
  require(ff::rank(f.linear, n) == f.linear.size(), "linear forms are not independent");
  std::set<std::size_t> seen;
  for (std::size_t t : f.quad) {
    require(t >= 1 && t <= basis.size(), "quadratic index out of range");
    require(seen.insert(t).second, "quadratic indices must be distinct");
  }
}

QuadraticFactor random_factor(const HighRankBasis& basis, std::size_t l, std::size_t q, std::uint64_t seed) {
  const std::size_t n = basis.n();
  require(l <= n, "more linear forms than the dimension");
  require(q <= basis.size(), "more quadratic forms than basis matrices");
  Rng rng = Rng::derive(seed, "random-factor");
  QuadraticFactor f;
  while (f.linear.size() < l) {
    Vector v(basis.field(), n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, static_cast<std::int64_t>(rng.below(basis.field().p())));
    f.linear.push_back(v);
    if (ff::rank(f.linear, n) != f.linear.size()) f.linear.pop_back();
  }
  for (std::size_t t = 1; t <= q; ++t) f.quad.push_back(t);
  return f;
}

AtomLabel atom_label(const QuadraticFactor& f, const HighRankBasis& basis, const Vector& x) {
  AtomLabel out;
  out.reserve(f.complexity());
  for (const auto& v : f.linear) out.push_back(ff::dot(v, x));
  for (std::size_t t : f.quad) out.push_back(ff::bilinear(x, basis.mat(t), x));
  return out;
}

namespace {

/// Q_t restricted to z = base + N u, u in F_p^d:
/// Q_t = u^T R u + g^T u + c.
struct RestrictedForm {
  std::vector<Residue> r;  // d x d, row-major, symmetric
  std::vector<Residue> g;
  Residue c;
};

RestrictedForm restrict_form(const Matrix& m, const Vector& base, const std::vector<Vector>& null_basis) {
  const Field& fld = m.field();
  const std::size_t d = null_basis.size();
  std::vector<Vector> mn;
  mn.reserve(d);
  for (const auto& v : null_basis) mn.push_back(m.apply(v));
  RestrictedForm out{std::vector<Residue>(d * d), std::vector<Residue>(d), ff::bilinear(base, m, base)};
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) out.r[a * d + b] = ff::dot(null_basis[a], mn[b]);
    out.g[a] = fld.mul(2, ff::dot(base, mn[a]));
  }
  return out;
}

Residue eval_restricted(const Field& fld, const RestrictedForm& q, const std::vector<Residue>& u) {
  const std::size_t d = u.size();
  std::uint64_t acc = q.c;
  const std::uint64_t p = fld.p();
  for (std::size_t a = 0; a < d; ++a) {
    if (u[a] == 0) continue;
    std::uint64_t row = q.g[a];
    const Residue* ra = q.r.data() + a * d;
    for (std::size_t b = 0; b < d; ++b) row += static_cast<std::uint64_t>(ra[b]) * u[b] % p;
    acc += row % p * u[a];
    acc %= p;
  }
  return static_cast<Residue>(acc % p);
}

}  // namespace

Vector find_in_atom(const QuadraticFactor& f, const HighRankBasis& basis, const AtomLabel& c, std::uint64_t seed) {
  const Field& fld = basis.field();
  const std::size_t n = basis.n();
  validate_factor(f, basis);
  require(c.size() == f.complexity(), "label length must equal the factor complexity");
  if (2 * f.complexity() >= n)
    fail(ErrorCode::invalid_argument, "nonemptiness not guaranteed: complexity " + std::to_string(f.complexity()) +
                                          " is not below n/2 = " + std::to_string(n) + "/2");
  for (Residue v : c) require(v < fld.p(), "label entry out of range");

  const std::size_t l = f.linear.size();
  const Matrix a = Matrix::from_row_vectors(fld, f.linear, n);
  const Vector rhs(fld, std::vector<Residue>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(l)));
  const auto sol = ff::solve_affine(a, rhs);
  if (!sol) fail(ErrorCode::internal, "independent linear forms gave an inconsistent system");

  std::vector<RestrictedForm> forms;
  for (std::size_t t : f.quad) forms.push_back(restrict_form(basis.mat(t), sol->particular, sol->null_basis));
  const std::size_t d = sol->dimension();
  const std::uint32_t p = fld.p();

  auto matches = [&](const std::vector<Residue>& u) {
    for (std::size_t i = 0; i < forms.size(); ++i)
      if (eval_restricted(fld, forms[i], u) != c[l + i]) return false;
    return true;
  };
  auto point = [&](const std::vector<Residue>& u) {
    Vector z = sol->particular;
    for (std::size_t i = 0; i < d; ++i)
      if (u[i] != 0) z.add_scaled(u[i], sol->null_basis[i]);
    return z;
  };

  std::vector<Residue> u(d, 0);
  if (d <= kExhaustiveAtomDim) {
    for (;;) {
      if (matches(u)) return point(u);
      std::size_t i = d;
      while (i > 0 && u[i - 1] == p - 1) u[--i] = 0;
      if (i == 0) break;
      ++u[i - 1];
    }
    fail(ErrorCode::internal, "atom is empty despite the complexity bound");
  }

  Rng rng = Rng::derive(seed, "find-in-atom");
  for (std::uint64_t draw = 0; draw < kAtomSampleBudget; ++draw) {
    for (auto& x : u) x = static_cast<Residue>(rng.below(p));
    if (matches(u)) return point(u);
  }
  fail(ErrorCode::budget_exhausted,
       "no point found in the atom after " + std::to_string(kAtomSampleBudget) + " samples");
}

std::map<AtomLabel, std::uint64_t> atom_census(const QuadraticFactor& f, const HighRankBasis& basis, unsigned threads) {
  validate_factor(f, basis);
  const ff::Space space(basis.field(), basis.n(), kCensusLimit);
  const std::size_t dlen = f.complexity();
  const ff::Space labels(basis.field(), dlen, kCensusLimit);

  constexpr std::size_t kChunks = 64;
  const std::uint64_t total = space.size();
  const std::uint64_t per = (total + kChunks - 1) / kChunks;
  std::vector<std::vector<std::uint64_t>> counts(kChunks);
  parallel_for(kChunks, resolve_threads(threads), [&](std::size_t ch) {
    auto& cnt = counts[ch];
    cnt.assign(labels.size(), 0);
    const std::uint64_t end = std::min(total, (ch + 1) * per);
    for (std::uint64_t i = ch * per; i < end; ++i) {
      const AtomLabel lab = atom_label(f, basis, space.at(i));
      ++cnt[labels.index_of(Vector(basis.field(), lab))];
    }
  });

  std::map<AtomLabel, std::uint64_t> out;
  for (std::uint64_t li = 0; li < labels.size(); ++li) {
    std::uint64_t s = 0;
    for (const auto& cnt : counts) s += cnt[li];
    const Vector lab = labels.at(li);
    out.emplace(AtomLabel(lab.coords().begin(), lab.coords().end()), s);
  }
  return out;
}

AtomBoundCheck check_atom_bound(const std::map<AtomLabel, std::uint64_t>& census, const Field& field, std::size_t n,
                                std::size_t complexity, std::size_t r) {
  using boost::multiprecision::cpp_int;
  const cpp_int p = field.p();
  const cpp_int pd = boost::multiprecision::pow(p, static_cast<unsigned>(complexity));
  const cpp_int pn = boost::multiprecision::pow(p, static_cast<unsigned>(n));
  require(2 * n + 2 * complexity >= r, "rank parameter too large");
  const cpp_int rhs = boost::multiprecision::pow(p, static_cast<unsigned>(2 * n + 2 * complexity - r));

  AtomBoundCheck out;
  out.atoms = census.size();
  bool first = true;
  for (const auto& [label, size] : census) {
    if (first || size < out.min_size) out.min_size = size;
    if (first || size > out.max_size) out.max_size = size;
    first = false;
    const cpp_int dev = cpp_int(size) * pd - pn;
    if (dev * dev > rhs) {
      out.passed = false;
      if (!out.violator) out.violator = label;
    }
  }
  return out;
}

nlohmann::json factor_to_json(const QuadraticFactor& f) {
  nlohmann::json lin = nlohmann::json::array();
  for (const auto& v : f.linear) lin.push_back(ff::coords_json(v));
  return {{"linear", lin}, {"quad", f.quad}};
}

QuadraticFactor factor_from_json(const Field& field, std::size_t n, const nlohmann::json& j) {
  QuadraticFactor f;
  for (const auto& c : j.at("linear")) f.linear.push_back(ff::vector_from_coords(field, c, n));
  f.quad = j.at("quad").get<std::vector<std::size_t>>();
  return f;
}

}  // namespace vc2::quad
