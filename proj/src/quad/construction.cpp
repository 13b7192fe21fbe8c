#include "quad/construction.hpp"

#include <string>

#include "ff/json_codec.hpp"
#include "ff/matrix.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

namespace vc2::quad {

namespace {

constexpr int kMaxAttempts = 256;

Vector random_vector(Rng& rng, const Field& field, std::size_t n) {
  Vector v(field, n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, static_cast<std::int64_t>(rng.below(field.p())));
  return v;
}

Vector random_combination(Rng& rng, const Field& field, const std::vector<Vector>& basis, std::size_t n) {
  Vector v(field, n);
  for (const auto& b : basis) v.add_scaled(static_cast<Residue>(rng.below(field.p())), b);
  return v;
}

std::vector<Vector> linear_forms(const HighRankBasis& basis, std::size_t k, const std::vector<Vector>& x,
                                 const std::vector<Vector>& y) {
  std::vector<Vector> out;
  for (const auto* pts : {&x, &y})
    for (std::size_t j = 1; j < pts->size(); ++j)
      for (std::size_t i = 1; i <= k; ++i) out.push_back(basis.mat(i).apply((*pts)[j]).scaled(2));
  return out;
}

std::size_t expected_linear_count(std::size_t k) { return 2 * k * (k - 1); }

[[noreturn]] void broken(const std::string& what) { fail(ErrorCode::verification_failed, "construction invalid: " + what); }

}  // namespace

std::size_t min_dimension(std::size_t k) { return 2 * (expected_linear_count(k) + k) + 1; }

ShatterPairConstruction construct_shatter_pair(std::shared_ptr<const HighRankBasis> basis, std::size_t k,
                                               std::uint64_t seed) {
  require(basis != nullptr, "missing basis");
  require(k == 2 || k == 3, "constructions exist for k = 2 and k = 3");
  const Field& field = basis->field();
  const std::size_t n = basis->n();
  require(basis->size() >= k, "basis has too few matrices");
  require(n >= min_dimension(k), "the k = " + std::to_string(k) + " construction needs n >= " +
                                     std::to_string(min_dimension(k)));

  Rng rng = Rng::derive(seed, "construction");
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Vector> x{Vector(field, n)};
    for (std::size_t j = 1; j < k; ++j) x.push_back(random_vector(rng, field, n));
    if (ff::rank({x.begin() + 1, x.end()}, n) != k - 1) continue;

    std::vector<Vector> mx;
    for (std::size_t j = 1; j < k; ++j)
      for (std::size_t i = 1; i <= k; ++i) mx.push_back(basis->mat(i).apply(x[j]));
    const auto h_x = ff::orth_complement(field, mx, n);

    // y in M_i^{-1} H_x  <=>  M_i y orthogonal to every M_i' x_j
    //                    <=>  y orthogonal to M_i M_i' x_j (M_i symmetric).
    std::vector<Vector> constraints = mx;
    for (const auto& v : mx)
      for (std::size_t i = 1; i <= k; ++i) constraints.push_back(basis->mat(i).apply(v));
    const auto h_star = ff::orth_complement(field, constraints, n);
    if (h_star.size() < k - 1) continue;

    std::vector<Vector> y{Vector(field, n)};
    for (std::size_t j = 1; j < k; ++j) y.push_back(random_combination(rng, field, h_star, n));
    if (ff::rank({y.begin() + 1, y.end()}, n) != k - 1) continue;

    ShatterPairConstruction c;
    c.basis = basis;
    c.k = k;
    c.x = std::move(x);
    c.y = std::move(y);
    c.factor.linear = linear_forms(*basis, k, c.x, c.y);
    if (ff::rank(c.factor.linear, n) != c.factor.linear.size()) continue;
    for (std::size_t i = 1; i <= k; ++i) c.factor.quad.push_back(i);
    c.seed = seed;
    c.h_x_dim = h_x.size();
    c.h_star_dim = h_star.size();
    verify_construction(c);
    return c;
  }
  fail(ErrorCode::internal, "no valid construction after " + std::to_string(kMaxAttempts) + " attempts");
}

void verify_construction(const ShatterPairConstruction& c) {
  if (!c.basis) broken("missing basis");
  const HighRankBasis& basis = *c.basis;
  const std::size_t n = basis.n();
  if (c.k != 2 && c.k != 3) broken("k must be 2 or 3");
  if (n < min_dimension(c.k)) broken("n below the required dimension");
  if (c.x.size() != c.k || c.y.size() != c.k) broken("X and Y must have k points");
  for (const auto* pts : {&c.x, &c.y})
    for (const auto& v : *pts)
      if (!(v.field() == basis.field()) || v.size() != n) broken("point of the wrong shape");
  if (!c.x[0].is_zero() || !c.y[0].is_zero()) broken("x_0 and y_0 must be 0");
  if (ff::rank({c.x.begin() + 1, c.x.end()}, n) != c.k - 1) broken("x's are dependent");
  if (ff::rank({c.y.begin() + 1, c.y.end()}, n) != c.k - 1) broken("y's are dependent");
  for (std::size_t i = 1; i <= c.k; ++i)
    for (std::size_t a = 1; a < c.k; ++a)
      for (std::size_t b = 1; b < c.k; ++b)
        if (ff::bilinear(c.x[a], basis.mat(i), c.y[b]) != 0)
          broken("cross-term x_" + std::to_string(a) + "^T M_" + std::to_string(i) + " y_" + std::to_string(b) +
                 " is nonzero");
  if (c.factor.linear != linear_forms(basis, c.k, c.x, c.y)) broken("linear forms do not match the points");
  if (ff::rank(c.factor.linear, n) != expected_linear_count(c.k)) broken("linear forms are dependent");
  std::vector<std::size_t> quad;
  for (std::size_t i = 1; i <= c.k; ++i) quad.push_back(i);
  if (c.factor.quad != quad) broken("quadratic part must be Q_1..Q_k");
  if (2 * c.factor.complexity() >= n) broken("complexity not below n/2");
}

AtomLabel label_for_targets(const ShatterPairConstruction& c, const TargetValues& t) {
  const HighRankBasis& basis = *c.basis;
  const Field& f = basis.field();
  require(t.k == c.k, "target values are for a different grid");
  const auto& q = t.rows[0];
  AtomLabel label;
  for (const auto& [pts, vals] : {std::pair{&c.x, &t.rows}, std::pair{&c.y, &t.cols}})
    for (std::size_t j = 1; j < c.k; ++j)
      for (std::size_t i = 1; i <= c.k; ++i) {
        const Residue own = ff::bilinear((*pts)[j], basis.mat(i), (*pts)[j]);
        label.push_back(f.sub(f.sub((*vals)[j][i - 1], q[i - 1]), own));
      }
  label.insert(label.end(), q.begin(), q.end());
  return label;
}

Vector realize_map(const ShatterPairConstruction& c, const gs::QgsSet& a, const ContainmentMap& phi,
                   std::uint64_t seed) {
  const TargetValues t = target_values_for_map(c.basis->field(), c.k, phi);
  const AtomLabel label = label_for_targets(c, t);
  const std::uint64_t stream = Rng::derive(seed, "realize-map", phi.bits()).next();
  Vector z = find_in_atom(c.factor, *c.basis, label, stream);
  if (!shatter::vc2_realizes(a, c.x, c.y, phi, z))
    fail(ErrorCode::verification_failed, "shift from the atom of " + t.source + " does not realise map " +
                                             std::to_string(phi.bits()));
  return z;
}

shatter::Vc2Outcome realize_all(const ShatterPairConstruction& c, std::uint64_t seed, unsigned threads) {
  const gs::QgsSet a(c.basis);
  shatter::ZFinder finder = [&](const ContainmentMap& phi, std::uint64_t) -> std::optional<Vector> {
    return realize_map(c, a, phi, seed);
  };
  return shatter::vc2_shatters(a, c.x, c.y, finder, threads);
}

nlohmann::json construction_to_json(const ShatterPairConstruction& c) {
  nlohmann::json xs = nlohmann::json::array(), ys = nlohmann::json::array();
  for (const auto& v : c.x) xs.push_back(ff::coords_json(v));
  for (const auto& v : c.y) ys.push_back(ff::coords_json(v));
  return {{"kind", "construction"},
          {"k", c.k},
          {"seed", c.seed},
          {"basis", highrank::basis_to_json(*c.basis)},
          {"X", xs},
          {"Y", ys},
          {"factor", factor_to_json(c.factor)},
          {"subspaces", {{"h_x_dim", c.h_x_dim}, {"h_star_dim", c.h_star_dim}}}};
}

ShatterPairConstruction construction_from_json(const nlohmann::json& j) {
  try {
    if (j.at("kind").get<std::string>() != "construction") fail(ErrorCode::parse_error, "not a construction file");
    ShatterPairConstruction c;
    c.basis = std::make_shared<const HighRankBasis>(highrank::basis_from_json(j.at("basis")));
    const Field& field = c.basis->field();
    const std::size_t n = c.basis->n();
    c.k = j.at("k").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& v : j.at("X")) c.x.push_back(ff::vector_from_coords(field, v, n));
    for (const auto& v : j.at("Y")) c.y.push_back(ff::vector_from_coords(field, v, n));
    c.factor = factor_from_json(field, n, j.at("factor"));
    c.h_x_dim = j.at("subspaces").at("h_x_dim").get<std::size_t>();
    c.h_star_dim = j.at("subspaces").at("h_star_dim").get<std::size_t>();
    verify_construction(c);
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("malformed construction: ") + e.what());
  }
}

}  // namespace vc2::quad
