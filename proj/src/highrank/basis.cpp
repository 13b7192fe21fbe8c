#include "highrank/basis.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "ff/json_codec.hpp"
#include "ff/space.hpp"
#include "util/error.hpp"
#include "util/parallel.hpp"
#include "util/rng.hpp"

namespace vc2::highrank {

IrreduciblePoly build_irreducible(const Field& field, std::size_t n) {
  require(n >= 1, "polynomial degree must be at least 1");
  Poly c(n + 1, 0);
  c[n] = 1;
  // Odometer over the lower coefficients, constant term fastest.
  for (;;) {
    if (is_irreducible(field, c)) return IrreduciblePoly{field, c};
    std::size_t i = 0;
    while (i < n && c[i] == field.p() - 1) c[i++] = 0;
    if (i == n) fail(ErrorCode::internal, "no irreducible polynomial found");
    ++c[i];
  }
}

HighRankBasis::HighRankBasis(Field field, std::size_t n, std::vector<Matrix> mats,
                             std::optional<IrreduciblePoly> poly)
    : field_(field), n_(n), mats_(std::move(mats)), poly_(std::move(poly)) {
  require(n_ >= 1, "basis dimension must be at least 1");
  for (const auto& m : mats_) {
    require(m.field() == field_ && m.rows() == n_ && m.cols() == n_, "basis matrix has the wrong shape");
    require(m.is_symmetric(), "basis matrix is not symmetric");
  }
}

const Matrix& HighRankBasis::mat(std::size_t t) const {
  require(t >= 1 && t <= mats_.size(), "quadratic index " + std::to_string(t) + " out of range");
  return mats_[t - 1];
}

HighRankBasis trace_basis_from_poly(const IrreduciblePoly& poly) {
  const Field& f = poly.field;
  const std::size_t n = poly.degree();
  require(n >= 1, "polynomial degree must be at least 1");

  // Tr(theta^k) is the trace of multiplication by theta^k, i.e. the sum over
  // i of the theta^i coefficient of theta^(k+i).
  const std::size_t max_exp = 4 * n - 4;
  std::vector<Poly> powers;
  powers.reserve(max_exp + 1);
  powers.push_back(poly_mod(f, Poly{1}, poly.coeffs));
  for (std::size_t k = 1; k <= max_exp; ++k) powers.push_back(poly_mulmod(f, powers.back(), Poly{0, 1}, poly.coeffs));
  std::vector<Residue> tr(3 * n - 2, 0);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    Residue s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Poly& q = powers[k + i];
      if (i < q.size()) s = f.add(s, q[i]);
    }
    tr[k] = s;
  }

  std::vector<Matrix> mats;
  mats.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    Matrix m(f, n, n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) m.set(u, v, tr[t + u + v]);
    mats.push_back(std::move(m));
  }
  return HighRankBasis(f, n, std::move(mats), poly);
}

HighRankBasis build_trace_basis(const Field& field, std::size_t n) {
  return trace_basis_from_poly(build_irreducible(field, n));
}

Matrix combination(const HighRankBasis& basis, std::span<const Residue> lambda) {
  require(lambda.size() == basis.size(), "coefficient vector length must equal the basis size");
  Matrix out(basis.field(), basis.n(), basis.n());
  for (std::size_t t = 0; t < lambda.size(); ++t)
    if (lambda[t] != 0) out.add_scaled(lambda[t], basis.mats()[t]);
  return out;
}

std::size_t flattened_rank(const HighRankBasis& basis) {
  const std::size_t n = basis.n();
  Matrix flat(basis.field(), basis.size(), n * n);
  for (std::size_t t = 0; t < basis.size(); ++t)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) flat.set(t, u * n + v, basis.mats()[t].at(u, v));
  return ff::rank(flat);
}

namespace {

void record_failure(HighRankCheck& out, const std::vector<Residue>& lambda) {
  out.passed = false;
  if (!out.witness || lambda < *out.witness) out.witness = lambda;
}

HighRankCheck check_exhaustive(const HighRankBasis& basis) {
  const ff::Space space(basis.field(), basis.size(), kExhaustiveRankLimit);
  HighRankCheck out;
  for (std::uint64_t idx = 1; idx < space.size(); ++idx) {
    const ff::Vector lam = space.at(idx);
    ++out.checked;
    if (ff::rank(combination(basis, lam.coords())) != basis.n()) {
      // Indices run in lexicographic order, so the first failure is minimal.
      record_failure(out, {lam.coords().begin(), lam.coords().end()});
      break;
    }
  }
  return out;
}

HighRankCheck check_sampled(const HighRankBasis& basis, const Sampled& mode) {
  constexpr std::size_t kStreams = 16;
  std::vector<HighRankCheck> partial(kStreams);
  const std::uint32_t p = basis.field().p();
  parallel_for(kStreams, resolve_threads(mode.threads), [&](std::size_t s) {
    const std::uint64_t share = mode.count / kStreams + (s < mode.count % kStreams ? 1 : 0);
    Rng rng = Rng::derive(mode.seed, "highrank-sample", s);
    std::vector<Residue> lam(basis.size());
    for (std::uint64_t i = 0; i < share; ++i) {
      bool zero;
      do {  // resample the all-zero vector
        zero = true;
        for (auto& c : lam) {
          c = static_cast<Residue>(rng.below(p));
          zero = zero && c == 0;
        }
      } while (zero);
      ++partial[s].checked;
      if (ff::rank(combination(basis, lam)) != basis.n()) record_failure(partial[s], lam);
    }
  });
  HighRankCheck out;
  for (const auto& r : partial) {
    out.checked += r.checked;
    if (!r.passed) record_failure(out, *r.witness);
  }
  return out;
}

}  // namespace

HighRankCheck check_high_rank(const HighRankBasis& basis, const CheckMode& mode) {
  if (std::holds_alternative<Exhaustive>(mode)) return check_exhaustive(basis);
  return check_sampled(basis, std::get<Sampled>(mode));
}

nlohmann::json basis_to_json(const HighRankBasis& basis) {
  nlohmann::json mats = nlohmann::json::array();
  for (const auto& m : basis.mats()) mats.push_back(ff::to_json(m));
  nlohmann::json poly = nlohmann::json::array();
  if (basis.poly())
    for (Residue c : basis.poly()->coeffs) poly.push_back(c);
  return {{"p", basis.field().p()}, {"n", basis.n()}, {"poly", poly}, {"mats", mats}};
}

HighRankBasis basis_from_json(const nlohmann::json& j) {
  try {
    const Field field(j.at("p").get<std::uint32_t>());
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Matrix> mats;
    for (const auto& mj : j.at("mats")) {
      Matrix m = ff::matrix_from_json(mj);
      if (!(m.field() == field)) fail(ErrorCode::parse_error, "basis matrix has a different modulus");
      mats.push_back(std::move(m));
    }
    std::optional<IrreduciblePoly> poly;
    if (j.contains("poly") && !j.at("poly").empty()) {
      Poly c;
      for (const auto& v : j.at("poly")) {
        const auto r = v.get<std::int64_t>();
        if (r < 0 || r >= field.p()) fail(ErrorCode::parse_error, "polynomial coefficient out of range");
        c.push_back(static_cast<Residue>(r));
      }
      if (c.size() != n + 1 || c.back() != 1) fail(ErrorCode::parse_error, "polynomial must be monic of degree n");
      if (!is_irreducible(field, c)) fail(ErrorCode::verification_failed, "recorded polynomial is reducible");
      poly = IrreduciblePoly{field, c};
      const HighRankBasis expected = trace_basis_from_poly(*poly);
      if (expected.mats() != mats)
        fail(ErrorCode::verification_failed, "matrices do not match the trace basis of the recorded polynomial");
    }
    return HighRankBasis(field, n, std::move(mats), std::move(poly));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("malformed basis: ") + e.what());
  }
}

}  // namespace vc2::highrank
