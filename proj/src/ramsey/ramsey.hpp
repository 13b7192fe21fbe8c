#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace vc2::ramsey {

using Rational = boost::multiprecision::cpp_rational;

/// r-colouring of the complete bipartite graph K_{m,n}; colours are 1..r.
class BipartiteColouring {
 public:
  BipartiteColouring(std::size_t m, std::size_t n, unsigned r, std::vector<std::uint16_t> colours);

  /// Uniform colours from the seeded stream ("colouring", index).
  static BipartiteColouring random(std::size_t m, std::size_t n, unsigned r, std::uint64_t seed,
                                   std::uint64_t index = 0);
  static BipartiteColouring uniform(std::size_t m, std::size_t n, unsigned r, unsigned colour);

  /// Text format: "m n r" then m lines of n colours.
  static BipartiteColouring parse(std::istream& in);
  void write(std::ostream& out) const;

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  unsigned r() const noexcept { return r_; }
  unsigned colour(std::size_t left, std::size_t right) const { return colours_[left * n_ + right]; }

 private:
  std::size_t m_;
  std::size_t n_;
  unsigned r_;
  std::vector<std::uint16_t> colours_;
};

struct BicliqueWitness {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  unsigned colour = 0;
};

/// Every left-right pair of the witness carries its colour.
bool verify_biclique(const BipartiteColouring& c, const BicliqueWitness& w, std::size_t q, std::size_t s);

struct BicliqueSearch {
  std::optional<BicliqueWitness> witness;
  /// The witness came from the dominant-colour argument, not the fallback.
  bool constructive = false;
  bool budget_exhausted = false;
  std::uint64_t inspections = 0;
};

inline constexpr std::uint64_t kFallbackInspectionCap = 100'000'000;

/// Monochromatic K_{q,s} with q vertices on the left. For (q, s) = (3, 3)
/// and both sides at least 4r^3 + 1 it first follows the dominant-colour
/// argument; otherwise (or if that path fails) it runs a capped direct
/// search. Ties break toward the smallest colour, then smallest vertex.
BicliqueSearch find_mono_biclique(const BipartiteColouring& c, std::size_t q, std::size_t s);

/// Real-argument binomial x(x-1)...(x-q+1)/q!.
Rational binom(const Rational& x, unsigned q);

/// m > (q-1)/rho and n > binom(m, q) / binom(rho m, q) * (s - 1), exactly.
/// Throws Error(invalid_argument) unless 0 < rho <= 1.
bool lemma_a1_guarantees(std::uint64_t m, std::uint64_t n, const Rational& rho, unsigned q, unsigned s);

struct BoundStep {
  std::string claim;
  bool holds = false;
};

struct BrBound {
  std::uint64_t value = 0;
  std::vector<BoundStep> steps;
  bool passed = true;
};

/// 4r^3 + 1 together with the arithmetic chain behind it; Error(internal)
/// if any step fails.
BrBound br_upper_bound(std::uint64_t r);

}  // namespace vc2::ramsey
