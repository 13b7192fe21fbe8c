#include "ramsey/ramsey.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>

#include "util/error.hpp"
#include "util/rng.hpp"

namespace vc2::ramsey {

using boost::multiprecision::cpp_int;

BipartiteColouring::BipartiteColouring(std::size_t m, std::size_t n, unsigned r, std::vector<std::uint16_t> colours)
    : m_(m), n_(n), r_(r), colours_(std::move(colours)) {
  require(r >= 1 && r <= 65535, "colour count must be in [1, 65535]");
  require(colours_.size() == m * n, "colouring needs m * n entries");
  for (auto c : colours_) require(c >= 1 && c <= r, "colour out of range");
}

BipartiteColouring BipartiteColouring::random(std::size_t m, std::size_t n, unsigned r, std::uint64_t seed,
                                              std::uint64_t index) {
  require(r >= 1, "colour count must be positive");
  Rng rng = Rng::derive(seed, "colouring", index);
  std::vector<std::uint16_t> col(m * n);
  for (auto& c : col) c = static_cast<std::uint16_t>(1 + rng.below(r));
  return BipartiteColouring(m, n, r, std::move(col));
}

BipartiteColouring BipartiteColouring::uniform(std::size_t m, std::size_t n, unsigned r, unsigned colour) {
  return BipartiteColouring(m, n, r, std::vector<std::uint16_t>(m * n, static_cast<std::uint16_t>(colour)));
}

BipartiteColouring BipartiteColouring::parse(std::istream& in) {
  std::size_t m = 0, n = 0;
  unsigned r = 0;
  if (!(in >> m >> n >> r)) fail(ErrorCode::parse_error, "colouring header must be \"m n r\"");
  std::vector<std::uint16_t> col(m * n);
  for (auto& c : col) {
    long v = 0;
    if (!(in >> v)) fail(ErrorCode::parse_error, "colouring has fewer than m * n entries");
    if (v < 1 || v > static_cast<long>(r)) fail(ErrorCode::parse_error, "colour out of range");
    c = static_cast<std::uint16_t>(v);
  }
  return BipartiteColouring(m, n, r, std::move(col));
}

void BipartiteColouring::write(std::ostream& out) const {
  out << m_ << ' ' << n_ << ' ' << r_ << '\n';
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out << (j ? " " : "") << colours_[i * n_ + j];
    out << '\n';
  }
}

bool verify_biclique(const BipartiteColouring& c, const BicliqueWitness& w, std::size_t q, std::size_t s) {
  if (w.left.size() != q || w.right.size() != s) return false;
  auto distinct = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!distinct(w.left) || !distinct(w.right)) return false;
  for (auto i : w.left) {
    if (i >= c.m()) return false;
    for (auto j : w.right)
      if (j >= c.n() || c.colour(i, j) != w.colour) return false;
  }
  return true;
}

namespace {

/// Per colour and left vertex, the right neighbours in that colour.
class Neighbourhoods {
 public:
  explicit Neighbourhoods(const BipartiteColouring& c)
      : words_((c.n() + 63) / 64), m_(c.m()), bits_(static_cast<std::size_t>(c.r()) * c.m() * words_, 0) {
    for (std::size_t i = 0; i < c.m(); ++i)
      for (std::size_t j = 0; j < c.n(); ++j) row(c.colour(i, j), i)[j / 64] |= std::uint64_t{1} << (j % 64);
  }

  std::size_t words() const noexcept { return words_; }
  std::uint64_t* row(unsigned colour, std::size_t left) {
    return bits_.data() + ((colour - 1) * m_ + left) * words_;
  }
  const std::uint64_t* row(unsigned colour, std::size_t left) const {
    return bits_.data() + ((colour - 1) * m_ + left) * words_;
  }

 private:
  std::size_t words_;
  std::size_t m_;
  std::vector<std::uint64_t> bits_;
};

std::size_t popcount(const std::vector<std::uint64_t>& v) {
  std::size_t s = 0;
  for (auto w : v) s += static_cast<std::size_t>(std::popcount(w));
  return s;
}

std::vector<std::size_t> first_bits(const std::vector<std::uint64_t>& v, std::size_t count) {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < v.size() && out.size() < count; ++w) {
    std::uint64_t x = v[w];
    while (x != 0 && out.size() < count) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

std::optional<BicliqueWitness> constructive_k33(const BipartiteColouring& c, const Neighbourhoods& nb,
                                                std::uint64_t& inspections) {
  const unsigned r = c.r();
  // Dominant colour of each left vertex: smallest colour on >= ceil(n/r) edges.
  const std::uint64_t dom_edges = ceil_div(c.n(), r);
  std::vector<std::size_t> dominated(r + 1, 0);
  std::vector<unsigned> dominant(c.m(), 0);
  for (std::size_t i = 0; i < c.m(); ++i) {
    std::vector<std::size_t> cnt(r + 1, 0);
    for (std::size_t j = 0; j < c.n(); ++j) ++cnt[c.colour(i, j)];
    inspections += c.n();
    for (unsigned col = 1; col <= r; ++col)
      if (cnt[col] >= dom_edges) {
        dominant[i] = col;
        ++dominated[col];
        break;
      }
    if (dominant[i] == 0) return std::nullopt;
  }
  // A colour dominant for at least ceil(m/r) left vertices.
  unsigned colour = 0;
  for (unsigned col = 1; col <= r && colour == 0; ++col)
    if (dominated[col] >= ceil_div(c.m(), r)) colour = col;
  if (colour == 0) return std::nullopt;
  std::vector<std::size_t> xp;
  for (std::size_t i = 0; i < c.m(); ++i)
    if (dominant[i] == colour) xp.push_back(i);

  // A right vertex y with at least 4r+1 neighbours in X' (smallest index).
  const std::size_t q = 4 * static_cast<std::size_t>(r) + 1;
  std::optional<std::size_t> y;
  for (std::size_t j = 0; j < c.n() && !y; ++j) {
    std::size_t deg = 0;
    for (auto i : xp) deg += c.colour(i, j) == colour ? 1 : 0;
    inspections += xp.size();
    if (deg >= q) y = j;
  }
  if (!y) return std::nullopt;
  std::vector<std::size_t> xpp;
  for (auto i : xp)
    if (xpp.size() < q && c.colour(i, *y) == colour) xpp.push_back(i);

  // K_{3,2} between X'' and Y \ {y}; y then completes a K_{3,3}.
  const std::size_t words = nb.words();
  std::vector<std::uint64_t> common(words);
  for (std::size_t a = 0; a < xpp.size(); ++a)
    for (std::size_t b = a + 1; b < xpp.size(); ++b)
      for (std::size_t d = b + 1; d < xpp.size(); ++d) {
        const auto* ra = nb.row(colour, xpp[a]);
        const auto* rb = nb.row(colour, xpp[b]);
        const auto* rd = nb.row(colour, xpp[d]);
        for (std::size_t w = 0; w < words; ++w) common[w] = ra[w] & rb[w] & rd[w];
        inspections += 3 * words;
        common[*y / 64] &= ~(std::uint64_t{1} << (*y % 64));
        if (popcount(common) >= 2) {
          auto right = first_bits(common, 2);
          right.push_back(*y);
          std::sort(right.begin(), right.end());
          return BicliqueWitness{{xpp[a], xpp[b], xpp[d]}, right, colour};
        }
      }
  return std::nullopt;
}

class DirectSearch {
 public:
  DirectSearch(const Neighbourhoods& nb, std::size_t q, std::size_t s, BicliqueSearch& out)
      : nb_(nb), q_(q), s_(s), out_(out) {}

  std::optional<BicliqueWitness> run(unsigned colour, const std::vector<std::size_t>& order) {
    colour_ = colour;
    order_ = &order;
    chosen_.clear();
    // Padding bits vanish at the first intersection with a real row.
    std::vector<std::uint64_t> all(nb_.words(), ~std::uint64_t{0});
    return dfs(0, all);
  }

 private:
  std::optional<BicliqueWitness> dfs(std::size_t start, const std::vector<std::uint64_t>& common) {
    if (chosen_.size() == q_) {
      auto left = chosen_;
      std::sort(left.begin(), left.end());
      return BicliqueWitness{left, first_bits(common, s_), colour_};
    }
    const auto& order = *order_;
    std::vector<std::uint64_t> next(common.size());
    for (std::size_t k = start; k + (q_ - chosen_.size()) <= order.size(); ++k) {
      if (out_.inspections >= kFallbackInspectionCap) {
        out_.budget_exhausted = true;
        return std::nullopt;
      }
      const auto* row = nb_.row(colour_, order[k]);
      for (std::size_t w = 0; w < next.size(); ++w) next[w] = common[w] & row[w];
      out_.inspections += next.size();
      if (popcount(next) < s_) continue;
      chosen_.push_back(order[k]);
      if (auto w = dfs(k + 1, next)) return w;
      chosen_.pop_back();
      if (out_.budget_exhausted) return std::nullopt;
    }
    return std::nullopt;
  }

  const Neighbourhoods& nb_;
  std::size_t q_;
  std::size_t s_;
  BicliqueSearch& out_;
  unsigned colour_ = 0;
  const std::vector<std::size_t>* order_ = nullptr;
  std::vector<std::size_t> chosen_;
};

}  // namespace

BicliqueSearch find_mono_biclique(const BipartiteColouring& c, std::size_t q, std::size_t s) {
  require(q >= 1 && s >= 1, "biclique sides must be positive");
  BicliqueSearch out;
  if (c.m() < q || c.n() < s) return out;
  const Neighbourhoods nb(c);

  const std::uint64_t r = c.r();
  const std::uint64_t regime = 4 * r * r * r + 1;
  if (q == 3 && s == 3 && c.m() >= regime && c.n() >= regime) {
    if (auto w = constructive_k33(c, nb, out.inspections)) {
      if (!verify_biclique(c, *w, q, s)) fail(ErrorCode::internal, "constructive biclique failed verification");
      out.witness = std::move(w);
      out.constructive = true;
      return out;
    }
  }

  DirectSearch search(nb, q, s, out);
  for (unsigned colour = 1; colour <= c.r(); ++colour) {
    std::vector<std::size_t> order(c.m());
    std::vector<std::size_t> degree(c.m());
    for (std::size_t i = 0; i < c.m(); ++i) {
      order[i] = i;
      std::size_t d = 0;
      const auto* row = nb.row(colour, i);
      for (std::size_t w = 0; w < nb.words(); ++w) d += static_cast<std::size_t>(std::popcount(row[w]));
      degree[i] = d;
    }
    out.inspections += c.m() * nb.words();
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return degree[a] > degree[b]; });
    if (auto w = search.run(colour, order)) {
      if (!verify_biclique(c, *w, q, s)) fail(ErrorCode::internal, "direct-search biclique failed verification");
      out.witness = std::move(w);
      return out;
    }
    if (out.budget_exhausted) return out;
  }
  return out;
}

Rational binom(const Rational& x, unsigned q) {
  Rational num = 1;
  cpp_int den = 1;
  for (unsigned i = 0; i < q; ++i) {
    num *= x - i;
    den *= i + 1;
  }
  return num / Rational(den);
}

bool lemma_a1_guarantees(std::uint64_t m, std::uint64_t n, const Rational& rho, unsigned q, unsigned s) {
  if (!(rho > 0 && rho <= 1)) fail(ErrorCode::invalid_argument, "density must satisfy 0 < rho <= 1");
  require(q >= 1 && s >= 1, "biclique sides must be positive");
  if (!(Rational(m) > Rational(q - 1) / rho)) return false;
  // rho m > q - 1, so binom(rho m, q) > 0.
  const Rational ratio = binom(Rational(m), q) / binom(rho * m, q);
  return Rational(n) > ratio * (s - 1);
}

BrBound br_upper_bound(std::uint64_t r) {
  require(r >= 1, "colour count must be at least 1");
  const cpp_int R = r;
  const cpp_int n = 4 * R * R * R + 1;
  const cpp_int q = 4 * R + 1;
  BrBound out;
  out.value = static_cast<std::uint64_t>(n);
  auto step = [&](std::string claim, bool holds) {
    out.steps.push_back({std::move(claim), holds});
    out.passed = out.passed && holds;
  };
  step("each left vertex has a colour on ceil(n/r) = 4r^2+1 edges", (n + R - 1) / R == 4 * R * R + 1);
  step("some colour is dominant for ceil(n/r) = 4r^2+1 left vertices", (n + R - 1) / R == 4 * R * R + 1);
  step("average right degree (4r^2+1)^2/(4r^3+1) exceeds 4r",
       (4 * R * R + 1) * (4 * R * R + 1) > 4 * R * n);
  step("q = 4r+1 > 2r, the degree condition for rho' >= 1/r", q > 2 * R);
  step("q = 4r+1 > 4r, so rho' q > 4", q > 4 * R);
  step("binom(q,3)/4 < 4r^3, i.e. q(q-1)(q-2) < 96 r^3", q * (q - 1) * (q - 2) < 96 * R * R * R);
  step("density lemma yields K_{3,2} with m = q, n = 4r^3, rho = 1/r",
       lemma_a1_guarantees(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(n - 1), Rational(1, r), 3, 2));
  if (!out.passed) fail(ErrorCode::internal, "bound arithmetic fails at r = " + std::to_string(r));
  return out;
}

}  // namespace vc2::ramsey
