#include <doctest.h>

#include <sstream>

#include "ramsey/ramsey.hpp"
#include "util/error.hpp"

using namespace vc2;
using namespace vc2::ramsey;

namespace {

/// Direct q*s lookup check, independent of verify_biclique.
bool mono(const BipartiteColouring& c, const BicliqueWitness& w, std::size_t q, std::size_t s) {
  if (w.left.size() != q || w.right.size() != s) return false;
  std::set<std::size_t> l(w.left.begin(), w.left.end()), r(w.right.begin(), w.right.end());
  if (l.size() != q || r.size() != s) return false;
  for (auto i : w.left)
    for (auto j : w.right)
      if (i >= c.m() || j >= c.n() || c.colour(i, j) != w.colour) return false;
  return true;
}

}  // namespace

TEST_SUITE("ramsey") {
  TEST_CASE("density guarantee examples") {
    CHECK(lemma_a1_guarantees(21, 500, Rational(1, 5), 3, 2));
    CHECK(lemma_a1_guarantees(5, 10, Rational(1), 3, 3));
    CHECK_FALSE(lemma_a1_guarantees(2, 100, Rational(1, 2), 3, 3));
    CHECK_THROWS_AS(lemma_a1_guarantees(5, 5, Rational(0), 3, 3), Error);
    CHECK_THROWS_AS(lemma_a1_guarantees(5, 5, Rational(3, 2), 3, 3), Error);
  }

  TEST_CASE("real-argument binomial is exact") {
    CHECK(binom(Rational(21), 3) == 1330);
    // 4.2 * 3.2 * 2.2 / 6 = 4.928
    CHECK(binom(Rational(21, 5), 3) == Rational(616, 125));
    CHECK(binom(Rational(2), 3) == 0);
  }

  TEST_CASE("density guarantee is monotone in n") {
    for (std::uint64_t m = 1; m <= 30; ++m) {
      for (auto rho : {Rational(1, 5), Rational(1, 3), Rational(1, 2), Rational(1)}) {
        bool seen_true = false;
        for (std::uint64_t n = 1; n <= 400; n += 7) {
          const bool now = lemma_a1_guarantees(m, n, rho, 3, 3);
          if (seen_true) CHECK(now);
          seen_true = seen_true || now;
        }
      }
    }
  }

  TEST_CASE("biclique search examples") {
    const auto all = BipartiteColouring::uniform(3, 3, 1, 1);
    const auto r = find_mono_biclique(all, 3, 3);
    REQUIRE(r.witness);
    CHECK(r.witness->colour == 1);
    CHECK(mono(all, *r.witness, 3, 3));
    CHECK_FALSE(find_mono_biclique(BipartiteColouring::uniform(2, 2, 1, 1), 3, 3).witness);
  }

  TEST_CASE("constructive path on random 5-colourings of K_{501,501}") {
    for (std::uint64_t i = 0; i < 10; ++i) {
      const auto c = BipartiteColouring::random(501, 501, 5, 1, i);
      const auto r = find_mono_biclique(c, 3, 3);
      REQUIRE(r.witness);
      CHECK(r.constructive);
      CHECK(mono(c, *r.witness, 3, 3));
      CHECK(verify_biclique(c, *r.witness, 3, 3));
    }
  }

  TEST_CASE("fallback search finds planted bicliques and reports absence") {
    std::vector<std::uint16_t> colours(8 * 8);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) colours[i * 8 + j] = static_cast<std::uint16_t>(1 + (i + j) % 2);
    // Colour by the parity of i + j: rows of equal parity agree everywhere,
    // so a K_{3,3} exists, but the graph is too small for the constructive path.
    const BipartiteColouring c(8, 8, 2, colours);
    const auto r = find_mono_biclique(c, 3, 3);
    REQUIRE(r.witness);
    CHECK_FALSE(r.constructive);
    CHECK(mono(c, *r.witness, 3, 3));

    // No colour repeats within a column of a Latin square, so no two left
    // vertices see any right vertex in the same colour.
    std::vector<std::uint16_t> latin{1, 2, 3, 2, 3, 1, 3, 1, 2};
    const BipartiteColouring l(3, 3, 3, latin);
    CHECK_FALSE(find_mono_biclique(l, 2, 1).witness);
    CHECK(find_mono_biclique(l, 1, 1).witness);
  }

  TEST_CASE("verify_biclique rejects bad witnesses") {
    const auto c = BipartiteColouring::random(20, 20, 3, 2);
    BicliqueWitness w{{0, 1, 2}, {0, 1, 2}, 1};
    CHECK(verify_biclique(c, w, 3, 3) == mono(c, w, 3, 3));
    w.left = {0, 0, 1};
    CHECK_FALSE(verify_biclique(c, w, 3, 3));
  }

  TEST_CASE("br_upper_bound examples and chain for r in [1, 100]") {
    CHECK(br_upper_bound(5).value == 501);
    CHECK(br_upper_bound(2).value == 33);
    CHECK(br_upper_bound(1).value == 5);
    for (std::uint64_t r = 1; r <= 100; ++r) {
      const auto b = br_upper_bound(r);
      CHECK(b.passed);
      CHECK(b.value == 4 * r * r * r + 1);
      const std::uint64_t q = 4 * r + 1;
      CHECK(q > 2 * r);
      CHECK(q * (q - 1) * (q - 2) < 96 * r * r * r);
    }
  }

  TEST_CASE("colouring file round trip and validation") {
    const auto c = BipartiteColouring::random(4, 5, 3, 7);
    std::stringstream ss;
    c.write(ss);
    const auto back = BipartiteColouring::parse(ss);
    CHECK(back.m() == 4);
    CHECK(back.n() == 5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) CHECK(back.colour(i, j) == c.colour(i, j));
    std::istringstream bad("2 2 2\n1 2\n3 1\n");
    CHECK_THROWS_AS(BipartiteColouring::parse(bad), Error);
    std::istringstream short_input("2 2 2\n1 2\n");
    CHECK_THROWS_AS(BipartiteColouring::parse(short_input), Error);
  }
}
