#include <doctest.h>

#include "ff/field.hpp"
#include "ff/json_codec.hpp"
#include "ff/matrix.hpp"
#include "ff/space.hpp"
#include "helpers.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace vc2;
using namespace vc2::ff;
using testing::plain;
using testing::vec;

TEST_SUITE("ff-core") {
  TEST_CASE("scalar inverse examples") {
    CHECK(scalar_inverse(Field(3), 2) == 2);
    CHECK(scalar_inverse(Field(5), 3) == 2);
    CHECK(scalar_inverse(Field(7), 1) == 1);
    CHECK(scalar_inverse(Field(7), -1) == 6);
  }

  TEST_CASE("inverse of zero is an error") {
    try {
      (void)scalar_inverse(Field(5), 10);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_invertible);
    }
  }

  TEST_CASE("field rejects non-primes and 2") {
    for (std::uint32_t p : {0u, 1u, 2u, 4u, 9u, 15u, 91u}) CHECK_THROWS_AS(Field{p}, Error);
    CHECK_NOTHROW(Field(97));
  }

  TEST_CASE("every inverse for p <= 97") {
    for (std::uint32_t p = 3; p <= 97; ++p) {
      if (!is_prime(p)) continue;
      const Field f(p);
      for (std::uint32_t a = 1; a < p; ++a) CHECK(f.mul(a, f.inverse(a)) == 1);
    }
  }

  TEST_CASE("rank examples") {
    CHECK(rank(Matrix::identity(Field(3), 3)) == 3);
    for (std::uint32_t p : {3u, 5u, 7u}) CHECK(rank(Matrix(Field(p), 4, 4)) == 0);
    CHECK(rank(Matrix::from_rows(Field(5), {{1, 2}, {2, 4}})) == 1);
  }

  TEST_CASE("rank agrees with span enumeration and is transpose invariant") {
    Rng rng(7);
    for (std::uint32_t p : {3u, 5u}) {
      const Field f(p);
      for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(4);
        Matrix m(f, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng.below(3) == 0 ? 0 : rng.below(p));
        CHECK(rank(m) == oracle::rank_by_span(plain(m), p));
        CHECK(rank(m) == rank(m.transpose()));
      }
    }
  }

  TEST_CASE("solve_affine examples") {
    const Field f3(3);
    auto s = solve_affine(Matrix::identity(f3, 3), vec(f3, {1, 2, 0}));
    REQUIRE(s);
    CHECK(plain(s->particular) == oracle::Vec{1, 2, 0});
    CHECK(s->null_basis.empty());

    CHECK_FALSE(solve_affine(Matrix(f3, 1, 1), vec(f3, {1})));

    s = solve_affine(Matrix::from_rows(f3, {{1, 1}}), vec(f3, {0}));
    REQUIRE(s);
    CHECK(plain(s->particular) == oracle::Vec{0, 0});
    REQUIRE(s->null_basis.size() == 1);
    CHECK(plain(s->null_basis[0]) == oracle::Vec{1, 2});
    // Independent check: exactly {(0,0), (1,2), (2,1)} solve x1 + x2 = 0.
    const auto all = oracle::solve_by_enumeration({{1, 1}}, {0}, 2, 3);
    CHECK(all == std::vector<oracle::Vec>{{0, 0}, {1, 2}, {2, 1}});
  }

  TEST_CASE("solve_affine dimension mismatch") {
    const Field f(3);
    CHECK_THROWS_AS(solve_affine(Matrix::identity(f, 2), vec(f, {1, 2, 0})), Error);
  }

  TEST_CASE("solve_affine parametrises exactly the brute-force solution set") {
    Rng rng(11);
    for (std::uint32_t p : {3u, 5u}) {
      const Field f(p);
      for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 1 + rng.below(3), n = 1 + rng.below(4);
        Matrix a(f, rows, n);
        oracle::Mat plain_a(rows, oracle::Vec(n));
        oracle::Vec b(rows);
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t c = 0; c < n; ++c) {
            plain_a[r][c] = rng.below(p);
            a.set(r, c, plain_a[r][c]);
          }
          b[r] = rng.below(p);
        }
        const auto expected = oracle::solve_by_enumeration(plain_a, b, n, p);
        const auto sol = solve_affine(a, Vector::from_signed(f, b));
        if (expected.empty()) {
          CHECK_FALSE(sol);
          continue;
        }
        REQUIRE(sol);
        CHECK(rank(sol->null_basis, n) == sol->dimension());
        // Every combination solves the system, and the count matches.
        std::set<oracle::Vec> produced;
        const std::uint64_t combos = oracle::ipow(p, sol->dimension());
        for (std::uint64_t c = 0; c < combos; ++c) {
          Vector x = sol->particular;
          const auto coeff = oracle::element(p, sol->dimension(), c);
          for (std::size_t i = 0; i < coeff.size(); ++i) x.add_scaled(static_cast<Residue>(coeff[i]), sol->null_basis[i]);
          CHECK(a.apply(x) == Vector::from_signed(f, b));
          produced.insert(plain(x));
        }
        CHECK(produced == std::set<oracle::Vec>(expected.begin(), expected.end()));
      }
    }
  }

  TEST_CASE("orth_complement examples") {
    const Field f(3);
    auto c = orth_complement(f, {Vector::unit(f, 3, 0)}, 3);
    REQUIRE(c.size() == 2);
    for (const auto& v : c) CHECK(v[0] == 0);
    CHECK(rank(c, 3) == 2);

    c = orth_complement(f, {}, 2);
    CHECK(c.size() == 2);
    CHECK(rank(c, 2) == 2);

    c = orth_complement(f, {vec(f, {1, 1})}, 2);
    REQUIRE(c.size() == 1);
    CHECK(plain(c[0]) == oracle::Vec{1, 2});
  }

  TEST_CASE("orth_complement twice returns the original span") {
    Rng rng(5);
    const Field f(5);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + rng.below(4), count = rng.below(n + 1);
      std::vector<Vector> v;
      for (std::size_t i = 0; i < count; ++i) {
        Vector x(f, n);
        for (std::size_t j = 0; j < n; ++j) x.set(j, rng.below(5));
        v.push_back(x);
      }
      const auto c = orth_complement(f, v, n);
      CHECK(c.size() == n - rank(v, n));
      for (const auto& u : c)
        for (const auto& w : v) CHECK(dot(u, w) == 0);
      const auto cc = orth_complement(f, c, n);
      std::vector<Vector> both = v;
      both.insert(both.end(), cc.begin(), cc.end());
      CHECK(rank(cc, n) == rank(v, n));
      CHECK(rank(both, n) == rank(v, n));
    }
  }

  TEST_CASE("json encodings round trip and reject non-canonical input") {
    const Field f(5);
    const Vector v = vec(f, {1, -1, 3});
    CHECK(to_json(v) == nlohmann::json{{"p", 5}, {"coords", {1, 4, 3}}});
    CHECK(vector_from_json(to_json(v)) == v);
    const Matrix m = Matrix::from_rows(f, {{1, 2}, {3, 4}});
    CHECK(matrix_from_json(to_json(m)) == m);
    CHECK_THROWS_AS(vector_from_json(nlohmann::json{{"p", 5}, {"coords", {5}}}), Error);
  }

  TEST_CASE("space indexing is lexicographic") {
    const Space s(Field(3), 3, 1000);
    CHECK(s.size() == 27);
    for (std::uint64_t i = 0; i < s.size(); ++i) {
      CHECK(plain(s.at(i)) == oracle::element(3, 3, i));
      CHECK(s.index_of(s.at(i)) == i);
    }
    CHECK(s.add(s.index_of(vec(Field(3), {1, 2, 2})), s.index_of(vec(Field(3), {2, 2, 1}))) ==
          s.index_of(vec(Field(3), {0, 1, 0})));
    CHECK_THROWS_AS(Space(Field(3), 30, 1000), Error);
  }

  TEST_CASE("rng streams are reproducible and distinct") {
    CHECK(Rng::derive(1, "a", 0).next() == Rng::derive(1, "a", 0).next());
    CHECK(Rng::derive(1, "a", 0).next() != Rng::derive(1, "a", 1).next());
    CHECK(Rng::derive(1, "a", 0).next() != Rng::derive(1, "b", 0).next());
    Rng r(3);
    for (int i = 0; i < 1000; ++i) CHECK(r.below(7) < 7);
  }
}
