#include <doctest.h>

#include <map>
#include <memory>
#include <set>

#include "ff/space.hpp"
#include "gs/sets.hpp"
#include "helpers.hpp"
#include "highrank/basis.hpp"
#include "quad/cases.hpp"
#include "quad/construction.hpp"
#include "quad/factor.hpp"
#include "quad/prop32.hpp"
#include "shatter/certificate.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace vc2;
using namespace vc2::quad;
using testing::plain;
using testing::vec;

namespace {

std::shared_ptr<const HighRankBasis> trace(std::uint32_t p, std::size_t n) {
  return std::make_shared<const HighRankBasis>(highrank::build_trace_basis(Field(p), n));
}

/// Grid verdicts straight from the values: cell (i,j) is a_i + b_j - q and
/// is in A iff its first nonzero coordinate is 1. nullopt if undetermined.
std::optional<std::vector<std::vector<bool>>> verdicts(const TargetValues& t, std::int64_t p) {
  std::vector<std::vector<bool>> out(t.k, std::vector<bool>(t.k));
  for (std::size_t i = 0; i < t.k; ++i) {
    for (std::size_t j = 0; j < t.k; ++j) {
      oracle::Vec cell(t.k);
      for (std::size_t s = 0; s < t.k; ++s)
        cell[s] = oracle::mod(std::int64_t{t.rows[i][s]} + t.cols[j][s] - t.rows[0][s], p);
      if (std::all_of(cell.begin(), cell.end(), [](std::int64_t c) { return c == 0; })) return std::nullopt;
      out[i][j] = oracle::in_gs(cell, p);
    }
  }
  return out;
}

bool matches(const TargetValues& t, const ContainmentMap& phi, std::int64_t p) {
  const auto v = verdicts(t, p);
  if (!v) return false;
  for (std::size_t i = 0; i < t.k; ++i)
    for (std::size_t j = 0; j < t.k; ++j)
      if ((*v)[i][j] != phi.at(i, j)) return false;
  return true;
}

/// Atom sizes by direct enumeration of the group.
std::map<AtomLabel, std::uint64_t> census_oracle(const QuadraticFactor& f, const HighRankBasis& b) {
  const std::int64_t p = b.field().p();
  const std::size_t n = b.n();
  std::map<AtomLabel, std::uint64_t> out;
  for (std::uint64_t idx = 0; idx < oracle::ipow(p, n); ++idx) {
    const auto x = oracle::element(p, n, idx);
    AtomLabel label;
    for (const auto& v : f.linear) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s = oracle::mod(s + v[i] * x[i], p);
      label.push_back(static_cast<Residue>(s));
    }
    for (auto t : f.quad) label.push_back(static_cast<Residue>(oracle::quad_form(plain(b.mat(t)), x, p)));
    ++out[label];
  }
  return out;
}

}  // namespace

TEST_SUITE("quad-factor") {
  TEST_CASE("atom_label examples") {
    const auto b = trace(3, 5);
    const Field f(3);
    QuadraticFactor fac{{Vector::unit(f, 5, 0)}, {1, 2}};
    CHECK(atom_label(fac, *b, Vector(f, 5)) == AtomLabel{0, 0, 0});
    QuadraticFactor single{{Vector::unit(f, 5, 0)}, {}};
    CHECK(atom_label(single, *b, vec(f, {2, 0, 0, 0, 0})) == AtomLabel{2});
  }

  TEST_CASE("find_in_atom: every label at p=3, n=9, l=2, q=2") {
    const auto b = trace(3, 9);
    const auto fac = random_factor(*b, 2, 2, 5);
    const auto census = census_oracle(fac, *b);
    CHECK(census.size() == 81);  // every atom is nonempty
    for (std::uint64_t idx = 0; idx < 81; ++idx) {
      const auto c = oracle::element(3, 4, idx);
      const AtomLabel label(c.begin(), c.end());
      const auto x = find_in_atom(fac, *b, label, idx);
      CHECK(atom_label(fac, *b, x) == label);
    }
    CHECK(atom_label(fac, *b, find_in_atom(fac, *b, AtomLabel(4, 0), 1)) == AtomLabel(4, 0));
  }

  TEST_CASE("find_in_atom with the sampled search at n=31") {
    const auto b = trace(3, 31);
    const auto c = construct_shatter_pair(b, 3, 1);
    REQUIRE(c.factor.complexity() == 15);
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      AtomLabel label(15);
      for (auto& v : label) v = static_cast<Residue>(rng.below(3));
      CHECK(atom_label(c.factor, *b, find_in_atom(c.factor, *b, label, trial)) == label);
    }
  }

  TEST_CASE("find_in_atom refuses when nonemptiness is not guaranteed") {
    const auto b = trace(3, 5);
    const auto fac = random_factor(*b, 1, 2, 1);  // D = 3, 2D >= n
    try {
      (void)find_in_atom(fac, *b, AtomLabel(3, 0), 1);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_argument);
    }
  }

  TEST_CASE("atom_census examples") {
    const auto b3 = trace(3, 3);
    const Field f(3);
    const auto empty = atom_census(QuadraticFactor{}, *b3);
    REQUIRE(empty.size() == 1);
    CHECK(empty.begin()->second == 27);
    const auto one = atom_census(QuadraticFactor{{Vector::unit(f, 3, 0)}, {}}, *b3);
    REQUIRE(one.size() == 3);
    for (const auto& [label, size] : one) CHECK(size == 9);
  }

  TEST_CASE("atom census matches enumeration and the size bound holds, p=3 n=9") {
    const auto b = trace(3, 9);
    for (std::size_t l = 0; l <= 2; ++l) {
      for (std::size_t q = 0; q <= 2; ++q) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
          const auto fac = random_factor(*b, l, q, seed);
          const auto census = atom_census(fac, *b, 2);
          auto expected = census_oracle(fac, *b);
          for (const auto& [label, size] : census) {
            if (size == 0) continue;
            CHECK(expected[label] == size);
          }
          CHECK(census.size() == oracle::ipow(3, l + q));
          const auto check = check_atom_bound(census, b->field(), 9, l + q, 9);
          CHECK(check.passed);
          // The same bound in floating point, as a sanity check of the
          // exact-integer reformulation.
          const double g = 19683.0, expect = g / std::pow(3.0, double(l + q)), slack = g / std::pow(3.0, 4.5);
          for (const auto& [label, size] : census) CHECK(std::abs(double(size) - expect) <= slack + 1e-9);
        }
      }
    }
  }

  TEST_CASE("atom bound violation is reported") {
    std::map<AtomLabel, std::uint64_t> census{{{0}, 27}, {{1}, 0}, {{2}, 0}};
    const auto check = check_atom_bound(census, Field(3), 3, 1, 3);
    CHECK_FALSE(check.passed);
    REQUIRE(check.violator);
  }

  TEST_CASE("factor json round trip") {
    const auto b = trace(5, 7);
    const auto fac = random_factor(*b, 2, 3, 4);
    const auto back = factor_from_json(b->field(), 7, factor_to_json(fac));
    CHECK(back.linear == fac.linear);
    CHECK(back.quad == fac.quad);
    CHECK_THROWS_AS(validate_factor(QuadraticFactor{{fac.linear[0], fac.linear[0]}, {}}, *b), Error);
    CHECK_THROWS_AS(validate_factor(QuadraticFactor{{}, {1, 1}}, *b), Error);
  }

  TEST_CASE("k=2 table example: the all-A map uses the first row") {
    const auto t = target_values_for_map(Field(3), 2, ContainmentMap(2, 0b1111));
    CHECK(t.source == "row 1");
    CHECK(t.rows[1][0] == 1);
    CHECK(t.cols[1][0] == 0);
    CHECK(t.rows[0][0] == 0);
    CHECK(matches(t, ContainmentMap(2, 0b1111), 3));
  }

  TEST_CASE("k=3 case 4.2 example with phi(0,2) = phi(1,0)") {
    ContainmentMap phi(3, ContainmentMap::full_mask(3));
    phi.set(1, 2, false);
    phi.set(2, 1, false);
    const auto t = target_values_for_map(Field(5), 3, phi);
    CHECK(t.source == "case 4.2");
    CHECK(matches(t, phi, 5));
    // Subtable values: a_1 = (0,1,0), a_2 = (1,0,0), b_1 = (1,0,0), b_2 = (0,1,0).
    CHECK(t.rows[1] == std::vector<Residue>{0, 1, 0});
    CHECK(t.rows[2] == std::vector<Residue>{1, 0, 0});
    CHECK(t.cols[1] == std::vector<Residue>{1, 0, 0});
    CHECK(t.cols[2] == std::vector<Residue>{0, 1, 0});
  }

  TEST_CASE("every map is covered with correct values for all odd primes below 100") {
    for (std::uint32_t p = 3; p < 100; p += 2) {
      if (!ff::is_prime(p)) continue;
      const Field f(p);
      for (std::size_t k : {2u, 3u}) {
        for (std::uint64_t bits = 0; bits < ContainmentMap::count(k); ++bits) {
          const ContainmentMap phi(k, bits);
          const auto t = target_values_for_map(f, k, phi);
          CHECK_MESSAGE(matches(t, phi, p), "p=" << p << " k=" << k << " map " << bits << " via " << t.source);
          CHECK(predicted_map(f, t) == phi);
        }
      }
    }
  }

  TEST_CASE("every case table is used") {
    std::set<std::string> used;
    for (std::uint64_t bits = 0; bits < 512; ++bits) used.insert(target_values_for_map(Field(3), 3, ContainmentMap(3, bits)).source);
    for (const char* name : {"case 1", "case 2", "case 3.1", "case 3.2", "case 3.3", "case 4.1", "case 4.2"})
      CHECK_MESSAGE(used.count(name) == 1, name);
  }

  TEST_CASE("grid symmetries act as relabellings and invert") {
    const Field f(7);
    for (const auto& g : kGridSymmetries) {
      std::set<std::uint64_t> images;
      for (std::uint64_t bits = 0; bits < 512; ++bits)
        images.insert(shatter::row_major_order(apply_symmetry(ContainmentMap(3, bits), g)));
      CHECK(images.size() == 512);  // a permutation of the maps
      for (std::uint64_t bits = 0; bits < 512; bits += 7) {
        const ContainmentMap phi(3, bits);
        const ContainmentMap moved = apply_symmetry(phi, g);
        const auto t = target_values_for_map(f, 3, moved);
        CHECK(matches(unapply_symmetry(t, g), phi, 7));
      }
    }
    ContainmentMap one(3, 0);
    one.set(0, 1, true);
    CHECK(apply_symmetry(one, {true, false, false}).at(1, 0));
    CHECK(apply_symmetry(one, {false, false, true}).at(0, 2));
    CHECK(apply_symmetry(one, {false, true, false}).at(0, 1));
  }

  TEST_CASE("k=2 construction at p=3, n=13") {
    const auto b = trace(3, 13);
    const auto c = construct_shatter_pair(b, 2, 1);
    CHECK(c.x.size() == 2);
    CHECK(c.x[0].is_zero());
    CHECK(c.y[0].is_zero());
    CHECK(c.factor.linear.size() == 4);
    CHECK(c.factor.complexity() == 6);
    CHECK(ff::rank(c.factor.linear, 13) == 4);
    for (std::size_t i = 1; i <= 2; ++i)
      CHECK(oracle::bilinear(plain(b->mat(i)), plain(c.x[1]), plain(c.y[1]), 3) == 0);
    const auto again = construct_shatter_pair(b, 2, 1);
    CHECK(again.x == c.x);
    CHECK(again.y == c.y);
    CHECK(min_dimension(2) == 13);
    CHECK(min_dimension(3) == 31);
    CHECK_THROWS_AS(construct_shatter_pair(trace(3, 11), 2, 1), Error);
  }

  TEST_CASE("k=3 construction at p=3, n=31") {
    const auto b = trace(3, 31);
    const auto c = construct_shatter_pair(b, 3, 2);
    CHECK(c.factor.linear.size() == 12);
    CHECK(ff::rank(c.factor.linear, 31) == 12);
    CHECK(c.factor.complexity() == 15);
    CHECK(c.h_star_dim >= 31 - 24);
    for (std::size_t i = 1; i <= 3; ++i)
      for (std::size_t a = 1; a < 3; ++a)
        for (std::size_t d = 1; d < 3; ++d)
          CHECK(oracle::bilinear(plain(b->mat(i)), plain(c.x[a]), plain(c.y[d]), 3) == 0);
    CHECK(ff::rank(std::vector<Vector>{c.x[1], c.x[2]}, 31) == 2);
    CHECK(ff::rank(std::vector<Vector>{c.y[1], c.y[2]}, 31) == 2);
  }

  TEST_CASE("construction json round trip and tamper detection") {
    const auto c = construct_shatter_pair(trace(3, 13), 2, 3);
    const auto j = construction_to_json(c);
    const auto back = construction_from_json(j);
    CHECK(back.x == c.x);
    CHECK(back.y == c.y);
    auto bad = j;
    bad["Y"][1][0] = (bad["Y"][1][0].get<int>() + 1) % 3;
    CHECK_THROWS_AS(construction_from_json(bad), Error);
  }

  TEST_CASE("every map realised end to end") {
    for (auto [p, k, n] : {std::tuple<std::uint32_t, std::size_t, std::size_t>{3, 2, 13}, {5, 2, 13}, {3, 3, 31}}) {
      const auto c = construct_shatter_pair(trace(p, n), k, 1);
      const auto out = realize_all(c, 1, 0);
      REQUIRE(out.ok());
      CHECK(out.certificate->witnesses.size() == ContainmentMap::count(k));
      const auto j = shatter::certificate_to_json(*out.certificate);
      CHECK(oracle::certificate_valid(j));
      CHECK(shatter::verify_certificate(j).ok);
      const gs::QgsSet a(c.basis);
      CHECK(check_lemma33_range(a, *out.certificate, k));
      for (auto mu : lemma33_mus(a, *out.certificate, 1)) CHECK(mu == 0);
    }
  }

  TEST_CASE("realize_map is deterministic and thread independent") {
    const auto c = construct_shatter_pair(trace(3, 13), 2, 9);
    const gs::QgsSet a(c.basis);
    const ContainmentMap phi(2, 0b0110);
    CHECK(realize_map(c, a, phi, 4) == realize_map(c, a, phi, 4));
    const auto one = realize_all(c, 4, 1), four = realize_all(c, 4, 4);
    CHECK(shatter::certificate_to_json(*one.certificate) == shatter::certificate_to_json(*four.certificate));
  }

  TEST_CASE("prop32_phi examples") {
    const auto phi = prop32_phi();
    CHECK(phi.side() == 4);
    CHECK_FALSE(phi.at(2, 3));
    CHECK(phi.assigned(2, 3));
    CHECK(phi.at(1, 1));
    CHECK_FALSE(phi.assigned(0, 0));
    std::size_t complement = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (phi.assigned(i, j) && !phi.at(i, j)) ++complement;
    CHECK(complement == 6);
  }

  TEST_CASE("prop32 conclusion checker") {
    const auto b = trace(3, 5);
    const gs::QgsSet a(b);
    const auto instances = prop32_instances(a, 6, 1);
    const ff::Space sp(Field(3), 5, 1000);
    std::size_t checked = 0;
    for (const auto& inst : instances) {
      for (std::uint64_t idx = 0; idx < sp.size(); ++idx) {
        const auto z = sp.at(idx);
        ContainmentMap with_a = prop32_phi().with(0, 0, true), with_c = prop32_phi().with(0, 0, false);
        if (!shatter::vc2_realizes(a, inst.x, inst.y, with_a, z) && !shatter::vc2_realizes(a, inst.x, inst.y, with_c, z)) {
          CHECK_THROWS_AS(check_prop32_conclusion(a, inst.x, inst.y, inst.m, z), Error);
          continue;
        }
        const auto r = check_prop32_conclusion(a, inst.x, inst.y, inst.m, z);
        CHECK_MESSAGE(r.passed, r.detail);
        for (std::size_t t = 1; t < inst.m; ++t) {
          CHECK(a.eval_q(t, z) == 0);
          for (std::size_t i = 1; i < 4; ++i) CHECK(a.eval_q(t, inst.x[i] + z) == 0);
        }
        ++checked;
      }
    }
    MESSAGE("realising shifts checked: " << checked);
  }

  TEST_CASE("prop32 suite at p=3, n=5") {
    const gs::QgsSet a(trace(3, 5));
    const auto r = run_prop32_suite(a, 20, 1, 0);
    CHECK(r.passed);
    CHECK(r.instances.size() == 20);
    CHECK(r.vacuous < 20);
    const auto again = run_prop32_suite(a, 20, 1, 1);
    CHECK(again.checked_z == r.checked_z);
  }

  TEST_CASE("mu range check examples") {
    CHECK(lemma33_range_holds(Field(3), {0, 1, 2}));
    CHECK_FALSE(lemma33_range_holds(Field(7), {0, 3}));
    CHECK(lemma33_range_holds(Field(7), {0, 1, 2, 5, 6}));
  }
}
