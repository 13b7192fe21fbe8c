#include <doctest.h>

#include <memory>

#include "ff/space.hpp"
#include "gs/sets.hpp"
#include "helpers.hpp"
#include "highrank/basis.hpp"
#include "shatter/certificate.hpp"
#include "shatter/engine.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace vc2;
using namespace vc2::shatter;
using gs::ExplicitSet;
using gs::GsSet;
using gs::QgsSet;
using testing::plain;
using testing::vec;

namespace {

std::vector<bool> table(const gs::MembershipOracle& a) {
  const ff::Space s(a.field(), a.dimension(), 1'000'000);
  std::vector<bool> t(s.size());
  for (std::uint64_t i = 0; i < s.size(); ++i) t[i] = a.contains(s.at(i));
  return t;
}

ExplicitSet random_set(const Field& f, std::size_t n, Rng& rng) {
  const std::uint64_t size = oracle::ipow(f.p(), n);
  std::vector<bool> m(size);
  for (std::uint64_t i = 0; i < size; ++i) m[i] = rng.below(2) == 1;
  return ExplicitSet(f, n, m);
}

}  // namespace

TEST_SUITE("shatter-engine") {
  TEST_CASE("pattern_signature examples") {
    const Field f(3);
    const GsSet a(f, 3);
    const std::vector<Vector> zero{Vector(f, 3)};
    CHECK(pattern_signature(a, zero, vec(f, {1, 0, 0})) == 1);
    CHECK(pattern_signature(a, zero, vec(f, {2, 0, 0})) == 0);
    const std::vector<Vector> s{vec(f, {0, 0, 0}), vec(f, {0, 1, 2}), vec(f, {0, 2, 1})};
    std::uint32_t expected = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (oracle::in_gs(plain(s[i]), 3)) expected |= 1u << i;
    CHECK(pattern_signature(a, s, Vector(f, 3)) == expected);
    CHECK(expected == 2);
  }

  TEST_CASE("the three-point set is shattered in GS(3,n)") {
    for (std::size_t n = 3; n <= 5; ++n) {
      const Field f(3);
      const GsSet a(f, n);
      std::vector<Vector> s(3, Vector(f, n));
      s[1].set(1, 1);
      s[1].set(2, -1);
      s[2].set(1, -1);
      s[2].set(2, 1);
      const auto r = shatters(a, s);
      REQUIRE(std::holds_alternative<ShatterCertificate>(r));
      const auto j = certificate_to_json(std::get<ShatterCertificate>(r));
      CHECK(oracle::certificate_valid(j));
      CHECK(verify_certificate(j).ok);
    }
  }

  TEST_CASE("{0, w2} is shattered in GS(5,n) using translates 0, w1, -w1, w2") {
    for (std::size_t n = 2; n <= 3; ++n) {
      const Field f(5);
      const GsSet a(f, n);
      const std::vector<Vector> s{Vector(f, n), Vector::unit(f, n, 1)};
      CHECK(std::holds_alternative<ShatterCertificate>(shatters(a, s)));
      std::set<std::uint32_t> seen;
      for (const auto& y : {Vector(f, n), Vector::unit(f, n, 0), -Vector::unit(f, n, 0), Vector::unit(f, n, 1)}) {
        std::uint32_t pat = 0;
        for (std::size_t i = 0; i < 2; ++i)
          if (oracle::in_gs(plain(s[i] + y), 5)) pat |= 1u << i;
        seen.insert(pat);
      }
      CHECK(seen.size() == 4);
    }
  }

  TEST_CASE("no 4-set is shattered in GS(3,4)") {
    const Field f(3);
    const GsSet a(f, 4);
    const ff::Space sp(f, 4, 100);
    Rng rng(4);
    for (int trial = 0; trial < 400; ++trial) {
      std::set<std::uint64_t> idx{0};
      while (idx.size() < 4) idx.insert(rng.below(81));
      std::vector<Vector> s;
      for (auto i : idx) s.push_back(sp.at(i));
      const auto r = shatters(a, s);
      REQUIRE(std::holds_alternative<NotShattered>(r));
      CHECK(std::get<NotShattered>(r).missing < 16);
    }
  }

  TEST_CASE("shatters reports the smallest missing pattern") {
    const Field f(3);
    std::vector<bool> members(9, false);
    const ExplicitSet empty(f, 2, members);
    const auto r = shatters(empty, {Vector(f, 2)});
    REQUIRE(std::holds_alternative<NotShattered>(r));
    CHECK(std::get<NotShattered>(r).missing == 1);
  }

  TEST_CASE("size limits") {
    const Field f(3);
    const GsSet a(f, 3);
    CHECK_THROWS_AS(shatters(a, std::vector<Vector>(21, Vector(f, 3))), Error);
    const GsSet huge(f, 20);
    CHECK_THROWS_AS(shatters(huge, {Vector(f, 20)}), Error);
  }

  TEST_CASE("vc_dim examples") {
    CHECK(vc_dim(GsSet(Field(3), 3), 20).dimension == 3);
    CHECK(vc_dim(GsSet(Field(5), 2), 20).dimension == 2);
    const Field f(3);
    CHECK(vc_dim(ExplicitSet(f, 2, std::vector<bool>(9, true)), 20).dimension == 0);
    CHECK(vc_dim(ExplicitSet(f, 2, std::vector<bool>(9, false)), 20).dimension == 0);
  }

  TEST_CASE("vc_dim of GS(3,2) is reported and agrees with the oracle") {
    const GsSet a(Field(3), 2);
    const auto r = vc_dim(a, 20);
    CHECK(r.dimension == oracle::vc_dim(table(a), 3, 2));
    MESSAGE("vc_dim(GS(3,2)) = " << r.dimension);
  }

  TEST_CASE("vc_dim certificate is valid and respects k_max") {
    const GsSet a(Field(3), 4);
    const auto r = vc_dim(a, 20);
    CHECK(r.dimension == 3);
    CHECK(r.certificate.s.size() == 3);
    CHECK(r.certificate.s[0].is_zero());
    CHECK(oracle::certificate_valid(certificate_to_json(r.certificate)));
    CHECK(vc_dim(a, 2).dimension == 2);
  }

  TEST_CASE("vc_dim is thread-count independent") {
    const GsSet a(Field(3), 4);
    const auto one = vc_dim(a, 20, 1), four = vc_dim(a, 20, 4);
    CHECK(one.dimension == four.dimension);
    CHECK(certificate_to_json(one.certificate) == certificate_to_json(four.certificate));
  }

  TEST_CASE("vc_dim agrees with the naive oracle on random subsets") {
    Rng rng(2024);
    for (auto [p, n] : {std::pair<std::uint32_t, std::size_t>{3, 2}, {5, 1}, {3, 1}, {7, 1}}) {
      const Field f(p);
      for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_set(f, n, rng);
        CHECK(vc_dim(a, 20).dimension == oracle::vc_dim(table(a), p, n));
      }
    }
  }

  TEST_CASE("translation invariance and monotonicity") {
    Rng rng(77);
    const Field f(3);
    const ff::Space sp(f, 3, 100);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_set(f, 3, rng);
      const auto r = vc_dim(a, 20);
      if (r.dimension < 2) continue;
      const auto& s = r.certificate.s;
      const Vector t = sp.at(rng.below(27));
      std::vector<Vector> shifted;
      for (const auto& x : s) shifted.push_back(x + t);
      const auto moved = shatters(a, shifted);
      REQUIRE(std::holds_alternative<ShatterCertificate>(moved));
      const auto& w = std::get<ShatterCertificate>(moved).witnesses;
      for (std::size_t pat = 0; pat < w.size(); ++pat) CHECK(pattern_signature(a, s, w[pat] + t) == pat);
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        auto sub = s;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
        CHECK(std::holds_alternative<ShatterCertificate>(shatters(a, sub)));
      }
    }
  }

  TEST_CASE("vc2_realizes examples") {
    const Field f(3);
    const QgsSet a(std::make_shared<const highrank::HighRankBasis>(highrank::build_trace_basis(f, 3)));
    const std::vector<Vector> zero{Vector(f, 3)};
    CHECK(vc2_realizes(a, zero, zero, ContainmentMap(1, 0), Vector(f, 3)));
    CHECK_FALSE(vc2_realizes(a, zero, zero, ContainmentMap(1, 1), Vector(f, 3)));
    CHECK_THROWS_AS(vc2_realizes(a, zero, zero, ContainmentMap(2, 0), Vector(f, 3)), Error);
  }

  TEST_CASE("an empty set fails first at the all-A map") {
    const Field f(3);
    const ExplicitSet empty(f, 2, std::vector<bool>(9, false));
    const std::vector<Vector> x{Vector(f, 2), vec(f, {1, 0})};
    const auto out = vc2_shatters(empty, x, x, ExhaustiveZ{});
    REQUIRE_FALSE(out.ok());
    CHECK(out.failed_at->bits() == ContainmentMap::full_mask(2));
    CHECK(row_major_order(*out.failed_at) == 0);
  }

  TEST_CASE("row-major order puts A before A^C cell by cell") {
    CHECK(row_major_order(ContainmentMap(2, 0b1111)) == 0);
    CHECK(row_major_order(ContainmentMap(2, 0)) == 15);
    // Cell (0,0) is the most significant position.
    CHECK(row_major_order(ContainmentMap(2, 0b1110)) == 8);
    CHECK(row_major_order(ContainmentMap(2, 0b0111)) == 1);
  }

  TEST_CASE("exhaustive VC2 check on a small QGS with a valid certificate") {
    const Field f(3);
    const auto b = std::make_shared<const highrank::HighRankBasis>(highrank::build_trace_basis(f, 5));
    const QgsSet a(b);
    const ff::Space sp(f, 5, 1000);
    Rng rng(12);
    bool any_ok = false;
    for (int trial = 0; trial < 30 && !any_ok; ++trial) {
      const std::vector<Vector> x{Vector(f, 5), sp.at(1 + rng.below(242))};
      const std::vector<Vector> y{Vector(f, 5), sp.at(1 + rng.below(242))};
      const auto one = vc2_shatters(a, x, y, ExhaustiveZ{}, 1);
      const auto many = vc2_shatters(a, x, y, ExhaustiveZ{}, 4);
      CHECK(one.ok() == many.ok());
      if (!one.ok()) continue;
      any_ok = true;
      const auto j = certificate_to_json(*one.certificate);
      CHECK(j == certificate_to_json(*many.certificate));
      CHECK(oracle::certificate_valid(j));
      CHECK(verify_certificate(j).ok);
    }
    CHECK(any_ok);
  }

  TEST_CASE("a finder returning a wrong z is caught") {
    const Field f(3);
    const GsSet a(f, 2);
    const std::vector<Vector> x{Vector(f, 2), vec(f, {0, 1})};
    ZFinder liar = [&](const ContainmentMap&, std::uint64_t) { return std::optional<Vector>(Vector(f, 2)); };
    CHECK_THROWS_AS(vc2_shatters(a, x, x, liar), Error);
  }

  TEST_CASE("verifier rejects tampering and malformed input without throwing") {
    const Field f(3);
    const GsSet a(f, 3);
    const auto r = shatters(a, {Vector(f, 3), vec(f, {0, 1, 2}), vec(f, {0, 2, 1})});
    const auto j = certificate_to_json(std::get<ShatterCertificate>(r));
    auto bad = j;
    bad["witnesses"][3]["y"][0] = (bad["witnesses"][3]["y"][0].get<int>() + 1) % 3;
    CHECK_FALSE(oracle::certificate_valid(bad));
    CHECK_FALSE(verify_certificate(bad).ok);
    bad = j;
    bad["witnesses"].erase(2);
    CHECK_FALSE(verify_certificate(bad).ok);
    CHECK_FALSE(verify_certificate(nlohmann::json::array()).ok);
    CHECK_FALSE(verify_certificate(nlohmann::json{{"kind", "vc2"}}).ok);
    CHECK_FALSE(verify_certificate(nlohmann::json{{"kind", 7}}).ok);
  }
}
