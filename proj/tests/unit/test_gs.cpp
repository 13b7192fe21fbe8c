#include <doctest.h>

#include <map>
#include <memory>

#include "ff/space.hpp"
#include "gs/sets.hpp"
#include "helpers.hpp"
#include "highrank/basis.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace vc2;
using namespace vc2::gs;
using testing::plain;
using testing::vec;

namespace {

std::shared_ptr<const HighRankBasis> trace(std::uint32_t p, std::size_t n) {
  return std::make_shared<const HighRankBasis>(highrank::build_trace_basis(Field(p), n));
}

Vector random_vector(const Field& f, std::size_t n, Rng& rng) {
  Vector v(f, n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng.below(f.p()));
  return v;
}

std::vector<oracle::Mat> plain_mats(const HighRankBasis& b) {
  std::vector<oracle::Mat> out;
  for (const auto& m : b.mats()) out.push_back(plain(m));
  return out;
}

}  // namespace

TEST_SUITE("gs-sets") {
  TEST_CASE("fnz examples") {
    const Field f(3);
    CHECK(fnz(vec(f, {0, 0, 0})) == 4);
    CHECK(fnz(vec(f, {0, 2, 1})) == 2);
    CHECK(fnz(vec(Field(7), {1, 0})) == 1);
  }

  TEST_CASE("gs membership examples") {
    const Field f(3);
    const GsSet a(f, 3);
    CHECK_FALSE(gs_contains(a, vec(f, {0, 0, 0})));
    CHECK(gs_contains(a, vec(f, {0, 1, 2})));
    CHECK_FALSE(gs_contains(a, vec(f, {2, 1, 0})));
  }

  TEST_CASE("|GS(3,4)| = 40 and matches the oracle everywhere") {
    const Field f(3);
    const GsSet a(f, 4);
    const ff::Space s(f, 4, 100);
    std::size_t in = 0, other = 0;
    for (std::uint64_t i = 0; i < s.size(); ++i) {
      const auto x = s.at(i);
      CHECK(a.contains(x) == oracle::in_gs(plain(x), 3));
      if (a.contains(x)) ++in;
      else if (!x.is_zero()) ++other;
    }
    CHECK(in == 40);
    CHECK(in + other + 1 == 81);
  }

  TEST_CASE("eval_q examples") {
    const Field f(3);
    const auto b = trace(3, 3);
    const QgsSet a(b);
    for (std::size_t t = 1; t <= 3; ++t) CHECK(a.eval_q(t, Vector(f, 3)) == 0);
    const HighRankBasis id(f, 3, {ff::Matrix::identity(f, 3), b->mat(2), b->mat(3)});
    const QgsSet with_id(std::make_shared<const HighRankBasis>(id));
    CHECK(eval_q(with_id, 1, vec(f, {1, 1, 0})) == 2);
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      const auto x = random_vector(f, 3, rng);
      for (std::size_t t = 1; t <= 3; ++t) CHECK(a.eval_q(t, -x) == a.eval_q(t, x));
    }
    CHECK_THROWS_AS(a.eval_q(0, Vector(f, 3)), Error);
    CHECK_THROWS_AS(a.eval_q(4, Vector(f, 3)), Error);
  }

  TEST_CASE("qgs membership examples and oracle agreement") {
    const Field f(3);
    const auto b = trace(3, 4);
    const QgsSet a(b);
    const auto mats = plain_mats(*b);
    CHECK_FALSE(qgs_contains(a, Vector(f, 4)));
    const ff::Space s(f, 4, 100);
    bool saw_one = false, saw_two = false;
    for (std::uint64_t i = 0; i < s.size(); ++i) {
      const auto x = s.at(i);
      CHECK(a.contains(x) == oracle::in_qgs(mats, plain(x), 3));
      if (a.eval_q(1, x) == 1) {
        CHECK(a.contains(x));
        saw_one = true;
      }
      if (a.eval_q(1, x) == 2) {
        CHECK_FALSE(a.contains(x));
        saw_two = true;
      }
    }
    CHECK(saw_one);
    CHECK(saw_two);
  }

  TEST_CASE("qgs membership depends only on the Q sequence") {
    const Field f(3);
    const auto b = trace(3, 5);
    const QgsSet a(b);
    const ff::Space s(f, 5, 1000);
    std::map<std::vector<Residue>, bool> verdict;
    for (std::uint64_t i = 0; i < s.size(); ++i) {
      const auto x = s.at(i);
      std::vector<Residue> q;
      for (std::size_t t = 1; t <= 5; ++t) q.push_back(a.eval_q(t, x));
      const auto [it, fresh] = verdict.emplace(q, a.contains(x));
      CHECK(it->second == a.contains(x));
      CHECK(first_nonzero_is_one(q) == a.contains(x));
    }
    CHECK(verdict.size() < s.size());  // collisions did happen
  }

  TEST_CASE("cross_term examples") {
    const Field f(5);
    const auto b = trace(5, 4);
    const QgsSet a(b);
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
      const auto x = random_vector(f, 4, rng), y = random_vector(f, 4, rng);
      for (std::size_t t = 1; t <= 4; ++t) {
        CHECK(cross_term(a, t, x, Vector(f, 4)) == 0);
        CHECK(a.cross_term(t, x, y) == a.cross_term(t, y, x));
        CHECK(a.cross_term(t, x, y) == oracle::mod(2 * oracle::bilinear(plain(b->mat(t)), plain(x), plain(y), 5), 5));
      }
    }
  }

  TEST_CASE("expansion identity on random instances") {
    const Field f(3);
    const auto b = trace(3, 9);
    const QgsSet a(b);
    const auto mats = plain_mats(*b);
    Rng rng(31);
    for (int i = 0; i < 2000; ++i) {
      const auto x = random_vector(f, 9, rng), y = random_vector(f, 9, rng), z = random_vector(f, 9, rng);
      const std::size_t t = 1 + rng.below(9);
      const auto lhs = a.eval_q(t, x + y + z);
      const auto rhs = f.add(f.sub(f.add(a.eval_q(t, x + z), a.eval_q(t, y + z)), a.eval_q(t, z)), a.cross_term(t, x, y));
      CHECK(lhs == rhs);
      CHECK(lhs == oracle::quad_form(mats[t - 1], plain(x + y + z), 3));
    }
  }

  TEST_CASE("oracle descriptions round trip") {
    const Field f(3);
    const GsSet g(f, 3);
    const QgsSet q(trace(3, 3));
    std::vector<bool> members(9, false);
    members[1] = members[5] = true;
    const ExplicitSet e(f, 2, members);
    for (const MembershipOracle* o : {static_cast<const MembershipOracle*>(&g), static_cast<const MembershipOracle*>(&q),
                                      static_cast<const MembershipOracle*>(&e)}) {
      const auto back = oracle_from_json(o->describe());
      const ff::Space s(f, o->dimension(), 100);
      for (std::uint64_t i = 0; i < s.size(); ++i) CHECK(back->contains(s.at(i)) == o->contains(s.at(i)));
    }
    CHECK_THROWS_AS(oracle_from_json(nlohmann::json{{"type", "nope"}}), Error);
  }

  TEST_CASE("qgs rejects a basis of the wrong shape") {
    const Field f(3);
    const auto b = std::make_shared<const HighRankBasis>(f, 2, std::vector<ff::Matrix>{ff::Matrix::identity(f, 2)});
    CHECK_THROWS_AS(QgsSet{b}, Error);
  }
}
