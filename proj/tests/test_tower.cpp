#include "doctest.h"

#include <random>

#include "arbor/errors.hpp"
#include "arbor/extension.hpp"
#include "arbor/tower.hpp"
#include "support.hpp"

using namespace arbor;

namespace {

  Alphabet const ab(2);

  Tower make_tower(char const* base, std::vector<std::uint32_t> primes, std::size_t max_level = 3) {
    TowerSpec spec;
    spec.base      = builtin_group(base);
    spec.primes    = std::move(primes);
    spec.max_level = max_level;
    return Tower(std::move(spec));
  }

  std::size_t support_size(TowerElement x) {
    std::size_t biggest = 0;
    while (x.level() > 0) {
      biggest = std::max(biggest, x.cocycle().size());
      x       = x.below();
    }
    return biggest;
  }

  CoreGraph core_of(std::initializer_list<char const*> gens) {
    std::vector<Word> ws;
    for (auto g : gens) {
      ws.push_back(ab.parse(g));
    }
    return subgroup_core(ws);
  }

}  // namespace

TEST_CASE("tower: construction errors") {
  CHECK_THROWS_AS(make_tower("C2xC2", {}), InputError);
  CHECK_THROWS_AS(make_tower("C2xC2", {4}), InputError);
  CHECK_THROWS_AS(make_tower("C2", {2}), PreconditionError);
  auto const t = make_tower("C2xC2", {2, 2}, 1);
  CHECK(t.top_level() == 1);
  CHECK_THROWS_AS((void) tower_evaluate(t, 2, ab.parse("a")), PreconditionError);
  CHECK_THROWS_AS((void) tower_equal(t.identity(0), t.identity(1)), PreconditionError);
}

TEST_CASE("tower: level 0 is the base group") {
  auto const      t = make_tower("S3", {2});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto const w = testing::random_word(rng, rng() % 12);
    auto const x = tower_evaluate(t, 0, w);
    CHECK(x.level() == 0);
    CHECK(x.base_id() == t.spec().base.evaluate(w));
  }
}

TEST_CASE("tower: level 1 matches the universal extension") {
  for (auto [base, p] : {std::pair{"C2xC2", 2u}, std::pair{"C3", 3u}, std::pair{"S3", 2u}}) {
    auto const      t = make_tower(base, {p});
    auto const&     g = t.spec().base;
    std::mt19937_64 rng(p);
    for (int i = 0; i < 500; ++i) {
      auto const w = testing::random_word(rng, rng() % 16);
      auto const x = tower_evaluate(t, 1, w);
      auto const e = ext_evaluate(g, p, w);
      CHECK(x.below().base_id() == e.base);
      std::map<Edge, std::uint32_t> as_edges;
      for (auto const& [key, r] : x.cocycle()) {
        as_edges.emplace(Edge{key.first.base_id(), key.second}, r);
      }
      CHECK(as_edges == e.cocycle);
    }
  }
}

TEST_CASE("tower: equality examples") {
  auto const t = make_tower("C2xC2", {2, 2});
  auto const x = tower_evaluate(t, 2, ab.parse("a b a"));
  CHECK(tower_equal(x, x));
  auto const w = ab.parse("a b b^-1 a^-1 b a a^-1");
  CHECK(tower_equal(tower_evaluate(t, 2, w), tower_evaluate(t, 2, reduce(w))));
  CHECK_FALSE(tower_equal(tower_evaluate(t, 1, ab.parse("a b")), tower_evaluate(t, 1, ab.parse("b a"))));
  CHECK(tower_equal(tower_evaluate(t, 0, ab.parse("a b")), tower_evaluate(t, 0, ab.parse("b a"))));

  auto const comm = tower_evaluate(t, 2, ab.parse("a b a^-1 b^-1"));
  CHECK_FALSE(tower_equal(comm, t.identity(2)));
  CHECK(comm.cocycle().size() <= 8);
  CHECK(support_size(comm) <= 4);
}

TEST_CASE("tower: projection, homomorphism and support") {
  auto const      t = make_tower("C2xC2", {2, 3, 2});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto const u = testing::random_word(rng, rng() % 14);
    for (std::size_t n = 1; n <= 3; ++n) {
      auto const x = tower_evaluate(t, n, u);
      CHECK(t.project(x, n - 1) == tower_evaluate(t, n - 1, u));
      CHECK(x.below() == tower_evaluate(t, n - 1, u));
      CHECK(support_size(x) <= u.size());
    }
  }
}

TEST_CASE("tower: level-2 group axioms") {
  auto const      t = make_tower("D4", {2, 2});
  std::mt19937_64 rng(5);
  auto const      e = t.identity(2);
  for (int i = 0; i < 100; ++i) {
    auto const u = testing::random_word(rng, rng() % 10);
    auto const v = testing::random_word(rng, rng() % 10);
    auto const w = testing::random_word(rng, rng() % 10);
    auto const x = tower_evaluate(t, 2, u);
    auto const y = tower_evaluate(t, 2, v);
    auto const z = tower_evaluate(t, 2, w);
    CHECK(t.multiply(t.multiply(x, y), z) == t.multiply(x, t.multiply(y, z)));
    CHECK(t.multiply(x, y) == tower_evaluate(t, 2, concat(u, v)));
    CHECK(t.multiply(x, tower_evaluate(t, 2, invert(u))) == e);
    CHECK(t.inverse(x) == tower_evaluate(t, 2, invert(u)));
    CHECK(t.multiply(e, x) == x);
  }
}

TEST_CASE("tower: encoding round trip") {
  auto const      t = make_tower("C3", {2, 3});
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    auto const x = tower_evaluate(t, rng() % 3, testing::random_word(rng, rng() % 10));
    auto const y = decode_tower_element(x.encoding());
    CHECK(y == x);
    CHECK(y.level() == x.level());
  }
  CHECK(t.identity(0).encoding() == "g0");
  CHECK(t.identity(1).encoding() == "e1(2:g0|)");
  CHECK_THROWS_AS((void) decode_tower_element("e1(2:g0|"), InputError);
  CHECK_THROWS_AS((void) decode_tower_element("e2(2:g0|)"), InputError);
  CHECK_THROWS_AS((void) decode_tower_element("e1(2:g0|2:g1,0,0;)"), InputError);
  CHECK_THROWS_AS((void) decode_tower_element("e1(2:g0|2:g1,0,1;2:g0,0,1;)"), InputError);
}

TEST_CASE("tower: enumerated levels") {
  CHECK(make_tower("C2xC2", {2}).enumerate(1).order() == 128);
  CHECK(make_tower("C3", {2}).enumerate(1).order() == 48);
  CHECK(make_tower("C3", {3}).enumerate(1).order() == 243);
  auto const t = make_tower("C2xC2", {2, 2});
  CHECK(*t.order(1) == ext_order(builtin_group("C2xC2"), 2));
  CHECK(*t.order(2) == BigInt(128) * (BigInt(1) << 129));
  CHECK_FALSE(t.enumerable(2));
  CHECK_THROWS_AS((void) t.enumerate(2), BudgetExceeded);
  auto const id = make_tower("C2xC2", {1});
  CHECK(id.enumerate(1).order() == 4);
  CHECK(id.name(1) == "C2xC2^id");
  CHECK(t.name(2) == "C2xC2^C2^C2");
}

TEST_CASE("treelike campaign examples") {
  auto const v = treelike_campaign(make_tower("C2xC2", {2}), 1, Exhaustive{});
  REQUIRE(v.levels.size() == 1);
  CHECK(v.levels[0].method == "lifting");
  CHECK(v.levels[0].report.constellations == 50094);
  CHECK(v.passed());

  CHECK(treelike_campaign(make_tower("C3", {2}), 1, Exhaustive{}).passed());

  auto const id = treelike_campaign(make_tower("C2xC2", {1}), 1, Exhaustive{});
  CHECK_FALSE(id.passed());
  CHECK(id.levels[0].report.counterexamples > 0);
  CHECK_FALSE(id.budget_exceeded());

  CHECK_THROWS_AS((void) treelike_campaign(make_tower("C2xC2", {2}), 2, Exhaustive{}),
                  PreconditionError);
}

TEST_CASE("treelike campaign: elementwise level") {
  auto const r = treelike_campaign(make_tower("C2xC2", {2, 2}), 2, Sampled{300, 6, 4});
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[0].method == "lifting");
  CHECK(r.levels[1].method == "elementwise");
  CHECK(r.levels[1].report.constellations > 0);
  CHECK(r.levels[1].certificates == r.levels[1].report.constellations);
  CHECK(r.passed());

  // Exhaustive search over Γ(G1) is far beyond the edge budget.
  auto const over = treelike_campaign(make_tower("C2xC2", {2, 2}), 2, Exhaustive{});
  CHECK(over.levels[0].passed());
  CHECK_FALSE(over.levels[1].error.empty());
  CHECK(over.budget_exceeded());
  CHECK_FALSE(over.passed());
}

TEST_CASE("rz experiment examples") {
  auto const t = make_tower("C2xC2", {2});
  std::vector<CoreGraph> hk{core_of({"a"}), core_of({"b"})};

  auto const member = rz_experiment(t, hk, ab.parse("a b"));
  CHECK(member.member);
  CHECK(member.status() == "member");
  CHECK(member.levels.empty());

  auto const r = rz_experiment(t, hk, ab.parse("b a"));
  CHECK_FALSE(r.member);
  CHECK(r.status() == "separated");
  REQUIRE(r.levels.size() == 2);
  CHECK_FALSE(r.levels[0].separated);
  CHECK(r.levels[0].product_size == 4);
  CHECK(r.levels[1].separated);
  CHECK(r.levels[1].product_size == 16);
  CHECK(r.separated_at == 1);

  std::vector<CoreGraph> aa{core_of({"a"}), core_of({"a"})};
  CHECK(rz_experiment(t, aa, ab.parse("a^3")).member);

  // Not separated by the top level.
  auto const stuck = rz_experiment(t, hk, ab.parse("b a"), 0);
  CHECK(stuck.status() == "inconclusive");
  CHECK_FALSE(stuck.stopped.empty());

  auto const deep = rz_experiment(make_tower("C2xC2", {1, 2}), hk, ab.parse("b a b a"));
  CHECK(deep.status() == "separated");
  CHECK(deep.separated_at == 2);
}

TEST_CASE("rz experiment: members are never separated") {
  auto const      t = make_tower("S3", {2});
  std::mt19937_64 rng(9);
  std::size_t     members = 0;
  for (int i = 0; i < 40; ++i) {
    std::vector<CoreGraph> cores;
    for (int k = 0; k < 2; ++k) {
      cores.push_back(subgroup_core({testing::random_reduced_word(rng, 1 + rng() % 3)}));
    }
    for (int j = 0; j < 20; ++j) {
      auto const w = testing::random_reduced_word(rng, rng() % 6);
      auto const r = rz_experiment(t, cores, w, 1);
      if (r.member) {
        ++members;
        for (std::size_t n = 0; n <= 1; ++n) {
          CHECK_FALSE(image_product_check(t, cores, w, n).separated);
        }
      } else if (r.separated_at) {
        CHECK(r.levels.back().separated);
      }
    }
  }
  CHECK(members > 0);
}
