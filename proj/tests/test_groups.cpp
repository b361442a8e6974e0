#include "doctest.h"

#include <numeric>
#include <random>

#include "arbor/errors.hpp"
#include "arbor/groups.hpp"
#include "support.hpp"

using namespace arbor;

namespace {

  Alphabet const ab(2);

  // Element order by brute force on permutation powers of a witness word.
  std::uint64_t order_by_powers(FinGroup const& g, ElementId x) {
    Word const        w  = g.witness(x);
    Permutation const id = g.evaluate_permutation(Word());
    Word              power;
    for (std::uint64_t k = 1;; ++k) {
      power.append(w);
      if (g.evaluate_permutation(power) == id) {
        return k;
      }
    }
  }

}  // namespace

TEST_CASE("builtin groups have the documented orders") {
  CHECK(builtin_group("trivial").order() == 1);
  CHECK(builtin_group("C2").order() == 2);
  CHECK(builtin_group("C3").order() == 3);
  CHECK(builtin_group("C2xC2").order() == 4);
  CHECK(builtin_group("S3").order() == 6);
  CHECK(builtin_group("D4").order() == 8);
  CHECK(builtin_group("S4").order() == 24);
  CHECK(builtin_group("A5").order() == 60);
  CHECK_THROWS_AS((void) builtin_group("Q8"), InputError);
  CHECK_THROWS_AS((void) builtin_group("D2"), InputError);
}

TEST_CASE("generator assignments") {
  auto const s3 = builtin_group("S3");
  CHECK(s3.generator(0) == Permutation{1, 0, 2});
  CHECK(s3.generator(1) == Permutation{1, 2, 0});
  auto const c3 = builtin_group("C3");
  // b = a^2
  CHECK(c3.evaluate(ab.parse("b")) == c3.evaluate(ab.parse("a a")));
}

TEST_CASE("separation assumption") {
  CHECK(builtin_group("C2xC2").separated());
  CHECK(builtin_group("C3").separated());
  CHECK(builtin_group("S3").separated());
  CHECK(builtin_group("D4").separated());
  CHECK(builtin_group("A5").separated());
  CHECK_FALSE(builtin_group("C2").separated());
  CHECK_FALSE(builtin_group("trivial").separated());
}

TEST_CASE("evaluate") {
  auto const c3 = builtin_group("C3");
  CHECK(c3.evaluate(ab.parse("a b")) == c3.identity());
  auto const v4 = builtin_group("C2xC2");
  // (1,0)+(0,1) = (1,1): the regular-representation permutation (0 3)(1 2).
  auto const x = v4.evaluate(ab.parse("a b"));
  CHECK(v4.evaluate_permutation(ab.parse("a b")) == Permutation{3, 2, 1, 0});
  CHECK(x != v4.identity());
  CHECK(x != v4.evaluate(ab.parse("a")));
  CHECK(x != v4.evaluate(ab.parse("b")));
  CHECK(v4.find(Permutation{3, 2, 1, 0}) == x);
  CHECK(v4.evaluate(Word()) == v4.identity());
  CHECK_THROWS_AS((void) v4.evaluate(Word{Letter(2)}), InputError);
}

TEST_CASE("evaluate is a morphism and kills free reduction") {
  std::mt19937_64 rng(11);
  for (auto const& name : builtin_group_names()) {
    auto const g = builtin_group(name);
    for (int trial = 0; trial < 100; ++trial) {
      auto const u = testing::random_word(rng, rng() % 20);
      auto const v = testing::random_word(rng, rng() % 20);
      CHECK(g.evaluate(concat(u, v)) == g.multiply(g.evaluate(u), g.evaluate(v)));
      CHECK(g.evaluate(u) == g.evaluate(reduce(u)));
      CHECK(g.evaluate(invert(u)) == g.inverse(g.evaluate(u)));
    }
  }
}

TEST_CASE("witness words evaluate to their element and are shortest") {
  auto const g = builtin_group("S4");
  for (ElementId x = 0; x < g.order(); ++x) {
    CHECK(g.evaluate(g.witness(x)) == x);
  }
  CHECK(g.witness(0).empty());
  CHECK(g.witness(g.evaluate(ab.parse("a"))).size() == 1);
}

TEST_CASE("enumeration budget overflow is an error") {
  auto const a5 = builtin_group("A5").with_budget(10);
  CHECK_THROWS_AS((void) a5.order(), BudgetExceeded);
  CHECK(builtin_group("A5").with_budget(60).order() == 60);
}

TEST_CASE("canonical morphisms") {
  auto const d4 = builtin_group("D4");
  auto const v4 = builtin_group("C2xC2");
  auto const c4 = builtin_group("C4");
  auto const phi = canonical_morphism(d4, v4);
  REQUIRE(phi);
  CHECK(phi->size() == 8);
  CHECK_FALSE(canonical_morphism(v4, c4));
  auto const id = canonical_morphism(d4, d4);
  REQUIRE(id);
  for (ElementId x = 0; x < 8; ++x) {
    CHECK((*id)[x] == x);
  }

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto const w = testing::random_word(rng, rng() % 30);
    CHECK((*phi)[d4.evaluate(w)] == v4.evaluate(w));
  }
  // Surjective.
  std::vector<bool> hit(4, false);
  for (auto y : *phi) {
    hit[y] = true;
  }
  CHECK(std::find(hit.begin(), hit.end(), false) == hit.end());
}

TEST_CASE("exponent") {
  CHECK(exponent(builtin_group("C2")) == 2);
  CHECK(exponent(builtin_group("C2xC2")) == 2);
  CHECK(exponent(builtin_group("A5")) == 30);
  for (auto const& name : {"S3", "D4", "A5", "C5"}) {
    auto const    g = builtin_group(name);
    std::uint64_t e = 1;
    for (ElementId x = 0; x < g.order(); ++x) {
      auto const o = order_by_powers(g, x);
      CHECK(g.element_order(x) == o);
      e = std::lcm(e, o);
    }
    CHECK(exponent(g) == e);
  }
}

TEST_CASE("subdirect products") {
  auto const s3 = builtin_group("S3");
  CHECK(subdirect({s3}).order() == 6);
  CHECK(subdirect({s3, s3}).order() == 6);
  auto const c2 = builtin_group("C2");
  auto const c3 = builtin_group("C3");
  auto const p  = subdirect({c2, c3});
  CHECK(p.order() == 6);
  CHECK(canonical_morphism(p, c2));
  CHECK(canonical_morphism(p, c3));
}

TEST_CASE("groups given by a multiplication table") {
  auto const v4 = builtin_group("C2xC2");
  std::vector<ElementId> right;
  for (ElementId g = 0; g < v4.order(); ++g) {
    right.push_back(v4.act(g, Letter(0)));
    right.push_back(v4.act(g, Letter(1)));
  }
  auto const t = FinGroup::from_right_multiplication(2, right, "V4 table");
  CHECK(t.order() == 4);
  CHECK(t.separated());
  CHECK(canonical_morphism(t, v4));
  CHECK(canonical_morphism(v4, t));
  CHECK(exponent(t) == 2);
  CHECK(t.find(t.generator(0)) == t.evaluate(ab.parse("a")));
  CHECK_THROWS_AS((void) FinGroup::from_right_multiplication(2, {0, 0, 0}, ""), InputError);
}

TEST_CASE("subgroups and simplicity") {
  auto const s3 = builtin_group("S3");
  CHECK(subgroup_closure(s3, {s3.evaluate(ab.parse("a"))}).size() == 2);
  CHECK(subgroup_closure(s3, {s3.evaluate(ab.parse("b"))}).size() == 3);
  CHECK(generates(s3, {s3.evaluate(ab.parse("a")), s3.evaluate(ab.parse("b"))}));
  CHECK(is_simple(builtin_group("A5")));
  CHECK(is_simple(builtin_group("C5")));
  CHECK(is_simple(builtin_group("C2")));
  CHECK_FALSE(is_simple(s3));
  CHECK_FALSE(is_simple(builtin_group("C2xC2")));
  CHECK_FALSE(is_simple(builtin_group("trivial")));
}
