#include "doctest.h"

#include <random>

#include "arbor/errors.hpp"
#include "arbor/rewriting.hpp"
#include "support.hpp"

using namespace arbor;

namespace {

  Alphabet const ab(2);

  // A random word closing up at 1: w followed by a path back to 1.
  Word random_closed_word(FinGroup const& g, std::mt19937_64& rng, std::size_t max_length) {
    std::size_t len = 1 + rng() % max_length;
    auto        w   = testing::random_word(rng, len);
    w.append(invert(g.witness(g.evaluate(w))));
    return w;
  }

  SpanningTree random_tree(FinGroup const& g, std::mt19937_64& rng) {
    auto const edges = cayley_graph(g).edges();
    while (true) {
      std::vector<Edge> excluded;
      std::size_t const n = rng() % 4;
      for (std::size_t i = 0; i < n; ++i) {
        excluded.push_back(edges[rng() % edges.size()]);
      }
      try {
        return spanning_tree(g, excluded);
      } catch (PreconditionError const&) {
      }
    }
  }

}  // namespace

TEST_CASE("spanning_tree_avoiding") {
  auto const V = builtin_group("C2xC2");
  Edge const e{0, 0}, f{0, 1};
  auto       t = spanning_tree_avoiding(V, e, f);
  CHECK(t.tree_edges().size() == 3);
  CHECK_FALSE(t.contains(e));
  CHECK_FALSE(t.contains(f));
  CHECK(t.rank() == 5);
  for (ElementId g = 0; g < V.order(); ++g) {
    CHECK(V.evaluate(t.path_to(g)) == g);
  }

  auto const C3 = builtin_group("C3");
  Edge const x{0, 0}, y{C3.evaluate(ab.parse("a")), 1};
  auto       u = spanning_tree_avoiding(C3, x, y);
  CHECK(u.tree_edges().size() == 2);
  CHECK_FALSE(u.contains(x));
  CHECK_FALSE(u.contains(y));

  CHECK_THROWS_AS((void)spanning_tree_avoiding(V, e, e), PreconditionError);
}

TEST_CASE("spanning_tree fails on a disconnected remainder") {
  auto const C3 = builtin_group("C3");
  // Cutting all edges at 0 isolates it.
  std::vector<Edge> cut{{0, 0}, {0, 1}, {1, 1}, {2, 0}};
  CHECK_THROWS_AS((void)spanning_tree(C3, cut), PreconditionError);
}

TEST_CASE("nielsen basis sizes") {
  CHECK(nielsen_basis(spanning_tree(builtin_group("C2xC2"))).size() == 5);
  CHECK(nielsen_basis(spanning_tree(builtin_group("C3"))).size() == 4);
  auto trivial = nielsen_basis(spanning_tree(builtin_group("trivial")));
  REQUIRE(trivial.size() == 2);
  CHECK(trivial[0].word == ab.parse("a"));
  CHECK(trivial[1].word == ab.parse("b"));
  for (auto const& name : builtin_group_names()) {
    auto const G = builtin_group(name);
    CHECK(spanning_tree(G).rank() == G.order() * (G.alphabet_size() - 1) + 1);
  }
}

TEST_CASE("basis words are closed and independent") {
  for (auto name : {"C2xC2", "C3", "S3", "D4"}) {
    auto const G     = builtin_group(name);
    auto const tree  = spanning_tree(G);
    auto const basis = nielsen_basis(tree);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(basis[i].word.is_reduced());
      CHECK(G.evaluate(basis[i].word) == 0);
      auto r = rewrite(tree, basis[i].word);
      REQUIRE(r.size() == 1);
      CHECK(r[0] == std::pair<std::size_t, int>{i, 1});
    }
  }
}

TEST_CASE("rewrite examples") {
  auto const V    = builtin_group("C2xC2");
  auto const tree = spanning_tree(V);
  // A tree edge there and back.
  auto const& t0 = tree.tree_edges().front();
  Word        trip{Letter(t0.letter), Letter(t0.letter, -1)};
  if (t0.source != 0) {
    trip = concat(concat(tree.path_to(t0.source), trip), invert(tree.path_to(t0.source)));
  }
  CHECK(rewrite(tree, trip).empty());

  auto w = ab.parse("a b a b");
  auto r = rewrite(tree, w);
  auto p = path_span(V, 0, w);
  auto s = exponent_sums(r, tree.rank());
  for (std::size_t i = 0; i < tree.rank(); ++i) {
    CHECK(s[i] == p.counts[tree.non_tree_edges()[i]]);
  }
  CHECK_THROWS_AS((void)rewrite(tree, ab.parse("a b")), PreconditionError);
}

TEST_CASE("exponent sums equal traversal counts") {
  std::mt19937_64 rng(5);
  std::vector<FinGroup> groups;
  for (auto name : {"C2xC2", "C3", "S3", "D4", "S4", "A5"}) {
    groups.push_back(builtin_group(name));
  }
  for (int trial = 0; trial < 500; ++trial) {
    auto const& G     = groups[trial % groups.size()];
    auto const  tree  = random_tree(G, rng);
    auto const  w     = random_closed_word(G, rng, 24);
    auto const  r     = rewrite(tree, w);
    auto const  sums  = exponent_sums(r, tree.rank());
    auto const  span  = path_span(G, 0, w);
    for (std::size_t i = 0; i < tree.rank(); ++i) {
      CHECK(sums[i] == span.counts[tree.non_tree_edges()[i]]);
    }
    CHECK(substitute(nielsen_basis(tree), r) == reduce(w));

    // Closed paths are cycles: signed flow is conserved at each vertex.
    std::vector<long> net(G.order(), 0);
    for (auto const& [e, c] : span.counts.entries()) {
      net[e.source] -= c;
      net[G.act(e.source, Letter(e.letter))] += c;
    }
    for (auto x : net) {
      CHECK(x == 0);
    }
  }
}
