#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "arbor/cayley.hpp"
#include "arbor/errors.hpp"
#include "support.hpp"

using namespace arbor;

namespace {

  Alphabet const ab(2);

  ElementId el(FinGroup const& g, char const* w) {
    return g.evaluate(ab.parse(w));
  }

  // Union of the spans of all readable words up to the given length; an
  // independent description of the covering subgraph.
  CayleySubgraph readable_span(LabeledGraph const& graph, FinGroup const& group,
                               std::size_t max_length) {
    Transitions const t(graph);
    CayleySubgraph    out(group);
    out.add_vertex(0);
    struct State {
      VertexId  v;
      ElementId g;
      std::size_t len;
    };
    std::vector<State> stack{{*graph.basepoint(), 0, 0}};
    // Shortest length at which a state was reached; longer visits add nothing.
    std::map<std::pair<VertexId, ElementId>, std::size_t> best;
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      auto [it, fresh] = best.try_emplace({s.v, s.g}, s.len);
      if (!fresh && it->second <= s.len && s.len != 0) {
        continue;
      }
      it->second = s.len;
      if (s.len == max_length) {
        continue;
      }
      for (LetterIndex a = 0; a < graph.alphabet_size(); ++a) {
        for (int sign : {1, -1}) {
          Letter const x(a, sign);
          auto const   w = t.step(s.v, x);
          if (w == no_vertex) {
            continue;
          }
          auto const h = group.act(s.g, x);
          out.add_edge(sign > 0 ? Edge{s.g, a} : Edge{h, a});
          stack.push_back({w, h, s.len + 1});
        }
      }
    }
    return out;
  }

}  // namespace

TEST_CASE("cayley graph sizes") {
  auto v4 = cayley_graph(builtin_group("C2xC2"));
  CHECK(v4.num_vertices() == 4);
  CHECK(v4.num_edges() == 8);
  CHECK(v4.is_connected());
  auto one = cayley_graph(builtin_group("trivial"));
  CHECK(one.num_vertices() == 1);
  CHECK(one.num_edges() == 2);
  for (auto e : one.edges()) {
    CHECK(one.target(e) == e.source);
  }
  auto c3 = cayley_graph(builtin_group("C3"));
  CHECK(c3.num_vertices() == 3);
  CHECK(c3.num_edges() == 6);
}

TEST_CASE("path_span") {
  auto const G = builtin_group("C2xC2");
  SUBCASE("backtrack") {
    auto p = path_span(G, 0, ab.parse("a a^-1"));
    CHECK(p.span.vertices() == std::vector<ElementId>{0, el(G, "a")});
    CHECK(p.span.contains(Edge{0, 0}));
    CHECK(p.counts[Edge{0, 0}] == 0);
    CHECK(p.counts.entries().empty());
    CHECK(p.end == 0);
  }
  SUBCASE("ab") {
    auto p = path_span(G, 0, ab.parse("a b"));
    CHECK(p.span.edges() == std::vector<Edge>{{0, 0}, {el(G, "a"), 1}});
    CHECK(p.end == el(G, "a b"));
    CHECK(p.counts[Edge{0, 0}] == 1);
    CHECK(p.counts[Edge{el(G, "a"), 1}] == 1);
  }
  SUBCASE("a^3") {
    auto p = path_span(G, 0, ab.parse("a^3"));
    CHECK(p.span.num_edges() == 2);
    CHECK(p.counts[Edge{0, 0}] == 2);
    CHECK(p.counts[Edge{el(G, "a"), 0}] == 1);
    CHECK(p.end == el(G, "a"));
  }
  SUBCASE("inverse letters count negatively") {
    auto p = path_span(G, 0, ab.parse("b^-1"));
    CHECK(p.counts[Edge{el(G, "b"), 1}] == -1);
    CHECK(path_inside(p.span, 0, ab.parse("b^-1 b b^-1")));
    CHECK_FALSE(path_inside(p.span, 0, ab.parse("a")));
  }
}

TEST_CASE("covering_subgraph examples") {
  auto const G = builtin_group("C2xC2");
  SUBCASE("the Cayley graph covers itself") {
    auto sch = schreier(G, {});
    CHECK(covering_subgraph(sch, G) == cayley_graph(G));
  }
  SUBCASE("<a^2, aba^-1>") {
    auto h = subgroup_core({ab.parse("a^2"), ab.parse("a b a^-1")});
    auto x = covering_subgraph(h.graph(), G);
    // The b-loop at the second core vertex lifts to the b-cycle [a] <-> [ab],
    // and a b a^-1 returns to the basepoint over [b], so every vertex is hit.
    // Only the b-edges at 1 and [b] are missing.
    CHECK(x.num_vertices() == 4);
    std::set<Edge> expected{{0, 0},           {el(G, "a"), 0},   {el(G, "a"), 1},
                            {el(G, "b"), 0}, {el(G, "a b"), 0}, {el(G, "a b"), 1}};
    auto const     xe = x.edges();
    CHECK(std::set<Edge>(xe.begin(), xe.end()) == expected);
  }
  SUBCASE("single a-loop") {
    LabeledGraph loop(2, 1);
    loop.add_edge(0, 0, 0);
    loop.set_basepoint(0);
    auto x = covering_subgraph(loop, G);
    CHECK(x.vertices() == std::vector<ElementId>{0, el(G, "a")});
    CHECK(x.edges() == std::vector<Edge>{{0, 0}, {el(G, "a"), 0}});
  }
}

TEST_CASE("covering_subgraph against spans of readable words") {
  std::mt19937_64 rng(11);
  for (auto name : {"C2xC2", "C3", "S3", "D4"}) {
    auto const G = builtin_group(name);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<Word> gens;
      std::size_t const k = 1 + rng() % 2;
      for (std::size_t i = 0; i < k; ++i) {
        gens.push_back(testing::random_reduced_word(rng, 1 + rng() % 3));
      }
      auto h = subgroup_core(gens);
      auto x = covering_subgraph(h.graph(), G);
      std::size_t const bound = h.graph().num_vertices() * G.order() + 1;
      CHECK(x == readable_span(h.graph(), G, bound));
      CHECK(x.is_connected());
      CHECK(x.contains(ElementId{0}));

      // [h]_G lies over the basepoint for every h in H.
      std::set<ElementId> fibre;
      for (auto [v, g] : covering_product(h.graph(), G)) {
        if (v == h.basepoint()) {
          fibre.insert(g);
        }
      }
      for (auto const& w : gens) {
        CHECK(fibre.count(G.evaluate(w)) == 1);
      }
    }
  }
}

TEST_CASE("components") {
  auto const G = builtin_group("C2xC2");
  CHECK(components(cayley_graph(G)).size() == 1);

  CayleySubgraph pair(G);
  pair.add_vertex(0);
  pair.add_vertex(el(G, "a b"));
  auto comps = components(pair);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<ElementId>{0});
  CHECK(comps[1] == std::vector<ElementId>{el(G, "a b")});

  auto x     = path_span(G, 0, ab.parse("a b")).span;
  auto t     = path_span(G, 0, ab.parse("b a")).span;
  auto inter = x.intersection(t);
  CHECK(inter.num_edges() == 0);
  CHECK(components(inter) == comps);
  CHECK(component_of(x, 0) == x.vertices());
  CHECK_THROWS_AS((void)component_of(x, el(G, "b")), PreconditionError);
}

TEST_CASE("translation") {
  auto const G = builtin_group("S3");
  auto       x = path_span(G, 0, ab.parse("a b b")).span;
  for (ElementId g = 0; g < G.order(); ++g) {
    auto y = x.translated(g);
    CHECK(y.num_edges() == x.num_edges());
    CHECK(y == path_span(G, g, ab.parse("a b b")).span);
  }
}

TEST_CASE("borders") {
  auto const G = builtin_group("C2xC2");
  auto       x = path_span(G, 0, ab.parse("a b")).span;
  auto       b = borders(x, {0});
  CHECK(b.leaving == std::vector<Edge>{{0, 0}});
  CHECK(b.entering.empty());

  auto full = cayley_graph(G);
  auto all  = borders(full, full.vertices());
  CHECK(all.leaving.empty());
  CHECK(all.entering.empty());

  auto cycle = path_span(G, 0, ab.parse("a a")).span;
  auto c     = borders(cycle, {0});
  CHECK(c.leaving == std::vector<Edge>{{0, 0}});
  CHECK(c.entering == std::vector<Edge>{{el(G, "a"), 0}});

  CHECK_THROWS_AS((void)borders(x, {el(G, "b")}), PreconditionError);
}

TEST_CASE("flow identity across a border") {
  std::mt19937_64 rng(4);
  for (auto name : {"C2xC2", "C3", "S3", "D4", "S4"}) {
    auto const G = builtin_group(name);
    int        instances = 0;
    while (instances < 60) {
      auto w = testing::random_word(rng, 1 + rng() % 20);
      auto p = path_span(G, 0, w);
      if (p.end == 0) {
        continue;
      }
      // Z: a random subset of the span containing 1 but not the end.
      std::vector<ElementId> z{0};
      for (auto v : p.span.vertices()) {
        if (v != 0 && v != p.end && rng() % 2 == 0) {
          z.push_back(v);
        }
      }
      auto [d, c] = borders(p.span, z);
      long flow   = 0;
      for (auto e : d) {
        flow += p.counts[e];
      }
      for (auto e : c) {
        flow -= p.counts[e];
      }
      CHECK(flow == 1);
      ++instances;
    }
  }
}

TEST_CASE("connected_without_two_edges") {
  for (auto const& name : builtin_group_names()) {
    auto const G = builtin_group(name);
    if (!G.separated() || G.order() > 24) {
      continue;
    }
    auto const edges = cayley_graph(G).edges();
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        CHECK(connected_without_two_edges(G, edges[i], edges[j]));
        ++pairs;
      }
    }
    if (name == "C2xC2") {
      CHECK(pairs == 28);
    }
  }
  auto const V = builtin_group("C2xC2");
  CHECK_THROWS_AS((void)connected_without_two_edges(V, {0, 0}, {0, 0}), PreconditionError);
  CHECK_THROWS_AS((void)connected_without_two_edges(builtin_group("C2"), {0, 0}, {0, 1}),
                  PreconditionError);
}
