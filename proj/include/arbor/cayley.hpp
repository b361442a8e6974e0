#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <vector>

#include "arbor/groups.hpp"
#include "arbor/stallings.hpp"
#include "arbor/words.hpp"

namespace arbor {

  // The positive edge (g, a) of the Cayley graph, running g -> g·a.
  struct Edge {
    ElementId   source = 0;
    LetterIndex letter = 0;

    friend auto operator<=>(Edge const&, Edge const&) = default;
  };

  // A subgraph of the Cayley graph of an enumerated group. Only positive
  // edges are stored; adding an edge adds both of its endpoints.
  class CayleySubgraph {
   public:
    explicit CayleySubgraph(FinGroup group);

    [[nodiscard]] FinGroup const& group() const noexcept {
      return _group;
    }
    [[nodiscard]] bool contains(ElementId v) const {
      return _vertices.at(v);
    }
    [[nodiscard]] bool contains(Edge e) const {
      return _edges.at(index(e));
    }
    [[nodiscard]] ElementId target(Edge e) const {
      return _group.act(e.source, Letter(e.letter));
    }
    [[nodiscard]] std::size_t num_vertices() const noexcept {
      return _num_vertices;
    }
    [[nodiscard]] std::size_t num_edges() const noexcept {
      return _num_edges;
    }
    [[nodiscard]] std::vector<ElementId> vertices() const;
    [[nodiscard]] std::vector<Edge>      edges() const;

    void add_vertex(ElementId v);
    void add_edge(Edge e);

    [[nodiscard]] CayleySubgraph intersection(CayleySubgraph const& other) const;
    // g·X: vertex x -> g x, edge (x, a) -> (g x, a).
    [[nodiscard]] CayleySubgraph translated(ElementId g) const;
    [[nodiscard]] bool           is_connected() const;

    friend bool operator==(CayleySubgraph const& x, CayleySubgraph const& y) {
      return x._vertices == y._vertices && x._edges == y._edges;
    }

   private:
    [[nodiscard]] std::size_t index(Edge e) const {
      return static_cast<std::size_t>(e.source) * _group.alphabet_size() + e.letter;
    }
    FinGroup          _group;
    std::vector<bool> _vertices;
    std::vector<bool> _edges;
    std::size_t       _num_vertices = 0;
    std::size_t       _num_edges    = 0;
  };

  // Signed traversal counts of positive edges; absent edges count zero.
  class TraversalCount {
   public:
    [[nodiscard]] long operator[](Edge e) const {
      auto it = _counts.find(e);
      return it == _counts.end() ? 0 : it->second;
    }
    void add(Edge e, long delta);
    // Nonzero entries only.
    [[nodiscard]] std::map<Edge, long> const& entries() const noexcept {
      return _counts;
    }

    friend bool operator==(TraversalCount const&, TraversalCount const&) = default;

   private:
    std::map<Edge, long> _counts;
  };

  struct PathSpan {
    CayleySubgraph span;
    ElementId      end;
    TraversalCount counts;
  };

  [[nodiscard]] CayleySubgraph cayley_graph(FinGroup const& group);

  // The subgraph spanned by the path labelled w from start, its end and the
  // signed traversal counts (+1 forward, -1 backward per traversal).
  [[nodiscard]] PathSpan path_span(FinGroup const& group, ElementId start, Word const& w);

  // True if the path labelled w from start only uses edges of x.
  [[nodiscard]] bool path_inside(CayleySubgraph const& x, ElementId start, Word const& w);

  // Pairs (vertex of the graph, element of G) reachable from (basepoint, 1) in
  // the product of a folded graph with the Cayley graph.
  [[nodiscard]] std::vector<std::pair<VertexId, ElementId>>
  covering_product(LabeledGraph const& graph, FinGroup const& group);

  // The projection of covering_product to the Cayley graph: spanned by all
  // paths from 1 whose label can be read from the basepoint of the graph.
  [[nodiscard]] CayleySubgraph covering_subgraph(LabeledGraph const& graph, FinGroup const& group);

  // Connected components over the included edges, each sorted, ordered by
  // smallest element.
  [[nodiscard]] std::vector<std::vector<ElementId>> components(CayleySubgraph const& x);

  // Sorted vertex set of the component of x containing v.
  [[nodiscard]] std::vector<ElementId> component_of(CayleySubgraph const& x, ElementId v);

  struct Borders {
    std::vector<Edge> leaving;   // D: source in Z, target outside Z
    std::vector<Edge> entering;  // C: source outside Z, target in Z
  };

  // Borders of the vertex set z (which must lie inside x) among the edges of x.
  [[nodiscard]] Borders borders(CayleySubgraph const& x, std::vector<ElementId> const& z);

  // True iff the Cayley graph stays connected after deleting e, f and their
  // inverses. Requires the separation assumption and e != f.
  [[nodiscard]] bool connected_without_two_edges(FinGroup const& group, Edge e, Edge f);

}  // namespace arbor
