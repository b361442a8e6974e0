#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "arbor/groups.hpp"
#include "arbor/words.hpp"

// Finite A-labelled graphs (Serre convention: only positive edges are stored,
// e^-1 is implicit), Stallings folding, core graphs, Schreier graphs and
// completions.

namespace arbor {

  using VertexId = std::uint32_t;

  inline constexpr VertexId no_vertex = std::numeric_limits<VertexId>::max();

  struct GraphEdge {
    VertexId    src   = 0;
    LetterIndex label = 0;
    VertexId    dst   = 0;

    friend auto operator<=>(GraphEdge const&, GraphEdge const&) = default;
  };

  class LabeledGraph {
   public:
    explicit LabeledGraph(std::size_t alphabet_size = 2, std::size_t vertices = 0);

    [[nodiscard]] std::size_t alphabet_size() const noexcept {
      return _alphabet_size;
    }
    [[nodiscard]] std::size_t num_vertices() const noexcept {
      return _num_vertices;
    }
    [[nodiscard]] std::vector<GraphEdge> const& edges() const noexcept {
      return _edges;
    }
    [[nodiscard]] std::optional<VertexId> basepoint() const noexcept {
      return _basepoint;
    }

    VertexId add_vertex();
    // Parallel duplicates are ignored.
    void add_edge(VertexId src, LetterIndex label, VertexId dst);
    void set_basepoint(VertexId v);

    // Number of positive edges at v; a loop counts twice.
    [[nodiscard]] std::size_t degree(VertexId v) const;
    // At most one a-edge leaves and at most one enters every vertex.
    [[nodiscard]] bool is_folded() const;
    // Folded and every vertex has degree 2|A|.
    [[nodiscard]] bool is_complete() const;
    [[nodiscard]] bool is_connected() const;

    friend bool operator==(LabeledGraph const&, LabeledGraph const&) = default;

   private:
    std::size_t             _alphabet_size;
    std::size_t             _num_vertices;
    std::vector<GraphEdge>  _edges;  // kept sorted
    std::optional<VertexId> _basepoint;
  };

  // Letter actions of a folded graph as partial injections.
  class Transitions {
   public:
    explicit Transitions(LabeledGraph const& folded);

    [[nodiscard]] VertexId step(VertexId v, Letter x) const noexcept {
      auto const i = static_cast<std::size_t>(v) * _letters + x.base;
      return x.positive() ? _out[i] : _in[i];
    }
    // End of the path labelled w from v, or nullopt if w cannot be read.
    [[nodiscard]] std::optional<VertexId> read(VertexId v, Word const& w) const;

   private:
    std::size_t           _letters;
    std::vector<VertexId> _out;
    std::vector<VertexId> _in;
  };

  // A reduced, folded, connected graph with basepoint: the core graph of the
  // subgroup L(graph, basepoint) of F.
  class CoreGraph {
   public:
    [[nodiscard]] LabeledGraph const& graph() const noexcept {
      return _graph;
    }
    [[nodiscard]] VertexId basepoint() const noexcept {
      return *_graph.basepoint();
    }
    [[nodiscard]] Transitions const& transitions() const noexcept {
      return _transitions;
    }

    friend bool operator==(CoreGraph const& x, CoreGraph const& y) {
      return x._graph == y._graph;
    }

   private:
    friend CoreGraph core(LabeledGraph const&);
    explicit CoreGraph(LabeledGraph g) : _graph(std::move(g)), _transitions(_graph) {}
    LabeledGraph _graph;
    Transitions  _transitions;
  };

  // A wedge of one closed path per generator at the basepoint 0.
  [[nodiscard]] LabeledGraph bouquet(std::vector<Word> const& generators,
                                     std::size_t              alphabet_size = 2);

  // Stallings folding. The result is relabelled so that vertex i is the class
  // of the smallest original vertex among the remaining classes, in order.
  [[nodiscard]] LabeledGraph fold(LabeledGraph const& g);

  // Restricts to the basepoint component and prunes degree-one vertices other
  // than the basepoint. The result is in canonical form (see canonical_form),
  // so equal subgroups yield equal core graphs.
  [[nodiscard]] CoreGraph core(LabeledGraph const& folded);

  // core(fold(bouquet(generators))).
  [[nodiscard]] CoreGraph subgroup_core(std::vector<Word> const& generators,
                                        std::size_t              alphabet_size = 2);

  // w (after free reduction) labels a closed path at the basepoint.
  [[nodiscard]] bool member(CoreGraph const& g, Word const& w);

  // A free basis of L(g, basepoint), one word per edge outside a BFS tree.
  [[nodiscard]] std::vector<Word> core_generators(CoreGraph const& g);

  // The Schreier graph of the subgroup H generated by [h]_G, h in h_generators:
  // vertices H\G, a-edges Hg -> Hga, basepoint H. Vertices are numbered in
  // BFS order from the basepoint.
  [[nodiscard]] LabeledGraph schreier(FinGroup const& group, std::vector<Word> const& h_generators);

  // Embeds a folded graph into a complete graph on the same vertices by
  // pairing, per letter, the vertices lacking an outgoing edge with those
  // lacking an incoming one in increasing order.
  [[nodiscard]] LabeledGraph complete_arbitrary(LabeledGraph const& folded);

  // The A-generated permutation group induced on the vertices of a complete
  // graph. Throws PreconditionError for incomplete input.
  [[nodiscard]] FinGroup transition_group(LabeledGraph const& complete);

  // Relabels a folded graph by breadth-first search from its basepoint
  // (letters in order, outgoing before incoming), with vertices unreachable
  // from the basepoint appended in their original order. Two folded
  // connected basepointed graphs are isomorphic iff their canonical forms
  // are equal.
  [[nodiscard]] LabeledGraph canonical_form(LabeledGraph const& folded);

}  // namespace arbor
