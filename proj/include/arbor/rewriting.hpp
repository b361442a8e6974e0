#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "arbor/cayley.hpp"
#include "arbor/groups.hpp"
#include "arbor/words.hpp"

// Spanning trees of Cayley graphs, the free basis of R = ker(F -> G) they
// induce, and Reidemeister-Schreier rewriting of closed paths at 1.

namespace arbor {

  class SpanningTree {
   public:
    [[nodiscard]] FinGroup const& group() const noexcept {
      return _group;
    }
    // Sorted.
    [[nodiscard]] std::vector<Edge> const& tree_edges() const noexcept {
      return _tree_edges;
    }
    [[nodiscard]] bool contains(Edge e) const {
      return _basis_index.at(index(e)) == npos;
    }
    // Position of a non-tree edge in the basis, npos for tree edges.
    [[nodiscard]] std::size_t basis_index(Edge e) const {
      return _basis_index.at(index(e));
    }
    [[nodiscard]] std::size_t rank() const noexcept {
      return _non_tree.size();
    }
    // Non-tree edges in basis order (increasing edge index).
    [[nodiscard]] std::vector<Edge> const& non_tree_edges() const noexcept {
      return _non_tree;
    }
    // Parent of g in the tree; 1 is its own parent.
    [[nodiscard]] ElementId parent(ElementId g) const {
      return _parent.at(g);
    }
    // Label of the tree path 1 -> g.
    [[nodiscard]] Word path_to(ElementId g) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

   private:
    friend SpanningTree spanning_tree(FinGroup const&, std::vector<Edge> const&);
    explicit SpanningTree(FinGroup g) : _group(std::move(g)) {}
    [[nodiscard]] std::size_t index(Edge e) const {
      return static_cast<std::size_t>(e.source) * _group.alphabet_size() + e.letter;
    }
    FinGroup                 _group;
    std::vector<Edge>        _tree_edges;
    std::vector<Edge>        _non_tree;
    std::vector<std::size_t> _basis_index;
    std::vector<ElementId>   _parent;
    std::vector<Letter>      _parent_letter;
  };

  // BFS tree of the Cayley graph minus the excluded edges, rooted at 1,
  // scanning letters in order with outgoing before incoming edges. Throws
  // PreconditionError if the remaining graph is disconnected.
  [[nodiscard]] SpanningTree spanning_tree(FinGroup const& group,
                                           std::vector<Edge> const& excluded = {});

  // The tree needed by the main construction; checks e != f and the
  // two-edge connectivity (which requires the separation hypothesis).
  [[nodiscard]] SpanningTree spanning_tree_avoiding(FinGroup const& group, Edge e, Edge f);

  struct BasisWord {
    Edge edge;
    Word word;  // red(path to source · a · (path to target)^-1)
  };

  // One word per non-tree edge, in basis order; |G|(|A|-1) + 1 of them.
  [[nodiscard]] std::vector<BasisWord> nielsen_basis(SpanningTree const& tree);

  // (basis index, ±1) per non-tree edge traversal of the path reading w
  // from 1. Throws PreconditionError unless [w]_G = 1.
  using Rewritten = std::vector<std::pair<std::size_t, int>>;
  [[nodiscard]] Rewritten rewrite(SpanningTree const& tree, Word const& w);

  // Exponent sum per basis element.
  [[nodiscard]] std::vector<long> exponent_sums(Rewritten const& r, std::size_t rank);

  // Product of the basis words (or inverses) named by r, freely reduced.
  [[nodiscard]] Word substitute(std::vector<BasisWord> const& basis, Rewritten const& r);

}  // namespace arbor
