#include "arbor/rewriting.hpp"

#include <algorithm>

#include "arbor/errors.hpp"

namespace arbor {

  Word SpanningTree::path_to(ElementId g) const {
    std::vector<Letter> letters;
    while (g != 0) {
      letters.push_back(_parent_letter[g]);
      g = _parent[g];
    }
    std::reverse(letters.begin(), letters.end());
    return Word(std::move(letters));
  }

  SpanningTree spanning_tree(FinGroup const& group, std::vector<Edge> const& excluded) {
    SpanningTree      t(group);
    std::size_t const n = group.order();
    std::size_t const k = group.alphabet_size();
    std::vector<bool> banned(n * k, false);
    for (auto e : excluded) {
      if (e.source >= n || e.letter >= k) {
        throw InputError("excluded edge outside the Cayley graph");
      }
      banned[t.index(e)] = true;
    }
    t._parent.assign(n, 0);
    t._parent_letter.assign(n, Letter());
    std::vector<bool>      seen(n, false);
    std::vector<bool>      in_tree(n * k, false);
    std::vector<ElementId> queue{0};
    seen[0] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      ElementId const g = queue[i];
      for (LetterIndex a = 0; a < k; ++a) {
        for (int s : {1, -1}) {
          ElementId const h = group.act(g, Letter(a, s));
          Edge const      e = s > 0 ? Edge{g, a} : Edge{h, a};
          if (seen[h] || banned[t.index(e)]) {
            continue;
          }
          seen[h]             = true;
          in_tree[t.index(e)] = true;
          t._parent[h]        = g;
          t._parent_letter[h] = Letter(a, s);
          queue.push_back(h);
        }
      }
    }
    if (queue.size() != n) {
      throw PreconditionError("Cayley graph minus the excluded edges is disconnected");
    }
    t._basis_index.assign(n * k, SpanningTree::npos);
    for (std::size_t i = 0; i < n * k; ++i) {
      Edge const e{static_cast<ElementId>(i / k), static_cast<LetterIndex>(i % k)};
      if (in_tree[i]) {
        t._tree_edges.push_back(e);
      } else {
        t._basis_index[i] = t._non_tree.size();
        t._non_tree.push_back(e);
      }
    }
    return t;
  }

  SpanningTree spanning_tree_avoiding(FinGroup const& group, Edge e, Edge f) {
    if (!connected_without_two_edges(group, e, f)) {
      throw PreconditionError("Cayley graph is disconnected by removing the two edges");
    }
    return spanning_tree(group, {e, f});
  }

  std::vector<BasisWord> nielsen_basis(SpanningTree const& tree) {
    auto const&            group = tree.group();
    std::vector<BasisWord> out;
    out.reserve(tree.rank());
    for (auto e : tree.non_tree_edges()) {
      Word w = tree.path_to(e.source);
      w.push_back(Letter(e.letter));
      w.append(invert(tree.path_to(group.act(e.source, Letter(e.letter)))));
      out.push_back({e, reduce(w)});
    }
    return out;
  }

  Rewritten rewrite(SpanningTree const& tree, Word const& w) {
    auto const& group = tree.group();
    Rewritten   out;
    ElementId   cur = 0;
    for (Letter x : w) {
      ElementId const next = group.act(cur, x);
      Edge const      e    = x.positive() ? Edge{cur, x.base} : Edge{next, x.base};
      std::size_t const i  = tree.basis_index(e);
      if (i != SpanningTree::npos) {
        out.emplace_back(i, x.positive() ? 1 : -1);
      }
      cur = next;
    }
    if (cur != 0) {
      throw PreconditionError("rewrite needs a word with trivial image in the group");
    }
    return out;
  }

  std::vector<long> exponent_sums(Rewritten const& r, std::size_t rank) {
    std::vector<long> out(rank, 0);
    for (auto [i, s] : r) {
      out.at(i) += s;
    }
    return out;
  }

  Word substitute(std::vector<BasisWord> const& basis, Rewritten const& r) {
    Word w;
    for (auto [i, s] : r) {
      w.append(s > 0 ? basis.at(i).word : invert(basis.at(i).word));
    }
    return reduce(w);
  }

}  // namespace arbor
