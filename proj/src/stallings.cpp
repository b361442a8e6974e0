#include "arbor/stallings.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "arbor/errors.hpp"

namespace arbor {

  LabeledGraph::LabeledGraph(std::size_t alphabet_size, std::size_t vertices)
      : _alphabet_size(alphabet_size), _num_vertices(vertices) {
    if (alphabet_size == 0) {
      throw InputError("alphabet must not be empty");
    }
  }

  VertexId LabeledGraph::add_vertex() {
    return static_cast<VertexId>(_num_vertices++);
  }

  void LabeledGraph::add_edge(VertexId src, LetterIndex label, VertexId dst) {
    if (src >= _num_vertices || dst >= _num_vertices) {
      throw InputError("edge endpoint out of range");
    }
    if (label >= _alphabet_size) {
      throw InputError("edge label " + std::to_string(label) + " outside the alphabet");
    }
    GraphEdge e{src, label, dst};
    auto      it = std::lower_bound(_edges.begin(), _edges.end(), e);
    if (it == _edges.end() || *it != e) {
      _edges.insert(it, e);
    }
  }

  void LabeledGraph::set_basepoint(VertexId v) {
    if (v >= _num_vertices) {
      throw InputError("basepoint out of range");
    }
    _basepoint = v;
  }

  std::size_t LabeledGraph::degree(VertexId v) const {
    std::size_t d = 0;
    for (auto const& e : _edges) {
      d += (e.src == v) + (e.dst == v);
    }
    return d;
  }

  bool LabeledGraph::is_folded() const {
    std::vector<int> out(_num_vertices * _alphabet_size, 0);
    std::vector<int> in(_num_vertices * _alphabet_size, 0);
    for (auto const& e : _edges) {
      if (++out[e.src * _alphabet_size + e.label] > 1
          || ++in[e.dst * _alphabet_size + e.label] > 1) {
        return false;
      }
    }
    return true;
  }

  bool LabeledGraph::is_complete() const {
    return is_folded() && _edges.size() == _num_vertices * _alphabet_size;
  }

  bool LabeledGraph::is_connected() const {
    if (_num_vertices == 0) {
      return true;
    }
    std::vector<std::uint32_t> parent(_num_vertices);
    std::iota(parent.begin(), parent.end(), 0U);
    auto find = [&parent](std::uint32_t x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };
    std::size_t components = _num_vertices;
    for (auto const& e : _edges) {
      auto x = find(e.src), y = find(e.dst);
      if (x != y) {
        parent[x] = y;
        --components;
      }
    }
    return components == 1;
  }

  Transitions::Transitions(LabeledGraph const& folded)
      : _letters(folded.alphabet_size()),
        _out(folded.num_vertices() * folded.alphabet_size(), no_vertex),
        _in(folded.num_vertices() * folded.alphabet_size(), no_vertex) {
    for (auto const& e : folded.edges()) {
      auto& o = _out[e.src * _letters + e.label];
      auto& i = _in[e.dst * _letters + e.label];
      if (o != no_vertex || i != no_vertex) {
        throw PreconditionError("graph is not folded");
      }
      o = e.dst;
      i = e.src;
    }
  }

  std::optional<VertexId> Transitions::read(VertexId v, Word const& w) const {
    for (Letter x : w) {
      if (x.base >= _letters) {
        throw InputError("letter outside the alphabet");
      }
      v = step(v, x);
      if (v == no_vertex) {
        return std::nullopt;
      }
    }
    return v;
  }

  LabeledGraph bouquet(std::vector<Word> const& generators, std::size_t alphabet_size) {
    if (generators.empty()) {
      throw InputError("bouquet needs at least one generator");
    }
    LabeledGraph g(alphabet_size, 1);
    g.set_basepoint(0);
    for (auto const& w : generators) {
      if (w.empty()) {
        throw InputError("empty generator word");
      }
      VertexId cur = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        VertexId const next = i + 1 == w.size() ? 0 : g.add_vertex();
        if (w[i].positive()) {
          g.add_edge(cur, w[i].base, next);
        } else {
          g.add_edge(next, w[i].base, cur);
        }
        cur = next;
      }
    }
    return g;
  }

  LabeledGraph fold(LabeledGraph const& g) {
    std::size_t const          n = g.num_vertices();
    std::size_t const          k = g.alphabet_size();
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0U);
    auto find = [&parent](std::uint32_t x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };
    auto unite = [&](std::uint32_t x, std::uint32_t y) {
      x = find(x);
      y = find(y);
      if (x == y) {
        return false;
      }
      // Smaller id stays representative.
      if (y < x) {
        std::swap(x, y);
      }
      parent[y] = x;
      return true;
    };

    // Per (representative, letter): the representative on the other side of
    // an outgoing resp. incoming edge. Identifications are made whenever two
    // edges with equal label share a source or a target; iterate until no
    // pass changes anything.
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::uint32_t> out(n * k, no_vertex), in(n * k, no_vertex);
      for (auto const& e : g.edges()) {
        auto const s = find(e.src), d = find(e.dst);
        auto&      o = out[s * k + e.label];
        if (o == no_vertex) {
          o = d;
        } else if (find(o) != d) {
          changed |= unite(o, d);
        }
        auto const s2 = find(e.src), d2 = find(e.dst);
        auto&      i  = in[d2 * k + e.label];
        if (i == no_vertex) {
          i = s2;
        } else if (find(i) != s2) {
          changed |= unite(i, s2);
        }
      }
    }

    std::vector<VertexId> relabel(n, no_vertex);
    VertexId              next = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (find(static_cast<std::uint32_t>(v)) == v) {
        relabel[v] = next++;
      }
    }
    LabeledGraph out(k, next);
    for (auto const& e : g.edges()) {
      out.add_edge(relabel[find(e.src)], e.label, relabel[find(e.dst)]);
    }
    if (g.basepoint()) {
      out.set_basepoint(relabel[find(*g.basepoint())]);
    }
    return out;
  }

  LabeledGraph canonical_form(LabeledGraph const& folded) {
    if (!folded.basepoint()) {
      throw PreconditionError("canonical form needs a basepoint");
    }
    Transitions const     t(folded);
    std::size_t const     n = folded.num_vertices();
    std::vector<VertexId> relabel(n, no_vertex);
    std::vector<VertexId> order{*folded.basepoint()};
    relabel[*folded.basepoint()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (LetterIndex a = 0; a < folded.alphabet_size(); ++a) {
        for (int s : {1, -1}) {
          VertexId const w = t.step(order[i], Letter(a, s));
          if (w != no_vertex && relabel[w] == no_vertex) {
            relabel[w] = static_cast<VertexId>(order.size());
            order.push_back(w);
          }
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (relabel[v] == no_vertex) {
        relabel[v] = static_cast<VertexId>(order.size());
        order.push_back(static_cast<VertexId>(v));
      }
    }
    LabeledGraph out(folded.alphabet_size(), n);
    for (auto const& e : folded.edges()) {
      out.add_edge(relabel[e.src], e.label, relabel[e.dst]);
    }
    out.set_basepoint(0);
    return out;
  }

  CoreGraph core(LabeledGraph const& folded) {
    if (!folded.basepoint()) {
      throw PreconditionError("core graph needs a basepoint");
    }
    if (!folded.is_folded()) {
      throw PreconditionError("core graph needs a folded graph");
    }
    std::size_t const n    = folded.num_vertices();
    VertexId const    base = *folded.basepoint();

    // Basepoint component.
    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t i = 0; i < folded.edges().size(); ++i) {
      incident[folded.edges()[i].src].push_back(i);
      incident[folded.edges()[i].dst].push_back(i);
    }
    std::vector<bool>     alive(n, false);
    std::vector<VertexId> stack{base};
    alive[base] = true;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (auto i : incident[v]) {
        auto const& e     = folded.edges()[i];
        VertexId    other = e.src == v ? e.dst : e.src;
        if (!alive[other]) {
          alive[other] = true;
          stack.push_back(other);
        }
      }
    }
    std::vector<bool> edge_alive(folded.edges().size());
    std::vector<int>  degree(n, 0);
    for (std::size_t i = 0; i < folded.edges().size(); ++i) {
      auto const& e = folded.edges()[i];
      edge_alive[i] = alive[e.src];
      if (edge_alive[i]) {
        ++degree[e.src];
        ++degree[e.dst];
      }
    }
    // Prune spurs.
    for (std::size_t v = 0; v < n; ++v) {
      if (alive[v] && v != base && degree[v] <= 1) {
        stack.push_back(static_cast<VertexId>(v));
      }
    }
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      if (!alive[v]) {
        continue;
      }
      alive[v] = false;
      for (auto i : incident[v]) {
        if (!edge_alive[i]) {
          continue;
        }
        edge_alive[i]     = false;
        auto const& e     = folded.edges()[i];
        VertexId    other = e.src == v ? e.dst : e.src;
        --degree[e.src];
        --degree[e.dst];
        if (alive[other] && other != base && degree[other] <= 1) {
          stack.push_back(other);
        }
      }
    }
    std::vector<VertexId> relabel(n, no_vertex);
    VertexId              next = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (alive[v]) {
        relabel[v] = next++;
      }
    }
    LabeledGraph pruned(folded.alphabet_size(), next);
    for (std::size_t i = 0; i < folded.edges().size(); ++i) {
      if (edge_alive[i]) {
        auto const& e = folded.edges()[i];
        pruned.add_edge(relabel[e.src], e.label, relabel[e.dst]);
      }
    }
    pruned.set_basepoint(relabel[base]);
    return CoreGraph(canonical_form(pruned));
  }

  CoreGraph subgroup_core(std::vector<Word> const& generators, std::size_t alphabet_size) {
    std::vector<Word> reduced;
    for (auto const& w : generators) {
      auto r = reduce(w);
      if (!r.empty()) {
        reduced.push_back(std::move(r));
      }
    }
    if (reduced.empty()) {
      LabeledGraph trivial(alphabet_size, 1);
      trivial.set_basepoint(0);
      return core(trivial);
    }
    return core(fold(bouquet(reduced, alphabet_size)));
  }

  bool member(CoreGraph const& g, Word const& w) {
    auto end = g.transitions().read(g.basepoint(), reduce(w));
    return end && *end == g.basepoint();
  }

  std::vector<Word> core_generators(CoreGraph const& g) {
    auto const&       graph = g.graph();
    std::size_t const n     = graph.num_vertices();
    auto const&       t     = g.transitions();
    // BFS tree: path[v] labels the tree path basepoint -> v.
    std::vector<std::optional<Word>> path(n);
    std::set<GraphEdge>              tree;
    std::deque<VertexId>             queue{g.basepoint()};
    path[g.basepoint()] = Word();
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (LetterIndex a = 0; a < graph.alphabet_size(); ++a) {
        for (int s : {1, -1}) {
          VertexId const w = t.step(v, Letter(a, s));
          if (w != no_vertex && !path[w]) {
            Word p = *path[v];
            p.push_back(Letter(a, s));
            path[w] = std::move(p);
            tree.insert(s > 0 ? GraphEdge{v, a, w} : GraphEdge{w, a, v});
            queue.push_back(w);
          }
        }
      }
    }
    std::vector<Word> out;
    for (auto const& e : graph.edges()) {
      if (tree.contains(e)) {
        continue;
      }
      Word w = *path[e.src];
      w.push_back(Letter(e.label));
      w.append(invert(*path[e.dst]));
      out.push_back(reduce(w));
    }
    return out;
  }

  LabeledGraph schreier(FinGroup const& group, std::vector<Word> const& h_generators) {
    std::vector<ElementId> gens;
    for (auto const& w : h_generators) {
      gens.push_back(group.evaluate(w));
    }
    auto const             subgroup = subgroup_closure(group, gens);
    std::size_t const      n        = group.order();
    std::size_t const      k        = group.alphabet_size();
    std::vector<VertexId>  coset(n, no_vertex);
    std::vector<ElementId> representative;
    auto                   assign = [&](ElementId g) {
      auto const id = static_cast<VertexId>(representative.size());
      representative.push_back(g);
      for (ElementId h : subgroup) {
        coset[group.multiply(h, g)] = id;
      }
      return id;
    };
    assign(0);
    LabeledGraph out(k, 0);
    out.add_vertex();
    for (std::size_t i = 0; i < representative.size(); ++i) {
      for (LetterIndex a = 0; a < k; ++a) {
        for (int s : {1, -1}) {
          ElementId const h = group.act(representative[i], Letter(a, s));
          if (coset[h] == no_vertex) {
            assign(h);
            out.add_vertex();
          }
        }
      }
    }
    for (std::size_t i = 0; i < representative.size(); ++i) {
      for (LetterIndex a = 0; a < k; ++a) {
        out.add_edge(static_cast<VertexId>(i), a, coset[group.act(representative[i], Letter(a))]);
      }
    }
    out.set_basepoint(0);
    return out;
  }

  LabeledGraph complete_arbitrary(LabeledGraph const& folded) {
    if (!folded.is_folded()) {
      throw PreconditionError("completion needs a folded graph");
    }
    Transitions const t(folded);
    LabeledGraph      out = folded;
    for (LetterIndex a = 0; a < folded.alphabet_size(); ++a) {
      std::vector<VertexId> missing_out, missing_in;
      for (VertexId v = 0; v < folded.num_vertices(); ++v) {
        if (t.step(v, Letter(a, 1)) == no_vertex) {
          missing_out.push_back(v);
        }
        if (t.step(v, Letter(a, -1)) == no_vertex) {
          missing_in.push_back(v);
        }
      }
      // Equal counts: a folded graph has as many a-edge sources as targets.
      for (std::size_t i = 0; i < missing_out.size(); ++i) {
        out.add_edge(missing_out[i], a, missing_in[i]);
      }
    }
    return out;
  }

  FinGroup transition_group(LabeledGraph const& complete) {
    if (!complete.is_complete()) {
      throw PreconditionError("transition group needs a complete folded graph");
    }
    std::vector<Permutation> gens(complete.alphabet_size(),
                                  Permutation(complete.num_vertices()));
    for (auto const& e : complete.edges()) {
      gens[e.label][e.src] = e.dst;
    }
    return FinGroup::from_permutations(complete.num_vertices(), std::move(gens), "T");
  }

}  // namespace arbor
