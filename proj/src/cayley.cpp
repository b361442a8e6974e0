#include "arbor/cayley.hpp"

#include <algorithm>
#include <numeric>

#include "arbor/errors.hpp"

namespace arbor {

  CayleySubgraph::CayleySubgraph(FinGroup group)
      : _group(std::move(group)),
        _vertices(_group.order(), false),
        _edges(_group.order() * _group.alphabet_size(), false) {}

  std::vector<ElementId> CayleySubgraph::vertices() const {
    std::vector<ElementId> out;
    out.reserve(_num_vertices);
    for (std::size_t v = 0; v < _vertices.size(); ++v) {
      if (_vertices[v]) {
        out.push_back(static_cast<ElementId>(v));
      }
    }
    return out;
  }

  std::vector<Edge> CayleySubgraph::edges() const {
    std::vector<Edge> out;
    out.reserve(_num_edges);
    std::size_t const k = _group.alphabet_size();
    for (std::size_t i = 0; i < _edges.size(); ++i) {
      if (_edges[i]) {
        out.push_back(Edge{static_cast<ElementId>(i / k), static_cast<LetterIndex>(i % k)});
      }
    }
    return out;
  }

  void CayleySubgraph::add_vertex(ElementId v) {
    if (!_vertices.at(v)) {
      _vertices[v] = true;
      ++_num_vertices;
    }
  }

  void CayleySubgraph::add_edge(Edge e) {
    if (e.letter >= _group.alphabet_size()) {
      throw InputError("edge letter outside the alphabet");
    }
    if (!_edges.at(index(e))) {
      _edges[index(e)] = true;
      ++_num_edges;
    }
    add_vertex(e.source);
    add_vertex(target(e));
  }

  CayleySubgraph CayleySubgraph::intersection(CayleySubgraph const& other) const {
    if (other._vertices.size() != _vertices.size()
        || other._group.alphabet_size() != _group.alphabet_size()) {
      throw PreconditionError("intersection of subgraphs of different Cayley graphs");
    }
    CayleySubgraph out(_group);
    for (std::size_t v = 0; v < _vertices.size(); ++v) {
      if (_vertices[v] && other._vertices[v]) {
        out.add_vertex(static_cast<ElementId>(v));
      }
    }
    std::size_t const k = _group.alphabet_size();
    for (std::size_t i = 0; i < _edges.size(); ++i) {
      if (_edges[i] && other._edges[i]) {
        out.add_edge(Edge{static_cast<ElementId>(i / k), static_cast<LetterIndex>(i % k)});
      }
    }
    return out;
  }

  CayleySubgraph CayleySubgraph::translated(ElementId g) const {
    CayleySubgraph out(_group);
    for (auto v : vertices()) {
      out.add_vertex(_group.multiply(g, v));
    }
    for (auto e : edges()) {
      out.add_edge(Edge{_group.multiply(g, e.source), e.letter});
    }
    return out;
  }

  bool CayleySubgraph::is_connected() const {
    if (_num_vertices == 0) {
      return true;
    }
    return components(*this).size() == 1;
  }

  void TraversalCount::add(Edge e, long delta) {
    long& c = _counts[e];
    c += delta;
    if (c == 0) {
      _counts.erase(e);
    }
  }

  CayleySubgraph cayley_graph(FinGroup const& group) {
    CayleySubgraph out(group);
    for (ElementId g = 0; g < group.order(); ++g) {
      for (LetterIndex a = 0; a < group.alphabet_size(); ++a) {
        out.add_edge(Edge{g, a});
      }
    }
    return out;
  }

  PathSpan path_span(FinGroup const& group, ElementId start, Word const& w) {
    PathSpan out{CayleySubgraph(group), start, {}};
    out.span.add_vertex(start);
    ElementId cur = start;
    for (Letter x : w) {
      ElementId const next = group.act(cur, x);
      Edge const      e    = x.positive() ? Edge{cur, x.base} : Edge{next, x.base};
      out.span.add_edge(e);
      out.counts.add(e, x.positive() ? 1 : -1);
      cur = next;
    }
    out.end = cur;
    return out;
  }

  bool path_inside(CayleySubgraph const& x, ElementId start, Word const& w) {
    auto const& group = x.group();
    if (!x.contains(start)) {
      return false;
    }
    ElementId cur = start;
    for (Letter l : w) {
      ElementId const next = group.act(cur, l);
      if (!x.contains(l.positive() ? Edge{cur, l.base} : Edge{next, l.base})) {
        return false;
      }
      cur = next;
    }
    return true;
  }

  std::vector<std::pair<VertexId, ElementId>> covering_product(LabeledGraph const& graph,
                                                               FinGroup const&     group) {
    if (!graph.basepoint()) {
      throw PreconditionError("covering subgraph needs a basepointed graph");
    }
    if (graph.alphabet_size() != group.alphabet_size()) {
      throw InputError("graph and group use different alphabets");
    }
    Transitions const t(graph);
    std::size_t const n = group.order();
    std::vector<bool> seen(graph.num_vertices() * n, false);
    std::vector<std::pair<VertexId, ElementId>> out{{*graph.basepoint(), 0}};
    seen[*graph.basepoint() * n] = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto const [v, g] = out[i];
      for (LetterIndex a = 0; a < graph.alphabet_size(); ++a) {
        for (int s : {1, -1}) {
          Letter const   x(a, s);
          VertexId const w = t.step(v, x);
          if (w == no_vertex) {
            continue;
          }
          ElementId const h = group.act(g, x);
          if (!seen[w * n + h]) {
            seen[w * n + h] = true;
            out.emplace_back(w, h);
          }
        }
      }
    }
    return out;
  }

  CayleySubgraph covering_subgraph(LabeledGraph const& graph, FinGroup const& group) {
    Transitions const t(graph);
    CayleySubgraph    out(group);
    out.add_vertex(0);
    for (auto const& [v, g] : covering_product(graph, group)) {
      for (LetterIndex a = 0; a < graph.alphabet_size(); ++a) {
        if (t.step(v, Letter(a)) != no_vertex) {
          out.add_edge(Edge{g, a});
        }
      }
    }
    return out;
  }

  namespace {

    std::vector<ElementId> component_labels(CayleySubgraph const& x) {
      std::size_t const      n = x.group().order();
      std::vector<ElementId> parent(n);
      std::iota(parent.begin(), parent.end(), 0U);
      auto find = [&parent](ElementId v) {
        while (parent[v] != v) {
          v = parent[v] = parent[parent[v]];
        }
        return v;
      };
      for (auto e : x.edges()) {
        auto u = find(e.source), v = find(x.target(e));
        if (u != v) {
          parent[std::max(u, v)] = std::min(u, v);
        }
      }
      for (ElementId v = 0; v < n; ++v) {
        parent[v] = find(v);
      }
      return parent;
    }

  }  // namespace

  std::vector<std::vector<ElementId>> components(CayleySubgraph const& x) {
    auto const                          label = component_labels(x);
    std::vector<std::vector<ElementId>> out;
    std::vector<std::size_t>            slot(label.size(), SIZE_MAX);
    for (auto v : x.vertices()) {
      auto& s = slot[label[v]];
      if (s == SIZE_MAX) {
        s = out.size();
        out.emplace_back();
      }
      out[s].push_back(v);
    }
    return out;
  }

  std::vector<ElementId> component_of(CayleySubgraph const& x, ElementId v) {
    if (!x.contains(v)) {
      throw PreconditionError("vertex not in subgraph");
    }
    auto const             label = component_labels(x);
    std::vector<ElementId> out;
    for (auto w : x.vertices()) {
      if (label[w] == label[v]) {
        out.push_back(w);
      }
    }
    return out;
  }

  Borders borders(CayleySubgraph const& x, std::vector<ElementId> const& z) {
    std::vector<bool> in_z(x.group().order(), false);
    for (auto v : z) {
      if (!x.contains(v)) {
        throw PreconditionError("border set must lie inside the subgraph");
      }
      in_z[v] = true;
    }
    Borders out;
    for (auto e : x.edges()) {
      bool const s = in_z[e.source], t = in_z[x.target(e)];
      if (s && !t) {
        out.leaving.push_back(e);
      } else if (!s && t) {
        out.entering.push_back(e);
      }
    }
    return out;
  }

  bool connected_without_two_edges(FinGroup const& group, Edge e, Edge f) {
    if (!group.separated()) {
      throw PreconditionError("group violates [a] != [b] != 1");
    }
    if (e == f) {
      throw PreconditionError("the two removed edges must be distinct");
    }
    std::size_t const n = group.order();
    if (e.source >= n || f.source >= n || e.letter >= group.alphabet_size()
        || f.letter >= group.alphabet_size()) {
      throw InputError("edge outside the Cayley graph");
    }
    std::vector<bool>      seen(n, false);
    std::vector<ElementId> stack{0};
    seen[0]           = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      ElementId g = stack.back();
      stack.pop_back();
      for (LetterIndex a = 0; a < group.alphabet_size(); ++a) {
        for (int s : {1, -1}) {
          ElementId const h    = group.act(g, Letter(a, s));
          Edge const      used = s > 0 ? Edge{g, a} : Edge{h, a};
          if (used == e || used == f || seen[h]) {
            continue;
          }
          seen[h] = true;
          ++count;
          stack.push_back(h);
        }
      }
    }
    return count == n;
  }

}  // namespace arbor
