#include "arbor/rational.hpp"

#include <deque>
#include <string>

#include "arbor/errors.hpp"

namespace arbor {

  namespace {
    constexpr long unreached = -2;
    constexpr long self      = -1;

    // ε-closure from one state; parent[s] is the last ε-edge on a BFS path.
    std::vector<long> epsilon_bfs(std::size_t n,
                                  std::vector<std::vector<std::size_t>> const& eps_out,
                                  std::vector<WordAutomaton::Epsilon> const& eps,
                                  WordAutomaton::State from) {
      std::vector<long> parent(n, unreached);
      parent[from] = self;
      std::deque<WordAutomaton::State> queue{from};
      while (!queue.empty()) {
        auto const s = queue.front();
        queue.pop_front();
        for (auto id : eps_out[s]) {
          auto const t = eps[id].to;
          if (parent[t] == unreached) {
            parent[t] = static_cast<long>(id);
            queue.push_back(t);
          }
        }
      }
      return parent;
    }

    std::vector<std::size_t> path_from(std::vector<long> const& parent,
                                       std::vector<WordAutomaton::Epsilon> const& eps,
                                       WordAutomaton::State to) {
      std::vector<std::size_t> path;
      while (parent[to] != self) {
        auto const id = static_cast<std::size_t>(parent[to]);
        path.push_back(id);
        to = eps[id].from;
      }
      return {path.rbegin(), path.rend()};
    }
  }  // namespace

  WordAutomaton product_automaton(std::vector<CoreGraph> const& cores) {
    if (cores.empty()) {
      throw InputError("product of zero subgroups");
    }
    auto const k = cores.front().graph().alphabet_size();
    WordAutomaton a;
    std::vector<WordAutomaton::State> base;
    for (std::size_t i = 0; i < cores.size(); ++i) {
      auto const& g = cores[i].graph();
      if (g.alphabet_size() != k) {
        throw InputError("factors over different alphabets");
      }
      auto const offset = static_cast<WordAutomaton::State>(a._num_states);
      a._num_states += g.num_vertices();
      a._factor.resize(a._num_states, i);
      for (auto const& e : g.edges()) {
        a._transitions.push_back({offset + e.src, Letter(e.label, 1), offset + e.dst});
        a._transitions.push_back({offset + e.dst, Letter(e.label, -1), offset + e.src});
      }
      base.push_back(offset + cores[i].basepoint());
    }
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
      WordAutomaton::Epsilon link;
      link.from = base[i];
      link.to   = base[i + 1];
      link.link = true;
      a._epsilons.push_back(std::move(link));
    }
    a._initial = base.front();
    a._final   = base.back();
    return a;
  }

  std::size_t WordAutomaton::saturate() {
    std::vector<std::vector<std::size_t>> out(_num_states);
    for (std::size_t t = 0; t < _transitions.size(); ++t) {
      out[_transitions[t].from].push_back(t);
    }
    std::vector<std::vector<std::size_t>> eps_out(_num_states);
    for (std::size_t id = 0; id < _epsilons.size(); ++id) {
      eps_out[_epsilons[id].from].push_back(id);
    }
    std::size_t rounds = 0;
    for (bool changed = true; changed;) {
      changed = false;
      ++rounds;
      std::vector<std::vector<long>> closure(_num_states);
      for (State s = 0; s < _num_states; ++s) {
        closure[s] = epsilon_bfs(_num_states, eps_out, _epsilons, s);
      }
      for (std::size_t t1 = 0; t1 < _transitions.size(); ++t1) {
        auto const [q, x, p] = _transitions[t1];
        for (State p2 = 0; p2 < _num_states; ++p2) {
          if (closure[p][p2] == unreached) {
            continue;
          }
          for (auto t2 : out[p2]) {
            if (_transitions[t2].label != x.inverse()) {
              continue;
            }
            auto const s = _transitions[t2].to;
            if (closure[q][s] != unreached) {
              continue;
            }
            Epsilon e;
            e.from   = q;
            e.to     = s;
            e.first  = t1;
            e.second = t2;
            e.path   = path_from(closure[p], _epsilons, p2);
            eps_out[q].push_back(_epsilons.size());
            closure[q][s] = static_cast<long>(_epsilons.size());
            _epsilons.push_back(std::move(e));
            changed = true;
          }
        }
      }
    }
    _saturated = true;
    return rounds;
  }

  std::optional<std::vector<long>> WordAutomaton::accepting_run(Word const& w) const {
    auto const m    = w.size() + 1;
    auto const node = [m](State s, std::size_t pos) { return s * m + pos; };
    std::vector<std::vector<std::size_t>> out(_num_states), eps_out(_num_states);
    for (std::size_t t = 0; t < _transitions.size(); ++t) {
      out[_transitions[t].from].push_back(t);
    }
    for (std::size_t id = 0; id < _epsilons.size(); ++id) {
      eps_out[_epsilons[id].from].push_back(id);
    }
    std::vector<std::size_t> prev(_num_states * m, SIZE_MAX);
    std::vector<long>        step(_num_states * m, 0);
    auto const               start = node(_initial, 0);
    prev[start]                    = start;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      auto const cur = queue.front();
      queue.pop_front();
      auto const s   = static_cast<State>(cur / m);
      auto const pos = cur % m;
      auto const visit = [&](std::size_t next, long code) {
        if (prev[next] == SIZE_MAX) {
          prev[next] = cur;
          step[next] = code;
          queue.push_back(next);
        }
      };
      for (auto id : eps_out[s]) {
        visit(node(_epsilons[id].to, pos), ~static_cast<long>(id));
      }
      if (pos < w.size()) {
        for (auto t : out[s]) {
          if (_transitions[t].label == w[pos]) {
            visit(node(_transitions[t].to, pos + 1), static_cast<long>(t));
          }
        }
      }
    }
    auto cur = node(_final, w.size());
    if (prev[cur] == SIZE_MAX) {
      return std::nullopt;
    }
    std::vector<long> run;
    while (cur != start) {
      run.push_back(step[cur]);
      cur = prev[cur];
    }
    return std::vector<long>(run.rbegin(), run.rend());
  }

  void WordAutomaton::expand_epsilon(std::size_t id, std::vector<Word>& out) const {
    auto const& e = _epsilons[id];
    if (e.link) {
      out.emplace_back();
      return;
    }
    out.back().push_back(_transitions[e.first].label);
    for (auto inner : e.path) {
      expand_epsilon(inner, out);
    }
    out.back().push_back(_transitions[e.second].label);
  }

  std::vector<Word> WordAutomaton::expand(std::vector<long> const& run) const {
    std::vector<Word> out(1);
    for (auto code : run) {
      if (code >= 0) {
        out.back().push_back(_transitions[static_cast<std::size_t>(code)].label);
      } else {
        expand_epsilon(static_cast<std::size_t>(~code), out);
      }
    }
    return out;
  }

  ProductMembership member_product(std::vector<CoreGraph> const& cores, Word const& w) {
    auto automaton = product_automaton(cores);
    automaton.saturate();
    auto const target = reduce(w);
    auto const run    = automaton.accepting_run(target);
    if (!run) {
      return {};
    }
    ProductMembership result{true, automaton.expand(*run)};
    if (result.factors.size() != cores.size()) {
      throw TheoremViolation("accepting run crosses " + std::to_string(result.factors.size() - 1)
                             + " links");
    }
    Word product;
    for (std::size_t i = 0; i < cores.size(); ++i) {
      result.factors[i] = reduce(result.factors[i]);
      if (!member(cores[i], result.factors[i])) {
        throw TheoremViolation("factor " + std::to_string(i) + " not in its subgroup");
      }
      product = multiply(product, result.factors[i]);
    }
    if (product != target) {
      throw TheoremViolation("factorization does not reduce to the input word");
    }
    return result;
  }

}  // namespace arbor
