#include "arbor/extension.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "arbor/errors.hpp"

namespace arbor {

  bool is_prime(std::uint64_t n) {
    if (n < 2) {
      return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        return false;
      }
    }
    return true;
  }

  UniversalExtension::UniversalExtension(FinGroup group, std::uint32_t p)
      : _group(std::move(group)), _p(p) {
    if (!is_prime(p)) {
      throw InputError("extension prime must be prime, got " + std::to_string(p));
    }
  }

  std::size_t UniversalExtension::rank() const {
    return _group.order() * (_group.alphabet_size() - 1) + 1;
  }

  std::string UniversalExtension::name() const {
    return _group.name() + "^C" + std::to_string(_p);
  }

  ExtElement UniversalExtension::generator(LetterIndex a) const {
    return act(identity(), Letter(a));
  }

  std::map<Edge, std::uint32_t> UniversalExtension::translate(
      ElementId g, std::map<Edge, std::uint32_t> const& c) const {
    std::map<Edge, std::uint32_t> out;
    for (auto const& [e, r] : c) {
      out.emplace(Edge{_group.multiply(g, e.source), e.letter}, r);
    }
    return out;
  }

  ExtElement UniversalExtension::multiply(ExtElement const& x, ExtElement const& y) const {
    ExtElement out{_group.multiply(x.base, y.base), x.cocycle};
    for (auto const& [e, r] : translate(x.base, y.cocycle)) {
      auto& slot = out.cocycle[e];
      slot       = (slot + r) % _p;
      if (slot == 0) {
        out.cocycle.erase(e);
      }
    }
    return out;
  }

  ExtElement UniversalExtension::inverse(ExtElement const& x) const {
    ElementId const g = _group.inverse(x.base);
    ExtElement      out{g, {}};
    for (auto const& [e, r] : translate(g, x.cocycle)) {
      out.cocycle.emplace(e, _p - r);
    }
    return out;
  }

  ExtElement UniversalExtension::act(ExtElement x, Letter l) const {
    ElementId const next = _group.act(x.base, l);
    Edge const      e    = l.positive() ? Edge{x.base, l.base} : Edge{next, l.base};
    auto&           slot = x.cocycle[e];
    slot                 = (slot + (l.positive() ? 1 : _p - 1)) % _p;
    if (slot == 0) {
      x.cocycle.erase(e);
    }
    x.base = next;
    return x;
  }

  ExtElement UniversalExtension::evaluate(Word const& w) const {
    ExtElement x;
    for (Letter l : w) {
      x = act(std::move(x), l);
    }
    return x;
  }

  FinGroup UniversalExtension::enumerate(std::size_t budget) const {
    std::size_t const                 k = _group.alphabet_size();
    std::map<ExtElement, ElementId>   ids{{identity(), 0}};
    std::vector<ExtElement const*>    order{&ids.begin()->first};
    std::vector<ElementId>            right;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (LetterIndex a = 0; a < k; ++a) {
        auto next        = act(*order[i], Letter(a));
        auto [it, fresh] = ids.emplace(std::move(next), static_cast<ElementId>(order.size()));
        if (fresh) {
          if (order.size() >= budget) {
            throw BudgetExceeded("extension " + name() + " exceeds the enumeration budget of "
                                 + std::to_string(budget));
          }
          order.push_back(&it->first);
        }
        right.push_back(it->second);
      }
    }
    return FinGroup::from_right_multiplication(k, std::move(right), name()).with_budget(budget);
  }

  ExtElement ext_evaluate(FinGroup const& group, std::uint32_t p, Word const& w) {
    return UniversalExtension(group, p).evaluate(w);
  }

  BigInt ext_order(std::size_t group_order, std::size_t alphabet_size, std::uint32_t p) {
    if (alphabet_size == 0) {
      throw InputError("empty alphabet");
    }
    BigInt out = group_order;
    for (std::size_t i = 0; i < group_order * (alphabet_size - 1) + 1; ++i) {
      out *= p;
    }
    return out;
  }

  BigInt ext_order(FinGroup const& group, std::uint32_t p) {
    return ext_order(group.order(), group.alphabet_size(), p);
  }

  std::string to_string(SVerdict v) {
    switch (v) {
      case SVerdict::equal: return "equal";
      case SVerdict::distinct: return "distinct";
      case SVerdict::probably_equal: return "probably-equal";
    }
    return "?";
  }

  ElementId evaluate_rewritten(FinGroup const& s, Rewritten const& r,
                               std::vector<ElementId> const& assignment) {
    ElementId acc = 0;
    for (auto [i, sign] : r) {
      ElementId const x = assignment.at(i);
      acc               = s.multiply(acc, sign > 0 ? x : s.inverse(x));
    }
    return acc;
  }

  namespace {

    Rewritten cancel(Rewritten const& r) {
      Rewritten out;
      for (auto const& step : r) {
        if (!out.empty() && out.back().first == step.first && out.back().second == -step.second) {
          out.pop_back();
        } else {
          out.push_back(step);
        }
      }
      return out;
    }

    // Fills the free slots so that the assignment generates S, if possible. The letter images of S generate it, so with
    // enough free slots no search is needed.
    bool complete_surjective(FinGroup const& s, std::vector<ElementId>& a,
                             std::vector<std::size_t> const& free) {
      std::size_t const k = s.alphabet_size();
      if (free.size() >= k) {
        for (std::size_t i = 0; i < free.size(); ++i) {
          a[free[i]] = i < k ? s.evaluate(Word{Letter(static_cast<LetterIndex>(i))}) : 0;
        }
        return true;
      }
      // Odometer over S^free.
      std::size_t const n = s.order();
      for (auto i : free) {
        a[i] = 0;
      }
      while (true) {
        if (generates(s, a)) {
          return true;
        }
        std::size_t j = 0;
        for (; j < free.size(); ++j) {
          if (++a[free[j]] < n) {
            break;
          }
          a[free[j]] = 0;
        }
        if (j == free.size()) {
          return false;
        }
      }
    }

  }  // namespace

  SEqualResult s_equal(FinGroup const& group, FinGroup const& simple, Word const& u, Word const& v,
                       SEqualMode const& mode) {
    if (!is_simple(simple)) {
      throw PreconditionError("s_equal needs a simple group, got " + simple.name());
    }
    SEqualResult out;
    if (group.evaluate(u) != group.evaluate(v)) {
      out.verdict = SVerdict::distinct;
      return out;
    }
    auto const tree = spanning_tree(group);
    auto const r    = cancel(rewrite(tree, concat(u, invert(v))));
    if (r.empty()) {
      return out;
    }
    std::size_t const rank = tree.rank();
    std::size_t const n    = simple.order();

    if (auto const* w = std::get_if<WitnessSearch>(&mode)) {
      std::mt19937_64                          rng(w->seed);
      std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(n - 1));
      std::vector<ElementId>                   a(rank);
      for (std::size_t i = 0; i < w->samples; ++i) {
        for (auto& x : a) {
          x = pick(rng);
        }
        ++out.evaluated;
        if (evaluate_rewritten(simple, r, a) != 0 && generates(simple, a)) {
          out.verdict = SVerdict::distinct;
          out.witness = a;
          return out;
        }
      }
      out.verdict = SVerdict::probably_equal;
      return out;
    }

    std::vector<std::size_t> used;
    for (auto [i, sign] : r) {
      used.push_back(i);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<std::size_t> free;
    for (std::size_t i = 0, j = 0; i < rank; ++i) {
      if (j < used.size() && used[j] == i) {
        ++j;
      } else {
        free.push_back(i);
      }
    }
    double const total = std::pow(static_cast<double>(n), static_cast<double>(used.size()));
    if (total > static_cast<double>(std::get<ExactSearch>(mode).budget)) {
      throw BudgetExceeded("exact S-equality needs " + std::to_string(n) + "^"
                           + std::to_string(used.size()) + " assignments");
    }
    std::vector<ElementId> a(rank, 0);
    while (true) {
      ++out.evaluated;
      if (evaluate_rewritten(simple, r, a) != 0) {
        auto full = a;
        if (complete_surjective(simple, full, free)) {
          out.verdict = SVerdict::distinct;
          out.witness = std::move(full);
          return out;
        }
      }
      std::size_t j = 0;
      for (; j < used.size(); ++j) {
        if (++a[used[j]] < n) {
          break;
        }
        a[used[j]] = 0;
      }
      if (j == used.size()) {
        return out;
      }
    }
  }

  Certificate dissolving_certificate(FinGroup const& group, Constellation const& c, Word const& u,
                                     Word const& v, FinGroup const& simple) {
    if (!group.separated()) {
      throw PreconditionError(group.name() + " violates [a] != [b] != 1");
    }
    if (!is_simple(simple)) {
      throw PreconditionError(simple.name() + " is not simple");
    }
    if (!is_constellation(c)) {
      throw PreconditionError("not a constellation");
    }
    if (!path_inside(c.x, 0, u) || group.evaluate(u) != c.g) {
      throw PreconditionError("u does not read a path 1 -> g inside X");
    }
    if (!path_inside(c.t, 0, v) || group.evaluate(v) != c.g) {
      throw PreconditionError("v does not read a path 1 -> g inside T");
    }
    Certificate out;
    out.g         = c.g;
    out.u         = u;
    out.v         = v;
    out.z         = component_of(c.x.intersection(c.t), 0);
    out.x_borders = borders(c.x, out.z);
    out.t_borders = borders(c.t, out.z);
    auto const uc = path_span(group, 0, u).counts;
    auto const vc = path_span(group, 0, v).counts;
    auto flow     = [](Borders const& b, TraversalCount const& pi) {
      long s = 0;
      for (auto e : b.leaving) {
        s += pi[e];
      }
      for (auto e : b.entering) {
        s -= pi[e];
      }
      return s;
    };
    out.x_flow = flow(out.x_borders, uc);
    out.t_flow = flow(out.t_borders, vc);
    if (out.x_flow != 1 || out.t_flow != 1) {
      throw TheoremViolation("border flow is not 1");
    }

    out.o = exponent(simple);
    auto const o = static_cast<long>(out.o);
    auto pick    = [o](Borders const& b, TraversalCount const& pi) -> std::optional<Edge> {
      std::vector<Edge> all = b.leaving;
      all.insert(all.end(), b.entering.begin(), b.entering.end());
      std::sort(all.begin(), all.end());
      for (auto e : all) {
        if (pi[e] % o != 0) {
          return e;
        }
      }
      return std::nullopt;
    };
    auto e = pick(out.x_borders, uc);
    auto f = pick(out.t_borders, vc);
    if (!e || !f) {
      throw TheoremViolation("no border edge with traversal count prime to the exponent");
    }
    if (*e == *f) {
      throw TheoremViolation("the two borders share an edge");
    }
    out.e       = *e;
    out.f       = *f;
    out.u_count = uc[*e];
    out.v_count = vc[*f];
    out.u_exp   = static_cast<std::uint64_t>(((out.u_count % o) + o) % o);
    out.v_exp   = static_cast<std::uint64_t>(((out.v_count % o) + o) % o);

    auto const tree = spanning_tree_avoiding(group, *e, *f);
    out.tree_edges  = tree.tree_edges();
    auto const sums = exponent_sums(rewrite(tree, concat(u, invert(v))), tree.rank());
    out.rewrite_e   = sums[tree.basis_index(*e)];
    out.rewrite_f   = sums[tree.basis_index(*f)];
    if (out.rewrite_e != out.u_count || out.rewrite_f != -out.v_count) {
      throw TheoremViolation("Nielsen exponent sums disagree with traversal counts");
    }
    return out;
  }

  bool free_object_pair_check(FinGroup const& s, std::uint64_t m, std::uint64_t n) {
    std::size_t const      size = s.order();
    std::vector<ElementId> pm(size), pn(size);
    for (ElementId x = 0; x < size; ++x) {
      auto const ord = s.element_order(x);
      auto power     = [&](std::uint64_t k) {
        ElementId acc = 0;
        for (std::uint64_t i = 0; i < k % ord; ++i) {
          acc = s.multiply(acc, x);
        }
        return acc;
      };
      pm[x] = power(m);
      pn[x] = power(n);
    }
    for (ElementId x = 0; x < size; ++x) {
      for (ElementId y = 0; y < size; ++y) {
        if (s.multiply(pm[x], pn[y]) != 0) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace arbor
