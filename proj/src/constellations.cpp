#include "arbor/constellations.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "arbor/errors.hpp"

namespace arbor {

  bool is_constellation(CayleySubgraph const& x, ElementId g, CayleySubgraph const& t) {
    if (x.group().order() != t.group().order()
        || x.group().alphabet_size() != t.group().alphabet_size()) {
      throw PreconditionError("constellation parts live in different Cayley graphs");
    }
    if (g == 0 || !x.contains(ElementId{0}) || !t.contains(ElementId{0}) || !x.contains(g)
        || !t.contains(g)) {
      return false;
    }
    if (!x.is_connected() || !t.is_connected()) {
      return false;
    }
    auto const z = component_of(x.intersection(t), 0);
    return !std::binary_search(z.begin(), z.end(), g);
  }

  std::string describe(EnumerationMode const& mode) {
    if (auto const* e = std::get_if<Exhaustive>(&mode)) {
      return "exhaustive(edge_budget=" + std::to_string(e->edge_budget) + ")";
    }
    auto const& s = std::get<Sampled>(mode);
    return "sampled(count=" + std::to_string(s.count) + ", max_length=" + std::to_string(s.max_length)
           + ", seed=" + std::to_string(s.seed) + ")";
  }

  std::string to_string(Verdict v) {
    switch (v) {
      case Verdict::dissolved: return "dissolved";
      case Verdict::counterexample: return "counterexample";
      case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
  }

  std::optional<Word> path_within(CayleySubgraph const& x, ElementId from, ElementId to) {
    if (!x.contains(from) || !x.contains(to)) {
      return std::nullopt;
    }
    auto const&            group = x.group();
    std::size_t const      n     = group.order();
    std::vector<ElementId> parent(n, n);
    std::vector<Letter>    via(n);
    std::vector<ElementId> queue{from};
    parent[from] = from;
    for (std::size_t i = 0; i < queue.size() && parent[to] == n; ++i) {
      ElementId const v = queue[i];
      for (LetterIndex a = 0; a < group.alphabet_size(); ++a) {
        for (int s : {1, -1}) {
          ElementId const w = group.act(v, Letter(a, s));
          if (parent[w] != n || !x.contains(s > 0 ? Edge{v, a} : Edge{w, a})) {
            continue;
          }
          parent[w] = v;
          via[w]    = Letter(a, s);
          queue.push_back(w);
        }
      }
    }
    if (parent[to] == n) {
      return std::nullopt;
    }
    std::vector<Letter> letters;
    for (ElementId v = to; v != from; v = parent[v]) {
      letters.push_back(via[v]);
    }
    std::reverse(letters.begin(), letters.end());
    return Word(std::move(letters));
  }

  namespace {

    // Edge subsets of the Cayley graph as bitmasks over edge indices.
    struct MaskTables {
      std::size_t                        edges = 0;
      std::vector<ElementId>             src, dst;
      std::vector<std::uint64_t>         reach;       // vertices reachable from 1
      std::vector<std::vector<uint32_t>> candidates;  // per g: connected masks through 1, g
    };

    MaskTables mask_tables(FinGroup const& group, std::size_t budget) {
      std::size_t const n = group.order();
      std::size_t const k = group.alphabet_size();
      MaskTables        t;
      t.edges = n * k;
      if (t.edges > budget) {
        throw BudgetExceeded("exhaustive constellation enumeration needs "
                             + std::to_string(t.edges) + " edges, budget is "
                             + std::to_string(budget));
      }
      if (t.edges > 24) {
        throw BudgetExceeded("exhaustive constellation enumeration is limited to 24 edges");
      }
      for (ElementId g = 0; g < n; ++g) {
        for (LetterIndex a = 0; a < k; ++a) {
          t.src.push_back(g);
          t.dst.push_back(group.act(g, Letter(a)));
        }
      }
      std::size_t const masks = std::size_t{1} << t.edges;
      t.reach.assign(masks, 1);
      t.candidates.assign(n, {});
      for (std::size_t m = 1; m < masks; ++m) {
        std::uint64_t r = 1, ends = 0;
        for (std::size_t i = 0; i < t.edges; ++i) {
          if (m >> i & 1U) {
            ends |= (std::uint64_t{1} << t.src[i]) | (std::uint64_t{1} << t.dst[i]);
          }
        }
        for (bool changed = true; changed;) {
          changed = false;
          for (std::size_t i = 0; i < t.edges; ++i) {
            if (!(m >> i & 1U)) {
              continue;
            }
            std::uint64_t const both = (std::uint64_t{1} << t.src[i]) | (std::uint64_t{1} << t.dst[i]);
            if ((r & both) != 0 && (r & both) != both) {
              r |= both;
              changed = true;
            }
          }
        }
        t.reach[m] = r;
        if ((ends & ~r) != 0) {
          continue;  // disconnected
        }
        for (ElementId g = 1; g < n; ++g) {
          if (r >> g & 1U) {
            t.candidates[g].push_back(static_cast<uint32_t>(m));
          }
        }
      }
      return t;
    }

    CayleySubgraph from_mask(FinGroup const& group, MaskTables const& t, std::uint64_t m) {
      CayleySubgraph out(group);
      out.add_vertex(0);
      std::size_t const k = group.alphabet_size();
      for (std::size_t i = 0; i < t.edges; ++i) {
        if (m >> i & 1U) {
          out.add_edge(Edge{static_cast<ElementId>(i / k), static_cast<LetterIndex>(i % k)});
        }
      }
      return out;
    }

    using Key = std::tuple<ElementId, std::vector<Edge>, std::vector<Edge>>;

    void sample(FinGroup const& group, Sampled const& mode,
                std::function<bool(FoundConstellation const&)> const& visit) {
      std::mt19937_64 rng(mode.seed);
      std::set<Key>   seen;
      std::uniform_int_distribution<std::size_t> length(1, std::max<std::size_t>(mode.max_length, 1));
      auto const k = group.alphabet_size();
      for (std::size_t i = 0; i < mode.count; ++i) {
        Word const      u = random_reduced_word(rng, length(rng), k);
        ElementId const g = group.evaluate(u);
        if (g == 0) {
          continue;
        }
        Word v = random_reduced_word(rng, length(rng) - 1, k);
        v.append(group.witness(group.multiply(group.inverse(group.evaluate(v)), g)));
        v = reduce(v);
        auto x = path_span(group, 0, u).span;
        auto t = path_span(group, 0, v).span;
        if (!is_constellation(x, g, t)) {
          continue;
        }
        if (!seen.insert(Key{g, x.edges(), t.edges()}).second) {
          continue;
        }
        if (!visit(FoundConstellation{Constellation{std::move(x), g, std::move(t)}, u, v})) {
          return;
        }
      }
    }

    // Component of 1 in the preimage of x in the Cayley graph of h.
    struct Lift {
      std::vector<ElementId> parent;  // h.order() when unreached
      std::vector<Letter>    via;

      [[nodiscard]] bool reached(ElementId v) const {
        return parent[v] != parent.size();
      }
      [[nodiscard]] Word path_to(ElementId v) const {
        std::vector<Letter> letters;
        for (; v != 0; v = parent[v]) {
          letters.push_back(via[v]);
        }
        std::reverse(letters.begin(), letters.end());
        return Word(std::move(letters));
      }
    };

    template <typename Allowed>
    Lift lift(FinGroup const& h, std::vector<ElementId> const& phi, Allowed const& allowed) {
      std::size_t const      n = h.order();
      Lift                   out{std::vector<ElementId>(n, static_cast<ElementId>(n)),
                                 std::vector<Letter>(n)};
      std::vector<ElementId> queue{0};
      out.parent[0] = 0;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        ElementId const v = queue[i];
        for (LetterIndex a = 0; a < h.alphabet_size(); ++a) {
          for (int s : {1, -1}) {
            ElementId const w = h.act(v, Letter(a, s));
            if (out.reached(w) || !allowed(Edge{phi[s > 0 ? v : w], a})) {
              continue;
            }
            out.parent[w] = v;
            out.via[w]    = Letter(a, s);
            queue.push_back(w);
          }
        }
      }
      return out;
    }

    Lift lift(FinGroup const& h, std::vector<ElementId> const& phi, CayleySubgraph const& x) {
      return lift(h, phi, [&x](Edge e) { return x.contains(e); });
    }

    std::vector<ElementId> morphism(FinGroup const& h, FinGroup const& g) {
      auto phi = canonical_morphism(h, g);
      if (!phi) {
        throw PreconditionError("no canonical morphism " + h.name() + " -> " + g.name());
      }
      return std::move(*phi);
    }

    DissolveResult compare_lifts(FinGroup const& h, FinGroup const& g,
                                 std::vector<ElementId> const& phi, Constellation const& c,
                                 Lift const& lx, Lift const& lt, std::size_t max_witness) {
      DissolveResult out;
      std::size_t    best = SIZE_MAX;
      for (ElementId v = 0; v < h.order(); ++v) {
        if (phi[v] != c.g || !lx.reached(v) || !lt.reached(v)) {
          continue;
        }
        Word u = lx.path_to(v), w = lt.path_to(v);
        if (std::max(u.size(), w.size()) < best) {
          best    = std::max(u.size(), w.size());
          out.u   = std::move(u);
          out.v   = std::move(w);
        }
      }
      if (best == SIZE_MAX) {
        return out;
      }
      if (best > max_witness) {
        out.verdict = Verdict::inconclusive;
        return out;
      }
      out.verdict = Verdict::counterexample;
      bool const sound = path_inside(c.x, 0, out.u) && path_inside(c.t, 0, out.v)
                         && g.evaluate(out.u) == c.g && g.evaluate(out.v) == c.g
                         && h.evaluate(out.u) == h.evaluate(out.v);
      if (!sound) {
        throw TheoremViolation("extracted counterexample failed re-verification");
      }
      return out;
    }

  }  // namespace

  void for_each_constellation(FinGroup const& group, EnumerationMode const& mode,
                              std::function<bool(FoundConstellation const&)> const& visit) {
    if (auto const* s = std::get_if<Sampled>(&mode)) {
      sample(group, *s, visit);
      return;
    }
    auto const t = mask_tables(group, std::get<Exhaustive>(mode).edge_budget);
    for (ElementId g = 1; g < group.order(); ++g) {
      for (auto mx : t.candidates[g]) {
        for (auto mt : t.candidates[g]) {
          if (t.reach[mx & mt] >> g & 1U) {
            continue;
          }
          FoundConstellation f{Constellation{from_mask(group, t, mx), g, from_mask(group, t, mt)},
                               {}, {}};
          f.u = *path_within(f.c.x, 0, g);
          f.v = *path_within(f.c.t, 0, g);
          if (!visit(f)) {
            return;
          }
        }
      }
    }
  }

  std::vector<FoundConstellation> enumerate_constellations(FinGroup const&        group,
                                                           EnumerationMode const& mode) {
    std::vector<FoundConstellation> out;
    for_each_constellation(group, mode, [&out](FoundConstellation const& f) {
      out.push_back(f);
      return true;
    });
    return out;
  }

  DissolveResult dissolves(FinGroup const& h, FinGroup const& g, Constellation const& c,
                           std::size_t max_witness) {
    auto const phi = morphism(h, g);
    return compare_lifts(h, g, phi, c, lift(h, phi, c.x), lift(h, phi, c.t), max_witness);
  }

  namespace {

    struct Tally {
      DissolveReport&           report;
      std::size_t               max_listed;
      std::vector<ListedVerdict> dissolved;

      void add(Constellation const& c, DissolveResult const& r) {
        ++report.constellations;
        switch (r.verdict) {
          case Verdict::dissolved: ++report.dissolved; break;
          case Verdict::counterexample: ++report.counterexamples; break;
          case Verdict::inconclusive: ++report.inconclusive; break;
        }
        auto& into = r.verdict == Verdict::dissolved ? dissolved : report.listed;
        if (into.size() < max_listed) {
          into.push_back({c.g, c.x.edges(), c.t.edges(), r.verdict, r.u, r.v});
        }
      }

      void finish() {
        for (auto& d : dissolved) {
          if (report.listed.size() >= max_listed) {
            break;
          }
          report.listed.push_back(std::move(d));
        }
      }
    };

  }  // namespace

  DissolveReport dissolves_all(FinGroup const& h, FinGroup const& g, EnumerationMode const& mode,
                               std::size_t max_listed, std::size_t max_witness) {
    auto const     phi = morphism(h, g);
    DissolveReport report{h.name(), g.name(), h.order(), g.order(), mode, 0, 0, 0, 0, {}};
    Tally          tally{report, max_listed, {}};

    if (auto const* s = std::get_if<Sampled>(&mode)) {
      std::map<std::vector<Edge>, Lift> cache;
      auto lifted = [&](CayleySubgraph const& x) -> Lift const& {
        auto key = x.edges();
        auto it  = cache.find(key);
        if (it == cache.end()) {
          it = cache.emplace(std::move(key), lift(h, phi, x)).first;
        }
        return it->second;
      };
      sample(g, *s, [&](FoundConstellation const& f) {
        auto const& lx = lifted(f.c.x);
        auto const& lt = lifted(f.c.t);
        auto        r  = compare_lifts(h, g, phi, f.c, lx, lt, max_witness);
        if (r.verdict == Verdict::dissolved) {
          // The sampled pair itself must then be separated as well.
          if (h.evaluate(f.u) == h.evaluate(f.v)) {
            throw TheoremViolation("sampled pair merges in a group certified to dissolve it");
          }
          r.u = f.u;
          r.v = f.v;
        }
        tally.add(f.c, r);
        return true;
      });
      tally.finish();
      return report;
    }

    // Exhaustive: one lift per connected edge mask, fibres stored as bitsets.
    auto const        t = mask_tables(g, std::get<Exhaustive>(mode).edge_budget);
    std::size_t const n = g.order();
    std::size_t const k = g.alphabet_size();
    std::vector<std::size_t> pos(h.order()), fibre_size(n, 0);
    for (ElementId v = 0; v < h.order(); ++v) {
      pos[v] = fibre_size[phi[v]]++;
    }
    std::size_t const words = (*std::max_element(fibre_size.begin(), fibre_size.end()) + 63) / 64;
    std::size_t const stride = n * words;

    std::vector<std::uint32_t> slot(t.reach.size(), UINT32_MAX);
    std::vector<std::uint64_t> fibres;
    for (ElementId gg = 1; gg < n; ++gg) {
      for (auto m : t.candidates[gg]) {
        if (slot[m] != UINT32_MAX) {
          continue;
        }
        slot[m] = static_cast<std::uint32_t>(fibres.size() / stride);
        fibres.resize(fibres.size() + stride, 0);
        auto const l  = lift(h, phi, [&](Edge e) { return (m >> (e.source * k + e.letter)) & 1U; });
        auto*      fb = fibres.data() + slot[m] * stride;
        for (ElementId v = 0; v < h.order(); ++v) {
          if (l.reached(v)) {
            fb[phi[v] * words + pos[v] / 64] |= std::uint64_t{1} << (pos[v] % 64);
          }
        }
      }
    }

    // (X, g, T) and (T, g, X) are handled together.
    std::vector<std::uint8_t>  joined(t.reach.size());
    std::vector<std::uint64_t> fib;
    for (ElementId gg = 1; gg < n; ++gg) {
      auto const& cand = t.candidates[gg];
      for (std::size_t m = 0; m < joined.size(); ++m) {
        joined[m] = static_cast<std::uint8_t>(t.reach[m] >> gg & 1U);
      }
      fib.assign(cand.size() * words, 0);
      for (std::size_t i = 0; i < cand.size(); ++i) {
        std::copy_n(fibres.data() + slot[cand[i]] * stride + gg * words, words,
                    fib.data() + i * words);
      }
      for (std::size_t i = 0; i < cand.size(); ++i) {
        auto const  mx = cand[i];
        auto const* fx = fib.data() + i * words;
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
          auto const mt = cand[j];
          if (joined[mx & mt]) {
            continue;
          }
          auto const* ft       = fib.data() + j * words;
          bool        disjoint = true;
          for (std::size_t w = 0; w < words && disjoint; ++w) {
            disjoint = (fx[w] & ft[w]) == 0;
          }
          if (disjoint && tally.dissolved.size() >= max_listed) {
            report.constellations += 2;
            report.dissolved += 2;
            continue;
          }
          for (auto [ma, mb] : {std::pair{mx, mt}, std::pair{mt, mx}}) {
            Constellation  c{from_mask(g, t, ma), gg, from_mask(g, t, mb)};
            DissolveResult r;
            if (disjoint) {
              r.u = *path_within(c.x, 0, gg);
              r.v = *path_within(c.t, 0, gg);
            } else {
              r = compare_lifts(h, g, phi, c, lift(h, phi, c.x), lift(h, phi, c.t), max_witness);
            }
            tally.add(c, r);
          }
        }
      }
    }
    tally.finish();
    return report;
  }

}  // namespace arbor
