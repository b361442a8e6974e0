#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arbor/cayley.hpp"
#include "arbor/groups.hpp"
#include "arbor/words.hpp"

namespace arbor {

  struct Constellation {
    CayleySubgraph x;
    ElementId      g;
    CayleySubgraph t;
  };

  // X and T connected, 1 and g in both, and the components of 1 and g in
  // X ∩ T distinct.
  [[nodiscard]] bool is_constellation(CayleySubgraph const& x, ElementId g, CayleySubgraph const& t);
  [[nodiscard]] inline bool is_constellation(Constellation const& c) {
    return is_constellation(c.x, c.g, c.t);
  }

  // Every constellation given by a pair of edge sets. The number of positive
  // edges of the Cayley graph must not exceed edge_budget.
  struct Exhaustive {
    std::size_t edge_budget = 16;
  };

  // Spans of random word pairs u, v with [u] = [v].
  struct Sampled {
    std::size_t   count      = 10'000;
    std::size_t   max_length = 6;
    std::uint64_t seed       = 1;
  };

  using EnumerationMode = std::variant<Exhaustive, Sampled>;

  [[nodiscard]] std::string describe(EnumerationMode const& mode);

  // A constellation with words labelling paths 1 -> g inside X and inside T.
  struct FoundConstellation {
    Constellation c;
    Word          u;
    Word          v;
  };

  // Calls visit for each constellation in a deterministic order; stops early
  // if visit returns false. Sampled mode skips duplicates.
  void for_each_constellation(FinGroup const& group, EnumerationMode const& mode,
                              std::function<bool(FoundConstellation const&)> const& visit);

  [[nodiscard]] std::vector<FoundConstellation>
  enumerate_constellations(FinGroup const& group, EnumerationMode const& mode);

  // Shortest word labelling a path from -> to inside x, if any.
  [[nodiscard]] std::optional<Word> path_within(CayleySubgraph const& x, ElementId from, ElementId to);

  enum class Verdict { dissolved, counterexample, inconclusive };

  [[nodiscard]] std::string to_string(Verdict v);

  struct DissolveResult {
    Verdict verdict = Verdict::dissolved;
    Word    u;  // set for counterexamples
    Word    v;
  };

  // Lifts X and T to the Cayley graph of H along the canonical morphism
  // H -> G and compares the fibres over g of the components of 1. Disjoint
  // fibres certify [u]_H != [v]_H for all u in X, v in T reading 1 -> g.
  // Otherwise shortest witnesses u, v are extracted and re-verified; if one
  // is longer than max_witness the verdict is inconclusive.
  [[nodiscard]] DissolveResult dissolves(FinGroup const& h, FinGroup const& g,
                                         Constellation const& c,
                                         std::size_t max_witness = 256);

  struct ListedVerdict {
    ElementId         g;
    std::vector<Edge> x_edges;
    std::vector<Edge> t_edges;
    Verdict           verdict;
    Word              u;
    Word              v;
  };

  struct DissolveReport {
    std::string     h_name;
    std::string     g_name;
    std::size_t     h_order = 0;
    std::size_t     g_order = 0;
    EnumerationMode mode;
    std::size_t     constellations = 0;
    std::size_t     dissolved      = 0;
    std::size_t     counterexamples = 0;
    std::size_t     inconclusive    = 0;
    // Every counterexample and inconclusive case, plus dissolved ones until
    // max_listed entries have been listed.
    std::vector<ListedVerdict> listed;

    [[nodiscard]] bool all_dissolved() const noexcept {
      return dissolved == constellations;
    }
  };

  [[nodiscard]] DissolveReport dissolves_all(FinGroup const& h, FinGroup const& g,
                                             EnumerationMode const& mode,
                                             std::size_t max_listed  = 64,
                                             std::size_t max_witness = 256);

}  // namespace arbor
