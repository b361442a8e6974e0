#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "arbor/cayley.hpp"
#include "arbor/constellations.hpp"
#include "arbor/extension.hpp"
#include "arbor/groups.hpp"
#include "arbor/stallings.hpp"
#include "arbor/tower.hpp"
#include "arbor/words.hpp"

// JSON documents carry "schema": 1 and a "kind". Parsers throw InputError
// naming the offending field.

namespace arbor {

  using Json = nlohmann::ordered_json;

  inline constexpr int json_schema = 1;

  [[nodiscard]] Json         to_json(LabeledGraph const& g);
  [[nodiscard]] LabeledGraph graph_from_json(Json const& j);

  // Permutation generators; table groups come out in their regular
  // representation.
  [[nodiscard]] Json     to_json(FinGroup const& g);
  // Either a builtin name or a group document.
  [[nodiscard]] FinGroup group_from_json(Json const& j);

  [[nodiscard]] Json to_json(DissolveReport const& r, std::size_t alphabet_size = 2);
  [[nodiscard]] Json to_json(Certificate const& c, std::size_t alphabet_size);
  [[nodiscard]] Json to_json(CampaignReport const& r, std::size_t alphabet_size = 2);
  [[nodiscard]] Json to_json(RzReport const& r, std::size_t alphabet_size);

  // Keys: base, primes, budgets {enumeration}, seed, max_level.
  [[nodiscard]] TowerSpec tower_spec_from_json(Json const& j);

  // Throws InputError with the parser's position on malformed text.
  [[nodiscard]] Json parse_json(std::string const& text, std::string const& origin = "input");
  [[nodiscard]] Json read_json_file(std::string const& path);

  // Basepoint drawn as a double circle.
  [[nodiscard]] std::string to_dot(LabeledGraph const& g, std::string const& name = "graph");

  // Z filled, D edges red, C edges blue.
  struct DotHighlight {
    std::vector<ElementId> z;
    Borders                borders;
  };

  [[nodiscard]] std::string to_dot(CayleySubgraph const& x, std::string const& name = "subgraph",
                                   std::optional<DotHighlight> const& highlight = {});

  // X solid, T dashed, shared edges bold; Z, D and C of X as above.
  [[nodiscard]] std::string constellation_dot(Constellation const& c,
                                              std::string const& name = "constellation");

}  // namespace arbor
