#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arbor/constellations.hpp"
#include "arbor/extension.hpp"
#include "arbor/groups.hpp"
#include "arbor/stallings.hpp"
#include "arbor/words.hpp"

// Iterated universal extensions G0 <- G1 <- G2 <- ... with G_n = G_{n-1}^{A,C_p_n}.
//
// An element of G_n (n >= 1) is a pair (y, c) with y in G_{n-1} and c a
// finitely supported cocycle on the positive edges (y', a) of the Cayley graph
// of G_{n-1}, values mod p_n. Nothing above level 1 is ever enumerated in
// practice; all arithmetic is local to the elements involved.
//
// p = 1 is accepted as the identity step G_n = G_{n-1} (every residue is 0).

namespace arbor {

  class TowerElement;

  // Keys compare by canonical encoding.
  using TowerCocycle = std::map<std::pair<TowerElement, LetterIndex>, std::uint32_t>;

  class TowerElement {
   public:
    struct Node;

    // The identity of G0.
    TowerElement();

    [[nodiscard]] static TowerElement at_base(ElementId g);
    // Zero residues are dropped.
    [[nodiscard]] static TowerElement extend(TowerElement below, TowerCocycle cocycle);

    [[nodiscard]] std::size_t level() const noexcept;
    // The underlying element of G0.
    [[nodiscard]] ElementId base_id() const noexcept;
    // Projection to level n - 1; requires level >= 1.
    [[nodiscard]] TowerElement below() const;
    [[nodiscard]] TowerCocycle const& cocycle() const;
    // Length-prefixed and recursive, with sorted keys:
    //   level 0:  g<id>
    //   level n:  e<n>(<len>:<below>|<len>:<key>,<letter>,<residue>;...)
    [[nodiscard]] std::string const& encoding() const noexcept;

    friend bool operator==(TowerElement const& x, TowerElement const& y) noexcept {
      return x._node == y._node || x.encoding() == y.encoding();
    }
    friend std::strong_ordering operator<=>(TowerElement const& x, TowerElement const& y) noexcept {
      return x.encoding() <=> y.encoding();
    }

   private:
    explicit TowerElement(std::shared_ptr<Node const> node) : _node(std::move(node)) {}
    std::shared_ptr<Node const> _node;
  };

  // Inverse of TowerElement::encoding. Throws InputError on malformed input.
  [[nodiscard]] TowerElement decode_tower_element(std::string_view text);

  struct TowerSpec {
    FinGroup                   base;
    std::vector<std::uint32_t> primes;
    std::size_t                max_level          = 3;
    std::size_t                enumeration_budget = 20'000;  // elements per enumerated level
    std::uint64_t              seed               = 1;
  };

  class Tower {
   public:
    // Throws InputError for an empty prime list or a prime that is neither
    // prime nor 1, and PreconditionError if the base is not separated.
    explicit Tower(TowerSpec spec);

    [[nodiscard]] TowerSpec const& spec() const noexcept {
      return _spec;
    }
    // Highest usable level: min(max_level, number of primes).
    [[nodiscard]] std::size_t top_level() const noexcept;
    [[nodiscard]] std::uint32_t prime(std::size_t level) const;  // level >= 1
    // Empty once the exponent no longer fits comfortably in memory.
    [[nodiscard]] std::optional<BigInt> order(std::size_t level) const;
    [[nodiscard]] std::string           order_string(std::size_t level) const;
    [[nodiscard]] std::string  name(std::size_t level) const;

    [[nodiscard]] TowerElement identity(std::size_t level) const;
    [[nodiscard]] TowerElement generator(std::size_t level, LetterIndex a) const;
    [[nodiscard]] TowerElement act(TowerElement const& x, Letter l) const;  // x·l
    [[nodiscard]] TowerElement evaluate(std::size_t level, Word const& w) const;
    [[nodiscard]] TowerElement multiply(TowerElement const& x, TowerElement const& y) const;
    [[nodiscard]] TowerElement inverse(TowerElement const& x) const;
    // To level `to` <= x.level().
    [[nodiscard]] TowerElement project(TowerElement const& x, std::size_t to) const;

    // Level n as an enumerated group, cached. Throws BudgetExceeded if its
    // order exceeds the enumeration budget.
    [[nodiscard]] FinGroup const& enumerate(std::size_t level) const;
    [[nodiscard]] bool            enumerable(std::size_t level) const;

   private:
    void check_level(std::size_t level) const;

    struct Cache {
      std::mutex                      mutex;
      std::map<std::size_t, FinGroup> groups;
    };
    TowerSpec              _spec;
    std::shared_ptr<Cache> _cache;
  };

  // Throws PreconditionError if the level exceeds the top level.
  [[nodiscard]] TowerElement tower_evaluate(Tower const& tower, std::size_t level, Word const& w);

  // Throws PreconditionError on a level mismatch.
  [[nodiscard]] bool tower_equal(TowerElement const& x, TowerElement const& y);

  // Evidence for tree-likeness, one entry per level n < k:
  //   lifting      G_{n+1} enumerable, dissolves_all(G_{n+1}, G_n, mode)
  //   elementwise  G_{n+1} too large; for each constellation found in G_n the
  //                word pair is compared in G_{n+1} and, for p > 1, a
  //                dissolving certificate is built over C_p
  struct LevelReport {
    std::size_t    level = 0;
    std::string    method;
    std::string    upper_order;  // decimal
    DissolveReport report;
    std::size_t    certificates = 0;
    std::string    error;  // budget overflow, if any

    [[nodiscard]] bool passed() const noexcept {
      return error.empty() && report.all_dissolved();
    }
  };

  struct CampaignReport {
    std::string              base;
    std::vector<std::uint32_t> primes;
    std::uint64_t            seed = 1;
    std::vector<LevelReport> levels;

    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] bool budget_exceeded() const noexcept;
  };

  [[nodiscard]] CampaignReport treelike_campaign(Tower const& tower, std::size_t levels,
                                                 EnumerationMode const& mode,
                                                 std::size_t max_listed = 16);

  struct RzLevel {
    std::size_t level        = 0;
    std::size_t order        = 0;
    std::size_t product_size = 0;  // |Ĥ1 ... Ĥk| in G_n
    bool        separated    = false;
  };

  struct RzReport {
    Word                       w;  // reduced
    bool                       member = false;
    std::vector<Word>          factors;
    std::vector<RzLevel>       levels;
    std::optional<std::size_t> separated_at;
    std::string                stopped;  // why the search ended without separation

    // "member", "separated" or "inconclusive".
    [[nodiscard]] std::string status() const;
  };

  // Whether [w] lies outside Ĥ1 ... Ĥk in G_n, where Ĥi is generated by the
  // images of the generators of Hi.
  [[nodiscard]] RzLevel image_product_check(Tower const& tower, std::vector<CoreGraph> const& subgroups,
                                            Word const& w, std::size_t level);

  // Ground truth from product membership, then the first level n <= max_level
  // whose image product misses [w].
  [[nodiscard]] RzReport rz_experiment(Tower const& tower, std::vector<CoreGraph> const& subgroups,
                                       Word const& w, std::optional<std::size_t> max_level = {});

}  // namespace arbor
