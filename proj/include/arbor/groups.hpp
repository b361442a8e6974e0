#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/words.hpp"

namespace arbor {

  using ElementId   = std::uint32_t;
  using Permutation = std::vector<std::uint32_t>;

  inline constexpr std::size_t default_enumeration_budget = 1'000'000;

  // A finite A-generated group.
  //
  // The group is given either by one permutation per letter of A (acting on
  // the right: x^(gh) = (x^g)^h), or by an explicit right multiplication table
  // of an already enumerated group. Elements are enumerated lazily, exactly
  // once, by a breadth-first closure from the identity; element 0 is always
  // the identity and every element remembers a shortest witness word.
  //
  // FinGroup is a cheap handle: copies share the (frozen) element table, so a
  // group may be read from several threads once enumerated.
  class FinGroup {
   public:
    // The trivial group on a two letter alphabet.
    FinGroup();

    static FinGroup from_permutations(std::size_t              degree,
                                      std::vector<Permutation> generators,
                                      std::string              name   = "",
                                      std::size_t budget = default_enumeration_budget);

    // right[g * |A| + a] is the id of g·a. Element 0 must be the identity and
    // the table must be the Cayley table of a group generated by the letters.
    static FinGroup from_right_multiplication(std::size_t            alphabet_size,
                                              std::vector<ElementId> right,
                                              std::string            name = "");

    [[nodiscard]] std::string const& name() const noexcept;
    [[nodiscard]] std::size_t        alphabet_size() const noexcept;
    // Degree of the permutation representation; the group order for groups
    // given by a multiplication table.
    [[nodiscard]] std::size_t        degree() const noexcept;
    [[nodiscard]] Permutation const& generator(LetterIndex a) const;
    [[nodiscard]] std::size_t        budget() const noexcept;
    [[nodiscard]] FinGroup           with_budget(std::size_t budget) const;
    [[nodiscard]] FinGroup           renamed(std::string name) const;

    // [a] != [b] != 1 for all distinct letters a, b.
    [[nodiscard]] bool separated() const;

    // Evaluation in the permutation representation; never enumerates.
    [[nodiscard]] Permutation evaluate_permutation(Word const& w) const;

    // Everything below enumerates on first use and throws BudgetExceeded if
    // the order exceeds budget().
    [[nodiscard]] std::size_t order() const;
    [[nodiscard]] bool        enumerated() const noexcept;
    [[nodiscard]] ElementId   identity() const noexcept {
      return 0;
    }
    [[nodiscard]] ElementId act(ElementId g, Letter x) const;  // g·x
    [[nodiscard]] ElementId multiply(ElementId g, ElementId h) const;
    [[nodiscard]] ElementId inverse(ElementId g) const;
    [[nodiscard]] ElementId evaluate(Word const& w) const;
    [[nodiscard]] ElementId evaluate_from(ElementId start, Word const& w) const;
    [[nodiscard]] Word      witness(ElementId g) const;
    [[nodiscard]] std::uint64_t element_order(ElementId g) const;
    // The element with the given permutation image, if it belongs to the group.
    [[nodiscard]] std::optional<ElementId> find(Permutation const& image) const;

   private:
    struct Impl;
    struct Table;
    explicit FinGroup(std::shared_ptr<Impl> impl);
    [[nodiscard]] Table const& table() const;
    std::shared_ptr<Impl> _impl;
  };

  // Named groups with fixed generator assignments (alphabet {a, b}):
  //   trivial      a, b -> 1
  //   C<n>         a -> g, b -> g^-1 on Z/n       (C3: b -> g^2, C2: a = b)
  //   C2xC2        a -> (1,0), b -> (0,1)
  //   S<n>         a -> (0 1), b -> (0 1 ... n-1)  (S3: a -> (12), b -> (123))
  //   D<n>         two adjacent reflections of the n-gon, i -> -i and i -> 1-i
  //   A5           a -> (0 1)(2 3), b -> (0 2 4)
  [[nodiscard]] FinGroup builtin_group(std::string_view name);
  [[nodiscard]] std::vector<std::string> builtin_group_names();

  // The map a -> a extended to a morphism from -> to, as a table indexed by
  // the element ids of `from`, or nullopt if no such morphism exists.
  [[nodiscard]] std::optional<std::vector<ElementId>>
  canonical_morphism(FinGroup const& from, FinGroup const& to);

  // lcm of the element orders.
  [[nodiscard]] std::uint64_t exponent(FinGroup const& group);

  // The A-generated subgroup of the direct product generated by the diagonal
  // generator tuples, acting on the disjoint union of the domains.
  [[nodiscard]] FinGroup subdirect(std::vector<FinGroup> const& groups);

  // Sorted ids of the subgroup generated by the given elements.
  [[nodiscard]] std::vector<ElementId>
  subgroup_closure(FinGroup const& group, std::vector<ElementId> const& generators);

  // True if the given elements generate the whole group.
  [[nodiscard]] bool generates(FinGroup const& group,
                               std::vector<ElementId> const& elements);

  // True if the group is nontrivial and has no proper nontrivial normal subgroup.
  [[nodiscard]] bool is_simple(FinGroup const& group);

}  // namespace arbor
