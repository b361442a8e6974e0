#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "arbor/cayley.hpp"
#include "arbor/constellations.hpp"
#include "arbor/groups.hpp"
#include "arbor/rewriting.hpp"
#include "arbor/words.hpp"

// The A-universal C_p-extension of G, modelled as pairs (g, c) with c a
// cocycle on the positive edges of the Cayley graph of G with values mod p:
//
//   (g1, c1)(g2, c2) = (g1 g2, c1 + g1·c2),   (g·c)(g x, a) = c(x, a).
//
// A word maps to its endpoint in G together with its signed edge traversal
// counts mod p. Two words with the same endpoint have the same image iff all
// Nielsen exponent sums of u v^-1 vanish mod p, so the model is faithful.

namespace arbor {

  using BigInt = boost::multiprecision::cpp_int;

  struct ExtElement {
    ElementId                     base = 0;
    std::map<Edge, std::uint32_t> cocycle;  // nonzero residues only

    friend auto operator<=>(ExtElement const&, ExtElement const&) = default;
    friend bool operator==(ExtElement const&, ExtElement const&)  = default;
  };

  class UniversalExtension {
   public:
    // Throws InputError unless p is prime.
    UniversalExtension(FinGroup group, std::uint32_t p);

    [[nodiscard]] FinGroup const& group() const noexcept {
      return _group;
    }
    [[nodiscard]] std::uint32_t prime() const noexcept {
      return _p;
    }
    // |G|(|A| - 1) + 1, the rank of ker(F -> G).
    [[nodiscard]] std::size_t rank() const;
    [[nodiscard]] std::string name() const;

    [[nodiscard]] ExtElement identity() const {
      return {};
    }
    [[nodiscard]] ExtElement generator(LetterIndex a) const;
    [[nodiscard]] ExtElement multiply(ExtElement const& x, ExtElement const& y) const;
    [[nodiscard]] ExtElement inverse(ExtElement const& x) const;
    // x·letter, by walking one edge.
    [[nodiscard]] ExtElement act(ExtElement x, Letter l) const;
    [[nodiscard]] ExtElement evaluate(Word const& w) const;
    [[nodiscard]] ElementId  project(ExtElement const& x) const {
      return x.base;
    }
    // g·c with (g·c)(g x, a) = c(x, a).
    [[nodiscard]] std::map<Edge, std::uint32_t> translate(ElementId g,
                                                          std::map<Edge, std::uint32_t> const& c) const;

    // The extension as an enumerated group; element ids follow a BFS from the
    // identity. Throws BudgetExceeded above the budget.
    [[nodiscard]] FinGroup enumerate(std::size_t budget = default_enumeration_budget) const;

   private:
    FinGroup      _group;
    std::uint32_t _p;
  };

  [[nodiscard]] ExtElement ext_evaluate(FinGroup const& group, std::uint32_t p, Word const& w);

  // |G| · p^(|G|(|A|-1)+1).
  [[nodiscard]] BigInt ext_order(std::size_t group_order, std::size_t alphabet_size, std::uint32_t p);
  [[nodiscard]] BigInt ext_order(FinGroup const& group, std::uint32_t p);

  [[nodiscard]] bool is_prime(std::uint64_t n);

  // Equality in G^{A,S} for a finite simple group S.
  //
  // For [u]_G = [v]_G, u v^-1 is rewritten over the Nielsen basis of
  // R = ker(F -> G) and evaluated under assignments of the basis to S. Only
  // assignments that extend to surjections R -> S count, since R(S) is the
  // intersection of their kernels.
  struct ExactSearch {
    std::size_t budget = 100'000'000;  // assignments
  };
  struct WitnessSearch {
    std::size_t   samples = 1'000;
    std::uint64_t seed    = 1;
  };
  using SEqualMode = std::variant<ExactSearch, WitnessSearch>;

  enum class SVerdict { equal, distinct, probably_equal };

  [[nodiscard]] std::string to_string(SVerdict v);

  struct SEqualResult {
    SVerdict verdict = SVerdict::equal;
    // For distinct: a surjective assignment of the basis sending u v^-1 to a
    // nontrivial element, or empty if already [u]_G != [v]_G.
    std::vector<ElementId> witness;
    std::size_t            evaluated = 0;
  };

  [[nodiscard]] SEqualResult s_equal(FinGroup const& group, FinGroup const& simple,
                                     Word const& u, Word const& v,
                                     SEqualMode const& mode = ExactSearch{});

  // Evaluates the rewritten word under an assignment of the basis.
  [[nodiscard]] ElementId evaluate_rewritten(FinGroup const& s, Rewritten const& r,
                                             std::vector<ElementId> const& assignment);

  struct Certificate {
    ElementId         g = 0;
    Word              u, v;
    std::vector<ElementId> z;  // component of 1 in X ∩ T
    Borders           x_borders;
    Borders           t_borders;
    long              x_flow = 0;  // sum over D minus sum over C of û
    long              t_flow = 0;
    Edge              e, f;
    long              u_count = 0;  // û(e)
    long              v_count = 0;  // v̂(f)
    std::uint64_t     o       = 0;
    std::uint64_t     u_exp   = 0;  // û(e) mod o
    std::uint64_t     v_exp   = 0;  // v̂(f) mod o
    std::vector<Edge> tree_edges;
    long              rewrite_e = 0;  // exponent sum of ẽ in the rewriting of u v^-1
    long              rewrite_f = 0;  // of f̃; equals -v̂(f)
  };

  // The separating data for u (in X) and v (in T) from the main construction:
  // border edges e, f whose traversal counts are nonzero mod exp(S), a
  // spanning tree avoiding both, and the matching Nielsen exponent sums.
  // Throws PreconditionError on bad input and TheoremViolation if any of the
  // guaranteed facts fails.
  [[nodiscard]] Certificate dissolving_certificate(FinGroup const& group, Constellation const& c,
                                                   Word const& u, Word const& v,
                                                   FinGroup const& simple);

  // Whether x^m y^n = 1 for all (x, y) in S x S, i.e. a^m b^n = 1 in the free
  // 2-generator object of the formation generated by S.
  [[nodiscard]] bool free_object_pair_check(FinGroup const& s, std::uint64_t m, std::uint64_t n);

}  // namespace arbor
