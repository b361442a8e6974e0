#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "arbor/stallings.hpp"
#include "arbor/words.hpp"

// Membership in products H1 ... Hk of finitely generated subgroups of F.
//
// The core graphs are chained into one automaton by ε-links between
// consecutive basepoints. Saturation adds an ε-edge q -> s for every path
// q -x-> (ε*) -x^-1-> s until nothing changes; a reduced word then lies in
// H1 ... Hk iff the saturated automaton accepts it. Every ε-edge remembers
// why it was added, so accepting runs expand into explicit factorizations.

namespace arbor {

  class WordAutomaton {
   public:
    using State = std::uint32_t;

    struct Transition {
      State  from;
      Letter label;
      State  to;
    };

    struct Epsilon {
      State from;
      State to;
      // Links join the basepoints of consecutive factors. Otherwise the edge
      // stands for transitions[first], the ε-edges in `path`, then
      // transitions[second].
      bool                     link   = false;
      std::size_t              first  = 0;
      std::size_t              second = 0;
      std::vector<std::size_t> path;
    };

    [[nodiscard]] std::size_t num_states() const noexcept {
      return _num_states;
    }
    [[nodiscard]] State initial() const noexcept {
      return _initial;
    }
    [[nodiscard]] State final_state() const noexcept {
      return _final;
    }
    [[nodiscard]] std::vector<Transition> const& transitions() const noexcept {
      return _transitions;
    }
    [[nodiscard]] std::vector<Epsilon> const& epsilons() const noexcept {
      return _epsilons;
    }
    // Factor owning each state.
    [[nodiscard]] std::size_t factor(State s) const {
      return _factor.at(s);
    }

    // Runs to the fixpoint; returns the number of rounds.
    std::size_t saturate();
    [[nodiscard]] bool saturated() const noexcept {
      return _saturated;
    }

    // An accepting run on w as a sequence of steps: transition ids (>= 0)
    // and ε-edge ids encoded as ~id (< 0). Requires saturation for reduced
    // membership semantics.
    [[nodiscard]] std::optional<std::vector<long>> accepting_run(Word const& w) const;

    // The letters of the underlying path of a run in the unsaturated
    // automaton, split at the links.
    [[nodiscard]] std::vector<Word> expand(std::vector<long> const& run) const;

   private:
    friend WordAutomaton product_automaton(std::vector<CoreGraph> const&);
    void expand_epsilon(std::size_t id, std::vector<Word>& out) const;

    std::size_t              _num_states = 0;
    State                    _initial    = 0;
    State                    _final      = 0;
    std::vector<Transition>  _transitions;
    std::vector<Epsilon>     _epsilons;
    std::vector<std::size_t> _factor;
    bool                     _saturated = false;
  };

  // Unsaturated. Throws InputError for an empty list.
  [[nodiscard]] WordAutomaton product_automaton(std::vector<CoreGraph> const& cores);

  struct ProductMembership {
    bool              member = false;
    std::vector<Word> factors;  // reduced h_i with red(h_1 ... h_k) = red(w)
  };

  // Decides red(w) ∈ H1 ... Hk. A positive answer carries a factorization
  // that has been checked against the cores.
  [[nodiscard]] ProductMembership member_product(std::vector<CoreGraph> const& cores,
                                                 Word const&                   w);

}  // namespace arbor
