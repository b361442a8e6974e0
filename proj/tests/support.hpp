#pragma once

#include <cstdint>
#include <random>

#include "arbor/words.hpp"

namespace arbor::testing {

  // Uniform random word (not necessarily reduced).
  inline Word random_word(std::mt19937_64& rng, std::size_t length, std::size_t letters = 2) {
    std::uniform_int_distribution<LetterIndex> base(0, static_cast<LetterIndex>(letters - 1));
    std::uniform_int_distribution<int>         sign(0, 1);
    Word                                       w;
    for (std::size_t i = 0; i < length; ++i) {
      w.push_back(Letter(base(rng), sign(rng) ? 1 : -1));
    }
    return w;
  }

  // Random freely reduced word of exactly the given length.
  inline Word random_reduced_word(std::mt19937_64& rng, std::size_t length,
                                  std::size_t letters = 2) {
    Word w;
    while (w.size() < length) {
      auto x = random_word(rng, 1, letters)[0];
      if (!w.empty() && w[w.size() - 1] == x.inverse()) {
        continue;
      }
      w.push_back(x);
    }
    return w;
  }

}  // namespace arbor::testing
