#pragma once

#include <set>
#include <vector>

#include "arbor/stallings.hpp"
#include "arbor/words.hpp"

// Brute-force references for product membership.

namespace arbor::testing {

  // Reduced words of length <= bound labelling closed paths at the basepoint.
  inline std::set<Word> closed_words(CoreGraph const& c, std::size_t bound) {
    std::set<Word> out;
    auto const&    tr = c.transitions();
    Word           w;
    auto dfs = [&](auto&& self, VertexId v) -> void {
      if (v == c.basepoint()) {
        out.insert(w);
      }
      if (w.size() == bound) {
        return;
      }
      for (LetterIndex a = 0; a < 2; ++a) {
        for (int s : {1, -1}) {
          Letter x(a, s);
          if (!w.empty() && w[w.size() - 1] == x.inverse()) {
            continue;
          }
          auto const next = tr.step(v, x);
          if (next == no_vertex) {
            continue;
          }
          w.push_back(x);
          self(self, next);
          auto copy = w.letters();
          copy.pop_back();
          w = Word(copy);
        }
      }
    };
    dfs(dfs, c.basepoint());
    return out;
  }

  // Reduced products h1 ... hk with |hi| <= factor_bound and result length
  // <= target_bound.
  inline std::set<Word> short_products(std::vector<CoreGraph> const& cores, std::size_t factor_bound,
                                std::size_t target_bound) {
    std::set<Word> acc{Word()};
    for (std::size_t i = 0; i < cores.size(); ++i) {
      auto const     remaining = (cores.size() - 1 - i) * factor_bound;
      auto const     hs        = closed_words(cores[i], factor_bound);
      std::set<Word> next;
      for (auto const& x : acc) {
        for (auto const& h : hs) {
          auto p = multiply(x, h);
          if (p.size() <= target_bound + remaining) {
            next.insert(std::move(p));
          }
        }
      }
      acc = std::move(next);
    }
    return acc;
  }

  inline std::vector<Word> reduced_words_up_to(std::size_t n) {
    std::vector<Word> out{Word()};
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() == n) {
        continue;
      }
      for (LetterIndex a = 0; a < 2; ++a) {
        for (int s : {1, -1}) {
          Letter x(a, s);
          if (!out[i].empty() && out[i][out[i].size() - 1] == x.inverse()) {
            continue;
          }
          auto w = out[i];
          w.push_back(x);
          out.push_back(std::move(w));
        }
      }
    }
    return out;
  }

}  // namespace arbor::testing
