#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

// Letters over A together with their formal inverses, words over the doubled
// alphabet, and free reduction.

namespace arbor {

  using LetterIndex = std::uint32_t;

  struct Letter {
    LetterIndex base = 0;
    std::int8_t sign = 1;  // +1 or -1

    constexpr Letter() = default;
    constexpr Letter(LetterIndex b, int s = 1)
        : base(b), sign(static_cast<std::int8_t>(s < 0 ? -1 : 1)) {}

    [[nodiscard]] constexpr Letter inverse() const noexcept {
      return Letter(base, -sign);
    }
    [[nodiscard]] constexpr bool positive() const noexcept {
      return sign > 0;
    }

    friend constexpr auto operator<=>(Letter const&, Letter const&) = default;
  };

  class Word {
   public:
    using value_type     = Letter;
    using const_iterator = std::vector<Letter>::const_iterator;

    Word() = default;
    explicit Word(std::vector<Letter> letters) : _letters(std::move(letters)) {}
    Word(std::initializer_list<Letter> letters) : _letters(letters) {}

    [[nodiscard]] std::size_t size() const noexcept {
      return _letters.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return _letters.empty();
    }
    [[nodiscard]] Letter const& operator[](std::size_t i) const {
      return _letters[i];
    }
    [[nodiscard]] const_iterator begin() const noexcept {
      return _letters.begin();
    }
    [[nodiscard]] const_iterator end() const noexcept {
      return _letters.end();
    }
    [[nodiscard]] std::vector<Letter> const& letters() const noexcept {
      return _letters;
    }

    void push_back(Letter x) {
      _letters.push_back(x);
    }
    void append(Word const& other) {
      _letters.insert(_letters.end(), other.begin(), other.end());
    }

    // True if no adjacent pair x x^-1 occurs.
    [[nodiscard]] bool is_reduced() const noexcept;

    friend auto operator<=>(Word const&, Word const&) = default;
    friend bool operator==(Word const&, Word const&)  = default;

   private:
    std::vector<Letter> _letters;
  };

  // Free reduction; stack based, single pass.
  [[nodiscard]] Word reduce(Word const& w);

  // Formal inverse: reversed, every letter inverted. Not reduced.
  [[nodiscard]] Word invert(Word const& w);

  // Plain concatenation u v, not reduced.
  [[nodiscard]] Word concat(Word const& u, Word const& v);

  // Reduced product red(u v).
  [[nodiscard]] Word multiply(Word const& u, Word const& v);

  // The word x^n for a single letter (x^-n for negative n).
  [[nodiscard]] Word power(Letter x, long n);

  // Equality in the free group.
  [[nodiscard]] inline bool equal_in_free_group(Word const& u, Word const& v) {
    return reduce(u) == reduce(v);
  }

  // A reduced word of the given length, uniform among all of them (a random
  // non-backtracking walk).
  [[nodiscard]] Word random_reduced_word(std::mt19937_64& rng, std::size_t length,
                                         std::size_t alphabet_size = 2);

  // Names for the letters of A. Text form of words: whitespace separated
  // letter names, `^-1` marks an inverse and `^k` a power, e.g. "a b^-1 a^2".
  class Alphabet {
   public:
    // The default alphabet a, b, c, ... of the given size.
    explicit Alphabet(std::size_t size = 2);
    explicit Alphabet(std::vector<std::string> names);

    [[nodiscard]] std::size_t size() const noexcept {
      return _names.size();
    }
    [[nodiscard]] std::string const& name(LetterIndex i) const {
      return _names.at(i);
    }
    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    // Throws InputError for unknown names.
    [[nodiscard]] LetterIndex index(std::string_view name) const;

    [[nodiscard]] Word        parse(std::string_view text) const;
    [[nodiscard]] std::string format(Word const& w) const;
    [[nodiscard]] std::string format(Letter x) const;

    friend bool operator==(Alphabet const&, Alphabet const&) = default;

   private:
    std::vector<std::string> _names;
  };

  std::ostream& operator<<(std::ostream& os, Word const& w);

}  // namespace arbor
