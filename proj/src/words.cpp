#include "arbor/words.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "arbor/errors.hpp"

namespace arbor {

  bool Word::is_reduced() const noexcept {
    for (std::size_t i = 1; i < _letters.size(); ++i) {
      if (_letters[i] == _letters[i - 1].inverse()) {
        return false;
      }
    }
    return true;
  }

  Word reduce(Word const& w) {
    std::vector<Letter> stack;
    stack.reserve(w.size());
    for (Letter x : w) {
      if (!stack.empty() && stack.back() == x.inverse()) {
        stack.pop_back();
      } else {
        stack.push_back(x);
      }
    }
    return Word(std::move(stack));
  }

  Word invert(Word const& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
      out.push_back(it->inverse());
    }
    return Word(std::move(out));
  }

  Word concat(Word const& u, Word const& v) {
    Word out = u;
    out.append(v);
    return out;
  }

  Word multiply(Word const& u, Word const& v) {
    return reduce(concat(u, v));
  }

  Word power(Letter x, long n) {
    Letter y = n < 0 ? x.inverse() : x;
    return Word(std::vector<Letter>(static_cast<std::size_t>(n < 0 ? -n : n), y));
  }

  Alphabet::Alphabet(std::size_t size) {
    if (size > 26) {
      for (std::size_t i = 0; i < size; ++i) {
        _names.push_back("x" + std::to_string(i));
      }
    } else {
      for (std::size_t i = 0; i < size; ++i) {
        _names.emplace_back(1, static_cast<char>('a' + i));
      }
    }
  }

  Alphabet::Alphabet(std::vector<std::string> names) : _names(std::move(names)) {
    for (auto const& n : _names) {
      if (n.empty() || n.find_first_of(" \t\n^") != std::string::npos) {
        throw InputError("invalid letter name '" + n + "'");
      }
    }
    auto sorted = _names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("duplicate letter names in alphabet");
    }
  }

  LetterIndex Alphabet::index(std::string_view name) const {
    auto it = std::find(_names.begin(), _names.end(), name);
    if (it == _names.end()) {
      throw InputError("unknown letter '" + std::string(name) + "'");
    }
    return static_cast<LetterIndex>(it - _names.begin());
  }

  Word Alphabet::parse(std::string_view text) const {
    Word               out;
    std::istringstream in{std::string(text)};
    std::string        token;
    while (in >> token) {
      long        exponent = 1;
      std::string name     = token;
      if (auto caret = token.find('^'); caret != std::string::npos) {
        name            = token.substr(0, caret);
        auto const exp  = token.substr(caret + 1);
        auto [ptr, ec]  = std::from_chars(exp.data(), exp.data() + exp.size(), exponent);
        if (ec != std::errc() || ptr != exp.data() + exp.size() || exponent == 0) {
          throw InputError("bad exponent in token '" + token + "'");
        }
      }
      out.append(power(Letter(index(name)), exponent));
    }
    return out;
  }

  std::string Alphabet::format(Letter x) const {
    return x.positive() ? name(x.base) : name(x.base) + "^-1";
  }

  std::string Alphabet::format(Word const& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += format(w[i]);
    }
    return out;
  }

  std::ostream& operator<<(std::ostream& os, Word const& w) {
    LetterIndex top = 0;
    for (auto x : w) {
      top = std::max(top, x.base);
    }
    Alphabet alphabet(top < 26 ? 26 : top + 1);
    return os << (w.empty() ? std::string("1") : alphabet.format(w));
  }

  Word random_reduced_word(std::mt19937_64& rng, std::size_t length, std::size_t alphabet_size) {
    // 2k choices for the first letter, 2k - 1 afterwards.
    auto const k = static_cast<LetterIndex>(alphabet_size);
    Word       w;
    for (std::size_t i = 0; i < length; ++i) {
      std::uniform_int_distribution<LetterIndex> pick(0, (i == 0 ? 2 * k : 2 * k - 1) - 1);
      LetterIndex c = pick(rng);
      if (i > 0) {
        auto const back = w[i - 1].inverse();
        auto const code = 2 * back.base + (back.positive() ? 0U : 1U);
        if (c >= code) {
          ++c;
        }
      }
      w.push_back(Letter(c / 2, c % 2 == 0 ? 1 : -1));
    }
    return w;
  }

}  // namespace arbor
