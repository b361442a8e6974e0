#include "arbor/groups.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "arbor/errors.hpp"

namespace arbor {

  namespace {

    struct PermutationHash {
      std::size_t operator()(Permutation const& p) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : p) {
          h ^= x;
          h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
      }
    };

    Permutation identity_permutation(std::size_t degree) {
      Permutation p(degree);
      std::iota(p.begin(), p.end(), 0U);
      return p;
    }

    Permutation compose(Permutation const& first, Permutation const& second) {
      Permutation out(first.size());
      for (std::size_t i = 0; i < first.size(); ++i) {
        out[i] = second[first[i]];
      }
      return out;
    }

    Permutation invert_permutation(Permutation const& p) {
      Permutation out(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        out[p[i]] = static_cast<std::uint32_t>(i);
      }
      return out;
    }

    bool is_permutation(Permutation const& p, std::size_t degree) {
      if (p.size() != degree) {
        return false;
      }
      std::vector<bool> seen(degree, false);
      for (auto x : p) {
        if (x >= degree || seen[x]) {
          return false;
        }
        seen[x] = true;
      }
      return true;
    }

    constexpr std::size_t multiplication_table_limit = 2048;

  }  // namespace

  struct FinGroup::Table {
    std::size_t            size = 0;
    std::size_t            letters = 0;
    std::vector<ElementId> right;
    std::vector<ElementId> right_inverse;
    std::vector<ElementId> parent;
    std::vector<Letter>    parent_letter;
    std::vector<ElementId> inverse;
    // Only for groups given by permutations.
    std::vector<Permutation>                                        perms;
    std::unordered_map<Permutation, ElementId, PermutationHash>     index;

    mutable std::once_flag         product_once;
    mutable std::vector<ElementId> product;  // size*size when size is small
  };

  struct FinGroup::Impl {
    std::string              name;
    std::size_t              degree = 0;
    std::vector<Permutation> generators;
    std::vector<Permutation> inverse_generators;
    std::size_t              budget = default_enumeration_budget;
    // Set for groups given by a multiplication table.
    std::vector<ElementId>   right;

    struct Holder {
      std::once_flag                   once;
      std::unique_ptr<FinGroup::Table> table;
    };
    std::shared_ptr<Holder> holder = std::make_shared<Holder>();
  };

  FinGroup::FinGroup(std::shared_ptr<Impl> impl) : _impl(std::move(impl)) {}

  FinGroup::FinGroup()
      : FinGroup(from_permutations(1, {Permutation{0}, Permutation{0}}, "trivial")) {}

  FinGroup FinGroup::from_permutations(std::size_t              degree,
                                       std::vector<Permutation> generators,
                                       std::string              name,
                                       std::size_t              budget) {
    if (generators.empty()) {
      throw InputError("a group needs at least one generator");
    }
    auto impl    = std::make_shared<Impl>();
    impl->name   = std::move(name);
    impl->degree = degree;
    impl->budget = budget;
    for (auto const& g : generators) {
      if (!is_permutation(g, degree)) {
        throw InputError("generator is not a permutation of {0, ..., "
                         + std::to_string(degree) + "-1}");
      }
      impl->inverse_generators.push_back(invert_permutation(g));
    }
    impl->generators = std::move(generators);
    return FinGroup(std::move(impl));
  }

  FinGroup FinGroup::from_right_multiplication(std::size_t            alphabet_size,
                                               std::vector<ElementId> right,
                                               std::string            name) {
    if (alphabet_size == 0 || right.empty() || right.size() % alphabet_size != 0) {
      throw InputError("malformed multiplication table");
    }
    std::size_t const n    = right.size() / alphabet_size;
    auto              impl = std::make_shared<Impl>();
    impl->name             = std::move(name);
    impl->degree           = n;
    impl->budget           = std::max(n, default_enumeration_budget);
    for (std::size_t a = 0; a < alphabet_size; ++a) {
      Permutation column(n);
      for (std::size_t g = 0; g < n; ++g) {
        column[g] = right[g * alphabet_size + a];
      }
      if (!is_permutation(column, n)) {
        throw InputError("multiplication table column is not a permutation");
      }
      impl->inverse_generators.push_back(invert_permutation(column));
      impl->generators.push_back(std::move(column));
    }
    impl->right = std::move(right);
    return FinGroup(std::move(impl));
  }

  std::string const& FinGroup::name() const noexcept {
    return _impl->name;
  }
  std::size_t FinGroup::alphabet_size() const noexcept {
    return _impl->generators.size();
  }
  std::size_t FinGroup::degree() const noexcept {
    return _impl->degree;
  }
  Permutation const& FinGroup::generator(LetterIndex a) const {
    if (a >= alphabet_size()) {
      throw InputError("letter index " + std::to_string(a) + " outside the alphabet");
    }
    return _impl->generators[a];
  }
  std::size_t FinGroup::budget() const noexcept {
    return _impl->budget;
  }

  FinGroup FinGroup::with_budget(std::size_t budget) const {
    auto impl    = std::make_shared<Impl>(*_impl);
    impl->budget = budget;
    impl->holder = std::make_shared<Impl::Holder>();
    return FinGroup(std::move(impl));
  }

  FinGroup FinGroup::renamed(std::string name) const {
    auto impl  = std::make_shared<Impl>(*_impl);
    impl->name = std::move(name);
    return FinGroup(std::move(impl));
  }

  bool FinGroup::separated() const {
    auto const id = identity_permutation(degree());
    for (std::size_t a = 0; a < alphabet_size(); ++a) {
      if (_impl->generators[a] == id) {
        return false;
      }
      for (std::size_t b = 0; b < a; ++b) {
        if (_impl->generators[a] == _impl->generators[b]) {
          return false;
        }
      }
    }
    return true;
  }

  Permutation FinGroup::evaluate_permutation(Word const& w) const {
    Permutation p = identity_permutation(degree());
    for (Letter x : w) {
      if (x.base >= alphabet_size()) {
        throw InputError("letter index " + std::to_string(x.base) + " outside the alphabet");
      }
      p = compose(p, x.positive() ? _impl->generators[x.base]
                                  : _impl->inverse_generators[x.base]);
    }
    return p;
  }

  bool FinGroup::enumerated() const noexcept {
    return _impl->holder->table != nullptr;
  }

  FinGroup::Table const& FinGroup::table() const {
    auto& holder = *_impl->holder;
    std::call_once(holder.once, [this, &holder] {
      auto              t = std::make_unique<Table>();
      std::size_t const k = alphabet_size();
      t->letters          = k;
      if (!_impl->right.empty()) {
        t->size  = _impl->right.size() / k;
        t->right = _impl->right;
        t->right_inverse.assign(t->size * k, 0);
        for (std::size_t g = 0; g < t->size; ++g) {
          for (std::size_t a = 0; a < k; ++a) {
            t->right_inverse[t->right[g * k + a] * k + a] = static_cast<ElementId>(g);
          }
        }
        // Shortest witnesses by breadth-first search over the given table.
        t->parent.assign(t->size, 0);
        t->parent_letter.assign(t->size, Letter());
        std::vector<bool>     seen(t->size, false);
        std::deque<ElementId> queue{0};
        seen[0] = true;
        while (!queue.empty()) {
          ElementId g = queue.front();
          queue.pop_front();
          for (int s : {1, -1}) {
            for (std::size_t a = 0; a < k; ++a) {
              ElementId h = s > 0 ? t->right[g * k + a] : t->right_inverse[g * k + a];
              if (!seen[h]) {
                seen[h]             = true;
                t->parent[h]        = g;
                t->parent_letter[h] = Letter(static_cast<LetterIndex>(a), s);
                queue.push_back(h);
              }
            }
          }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
          throw InputError("multiplication table is not generated by the letters");
        }
      } else {
        std::size_t const budget = _impl->budget;
        t->perms.push_back(identity_permutation(degree()));
        t->index.emplace(t->perms.back(), 0);
        t->parent.push_back(0);
        t->parent_letter.emplace_back();
        for (std::size_t g = 0; g < t->perms.size(); ++g) {
          for (int s : {1, -1}) {
            for (std::size_t a = 0; a < k; ++a) {
              Permutation next = compose(t->perms[g], s > 0 ? _impl->generators[a]
                                                            : _impl->inverse_generators[a]);
              auto [it, inserted]
                  = t->index.emplace(std::move(next), static_cast<ElementId>(t->perms.size()));
              if (inserted) {
                if (t->perms.size() >= budget) {
                  throw BudgetExceeded("enumeration of group '" + _impl->name
                                       + "' exceeds budget of " + std::to_string(budget)
                                       + " elements");
                }
                t->perms.push_back(it->first);
                t->parent.push_back(static_cast<ElementId>(g));
                t->parent_letter.emplace_back(static_cast<LetterIndex>(a), s);
              }
            }
          }
        }
        t->size = t->perms.size();
        t->right.resize(t->size * k);
        t->right_inverse.resize(t->size * k);
        for (std::size_t g = 0; g < t->size; ++g) {
          for (std::size_t a = 0; a < k; ++a) {
            t->right[g * k + a] = t->index.at(compose(t->perms[g], _impl->generators[a]));
            t->right_inverse[g * k + a]
                = t->index.at(compose(t->perms[g], _impl->inverse_generators[a]));
          }
        }
      }
      // Inverses: read the inverted witness from the identity.
      t->inverse.assign(t->size, 0);
      for (std::size_t g = 1; g < t->size; ++g) {
        std::vector<Letter> letters;
        for (ElementId h = static_cast<ElementId>(g); h != 0; h = t->parent[h]) {
          letters.push_back(t->parent_letter[h].inverse());
        }
        ElementId cur = 0;
        for (Letter x : letters) {
          cur = x.positive() ? t->right[cur * k + x.base] : t->right_inverse[cur * k + x.base];
        }
        t->inverse[g] = cur;
      }
      holder.table = std::move(t);
    });
    return *holder.table;
  }

  std::size_t FinGroup::order() const {
    return table().size;
  }

  ElementId FinGroup::act(ElementId g, Letter x) const {
    auto const& t = table();
    if (x.base >= t.letters) {
      throw InputError("letter index " + std::to_string(x.base) + " outside the alphabet");
    }
    return x.positive() ? t.right[g * t.letters + x.base]
                        : t.right_inverse[g * t.letters + x.base];
  }

  ElementId FinGroup::evaluate_from(ElementId start, Word const& w) const {
    ElementId cur = start;
    for (Letter x : w) {
      cur = act(cur, x);
    }
    return cur;
  }

  ElementId FinGroup::evaluate(Word const& w) const {
    return evaluate_from(0, w);
  }

  Word FinGroup::witness(ElementId g) const {
    auto const&         t = table();
    std::vector<Letter> letters;
    for (ElementId h = g; h != 0; h = t.parent[h]) {
      letters.push_back(t.parent_letter[h]);
    }
    std::reverse(letters.begin(), letters.end());
    return Word(std::move(letters));
  }

  ElementId FinGroup::multiply(ElementId g, ElementId h) const {
    auto const& t = table();
    if (t.size <= multiplication_table_limit) {
      std::call_once(t.product_once, [this, &t] {
        std::vector<ElementId> product(t.size * t.size);
        for (std::size_t y = 0; y < t.size; ++y) {
          Word const w = witness(static_cast<ElementId>(y));
          for (std::size_t x = 0; x < t.size; ++x) {
            product[x * t.size + y] = evaluate_from(static_cast<ElementId>(x), w);
          }
        }
        t.product = std::move(product);
      });
      return t.product[static_cast<std::size_t>(g) * t.size + h];
    }
    return evaluate_from(g, witness(h));
  }

  ElementId FinGroup::inverse(ElementId g) const {
    return table().inverse.at(g);
  }

  std::uint64_t FinGroup::element_order(ElementId g) const {
    auto const& t = table();
    if (!t.perms.empty()) {
      auto const&       p = t.perms[g];
      std::vector<bool> seen(p.size(), false);
      std::uint64_t     result = 1;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) {
          continue;
        }
        std::uint64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
          seen[j] = true;
          ++len;
        }
        result = std::lcm(result, len);
      }
      return result;
    }
    std::uint64_t n   = 1;
    ElementId     cur = g;
    while (cur != 0) {
      cur = multiply(cur, g);
      ++n;
    }
    return n;
  }

  std::optional<ElementId> FinGroup::find(Permutation const& image) const {
    auto const& t = table();
    if (!t.perms.empty()) {
      auto it = t.index.find(image);
      if (it == t.index.end()) {
        return std::nullopt;
      }
      return it->second;
    }
    if (image.size() != t.size) {
      return std::nullopt;
    }
    ElementId const g = image[0];
    for (std::size_t x = 0; x < t.size; ++x) {
      if (image[x] != multiply(static_cast<ElementId>(x), g)) {
        return std::nullopt;
      }
    }
    return g;
  }

  ////////////////////////////////////////////////////////////////////////
  // Builtins
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::optional<std::size_t> parse_size(std::string_view s) {
      if (s.empty() || s.size() > 6) {
        return std::nullopt;
      }
      std::size_t n = 0;
      for (char c : s) {
        if (c < '0' || c > '9') {
          return std::nullopt;
        }
        n = n * 10 + static_cast<std::size_t>(c - '0');
      }
      return n;
    }

    Permutation cycle_perm(std::size_t degree, std::vector<std::vector<std::uint32_t>> cycles) {
      Permutation p = identity_permutation(degree);
      for (auto const& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
          p[c[i]] = c[(i + 1) % c.size()];
        }
      }
      return p;
    }

  }  // namespace

  FinGroup builtin_group(std::string_view name) {
    std::string const n(name);
    if (n == "trivial" || n == "1") {
      return FinGroup::from_permutations(1, {{0}, {0}}, "trivial");
    }
    if (n == "C2xC2" || n == "V4") {
      return FinGroup::from_permutations(
          4, {cycle_perm(4, {{0, 1}, {2, 3}}), cycle_perm(4, {{0, 2}, {1, 3}})}, "C2xC2");
    }
    if (n == "A5") {
      return FinGroup::from_permutations(
          5, {cycle_perm(5, {{0, 1}, {2, 3}}), cycle_perm(5, {{0, 2, 4}})}, "A5");
    }
    if (n.size() >= 2) {
      auto const size = parse_size(std::string_view(n).substr(1));
      if (size) {
        std::size_t const k = *size;
        if (n[0] == 'C' && k >= 1) {
          Permutation a(k), b(k);
          for (std::size_t i = 0; i < k; ++i) {
            a[i] = static_cast<std::uint32_t>((i + 1) % k);
            b[i] = static_cast<std::uint32_t>((i + k - 1) % k);
          }
          return FinGroup::from_permutations(k, {a, b}, n);
        }
        if (n[0] == 'S' && k >= 2) {
          Permutation b(k);
          for (std::size_t i = 0; i < k; ++i) {
            b[i] = static_cast<std::uint32_t>((i + 1) % k);
          }
          return FinGroup::from_permutations(k, {cycle_perm(k, {{0, 1}}), b}, n);
        }
        if (n[0] == 'D' && k >= 3) {
          Permutation a(k), b(k);
          for (std::size_t i = 0; i < k; ++i) {
            a[i] = static_cast<std::uint32_t>((k - i) % k);
            b[i] = static_cast<std::uint32_t>((k + 1 - i) % k);
          }
          return FinGroup::from_permutations(k, {a, b}, n);
        }
      }
    }
    throw InputError("unknown builtin group '" + n + "'");
  }

  std::vector<std::string> builtin_group_names() {
    return {"trivial", "C2", "C3", "C4", "C5", "C2xC2", "S3", "D4", "S4", "A5"};
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphisms and constructions
  ////////////////////////////////////////////////////////////////////////

  std::optional<std::vector<ElementId>> canonical_morphism(FinGroup const& from,
                                                           FinGroup const& to) {
    if (from.alphabet_size() != to.alphabet_size()) {
      throw InputError("canonical morphism between groups over different alphabets");
    }
    std::size_t const      n = from.order();
    std::size_t const      k = from.alphabet_size();
    std::vector<ElementId> phi(n, 0);
    std::vector<bool>      assigned(n, false);
    std::deque<ElementId>  queue{0};
    assigned[0] = true;
    while (!queue.empty()) {
      ElementId g = queue.front();
      queue.pop_front();
      for (std::size_t a = 0; a < k; ++a) {
        for (int s : {1, -1}) {
          Letter const    x(static_cast<LetterIndex>(a), s);
          ElementId const h     = from.act(g, x);
          ElementId const image = to.act(phi[g], x);
          if (!assigned[h]) {
            assigned[h] = true;
            phi[h]      = image;
            queue.push_back(h);
          } else if (phi[h] != image) {
            return std::nullopt;
          }
        }
      }
    }
    return phi;
  }

  std::uint64_t exponent(FinGroup const& group) {
    std::uint64_t result = 1;
    for (std::size_t g = 0; g < group.order(); ++g) {
      result = std::lcm(result, group.element_order(static_cast<ElementId>(g)));
    }
    return result;
  }

  FinGroup subdirect(std::vector<FinGroup> const& groups) {
    if (groups.empty()) {
      throw InputError("subdirect product of no groups");
    }
    std::size_t const k = groups.front().alphabet_size();
    std::size_t       degree = 0;
    std::string       name;
    for (auto const& g : groups) {
      if (g.alphabet_size() != k) {
        throw InputError("subdirect product of groups over different alphabets");
      }
      degree += g.degree();
      name += (name.empty() ? "" : "*") + (g.name().empty() ? std::string("G") : g.name());
    }
    std::vector<Permutation> gens(k, Permutation(degree));
    std::size_t              offset = 0;
    std::size_t              budget = 1;
    for (auto const& g : groups) {
      for (std::size_t a = 0; a < k; ++a) {
        auto const& p = g.generator(static_cast<LetterIndex>(a));
        for (std::size_t i = 0; i < p.size(); ++i) {
          gens[a][offset + i] = static_cast<std::uint32_t>(offset + p[i]);
        }
      }
      offset += g.degree();
      budget = std::max(budget, g.budget());
    }
    return FinGroup::from_permutations(degree, std::move(gens), "subdirect(" + name + ")",
                                       budget);
  }

  std::vector<ElementId> subgroup_closure(FinGroup const&               group,
                                          std::vector<ElementId> const& generators) {
    std::vector<bool>      seen(group.order(), false);
    std::vector<ElementId> members{0};
    seen[0] = true;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (ElementId s : generators) {
        ElementId const h = group.multiply(members[i], s);
        if (!seen[h]) {
          seen[h] = true;
          members.push_back(h);
        }
      }
    }
    std::sort(members.begin(), members.end());
    return members;
  }

  bool generates(FinGroup const& group, std::vector<ElementId> const& elements) {
    return subgroup_closure(group, elements).size() == group.order();
  }

  bool is_simple(FinGroup const& group) {
    std::size_t const n = group.order();
    if (n <= 1) {
      return false;
    }
    for (std::size_t g = 1; g < n; ++g) {
      std::vector<ElementId> conjugates;
      conjugates.reserve(n);
      for (std::size_t h = 0; h < n; ++h) {
        auto const hh = static_cast<ElementId>(h);
        conjugates.push_back(
            group.multiply(group.multiply(group.inverse(hh), static_cast<ElementId>(g)), hh));
      }
      std::sort(conjugates.begin(), conjugates.end());
      conjugates.erase(std::unique(conjugates.begin(), conjugates.end()), conjugates.end());
      if (subgroup_closure(group, conjugates).size() != n) {
        return false;
      }
    }
    return true;
  }

}  // namespace arbor
