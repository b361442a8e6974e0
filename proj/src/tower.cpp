#include "arbor/tower.hpp"

#include <charconv>
#include <deque>
#include <unordered_map>

#include "arbor/errors.hpp"
#include "arbor/rational.hpp"

namespace arbor {

  struct TowerElement::Node {
    std::size_t  level = 0;
    ElementId    base  = 0;
    std::shared_ptr<Node const> below;  // null at level 0
    TowerCocycle cocycle;
    std::string  encoding;

    Node() = default;
  };

  namespace {
    void append_prefixed(std::string& out, std::string const& s) {
      out += std::to_string(s.size());
      out += ':';
      out += s;
    }

    std::shared_ptr<TowerElement::Node const> const& identity_node() {
      static auto const node = [] {
        auto n      = std::make_shared<TowerElement::Node>();
        n->encoding = "g0";
        return std::shared_ptr<TowerElement::Node const>(n);
      }();
      return node;
    }
  }  // namespace

  TowerElement::TowerElement() : _node(identity_node()) {}

  TowerElement TowerElement::at_base(ElementId g) {
    if (g == 0) {
      return {};
    }
    auto n      = std::make_shared<Node>();
    n->base     = g;
    n->encoding = "g" + std::to_string(g);
    return TowerElement(std::move(n));
  }

  TowerElement TowerElement::extend(TowerElement below, TowerCocycle cocycle) {
    auto n   = std::make_shared<Node>();
    n->level = below.level() + 1;
    n->base  = below.base_id();
    for (auto it = cocycle.begin(); it != cocycle.end();) {
      if (it->first.first.level() != below.level()) {
        throw InputError("cocycle key at the wrong level");
      }
      it = it->second == 0 ? cocycle.erase(it) : std::next(it);
    }
    std::string enc = "e" + std::to_string(n->level) + "(";
    append_prefixed(enc, below.encoding());
    enc += '|';
    for (auto const& [key, r] : cocycle) {
      append_prefixed(enc, key.first.encoding());
      enc += ',' + std::to_string(key.second) + ',' + std::to_string(r) + ';';
    }
    enc += ')';
    n->encoding = std::move(enc);
    n->below    = std::move(below._node);
    n->cocycle  = std::move(cocycle);
    return TowerElement(std::move(n));
  }

  std::size_t TowerElement::level() const noexcept {
    return _node->level;
  }
  ElementId TowerElement::base_id() const noexcept {
    return _node->base;
  }
  TowerElement TowerElement::below() const {
    if (_node->level == 0) {
      throw PreconditionError("level 0 has nothing below");
    }
    return TowerElement(_node->below);
  }
  TowerCocycle const& TowerElement::cocycle() const {
    return _node->cocycle;
  }
  std::string const& TowerElement::encoding() const noexcept {
    return _node->encoding;
  }

  namespace {
    struct Decoder {
      std::string_view text;
      std::size_t      pos = 0;

      [[noreturn]] void fail(std::string const& what) const {
        throw InputError("tower element encoding: " + what + " at offset " + std::to_string(pos));
      }
      void expect(char c) {
        if (pos >= text.size() || text[pos] != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++pos;
      }
      std::uint64_t number() {
        std::uint64_t v   = 0;
        auto const    res = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (res.ec != std::errc{} || res.ptr == text.data() + pos) {
          fail("expected a number");
        }
        pos = static_cast<std::size_t>(res.ptr - text.data());
        return v;
      }
      TowerElement prefixed() {
        auto const len = number();
        expect(':');
        if (pos + len > text.size()) {
          fail("length prefix runs past the end");
        }
        Decoder inner{text.substr(pos, len)};
        auto    x = inner.element();
        if (inner.pos != len) {
          inner.fail("trailing characters");
        }
        pos += len;
        return x;
      }
      TowerElement element() {
        if (pos >= text.size()) {
          fail("unexpected end");
        }
        if (text[pos] == 'g') {
          ++pos;
          return TowerElement::at_base(static_cast<ElementId>(number()));
        }
        expect('e');
        auto const level = number();
        expect('(');
        auto below = prefixed();
        if (below.level() + 1 != level) {
          fail("level mismatch");
        }
        expect('|');
        TowerCocycle c;
        while (pos < text.size() && text[pos] != ')') {
          auto key = prefixed();
          expect(',');
          auto const a = static_cast<LetterIndex>(number());
          expect(',');
          auto const r = static_cast<std::uint32_t>(number());
          expect(';');
          if (r == 0 || !c.emplace(std::pair{std::move(key), a}, r).second) {
            fail("zero or repeated cocycle entry");
          }
        }
        expect(')');
        auto x = TowerElement::extend(std::move(below), std::move(c));
        return x;
      }
    };
  }  // namespace

  TowerElement decode_tower_element(std::string_view text) {
    Decoder d{text};
    auto    x = d.element();
    if (d.pos != text.size()) {
      d.fail("trailing characters");
    }
    if (x.encoding() != text) {
      throw InputError("tower element encoding is not canonical");
    }
    return x;
  }

  Tower::Tower(TowerSpec spec) : _spec(std::move(spec)), _cache(std::make_shared<Cache>()) {
    if (_spec.primes.empty()) {
      throw InputError("tower needs at least one prime");
    }
    for (auto p : _spec.primes) {
      if (p != 1 && !is_prime(p)) {
        throw InputError("tower step " + std::to_string(p) + " is neither prime nor 1");
      }
    }
    if (!_spec.base.separated()) {
      throw PreconditionError(_spec.base.name() + " violates [a] != [b] != 1");
    }
  }

  std::size_t Tower::top_level() const noexcept {
    return std::min(_spec.max_level, _spec.primes.size());
  }

  void Tower::check_level(std::size_t level) const {
    if (level > top_level()) {
      throw PreconditionError("level " + std::to_string(level) + " exceeds the top level "
                              + std::to_string(top_level()));
    }
  }

  std::uint32_t Tower::prime(std::size_t level) const {
    if (level == 0 || level > _spec.primes.size()) {
      throw PreconditionError("no prime for level " + std::to_string(level));
    }
    return _spec.primes[level - 1];
  }

  std::optional<BigInt> Tower::order(std::size_t level) const {
    check_level(level);
    BigInt     o = _spec.base.order();
    auto const k = _spec.base.alphabet_size();
    for (std::size_t n = 1; n <= level; ++n) {
      auto const p = prime(n);
      if (p == 1) {
        continue;
      }
      BigInt const rank = o * (k - 1) + 1;
      if (rank > 1'000'000) {
        return std::nullopt;
      }
      o *= boost::multiprecision::pow(BigInt(p), rank.convert_to<unsigned>());
    }
    return o;
  }

  std::string Tower::order_string(std::size_t level) const {
    auto const o = order(level);
    return o ? o->str() : std::string("too large to write down");
  }

  std::string Tower::name(std::size_t level) const {
    check_level(level);
    auto out = _spec.base.name();
    for (std::size_t n = 1; n <= level; ++n) {
      auto const p = prime(n);
      out += p == 1 ? std::string("^id") : "^C" + std::to_string(p);
    }
    return out;
  }

  TowerElement Tower::identity(std::size_t level) const {
    check_level(level);
    TowerElement x;
    for (std::size_t n = 1; n <= level; ++n) {
      x = TowerElement::extend(std::move(x), {});
    }
    return x;
  }

  TowerElement Tower::generator(std::size_t level, LetterIndex a) const {
    return act(identity(level), Letter(a));
  }

  TowerElement Tower::act(TowerElement const& x, Letter l) const {
    if (x.level() == 0) {
      return TowerElement::at_base(_spec.base.act(x.base_id(), l));
    }
    auto const   p    = prime(x.level());
    auto const   y    = x.below();
    auto         next = act(y, l);
    TowerCocycle c    = x.cocycle();
    if (p > 1) {
      // The edge (y, a) forwards, or (y a^-1, a) backwards.
      auto& slot = c[{l.sign > 0 ? y : next, l.base}];
      slot       = (slot + (l.sign > 0 ? 1 : p - 1)) % p;
    }
    return TowerElement::extend(std::move(next), std::move(c));
  }

  TowerElement Tower::evaluate(std::size_t level, Word const& w) const {
    auto x = identity(level);
    for (auto l : w) {
      x = act(x, l);
    }
    return x;
  }

  TowerElement Tower::multiply(TowerElement const& x, TowerElement const& y) const {
    if (x.level() != y.level()) {
      throw PreconditionError("multiplying elements of different levels");
    }
    if (x.level() == 0) {
      return TowerElement::at_base(_spec.base.multiply(x.base_id(), y.base_id()));
    }
    auto const   p = prime(x.level());
    TowerCocycle c = x.cocycle();
    for (auto const& [key, r] : y.cocycle()) {
      auto& slot = c[{multiply(x.below(), key.first), key.second}];
      slot       = (slot + r) % p;
    }
    return TowerElement::extend(multiply(x.below(), y.below()), std::move(c));
  }

  TowerElement Tower::inverse(TowerElement const& x) const {
    if (x.level() == 0) {
      return TowerElement::at_base(_spec.base.inverse(x.base_id()));
    }
    auto const   p  = prime(x.level());
    auto         yi = inverse(x.below());
    TowerCocycle c;
    for (auto const& [key, r] : x.cocycle()) {
      c.emplace(std::pair{multiply(yi, key.first), key.second}, (p - r) % p);
    }
    return TowerElement::extend(std::move(yi), std::move(c));
  }

  TowerElement Tower::project(TowerElement const& x, std::size_t to) const {
    if (to > x.level()) {
      throw PreconditionError("cannot project upwards");
    }
    auto y = x;
    while (y.level() > to) {
      y = y.below();
    }
    return y;
  }

  bool Tower::enumerable(std::size_t level) const {
    if (level > top_level()) {
      return false;
    }
    auto const o = order(level);
    return o && *o <= _spec.enumeration_budget;
  }

  FinGroup const& Tower::enumerate(std::size_t level) const {
    check_level(level);
    std::lock_guard lock(_cache->mutex);
    if (auto it = _cache->groups.find(level); it != _cache->groups.end()) {
      return it->second;
    }
    if (!enumerable(level)) {
      throw BudgetExceeded(name(level) + " has order " + order_string(level)
                           + ", above the enumeration budget of "
                           + std::to_string(_spec.enumeration_budget));
    }
    auto const                                   k = _spec.base.alphabet_size();
    std::vector<TowerElement>                    elements{identity(level)};
    std::unordered_map<std::string, ElementId>   index{{elements[0].encoding(), 0}};
    std::vector<ElementId>                       right;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      for (LetterIndex a = 0; a < k; ++a) {
        auto next         = act(elements[i], Letter(a));
        auto [it, fresh]  = index.emplace(next.encoding(), static_cast<ElementId>(elements.size()));
        if (fresh) {
          elements.push_back(std::move(next));
        }
        right.push_back(it->second);
      }
    }
    auto g = level == 0 ? _spec.base
                        : FinGroup::from_right_multiplication(k, std::move(right), name(level));
    return _cache->groups.emplace(level, std::move(g)).first->second;
  }

  TowerElement tower_evaluate(Tower const& tower, std::size_t level, Word const& w) {
    if (level > tower.top_level()) {
      throw PreconditionError("level " + std::to_string(level) + " exceeds the top level "
                              + std::to_string(tower.top_level()));
    }
    return tower.evaluate(level, w);
  }

  bool tower_equal(TowerElement const& x, TowerElement const& y) {
    if (x.level() != y.level()) {
      throw PreconditionError("comparing tower elements of levels " + std::to_string(x.level())
                              + " and " + std::to_string(y.level()));
    }
    return x == y;
  }

  bool CampaignReport::passed() const noexcept {
    return !levels.empty()
           && std::all_of(levels.begin(), levels.end(), [](auto const& l) { return l.passed(); });
  }

  bool CampaignReport::budget_exceeded() const noexcept {
    return std::any_of(levels.begin(), levels.end(), [](auto const& l) { return !l.error.empty(); });
  }

  namespace {
    DissolveReport elementwise(Tower const& tower, std::size_t n, FinGroup const& g,
                               EnumerationMode const& mode, std::size_t max_listed,
                               std::size_t& certificates) {
      DissolveReport r;
      r.h_name  = tower.name(n + 1);
      r.g_name  = g.name();
      r.g_order = g.order();
      r.mode    = mode;
      auto const p = tower.prime(n + 1);
      std::optional<FinGroup> simple;
      if (p > 1 && g.separated()) {
        simple = builtin_group("C" + std::to_string(p));
      }
      for_each_constellation(g, mode, [&](FoundConstellation const& f) {
        ++r.constellations;
        auto const same = tower.evaluate(n + 1, f.u) == tower.evaluate(n + 1, f.v);
        if (!same) {
          ++r.dissolved;
          if (simple) {
            (void) dissolving_certificate(g, f.c, f.u, f.v, *simple);
            ++certificates;
          }
        } else {
          ++r.counterexamples;
        }
        if (same || r.listed.size() < max_listed) {
          r.listed.push_back({f.c.g, f.c.x.edges(), f.c.t.edges(),
                              same ? Verdict::counterexample : Verdict::dissolved, f.u, f.v});
        }
        return true;
      });
      return r;
    }
  }  // namespace

  CampaignReport treelike_campaign(Tower const& tower, std::size_t levels,
                                   EnumerationMode const& mode, std::size_t max_listed) {
    if (levels > tower.top_level()) {
      throw PreconditionError("campaign over " + std::to_string(levels) + " levels, tower has "
                              + std::to_string(tower.top_level()));
    }
    CampaignReport out;
    out.base   = tower.spec().base.name();
    out.primes = tower.spec().primes;
    out.seed   = tower.spec().seed;
    for (std::size_t n = 0; n < levels; ++n) {
      LevelReport lr;
      lr.level          = n;
      lr.upper_order    = tower.order_string(n + 1);
      lr.report.g_name  = tower.name(n);
      lr.report.h_name  = tower.name(n + 1);
      lr.report.mode    = mode;
      try {
        auto const& g = tower.enumerate(n);
        if (tower.enumerable(n + 1)) {
          lr.method = "lifting";
          lr.report = dissolves_all(tower.enumerate(n + 1), g, mode, max_listed);
        } else {
          lr.method = "elementwise";
          lr.report = elementwise(tower, n, g, mode, max_listed, lr.certificates);
        }
      } catch (BudgetExceeded const& e) {
        lr.error = e.what();
      }
      out.levels.push_back(std::move(lr));
    }
    return out;
  }

  std::string RzReport::status() const {
    if (member) {
      return "member";
    }
    return separated_at ? "separated" : "inconclusive";
  }

  RzLevel image_product_check(Tower const& tower, std::vector<CoreGraph> const& subgroups,
                              Word const& w, std::size_t level) {
    auto const& g = tower.enumerate(level);
    RzLevel     out;
    out.level = level;
    out.order = g.order();
    std::vector<char> product(g.order(), 0);
    product[g.identity()] = 1;
    for (auto const& core : subgroups) {
      if (core.graph().alphabet_size() != g.alphabet_size()) {
        throw InputError("subgroup alphabet does not match the tower");
      }
      std::vector<ElementId> gens;
      for (auto const& h : core_generators(core)) {
        gens.push_back(g.evaluate(h));
      }
      auto const        closure = subgroup_closure(g, gens);
      std::vector<char> next(g.order(), 0);
      for (ElementId x = 0; x < g.order(); ++x) {
        if (product[x]) {
          for (auto h : closure) {
            next[g.multiply(x, h)] = 1;
          }
        }
      }
      product = std::move(next);
    }
    out.product_size = static_cast<std::size_t>(std::count(product.begin(), product.end(), 1));
    out.separated    = product[g.evaluate(w)] == 0;
    return out;
  }

  RzReport rz_experiment(Tower const& tower, std::vector<CoreGraph> const& subgroups, Word const& w,
                         std::optional<std::size_t> max_level) {
    auto const top = max_level.value_or(tower.top_level());
    if (top > tower.top_level()) {
      throw PreconditionError("level " + std::to_string(top) + " exceeds the top level "
                              + std::to_string(tower.top_level()));
    }
    RzReport out;
    out.w             = reduce(w);
    auto const ground = member_product(subgroups, out.w);
    out.member        = ground.member;
    out.factors       = ground.factors;
    if (out.member) {
      return out;
    }
    for (std::size_t n = 0; n <= top; ++n) {
      if (!tower.enumerable(n)) {
        out.stopped = "level " + std::to_string(n) + " is not enumerable (order "
                      + tower.order_string(n) + ")";
        return out;
      }
      out.levels.push_back(image_product_check(tower, subgroups, out.w, n));
      if (out.levels.back().separated) {
        out.separated_at = n;
        return out;
      }
    }
    out.stopped = "no separation up to level " + std::to_string(top);
    return out;
  }

}  // namespace arbor
