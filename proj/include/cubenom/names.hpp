#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cubenom {

/// An atom: an index into the fixed enumeration a0, a1, a2, ...
struct Name {
  unsigned id = 0;
  friend auto operator<=>(const Name&, const Name&) = default;
};

inline std::string to_string(Name a) { return "a" + std::to_string(a.id); }

/// The two endpoints of the interval.
enum class Bit : unsigned char { zero = 0, one = 1 };

inline std::string to_string(Bit i) { return i == Bit::zero ? "0" : "1"; }

/// A finite set of names, stored sorted and duplicate-free.
class NameSet {
public:
  NameSet() = default;

  NameSet(std::initializer_list<Name> ns) : elems_(ns) { normalize(); }

  explicit NameSet(std::vector<Name> ns) : elems_(std::move(ns)) { normalize(); }

  bool contains(Name a) const {
    return std::binary_search(elems_.begin(), elems_.end(), a);
  }

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  const std::vector<Name>& elems() const { return elems_; }

  NameSet with(Name a) const {
    NameSet r = *this;
    if (!r.contains(a)) {
      r.elems_.insert(std::upper_bound(r.elems_.begin(), r.elems_.end(), a), a);
    }
    return r;
  }

  NameSet without(Name a) const {
    NameSet r = *this;
    auto it = std::lower_bound(r.elems_.begin(), r.elems_.end(), a);
    if (it != r.elems_.end() && *it == a) r.elems_.erase(it);
    return r;
  }

  bool subset_of(const NameSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(),
                         elems_.begin(), elems_.end());
  }

  friend NameSet operator|(const NameSet& a, const NameSet& b) {
    std::vector<Name> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NameSet(std::move(out));
  }

  friend NameSet operator&(const NameSet& a, const NameSet& b) {
    std::vector<Name> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NameSet(std::move(out));
  }

  friend NameSet operator-(const NameSet& a, const NameSet& b) {
    std::vector<Name> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NameSet(std::move(out));
  }

  friend bool operator==(const NameSet&, const NameSet&) = default;
  friend auto operator<=>(const NameSet&, const NameSet&) = default;

private:
  void normalize() {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  std::vector<Name> elems_;
};

/// {a0, ..., a_{n-1}}
inline NameSet name_universe(unsigned n) {
  std::vector<Name> ns;
  ns.reserve(n);
  for (unsigned i = 0; i < n; ++i) ns.push_back(Name{i});
  return NameSet(std::move(ns));
}

/// Least-index name not in `avoid`.
inline Name fresh_name(const NameSet& avoid) {
  unsigned k = 0;
  for (Name a : avoid) {
    if (a.id != k) break;
    ++k;
  }
  return Name{k};
}

inline std::string to_string(const NameSet& s) {
  std::string out = "{";
  bool first = true;
  for (Name a : s) {
    if (!first) out += ",";
    out += to_string(a);
    first = false;
  }
  out += "}";
  return out;
}

/// A finite permutation of names: identity outside a finite carrier.
/// Stored fixed-point-free, so structural equality is group equality.
class FinPerm {
public:
  FinPerm() = default;

  static FinPerm identity() { return FinPerm(); }

  /// The transposition (a b); swap(a,a) is the identity.
  static FinPerm swap(Name a, Name b) {
    if (a == b) return FinPerm();
    return FinPerm({{a, b}, {b, a}});
  }

  /// Complete an injective finite map to a finite permutation by closing
  /// each chain into a cycle: the end of every orbit maps back to the
  /// orbit's start. Rejects non-injective or non-functional input.
  static FinPerm from_partial_bijection(std::vector<std::pair<Name, Name>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      if (pairs[i].first == pairs[i - 1].first) {
        throw std::invalid_argument("from_partial_bijection: duplicate source " +
                                    to_string(pairs[i].first));
      }
    }
    std::vector<Name> values;
    values.reserve(pairs.size());
    for (auto& [k, v] : pairs) values.push_back(v);
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] == values[i - 1]) {
        throw std::invalid_argument("from_partial_bijection: not injective, value " +
                                    to_string(values[i]) + " repeated");
      }
    }

    auto lookup = [&pairs](Name a) -> const Name* {
      auto it = std::lower_bound(pairs.begin(), pairs.end(), a,
                                 [](const auto& p, Name n) { return p.first < n; });
      if (it != pairs.end() && it->first == a) return &it->second;
      return nullptr;
    };
    NameSet domain;
    {
      std::vector<Name> d;
      for (auto& [k, v] : pairs) d.push_back(k);
      domain = NameSet(std::move(d));
    }

    std::vector<std::pair<Name, Name>> full = pairs;
    // Chain starts are sources that are not values; walk each chain to its
    // end (a value outside the domain) and close the cycle.
    for (auto& [start, v] : pairs) {
      bool is_start = std::none_of(pairs.begin(), pairs.end(),
                                   [&](const auto& p) { return p.second == start; });
      if (!is_start) continue;
      Name cur = v;
      while (const Name* next = lookup(cur)) cur = *next;
      if (cur != start) full.push_back({cur, start});
    }
    return normalized(std::move(full));
  }

  Name operator()(Name a) const {
    auto it = std::lower_bound(map_.begin(), map_.end(), a,
                               [](const auto& p, Name n) { return p.first < n; });
    if (it != map_.end() && it->first == a) return it->second;
    return a;
  }

  NameSet apply(const NameSet& s) const {
    std::vector<Name> out;
    out.reserve(s.size());
    for (Name a : s) out.push_back((*this)(a));
    return NameSet(std::move(out));
  }

  FinPerm inverse() const {
    std::vector<std::pair<Name, Name>> inv;
    inv.reserve(map_.size());
    for (auto& [k, v] : map_) inv.push_back({v, k});
    std::sort(inv.begin(), inv.end());
    FinPerm r;
    r.map_ = std::move(inv);
    return r;
  }

  bool is_identity() const { return map_.empty(); }

  /// Names moved by the permutation.
  NameSet carrier() const {
    std::vector<Name> c;
    c.reserve(map_.size());
    for (auto& [k, v] : map_) c.push_back(k);
    return NameSet(std::move(c));
  }

  const std::vector<std::pair<Name, Name>>& mapping() const { return map_; }

  /// compose(p,q) applies q first: compose(p,q)(x) = p(q(x)).
  friend FinPerm compose(const FinPerm& p, const FinPerm& q) {
    NameSet touched = p.carrier() | q.carrier();
    std::vector<std::pair<Name, Name>> m;
    for (Name a : touched) m.push_back({a, p(q(a))});
    return normalized(std::move(m));
  }

  friend bool operator==(const FinPerm&, const FinPerm&) = default;

private:
  FinPerm(std::initializer_list<std::pair<Name, Name>> m) : map_(m) {
    std::sort(map_.begin(), map_.end());
  }

  static FinPerm normalized(std::vector<std::pair<Name, Name>> m) {
    std::erase_if(m, [](const auto& p) { return p.first == p.second; });
    std::sort(m.begin(), m.end());
    std::vector<Name> values;
    values.reserve(m.size());
    for (auto& [k, v] : m) values.push_back(v);
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (values[i] != m[i].first) {
        throw std::invalid_argument("FinPerm: mapping is not a bijection on its carrier");
      }
    }
    FinPerm r;
    r.map_ = std::move(m);
    return r;
  }

  std::vector<std::pair<Name, Name>> map_;  // sorted by source, no fixed points
};

/// Cycle notation, cycles ordered by least moved name: "(a0 a1)(a2 a3)".
/// The identity prints as "()".
inline std::string to_string(const FinPerm& p) {
  if (p.is_identity()) return "()";
  std::string out;
  NameSet seen;
  for (auto& [start, _] : p.mapping()) {
    if (seen.contains(start)) continue;
    out += "(";
    Name cur = start;
    bool first = true;
    do {
      if (!first) out += " ";
      out += to_string(cur);
      seen = seen.with(cur);
      cur = p(cur);
      first = false;
    } while (cur != start);
    out += ")";
  }
  return out;
}

/// Error raised by the textual-format parsers; carries the offending
/// position (0-based) and token.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position_, std::string token_)
      : std::runtime_error(msg + " at position " + std::to_string(position_) +
                           (token_.empty() ? "" : " near '" + token_ + "'")),
        position(position_),
        token(std::move(token_)) {}

  std::size_t position;
  std::string token;
};

namespace detail {

/// Shared cursor for all the textual grammars.
class Scanner {
public:
  explicit Scanner(std::string_view src) : src_(src) {}

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  bool eof() {
    skip_ws();
    return pos_ >= src_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  std::size_t pos() const { return pos_; }

  bool try_consume(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool try_consume(std::string_view word) {
    skip_ws();
    if (src_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "' (" + what + ")");
  }

  [[noreturn]] void fail(const std::string& msg) {
    skip_ws();
    std::size_t end = pos_;
    while (end < src_.size() && src_[end] != ' ' && src_[end] != ',' && src_[end] != '}' &&
           end - pos_ < 12) {
      ++end;
    }
    throw ParseError(msg, pos_, std::string(src_.substr(pos_, end - pos_)));
  }

  Name parse_name() {
    skip_ws();
    if (pos_ >= src_.size() || src_[pos_] != 'a') fail("expected a name like a0");
    std::size_t start = pos_++;
    if (pos_ >= src_.size() || !isdigit(static_cast<unsigned char>(src_[pos_]))) {
      pos_ = start;
      fail("expected a digit after 'a'");
    }
    unsigned id = 0;
    while (pos_ < src_.size() && isdigit(static_cast<unsigned char>(src_[pos_]))) {
      id = id * 10 + static_cast<unsigned>(src_[pos_] - '0');
      ++pos_;
    }
    return Name{id};
  }

  Bit parse_bit() {
    skip_ws();
    if (try_consume('0')) return Bit::zero;
    if (try_consume('1')) return Bit::one;
    fail("expected a bit 0 or 1");
  }

  NameSet parse_name_set() {
    expect('{', "name set");
    std::vector<Name> ns;
    if (!try_consume('}')) {
      do {
        ns.push_back(parse_name());
      } while (try_consume(','));
      expect('}', "name set");
    }
    NameSet out(ns);
    if (out.size() != ns.size()) fail("duplicate name in set");
    return out;
  }

  void expect_end() {
    if (!eof()) fail("unexpected trailing input");
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Name parse_name(std::string_view s) {
  detail::Scanner sc(s);
  Name a = sc.parse_name();
  sc.expect_end();
  return a;
}

inline NameSet parse_name_set(std::string_view s) {
  detail::Scanner sc(s);
  NameSet a = sc.parse_name_set();
  sc.expect_end();
  return a;
}

/// Parses cycle notation: "(a0 a1)(a2 a3)"; "()" is the identity.
inline FinPerm parse_perm(std::string_view s) {
  detail::Scanner sc(s);
  std::vector<std::pair<Name, Name>> pairs;
  bool any = false;
  while (sc.try_consume('(')) {
    any = true;
    std::vector<Name> cycle;
    while (!sc.try_consume(')')) cycle.push_back(sc.parse_name());
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
      pairs.push_back({cycle[i], cycle[i + 1]});
    }
    if (cycle.size() > 1) pairs.push_back({cycle.back(), cycle.front()});
  }
  if (!any) sc.fail("expected a cycle '('");
  sc.expect_end();
  try {
    FinPerm p = FinPerm::from_partial_bijection(pairs);
    return p;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0, std::string(s));
  }
}

}  // namespace cubenom
