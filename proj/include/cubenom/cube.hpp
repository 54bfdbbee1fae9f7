#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cubenom/names.hpp"

namespace cubenom {

/// A morphism of the cube category: a function dom -> cod + {0,1} that is
/// injective on the part mapped to names.
class CubeMorphism {
public:
  using Value = std::variant<Name, Bit>;
  using Table = std::vector<std::pair<Name, Value>>;

  CubeMorphism(NameSet dom, NameSet cod, Table table)
      : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    std::sort(table_.begin(), table_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  const NameSet& dom() const { return dom_; }
  const NameSet& cod() const { return cod_; }
  const Table& table() const { return table_; }

  Value at(Name a) const {
    auto it = std::lower_bound(table_.begin(), table_.end(), a,
                               [](const auto& p, Name n) { return p.first < n; });
    if (it == table_.end() || it->first != a) {
      throw std::invalid_argument("CubeMorphism: " + to_string(a) + " not in domain");
    }
    return it->second;
  }

  /// Subset of the domain carried to names (not bits).
  NameSet name_part() const {
    std::vector<Name> out;
    for (auto& [a, v] : table_) {
      if (std::holds_alternative<Name>(v)) out.push_back(a);
    }
    return NameSet(std::move(out));
  }

  /// Image of the name part.
  NameSet image_names() const {
    std::vector<Name> out;
    for (auto& [a, v] : table_) {
      if (const Name* b = std::get_if<Name>(&v)) out.push_back(*b);
    }
    return NameSet(std::move(out));
  }

  friend bool operator==(const CubeMorphism&, const CubeMorphism&) = default;

  friend bool operator<(const CubeMorphism& x, const CubeMorphism& y) {
    if (x.dom_ != y.dom_) return x.dom_ < y.dom_;
    if (x.cod_ != y.cod_) return x.cod_ < y.cod_;
    return x.table_ < y.table_;
  }

private:
  NameSet dom_;
  NameSet cod_;
  Table table_;  // sorted by source name
};

/// Explains why `f` is not a valid morphism; empty result means valid.
/// A name-injectivity violation names the clashing pair.
inline std::optional<std::string> validity_error(const CubeMorphism& f) {
  if (f.table().size() != f.dom().size()) {
    return "table does not cover the domain exactly";
  }
  for (auto& [a, v] : f.table()) {
    if (!f.dom().contains(a)) {
      return "table entry " + to_string(a) + " is outside the domain";
    }
    if (const Name* b = std::get_if<Name>(&v)) {
      if (!f.cod().contains(*b)) {
        return "value " + to_string(*b) + " of " + to_string(a) +
               " is outside the codomain";
      }
    }
  }
  const auto& t = f.table();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Name* b = std::get_if<Name>(&t[i].second);
    if (!b) continue;
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const Name* c = std::get_if<Name>(&t[j].second);
      if (c && *b == *c) {
        return "names " + to_string(t[i].first) + " and " + to_string(t[j].first) +
               " clash (both map to " + to_string(*b) + ")";
      }
    }
  }
  return std::nullopt;
}

inline bool validate(const CubeMorphism& f) { return !validity_error(f).has_value(); }

/// id_A: the inclusion A -> A + {0,1}.
inline CubeMorphism identity(const NameSet& A) {
  CubeMorphism::Table t;
  for (Name a : A) t.push_back({a, a});
  return CubeMorphism(A, A, std::move(t));
}

/// g . f, defined on a in dom(f) as g(f a) when f a is a name and as f a
/// when f a is a bit. Requires cod(f) = dom(g).
inline CubeMorphism compose(const CubeMorphism& g, const CubeMorphism& f) {
  if (f.cod() != g.dom()) {
    throw std::invalid_argument("compose: cod " + to_string(f.cod()) +
                                " does not match dom " + to_string(g.dom()));
  }
  CubeMorphism::Table t;
  for (auto& [a, v] : f.table()) {
    if (const Name* b = std::get_if<Name>(&v)) {
      t.push_back({a, g.at(*b)});
    } else {
      t.push_back({a, v});
    }
  }
  return CubeMorphism(f.dom(), g.cod(), std::move(t));
}

/// True iff f maps every domain name to a name.
inline bool is_injection(const CubeMorphism& f) {
  return f.name_part() == f.dom();
}

/// For an injection f : A -> C, the retraction f' : C -> A sending f(a)
/// back to a and everything outside the image to 0.
inline CubeMorphism left_inverse(const CubeMorphism& f) {
  if (!is_injection(f)) {
    throw std::invalid_argument("left_inverse: morphism has bit values");
  }
  CubeMorphism::Table t;
  for (Name c : f.cod()) {
    CubeMorphism::Value v = Bit::zero;
    for (auto& [a, w] : f.table()) {
      if (std::get<Name>(w) == c) {
        v = a;
        break;
      }
    }
    t.push_back({c, v});
  }
  return CubeMorphism(f.cod(), f.dom(), std::move(t));
}

/// The generator A -> A - {a} sending a to the bit i and fixing the rest.
/// When a is not in A this is just the identity on A.
inline CubeMorphism generator_subst(const NameSet& A, Name a, Bit i) {
  CubeMorphism::Table t;
  for (Name b : A) {
    if (b == a) {
      t.push_back({b, i});
    } else {
      t.push_back({b, b});
    }
  }
  return CubeMorphism(A, A.without(a), std::move(t));
}

/// The injection A -> pA given by restricting the permutation p to A.
inline CubeMorphism injection_from_perm(const FinPerm& p, const NameSet& A) {
  CubeMorphism::Table t;
  for (Name a : A) t.push_back({a, p(a)});
  return CubeMorphism(A, p.apply(A), std::move(t));
}

/// The evident injection A -> B for A a subset of B.
inline CubeMorphism inclusion(const NameSet& A, const NameSet& B) {
  if (!A.subset_of(B)) {
    throw std::invalid_argument("inclusion: " + to_string(A) + " is not a subset of " +
                                to_string(B));
  }
  CubeMorphism::Table t;
  for (Name a : A) t.push_back({a, a});
  return CubeMorphism(A, B, std::move(t));
}

/// A morphism split into a finite permutation agreeing with it on the name
/// part and the list of bit assignments, in ascending name order.
struct Decomposition {
  FinPerm perm;
  std::vector<std::pair<Name, Bit>> substitutions;
};

inline Decomposition decompose(const CubeMorphism& f) {
  if (auto err = validity_error(f)) {
    throw std::invalid_argument("decompose: " + *err);
  }
  std::vector<std::pair<Name, Name>> renaming;
  std::vector<std::pair<Name, Bit>> subs;
  for (auto& [a, v] : f.table()) {
    if (const Name* b = std::get_if<Name>(&v)) {
      renaming.push_back({a, *b});
    } else {
      subs.push_back({a, std::get<Bit>(v)});
    }
  }
  return Decomposition{FinPerm::from_partial_bijection(renaming), std::move(subs)};
}

/// Rebuilds the morphism a decomposition came from: apply the bit
/// generators one by one, then the renaming injection, then include into
/// the original codomain.
inline CubeMorphism recompose(const Decomposition& d, const NameSet& dom,
                              const NameSet& cod) {
  CubeMorphism acc = identity(dom);
  NameSet cur = dom;
  for (auto& [a, i] : d.substitutions) {
    acc = compose(generator_subst(cur, a, i), acc);
    cur = cur.without(a);
  }
  acc = compose(injection_from_perm(d.perm, cur), acc);
  return compose(inclusion(d.perm.apply(cur), cod), acc);
}

/// All morphisms A -> B, duplicate-free, in a fixed deterministic order:
/// name-part subsets of A by bitmask, then images in B lexicographically,
/// then bit assignments by bitmask.
inline std::vector<CubeMorphism> enumerate_morphisms(const NameSet& A, const NameSet& B) {
  const std::vector<Name>& as = A.elems();
  const std::vector<Name>& bs = B.elems();
  const std::size_t m = as.size();
  if (m > 16) throw std::invalid_argument("enumerate_morphisms: domain too large");

  std::vector<CubeMorphism> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<Name> namePart, bitPart;
    for (std::size_t k = 0; k < m; ++k) {
      ((mask >> k) & 1u) ? namePart.push_back(as[k]) : bitPart.push_back(as[k]);
    }
    if (namePart.size() > bs.size()) continue;

    // All injections namePart -> B: choose an ordered arrangement of
    // distinct targets, lexicographic in the target indices.
    std::vector<std::size_t> pick(namePart.size(), 0);
    std::vector<std::vector<std::size_t>> arrangements;
    std::vector<bool> used(bs.size(), false);
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
      if (depth == namePart.size()) {
        arrangements.push_back(cur);
        return;
      }
      for (std::size_t j = 0; j < bs.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        cur.push_back(j);
        self(self, depth + 1);
        cur.pop_back();
        used[j] = false;
      }
    };
    rec(rec, 0);

    for (const auto& arr : arrangements) {
      for (std::uint32_t bits = 0; bits < (1u << bitPart.size()); ++bits) {
        CubeMorphism::Table t;
        for (std::size_t k = 0; k < namePart.size(); ++k) {
          t.push_back({namePart[k], bs[arr[k]]});
        }
        for (std::size_t k = 0; k < bitPart.size(); ++k) {
          t.push_back({bitPart[k], ((bits >> k) & 1u) ? Bit::one : Bit::zero});
        }
        out.push_back(CubeMorphism(A, B, std::move(t)));
      }
    }
  }
  return out;
}

/// All subsets of `universe` with at most `max_size` elements, smallest
/// first within a fixed order.
inline std::vector<NameSet> enumerate_objects(const NameSet& universe,
                                              std::size_t max_size) {
  const auto& ns = universe.elems();
  if (ns.size() > 16) throw std::invalid_argument("enumerate_objects: universe too large");
  std::vector<NameSet> out;
  for (std::uint32_t mask = 0; mask < (1u << ns.size()); ++mask) {
    std::vector<Name> sub;
    for (std::size_t k = 0; k < ns.size(); ++k) {
      if ((mask >> k) & 1u) sub.push_back(ns[k]);
    }
    if (sub.size() <= max_size) out.push_back(NameSet(std::move(sub)));
  }
  std::sort(out.begin(), out.end(), [](const NameSet& a, const NameSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

inline std::string to_string(const CubeMorphism::Value& v) {
  if (const Name* b = std::get_if<Name>(&v)) return to_string(*b);
  return to_string(std::get<Bit>(v));
}

/// Canonical form: "{a0,a1} -> {a2} : a0=>a2, a1=>0"; the assignment part
/// is omitted when the domain is empty.
inline std::string to_string(const CubeMorphism& f) {
  std::string out = to_string(f.dom()) + " -> " + to_string(f.cod());
  if (f.table().empty()) return out;
  out += " : ";
  bool first = true;
  for (auto& [a, v] : f.table()) {
    if (!first) out += ", ";
    out += to_string(a) + "=>" + to_string(v);
    first = false;
  }
  return out;
}

namespace detail {

inline CubeMorphism parse_morphism(Scanner& sc) {
  NameSet dom = sc.parse_name_set();
  sc.expect('-', "arrow");
  sc.expect('>', "arrow");
  NameSet cod = sc.parse_name_set();
  CubeMorphism::Table t;
  if (sc.try_consume(':')) {
    if (!sc.eof()) {
      do {
        Name a = sc.parse_name();
        sc.expect('=', "assignment");
        sc.expect('>', "assignment");
        CubeMorphism::Value v;
        char c = sc.peek();
        if (c == '0' || c == '1') {
          v = sc.parse_bit();
        } else {
          v = sc.parse_name();
        }
        t.push_back({a, v});
      } while (sc.try_consume(','));
    }
  }
  CubeMorphism f(std::move(dom), std::move(cod), std::move(t));
  if (auto err = validity_error(f)) sc.fail("invalid morphism: " + *err);
  return f;
}

}  // namespace detail

inline CubeMorphism parse_morphism(std::string_view s) {
  detail::Scanner sc(s);
  CubeMorphism f = detail::parse_morphism(sc);
  sc.expect_end();
  return f;
}

}  // namespace cubenom
