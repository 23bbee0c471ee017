#pragma once

// Structured sets: a domain paired with a structure value built over it.
// The domain of a structured set is a set of atoms; a quasi-structured set
// relaxes that to arbitrary domain elements subject to four clauses that keep
// the domain elements acting like urelements:
//   1a  the empty set does not occur in the domain's transitive closure
//   1b  no domain element occurs below another (or itself)
//   2a  every atom below the structure occurs below the domain
//   2b  every value below the structure that is also below the domain reaches
//       the structure only through membership chains that pass the domain
// Under these clauses the bounded universe over the domain contains the
// structure, and relabelling the domain lifts uniquely through the structure.

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vstar/value.hpp"

namespace vstar {

struct StructuredSet {
  Val domain = nullptr;
  Val structure = nullptr;
  friend bool operator==(const StructuredSet&, const StructuredSet&) = default;
};

inline int compare(const StructuredSet& a, const StructuredSet& b) {
  if (int c = compare(a.domain, b.domain); c != 0) return c;
  return compare(a.structure, b.structure);
}

struct StructuredSetLess {
  bool operator()(const StructuredSet& a, const StructuredSet& b) const { return compare(a, b) < 0; }
};

inline std::string to_literal(const StructuredSet& s) {
  return to_literal(s.domain) + " ; " + to_literal(s.structure);
}

inline StructuredSet parse_structured(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) fail(Errc::Syntax, "expected '<domain> ; <structure>'");
  return {parse_literal(text.substr(0, semi)), parse_literal(text.substr(semi + 1))};
}

// ---- validity ----

struct StructuredVerdict {
  bool ok = false;           // domain is a set of atoms, atoms below the structure lie in it
  bool literal_ok = false;   // stricter reading: everything below the structure lies in the domain
  std::string violation;
  Val witness = nullptr;
};

inline StructuredVerdict check_structured(const StructuredSet& s) {
  StructuredVerdict v;
  if (!s.domain || !s.structure) {
    v.violation = "missing component";
    return v;
  }
  if (s.domain->is_atom()) {
    v.violation = "domain must be a set";
    return v;
  }
  for (Val m : s.domain->members())
    if (!m->is_atom()) {
      v.violation = "domain member is not an atom: " + to_literal(m);
      v.witness = m;
      return v;
    }
  v.ok = true;
  v.literal_ok = true;
  std::vector<Val> closure = trcl_members(set_of({s.structure}));
  std::sort(closure.begin(), closure.end(), ValLess{});
  for (Val t : closure) {
    if (mem(t, s.domain)) continue;
    // the strict reading asks for the whole closure inside the domain; the
    // adopted reading only constrains the atoms in it
    v.literal_ok = false;
    if (t->is_atom() && v.ok) {
      v.ok = false;
      v.violation = "atom below the structure is outside the domain: " + to_literal(t);
      v.witness = t;
    }
  }
  return v;
}

struct QuasiVerdict {
  bool ok = false;
  std::string clause;  // "1a", "1b", "2a", "2b" when violated
  std::string detail;
  std::vector<Val> witness_path;  // membership chain avoiding the domain, for 2b
};

namespace detail {

// d is below B when d occurs in the transitive closure of some member of B
inline std::unordered_set<Val> below_set(Val domain) {
  std::unordered_set<Val> below;
  for (Val e : domain->members())
    for (Val t : trcl_members(e)) below.insert(t);
  return below;
}

}  // namespace detail

inline QuasiVerdict check_quasi(const StructuredSet& s) {
  QuasiVerdict v;
  if (!s.domain || !s.structure) {
    v.clause = "1a";
    v.detail = "missing component";
    return v;
  }
  if (s.domain->is_atom()) {
    v.clause = "1a";
    v.detail = "domain must be a set";
    return v;
  }
  auto below = detail::below_set(s.domain);
  if (below.count(empty_set()) || mem(empty_set(), s.domain)) {
    v.clause = "1a";
    v.detail = "empty set occurs in the domain's transitive closure";
    return v;
  }
  for (Val e : s.domain->members())
    if (below.count(e)) {
      v.clause = "1b";
      v.detail = "domain element occurs below another: " + to_literal(e);
      return v;
    }
  // walk the structure's closure once, tracking domain membership
  std::unordered_set<Val> dom(s.domain->members().begin(), s.domain->members().end());
  for (Val t : trcl_members(set_of({s.structure}))) {
    if (t->is_atom() && !below.count(t) && !dom.count(t)) {
      v.clause = "2a";
      v.detail = "atom below the structure is not below the domain: " + to_literal(t);
      return v;
    }
  }
  // 2b: search for a membership chain from some below-domain value up to the
  // structure that never meets a domain element. The length-zero chain counts:
  // if the structure itself sits below the domain it must be a domain element,
  // otherwise no chain through the domain witnesses it. BFS downward from the
  // structure through members, refusing to step into domain elements.
  if (!dom.count(s.structure)) {
    if (below.count(s.structure)) {
      v.clause = "2b";
      v.detail = "structure lies below the domain without being a domain element";
      v.witness_path = {s.structure};
      return v;
    }
    std::unordered_map<Val, Val> parent;  // child -> the set it was reached from
    std::vector<Val> frontier = {s.structure};
    std::unordered_set<Val> seen = {s.structure};
    std::vector<Val> offenders;
    while (!frontier.empty()) {
      std::vector<Val> next;
      for (Val x : frontier)
        for (Val m : x->members()) {
          if (dom.count(m) || seen.count(m)) continue;
          seen.insert(m);
          parent.emplace(m, x);
          next.push_back(m);
          if (below.count(m)) offenders.push_back(m);
        }
      frontier = std::move(next);
    }
    if (!offenders.empty()) {
      std::sort(offenders.begin(), offenders.end(), ValLess{});
      Val d = offenders.front();
      v.clause = "2b";
      v.detail = "membership chain from " + to_literal(d) + " avoids the domain";
      std::vector<Val> path = {d};
      for (Val cur = d; cur != s.structure;) {
        cur = parent.at(cur);
        path.push_back(cur);
      }
      v.witness_path = std::move(path);
      return v;
    }
  }
  v.ok = true;
  return v;
}

inline StructuredSet make_quasi(Val domain, Val structure) {
  StructuredSet s{domain, structure};
  auto v = check_quasi(s);
  if (!v.ok) fail(Errc::InvalidInput, "invalid quasi-structured set (clause " + v.clause + "): " + v.detail);
  return s;
}

// ---- the bounded universe over a domain ----

// x lies in the universe generated over the domain's elements: domain
// elements count as urelements, atoms outside the domain are excluded, and a
// set qualifies when all its members do.
inline bool in_universe(Val x, Val domain, std::unordered_map<Val, bool>* memo = nullptr) {
  std::unordered_map<Val, bool> local;
  auto& m = memo ? *memo : local;
  if (mem(x, domain)) return true;
  auto it = m.find(x);
  if (it != m.end()) return it->second;
  bool ok;
  if (x->is_atom()) {
    ok = false;
  } else {
    ok = true;
    for (Val k : x->members())
      if (!mem(k, domain) && !in_universe(k, domain, &m)) {
        ok = false;
        break;
      }
  }
  m.emplace(x, ok);
  return ok;
}

// the members of a set value that are visible inside the bounded universe
inline std::vector<Val> members_in_universe(Val x, Val domain, std::unordered_map<Val, bool>* memo = nullptr) {
  std::vector<Val> out;
  if (x->is_atom()) return out;
  for (Val m : x->members())
    if (in_universe(m, domain, memo)) out.push_back(m);
  return out;
}

// domain elements plus the universe-visible part of the structure's closure
inline std::vector<Val> field_members(const StructuredSet& s) {
  auto verdict = check_quasi(s);
  if (!verdict.ok)
    fail(Errc::InvalidInput, "field of an invalid quasi-structured set (clause " + verdict.clause + ")");
  std::unordered_map<Val, bool> memo;
  std::vector<Val> out(s.domain->members().begin(), s.domain->members().end());
  std::unordered_set<Val> seen(out.begin(), out.end());
  std::vector<Val> closure = trcl_members(set_of({s.structure}));
  std::sort(closure.begin(), closure.end(), ValLess{});
  for (Val t : closure)
    if (!seen.count(t) && in_universe(t, s.domain, &memo)) {
      seen.insert(t);
      out.push_back(t);
    }
  return out;
}

inline Val field(const StructuredSet& s) { return set_of(field_members(s)); }

// ---- maps on domain elements and their lifts ----

// finite map between domain-element lists; serializes as `from->to` pairs
struct DomainMap {
  std::vector<std::pair<Val, Val>> pairs;

  DomainMap() = default;
  explicit DomainMap(std::vector<std::pair<Val, Val>> p) : pairs(std::move(p)) { normalize(); }
  DomainMap(std::initializer_list<std::pair<Val, Val>> p) : pairs(p) { normalize(); }

  void normalize() {
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  }

  std::optional<Val> lookup(Val x) const {
    for (auto& [f, t] : pairs)
      if (f == x) return t;
    return std::nullopt;
  }

  Val domain_set() const {
    std::vector<Val> ks;
    for (auto& [f, t] : pairs) ks.push_back(f);
    return set_of(std::move(ks));
  }

  Val range_set() const {
    std::vector<Val> ks;
    for (auto& [f, t] : pairs) ks.push_back(t);
    return set_of(std::move(ks));
  }

  bool injective() const { return range_set()->size() == pairs.size(); }

  DomainMap inverse() const {
    std::vector<std::pair<Val, Val>> inv;
    for (auto& [f, t] : pairs) inv.emplace_back(t, f);
    return DomainMap(std::move(inv));
  }

  // (g after f)(x) = g(f(x))
  friend DomainMap compose(const DomainMap& g, const DomainMap& f) {
    std::vector<std::pair<Val, Val>> out;
    for (auto& [x, y] : f.pairs) {
      auto z = g.lookup(y);
      if (!z) fail(Errc::IncompleteMap, "composition leaves the first map's range");
      out.emplace_back(x, *z);
    }
    return DomainMap(std::move(out));
  }

  friend bool operator==(const DomainMap&, const DomainMap&) = default;
};

inline std::string to_literal(const DomainMap& m) {
  std::string out;
  for (auto& [f, t] : m.pairs) {
    if (!out.empty()) out += ", ";
    out += to_literal(f) + "->" + to_literal(t);
  }
  return out;
}

inline DomainMap parse_domain_map(std::string_view text) {
  std::vector<std::pair<Val, Val>> pairs;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    auto arrow = text.find("->", pos);
    if (arrow == std::string_view::npos) fail(Errc::Syntax, "expected '->' in map literal");
    Val from = parse_literal(text.substr(pos, arrow - pos));
    pos = arrow + 2;
    auto comma = text.find(',', pos);
    std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    Val to = parse_literal(text.substr(pos, end - pos));
    pairs.emplace_back(from, to);
    pos = comma == std::string_view::npos ? text.size() : comma + 1;
    skip_ws();
  }
  return DomainMap(std::move(pairs));
}

// f+ : pure values are fixed, mapped domain elements are replaced, other sets
// are rebuilt memberwise. Unmapped atoms cannot be lifted.
inline Val lift_value(const DomainMap& f, Val x, std::unordered_map<Val, Val>* memo = nullptr) {
  std::unordered_map<Val, Val> local;
  auto& m = memo ? *memo : local;
  if (is_pure(x)) return x;
  if (auto y = f.lookup(x)) return *y;
  auto it = m.find(x);
  if (it != m.end()) return it->second;
  if (x->is_atom()) fail(Errc::IncompleteMap, "atom not covered by the map: " + to_literal(x));
  std::vector<Val> kids;
  kids.reserve(x->size());
  for (Val k : x->members()) kids.push_back(lift_value(f, k, &m));
  Val out = set_of(std::move(kids));
  m.emplace(x, out);
  return out;
}

// the lift of f over a source's field, reported pointwise
inline std::vector<std::pair<Val, Val>> lift(const DomainMap& f, const StructuredSet& src) {
  for (Val e : src.domain->members())
    if (!f.lookup(e)) fail(Errc::IncompleteMap, "map misses domain element " + to_literal(e));
  std::unordered_map<Val, Val> memo;
  std::vector<std::pair<Val, Val>> out;
  for (Val x : field_members(src)) out.emplace_back(x, lift_value(f, x, &memo));
  return out;
}

inline StructuredSet apply_map(const DomainMap& f, const StructuredSet& src) {
  std::unordered_map<Val, Val> memo;
  std::vector<Val> dom;
  for (Val e : src.domain->members()) {
    auto y = f.lookup(e);
    if (!y) fail(Errc::IncompleteMap, "map misses domain element " + to_literal(e));
    dom.push_back(*y);
  }
  return {set_of(std::move(dom)), lift_value(f, src.structure, &memo)};
}

// f is an isomorphism when it bijects the domains and its lift carries the
// source structure exactly onto the target structure
inline bool is_isomorphism(const DomainMap& f, const StructuredSet& a, const StructuredSet& b) {
  if (f.pairs.size() != a.domain->size()) return false;
  if (f.domain_set() != a.domain) return false;
  if (!f.injective()) return false;
  if (f.range_set() != b.domain) return false;
  std::unordered_map<Val, Val> memo;
  return lift_value(f, a.structure, &memo) == b.structure;
}

namespace detail {

template <typename Fn>
inline void for_each_bijection(const std::vector<Val>& from, const std::vector<Val>& to, Fn&& fn) {
  if (from.size() != to.size()) return;
  std::vector<std::size_t> idx(to.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  do {
    std::vector<std::pair<Val, Val>> pairs;
    pairs.reserve(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) pairs.emplace_back(from[i], to[idx[i]]);
    if (!fn(DomainMap(std::move(pairs)))) return;
  } while (std::next_permutation(idx.begin(), idx.end()));
}

}  // namespace detail

inline std::vector<DomainMap> all_isomorphisms(const StructuredSet& a, const StructuredSet& b,
                                               std::size_t domain_cap = 8) {
  std::vector<DomainMap> out;
  if (a.domain->size() != b.domain->size()) return out;
  if (a.domain->size() > domain_cap) fail(Errc::BoundExceeded, "domain too large for isomorphism search");
  std::vector<Val> from(a.domain->members().begin(), a.domain->members().end());
  std::vector<Val> to(b.domain->members().begin(), b.domain->members().end());
  detail::for_each_bijection(from, to, [&](DomainMap f) {
    if (is_isomorphism(f, a, b)) out.push_back(std::move(f));
    return true;
  });
  return out;
}

inline std::optional<DomainMap> find_isomorphism(const StructuredSet& a, const StructuredSet& b,
                                                 std::size_t domain_cap = 8) {
  std::optional<DomainMap> found;
  if (a.domain->size() != b.domain->size()) return found;
  if (a.domain->size() > domain_cap) fail(Errc::BoundExceeded, "domain too large for isomorphism search");
  std::vector<Val> from(a.domain->members().begin(), a.domain->members().end());
  std::vector<Val> to(b.domain->members().begin(), b.domain->members().end());
  detail::for_each_bijection(from, to, [&](DomainMap f) {
    if (is_isomorphism(f, a, b)) {
      found = std::move(f);
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace vstar
