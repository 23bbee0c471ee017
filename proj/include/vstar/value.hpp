#pragma once

// Hereditarily finite sets over a supply of atoms, interned into a shared
// immutable DAG. Values are canonical: set members are sorted by the global
// order (atoms before sets, atoms by id, sets lexicographically by member
// sequence) and deduplicated, so two values are equal iff they are the same
// node. All operations are pure; the store is append-only.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace vstar {

enum class Errc {
  Syntax,
  Scope,
  NotAPair,
  NotANat,
  NotARational,
  NotAFunction,
  NoWitness,
  MultipleWitnesses,
  RankCapExceeded,
  IncompleteMap,
  InvalidInput,
  BoundExceeded,
  TargetViolation,
  NotInjective,
  NotDomainPreserving,
  IncompleteCatalog,
  NotSimple,
  NotAQuasiDomain,
  UnsupportedTheory,
  Internal,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

class Value;
using Val = const Value*;

class Value {
public:
  bool is_atom() const { return atom_ >= 0; }
  bool is_set() const { return atom_ < 0; }
  long atom_id() const { return atom_; }
  std::span<const Val> members() const { return {kids_.data(), kids_.size()}; }
  std::size_t size() const { return kids_.size(); }
  // rank: 0 for atoms and the empty set, else 1 + max member rank
  int rank() const { return rank_; }
  // pure: no atom occurs in the transitive closure
  bool pure() const { return pure_; }

private:
  friend class Store;
  long atom_ = -1;
  std::vector<Val> kids_;
  int rank_ = 0;
  bool pure_ = true;
};

// Canonical total order. Not creation order: determined by ids and structure
// only, so it is stable across runs.
inline int compare(Val a, Val b) {
  if (a == b) return 0;
  if (a->is_atom() != b->is_atom()) return a->is_atom() ? -1 : 1;
  if (a->is_atom()) return a->atom_id() < b->atom_id() ? -1 : 1;
  auto ma = a->members(), mb = b->members();
  std::size_t n = std::min(ma.size(), mb.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(ma[i], mb[i]); c != 0) return c;
  if (ma.size() == mb.size()) return 0;
  return ma.size() < mb.size() ? -1 : 1;
}

struct ValLess {
  bool operator()(Val a, Val b) const { return compare(a, b) < 0; }
};

class Store {
public:
  Val atom(long id) {
    if (id < 0) fail(Errc::InvalidInput, "atom ids are nonnegative");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = atoms_.find(id);
    if (it != atoms_.end()) return it->second;
    Value v;
    v.atom_ = id;
    v.rank_ = 0;
    v.pure_ = false;
    nodes_.push_back(std::move(v));
    Val ref = &nodes_.back();
    atoms_.emplace(id, ref);
    return ref;
  }

  // children must already be interned; canonicalizes (sort + dedup) here
  Val set(std::vector<Val> kids) {
    std::sort(kids.begin(), kids.end(), ValLess{});
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sets_.find(kids);
    if (it != sets_.end()) return it->second;
    Value v;
    v.atom_ = -1;
    v.pure_ = true;
    for (Val k : kids) {
      v.rank_ = std::max(v.rank_, k->rank() + 1);
      v.pure_ = v.pure_ && k->pure();
    }
    v.kids_ = kids;
    nodes_.push_back(std::move(v));
    Val ref = &nodes_.back();
    sets_.emplace(std::move(kids), ref);
    return ref;
  }

  std::size_t node_count() const {
    std::lock_guard<std::mutex> lock(mu_);
    return nodes_.size();
  }

private:
  struct KidsHash {
    std::size_t operator()(const std::vector<Val>& ks) const {
      std::size_t h = 0x9e3779b97f4a7c15ull;
      for (Val k : ks) h = h * 1099511628211ull ^ reinterpret_cast<std::size_t>(k);
      return h;
    }
  };
  mutable std::mutex mu_;
  std::deque<Value> nodes_;
  std::unordered_map<long, Val> atoms_;
  std::unordered_map<std::vector<Val>, Val, KidsHash> sets_;
};

inline Store& store() {
  static Store s;
  return s;
}

inline Val atom(long id) { return store().atom(id); }
inline Val set_of(std::vector<Val> kids) { return store().set(std::move(kids)); }
inline Val empty_set() { return store().set({}); }

// membership: atoms have no members
inline bool mem(Val x, Val y) {
  if (y->is_atom()) return false;
  auto ms = y->members();
  return std::binary_search(ms.begin(), ms.end(), x, ValLess{});
}

inline bool subset_of(Val x, Val y) {
  if (x->is_atom() || y->is_atom()) return false;
  for (Val m : x->members())
    if (!mem(m, y)) return false;
  return true;
}

// everything reachable from x by one or more membership steps, as a set value
inline std::vector<Val> trcl_members(Val x) {
  std::vector<Val> out;
  if (x->is_atom()) return out;
  std::unordered_set<Val> seen;
  std::vector<Val> stack(x->members().begin(), x->members().end());
  while (!stack.empty()) {
    Val v = stack.back();
    stack.pop_back();
    if (!seen.insert(v).second) continue;
    out.push_back(v);
    for (Val m : v->members()) stack.push_back(m);
  }
  return out;
}

inline Val trcl(Val x) { return set_of(trcl_members(x)); }

// trcl({x}): x together with everything below it
inline Val trcl_with(Val x) { return trcl(set_of({x})); }

inline bool is_pure(Val x) { return x->pure(); }
inline int rank_of(Val x) { return x->rank(); }

inline Val set_union(Val a, Val b) {
  std::vector<Val> ks(a->members().begin(), a->members().end());
  ks.insert(ks.end(), b->members().begin(), b->members().end());
  return set_of(std::move(ks));
}

inline Val set_intersect(Val a, Val b) {
  std::vector<Val> ks;
  for (Val m : a->members())
    if (mem(m, b)) ks.push_back(m);
  return set_of(std::move(ks));
}

inline Val set_diff(Val a, Val b) {
  std::vector<Val> ks;
  for (Val m : a->members())
    if (!mem(m, b)) ks.push_back(m);
  return set_of(std::move(ks));
}

inline Val big_union(Val a) {
  std::vector<Val> ks;
  for (Val m : a->members())
    for (Val k : m->members()) ks.push_back(k);
  return set_of(std::move(ks));
}

// set of all subsets; guarded because it is exponential
inline Val powerset(Val a, std::size_t max_base = 20) {
  if (a->is_atom()) fail(Errc::InvalidInput, "powerset of an atom");
  auto ms = a->members();
  if (ms.size() > max_base) fail(Errc::BoundExceeded, "powerset base too large");
  std::vector<Val> subsets;
  subsets.reserve(std::size_t{1} << ms.size());
  for (std::size_t bits = 0; bits < (std::size_t{1} << ms.size()); ++bits) {
    std::vector<Val> ks;
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (bits & (std::size_t{1} << i)) ks.push_back(ms[i]);
    subsets.push_back(set_of(std::move(ks)));
  }
  return set_of(std::move(subsets));
}

// ---- ordered pairs (Kuratowski), naturals (von Neumann), rationals ----

inline Val kpair(Val x, Val y) { return set_of({set_of({x}), set_of({x, y})}); }

inline std::pair<Val, Val> kpair_decode(Val p) {
  if (p->is_atom()) fail(Errc::NotAPair, "atom is not a pair");
  auto ms = p->members();
  if (ms.size() == 1) {
    Val inner = ms[0];
    if (inner->is_atom() || inner->size() != 1) fail(Errc::NotAPair, "not of pair shape");
    Val x = inner->members()[0];
    return {x, x};
  }
  if (ms.size() == 2) {
    Val a = ms[0], b = ms[1];
    if (a->is_atom() || b->is_atom()) fail(Errc::NotAPair, "not of pair shape");
    Val sing = nullptr, two = nullptr;
    if (a->size() == 1 && b->size() == 2) { sing = a; two = b; }
    else if (a->size() == 2 && b->size() == 1) { sing = b; two = a; }
    else fail(Errc::NotAPair, "not of pair shape");
    Val x = sing->members()[0];
    if (!mem(x, two)) fail(Errc::NotAPair, "not of pair shape");
    Val y = two->members()[0] == x ? two->members()[1] : two->members()[0];
    return {x, y};
  }
  fail(Errc::NotAPair, "not of pair shape");
}

inline bool is_kpair(Val p) {
  try {
    kpair_decode(p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline Val nat_encode(unsigned long n) {
  Val v = empty_set();
  for (unsigned long i = 0; i < n; ++i) v = set_union(v, set_of({v}));
  return v;
}

inline unsigned long nat_decode(Val v) {
  if (v->is_atom()) fail(Errc::NotANat, "atom is not a natural");
  unsigned long n = v->size();
  if (v != nat_encode(n)) fail(Errc::NotANat, "not a von Neumann natural");
  return n;
}

inline bool is_nat(Val v) {
  return v->is_set() && v == nat_encode(v->size());
}

// Rationals in lowest terms with positive denominator. The numerator is
// folded sign-magnitude into a natural: 2|p| for p >= 0, 2|p|+1 for p < 0.
struct Rat {
  long long num = 0;
  long long den = 1;
  friend bool operator==(const Rat&, const Rat&) = default;
};

inline long long gcd_ll(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

inline Rat rat_normalize(Rat r) {
  if (r.den == 0) fail(Errc::NotARational, "zero denominator");
  if (r.den < 0) { r.num = -r.num; r.den = -r.den; }
  long long g = gcd_ll(r.num, r.den);
  if (g > 1) { r.num /= g; r.den /= g; }
  if (r.num == 0) r.den = 1;
  return r;
}

inline Val rat_encode(Rat r) {
  r = rat_normalize(r);
  unsigned long mag = static_cast<unsigned long>(r.num < 0 ? -r.num : r.num);
  unsigned long coded = 2 * mag + (r.num < 0 ? 1 : 0);
  return kpair(nat_encode(coded), nat_encode(static_cast<unsigned long>(r.den)));
}

inline Rat rat_decode(Val v) {
  Val n = nullptr, d = nullptr;
  try {
    auto [a, b] = kpair_decode(v);
    n = a;
    d = b;
  } catch (const Error&) {
    fail(Errc::NotARational, "not a rational encoding");
  }
  unsigned long coded, den;
  try {
    coded = nat_decode(n);
    den = nat_decode(d);
  } catch (const Error&) {
    fail(Errc::NotARational, "not a rational encoding");
  }
  if (den == 0) fail(Errc::NotARational, "zero denominator");
  Rat r{static_cast<long long>(coded / 2), static_cast<long long>(den)};
  if (coded % 2) r.num = -r.num;
  Rat norm = rat_normalize(r);
  if (rat_encode(norm) != v) fail(Errc::NotARational, "not in lowest terms");
  return norm;
}

inline Rat rat_add(Rat a, Rat b) { return rat_normalize({a.num * b.den + b.num * a.den, a.den * b.den}); }
inline bool rat_le(Rat a, Rat b) { return a.num * b.den <= b.num * a.den; }

// ---- set-encoded functions (sets of ordered pairs) ----

class FunctionView {
public:
  explicit FunctionView(Val f) {
    if (f->is_atom()) fail(Errc::NotAFunction, "atom is not a function");
    for (Val m : f->members()) {
      Val x = nullptr, y = nullptr;
      try {
        auto [a, b] = kpair_decode(m);
        x = a;
        y = b;
      } catch (const Error&) {
        fail(Errc::NotAFunction, "member is not an ordered pair");
      }
      auto [it, inserted] = map_.emplace(x, y);
      if (!inserted && it->second != y) fail(Errc::NotAFunction, "two images for one argument");
    }
  }

  std::optional<Val> lookup(Val x) const {
    auto it = map_.find(x);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  Val domain() const {
    std::vector<Val> ks;
    for (auto& [x, y] : map_) ks.push_back(x);
    return set_of(std::move(ks));
  }

  Val range() const {
    std::vector<Val> ks;
    for (auto& [x, y] : map_) ks.push_back(y);
    return set_of(std::move(ks));
  }

  std::size_t size() const { return map_.size(); }
  const std::unordered_map<Val, Val>& entries() const { return map_; }

private:
  std::unordered_map<Val, Val> map_;
};

inline FunctionView function_view(Val f) { return FunctionView(f); }

// ---- textual literals: atoms as @<id>, sets as {..} in canonical order ----

inline void literal_append(std::string& out, Val v) {
  if (v->is_atom()) {
    out += '@';
    out += std::to_string(v->atom_id());
    return;
  }
  out += '{';
  bool first = true;
  for (Val m : v->members()) {
    if (!first) out += ", ";
    first = false;
    literal_append(out, m);
  }
  out += '}';
}

inline std::string to_literal(Val v) {
  std::string out;
  literal_append(out, v);
  return out;
}

namespace detail {

struct LiteralParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
      ++pos;
  }

  [[noreturn]] void err(const std::string& what) {
    fail(Errc::Syntax, what + " at offset " + std::to_string(pos));
  }

  Val parse() {
    skip_ws();
    if (pos >= text.size()) err("unexpected end of literal");
    if (text[pos] == '@') {
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) err("expected atom id after '@'");
      return atom(std::stol(std::string(text.substr(start, pos - start))));
    }
    if (text[pos] == '{') {
      ++pos;
      std::vector<Val> kids;
      skip_ws();
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        return set_of({});
      }
      while (true) {
        kids.push_back(parse());
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == '}') {
          ++pos;
          return set_of(std::move(kids));
        }
        err("expected ',' or '}' in set literal");
      }
    }
    err("expected '@' or '{'");
  }
};

}  // namespace detail

inline Val parse_literal(std::string_view text) {
  detail::LiteralParser p{text};
  Val v = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) p.err("trailing input after literal");
  return v;
}

}  // namespace vstar
