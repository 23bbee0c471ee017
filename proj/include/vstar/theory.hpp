#pragma once

// Theory catalog: named sentences plus, per theory, an independent native
// checker (no evaluator involved) and an exhaustive candidate enumerator for
// small atom domains. Model listing always filters candidates through the
// formula; the natives exist so tests can cross-check the two routes.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "vstar/defs_text.hpp"
#include "vstar/eval.hpp"
#include "vstar/parser.hpp"

namespace vstar {

struct Theory {
  std::string name;
  FormulaPtr formula;
  std::function<bool(const StructuredSet&)> native;
  // all candidate structures over exactly this atom domain, within the
  // declared size bound; a superset of the models
  std::function<std::vector<StructuredSet>(Val)> candidates;
};

struct ModelSet {
  Val domain = nullptr;
  std::vector<StructuredSet> models;
};

// quasi-validity plus formula truth; evaluation errors raised by projections
// or rational decoding on misshapen structures count as "not a model",
// resource errors still propagate
inline bool satisfies(const Theory& t, const StructuredSet& s, const EvalOptions& opt = {}) {
  if (!check_quasi(s).ok) return false;
  try {
    Truth r = eval_formula(t.formula, s, opt);
    if (r == Truth::Unknown)
      fail(Errc::RankCapExceeded, "theory " + t.name + " undecided within rank caps");
    return r == Truth::True;
  } catch (const Error& e) {
    switch (e.code) {
      case Errc::NoWitness:
      case Errc::MultipleWitnesses:
      case Errc::NotAPair:
      case Errc::NotANat:
      case Errc::NotARational:
      case Errc::NotAFunction:
        return false;
      default:
        throw;
    }
  }
}

inline ModelSet model_set(const Theory& t, Val domain, const EvalOptions& opt = {}) {
  if (!t.candidates)
    fail(Errc::UnsupportedTheory, "theory " + t.name + " has no enumerator");
  ModelSet out;
  out.domain = domain;
  for (const StructuredSet& c : t.candidates(domain))
    if (satisfies(t, c, opt)) out.models.push_back(c);
  std::sort(out.models.begin(), out.models.end(), StructuredSetLess{});
  return out;
}

namespace detail {

inline std::vector<Val> atoms_of(Val domain) {
  if (!domain || domain->is_atom())
    fail(Errc::InvalidInput, "enumeration needs a set of atoms as domain");
  std::vector<Val> out(domain->members().begin(), domain->members().end());
  for (Val a : out)
    if (!a->is_atom()) fail(Errc::InvalidInput, "enumeration needs an atom domain");
  return out;  // canonical member order
}

inline std::vector<Val> all_subsets(const std::vector<Val>& base) {
  if (base.size() > 16) fail(Errc::BoundExceeded, "subset space too large");
  std::vector<Val> out;
  out.reserve(std::size_t{1} << base.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << base.size()); ++mask) {
    std::vector<Val> kids;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (mask & (std::size_t{1} << i)) kids.push_back(base[i]);
    out.push_back(set_of(std::move(kids)));
  }
  return out;
}

// ---- native checkers (independent of the evaluator) ----

inline bool family_of_subsets(Val fam, Val domain) {
  if (fam->is_atom()) return false;
  for (Val m : fam->members())
    if (m->is_atom() || !subset_of(m, domain)) return false;
  return true;
}

inline bool native_top(const StructuredSet& s) {
  Val fam = s.structure;
  if (!family_of_subsets(fam, s.domain)) return false;
  if (!mem(empty_set(), fam) || !mem(s.domain, fam)) return false;
  for (Val x : fam->members())
    for (Val y : fam->members()) {
      if (!mem(set_intersect(x, y), fam)) return false;
      if (!mem(set_union(x, y), fam)) return false;  // pairwise suffices finitely
    }
  return true;
}

inline bool native_nei(const StructuredSet& s) {
  std::vector<Val> atoms;
  try {
    atoms = atoms_of(s.domain);
  } catch (const Error&) {
    return false;
  }
  std::map<Val, Val, ValLess> nbhd;
  if (s.structure->is_atom()) return false;
  for (Val p : s.structure->members()) {
    Val y = nullptr, f = nullptr;
    try {
      std::tie(y, f) = kpair_decode(p);
    } catch (const Error&) {
      return false;
    }
    if (!mem(y, s.domain) || f->is_atom()) return false;
    if (!nbhd.emplace(y, f).second) return false;  // not a function
  }
  if (nbhd.size() != atoms.size()) return false;
  std::vector<Val> subs = all_subsets(atoms);
  for (auto [y, f] : nbhd) {
    if (!family_of_subsets(f, s.domain)) return false;
    if (!mem(s.domain, f)) return false;
    for (Val z : f->members()) {
      if (!mem(y, z)) return false;
      for (Val w : subs)
        if (subset_of(z, w) && !mem(w, f)) return false;
      for (Val w : f->members())
        if (!mem(set_intersect(z, w), f)) return false;
    }
    // open-core axiom: inside every neighborhood sits one that neighbors
    // each of its own points
    for (Val z : f->members()) {
      bool has_core = false;
      for (Val o : f->members()) {
        if (!subset_of(o, z)) continue;
        bool open_everywhere = true;
        for (Val w : o->members()) {
          auto it = nbhd.find(w);
          if (it == nbhd.end() || !mem(o, it->second)) {
            open_everywhere = false;
            break;
          }
        }
        if (open_everywhere) {
          has_core = true;
          break;
        }
      }
      if (!has_core) return false;
    }
  }
  return true;
}

struct BoolOps {
  std::map<std::pair<Val, Val>, Val> meet, join;
  std::map<Val, Val> neg;
  Val top = nullptr, bot = nullptr;
};

inline bool decode_bool(const StructuredSet& s, BoolOps& ops) {
  Val m, rest, j, n;
  try {
    std::tie(m, rest) = kpair_decode(s.structure);
    std::tie(j, rest) = kpair_decode(rest);
    std::tie(n, rest) = kpair_decode(rest);
    std::tie(ops.top, ops.bot) = kpair_decode(rest);
    FunctionView fm(m), fj(j), fn(n);
    for (const auto& [k, v] : fm.entries()) {
      auto [x, y] = kpair_decode(k);
      if (!mem(x, s.domain) || !mem(y, s.domain) || !mem(v, s.domain)) return false;
      ops.meet[{x, y}] = v;
    }
    for (const auto& [k, v] : fj.entries()) {
      auto [x, y] = kpair_decode(k);
      if (!mem(x, s.domain) || !mem(y, s.domain) || !mem(v, s.domain)) return false;
      ops.join[{x, y}] = v;
    }
    for (const auto& [k, v] : fn.entries()) {
      if (!mem(k, s.domain) || !mem(v, s.domain)) return false;
      ops.neg[k] = v;
    }
  } catch (const Error&) {
    return false;
  }
  if (!mem(ops.top, s.domain) || !mem(ops.bot, s.domain)) return false;
  auto n_elems = s.domain->size();
  if (ops.meet.size() != n_elems * n_elems || ops.join.size() != n_elems * n_elems ||
      ops.neg.size() != n_elems)
    return false;
  return true;
}

inline bool native_bool(const StructuredSet& s) {
  BoolOps o;
  if (!decode_bool(s, o)) return false;
  if (o.top == o.bot) return false;
  auto members = s.domain->members();
  auto mt = [&](Val a, Val b) { return o.meet.at({a, b}); };
  auto jn = [&](Val a, Val b) { return o.join.at({a, b}); };
  for (Val x : members) {
    if (mt(x, o.top) != x || jn(x, o.bot) != x) return false;
    if (mt(x, o.neg.at(x)) != o.bot || jn(x, o.neg.at(x)) != o.top) return false;
    for (Val y : members) {
      if (mt(x, y) != mt(y, x) || jn(x, y) != jn(y, x)) return false;
      if (jn(x, mt(x, y)) != x || mt(x, jn(x, y)) != x) return false;
      if (mt(x, y) == o.bot && jn(x, y) == o.top && y != o.neg.at(x)) return false;
      for (Val z : members) {
        if (mt(mt(x, y), z) != mt(x, mt(y, z))) return false;
        if (jn(jn(x, y), z) != jn(x, jn(y, z))) return false;
        if (mt(x, jn(y, z)) != jn(mt(x, y), mt(x, z))) return false;
      }
    }
  }
  return true;
}

inline bool native_discrete(const StructuredSet& s) {
  try {
    return s.structure == powerset(s.domain);
  } catch (const Error&) {
    return false;
  }
}

inline bool native_metric_graph(Val graph, Val domain) {
  if (graph->is_atom()) return false;
  std::map<std::pair<Val, Val>, Rat> dist;
  try {
    for (Val p : graph->members()) {
      auto [q, r] = kpair_decode(p);
      auto [x, y] = kpair_decode(q);
      if (!mem(x, domain) || !mem(y, domain)) return false;
      if (!dist.emplace(std::pair{x, y}, rat_decode(r)).second) return false;
    }
  } catch (const Error&) {
    return false;
  }
  auto members = domain->members();
  if (dist.size() != members.size() * members.size()) return false;
  for (Val x : members)
    for (Val y : members) {
      Rat v = dist.at({x, y});
      if ((v.num == 0) != (x == y)) return false;
      if (!(v == dist.at({y, x}))) return false;
      if (v.num < 0) return false;
      for (Val z : members) {
        Rat lhs = dist.at({x, z});
        if (!rat_le(lhs, rat_add(dist.at({x, y}), dist.at({y, z})))) return false;
      }
    }
  return true;
}

inline bool native_metr(const StructuredSet& s) {
  return native_metric_graph(s.structure, s.domain);
}

inline bool native_topmet(const StructuredSet& s) {
  try {
    auto [t, m] = kpair_decode(s.structure);
    return t == powerset(s.domain) && native_metric_graph(m, s.domain);
  } catch (const Error&) {
    return false;
  }
}

inline bool native_set1(const StructuredSet& s) {
  return s.domain->size() == 1 && s.structure == empty_set();
}

inline bool native_set2(const StructuredSet& s) {
  return s.domain->size() == 2 && s.structure == empty_set();
}

inline bool native_pset2(const StructuredSet& s) {
  return s.domain->size() == 2 && mem(s.structure, s.domain);
}

inline bool native_subsets(const StructuredSet& s) {
  return s.structure->is_set() && subset_of(s.structure, s.domain);
}

// ---- candidate enumerators ----

inline std::vector<StructuredSet> family_candidates(Val domain) {
  auto atoms = atoms_of(domain);
  if (atoms.size() > 3)
    fail(Errc::BoundExceeded, "family-space enumeration is capped at 3 atoms");
  std::vector<StructuredSet> out;
  for (Val fam : all_subsets(all_subsets(atoms))) out.push_back({domain, fam});
  return out;
}

inline std::vector<StructuredSet> nei_candidates(Val domain) {
  auto atoms = atoms_of(domain);
  if (atoms.size() > 3)
    fail(Errc::BoundExceeded, "neighborhood enumeration is capped at 3 atoms");
  std::vector<Val> subs = all_subsets(atoms);
  // per-point prefilter: families through y that pass the filter axioms;
  // the remaining core axiom is left to the formula
  std::vector<std::vector<Val>> per_point;
  for (Val y : atoms) {
    std::vector<Val> fams;
    for (Val f : all_subsets(subs)) {
      bool ok = mem(domain, f);
      for (std::size_t zi = 0; ok && zi < f->size(); ++zi) {
        Val z = f->members()[zi];
        if (!mem(y, z)) ok = false;
        for (Val w : subs)
          if (subset_of(z, w) && !mem(w, f)) ok = false;
        for (Val w : f->members())
          if (!mem(set_intersect(z, w), f)) ok = false;
      }
      if (ok) fams.push_back(f);
    }
    per_point.push_back(std::move(fams));
  }
  std::vector<StructuredSet> out;
  std::vector<std::size_t> idx(atoms.size(), 0);
  while (true) {
    std::vector<Val> graph;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      graph.push_back(kpair(atoms[i], per_point[i][idx[i]]));
    out.push_back({domain, set_of(std::move(graph))});
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == per_point[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

// every finite boolean algebra is a relabeling of the powerset algebra on
// its atom count, so bijections from the canonical algebra exhaust the
// structure space; the formula filter still re-checks every candidate
inline std::vector<StructuredSet> bool_candidates(Val domain) {
  auto atoms = atoms_of(domain);
  std::size_t k = atoms.size();
  if (k > 4) fail(Errc::BoundExceeded, "boolean-algebra enumeration is capped at 4 atoms");
  std::vector<StructuredSet> out;
  if ((k & (k - 1)) != 0) return out;  // not a power of two: no candidates
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  std::set<Val, ValLess> seen;
  do {
    // element i of the canonical algebra is the bitmask i; ops are bitwise
    std::vector<Val> mg, jg, ng;
    for (std::size_t a = 0; a < k; ++a) {
      ng.push_back(kpair(atoms[perm[a]], atoms[perm[~a & (k - 1)]]));
      for (std::size_t b = 0; b < k; ++b) {
        Val key = kpair(atoms[perm[a]], atoms[perm[b]]);
        mg.push_back(kpair(key, atoms[perm[a & b]]));
        jg.push_back(kpair(key, atoms[perm[a | b]]));
      }
    }
    Val tuple = kpair(set_of(std::move(mg)),
                      kpair(set_of(std::move(jg)),
                            kpair(set_of(std::move(ng)),
                                  kpair(atoms[perm[k - 1]], atoms[perm[0]]))));
    if (seen.insert(tuple).second) out.push_back({domain, tuple});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline Val metric_graph(const std::vector<Val>& atoms,
                        const std::map<std::pair<std::size_t, std::size_t>, Rat>& off_diag) {
  std::vector<Val> entries;
  Val zero = rat_encode({0, 1});
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    entries.push_back(kpair(kpair(atoms[i], atoms[i]), zero));
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      Val r = rat_encode(off_diag.at({i, j}));
      entries.push_back(kpair(kpair(atoms[i], atoms[j]), r));
      entries.push_back(kpair(kpair(atoms[j], atoms[i]), r));
    }
  }
  return set_of(std::move(entries));
}

inline std::vector<Val> metric_graphs(Val domain, const std::vector<Rat>& pool) {
  auto atoms = atoms_of(domain);
  if (atoms.size() > 4) fail(Errc::BoundExceeded, "metric enumeration is capped at 4 atoms");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j) pairs.emplace_back(i, j);
  std::vector<Val> out;
  std::vector<std::size_t> idx(pairs.size(), 0);
  while (true) {
    std::map<std::pair<std::size_t, std::size_t>, Rat> assign;
    for (std::size_t p = 0; p < pairs.size(); ++p) assign[pairs[p]] = pool[idx[p]];
    out.push_back(metric_graph(atoms, assign));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == pool.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

inline const std::vector<Rat>& default_rat_pool() {
  static const std::vector<Rat> pool = {{1, 1}, {2, 1}};
  return pool;
}

inline std::vector<StructuredSet> metr_candidates(Val domain) {
  std::vector<StructuredSet> out;
  for (Val g : metric_graphs(domain, default_rat_pool())) out.push_back({domain, g});
  return out;
}

inline std::vector<StructuredSet> topmet_candidates(Val domain) {
  std::vector<StructuredSet> out;
  Val top = powerset(domain);
  for (Val g : metric_graphs(domain, default_rat_pool()))
    out.push_back({domain, kpair(top, g)});
  return out;
}

inline std::vector<StructuredSet> bare_candidates(Val domain) {
  (void)atoms_of(domain);
  return {{domain, empty_set()}};
}

inline std::vector<StructuredSet> pointed_candidates(Val domain) {
  std::vector<StructuredSet> out;
  for (Val a : atoms_of(domain)) out.push_back({domain, a});
  return out;
}

inline std::vector<StructuredSet> subset_candidates(Val domain) {
  std::vector<StructuredSet> out;
  for (Val sub : all_subsets(atoms_of(domain))) out.push_back({domain, sub});
  return out;
}

inline std::map<std::string, Theory> build_theories() {
  DefFile defs = parse_defs(theory_defs_text());
  std::map<std::string, Theory> out;
  for (const TheoryDecl& d : defs.theories) {
    Theory t;
    t.name = d.name;
    t.formula = d.formula;
    out.emplace(d.name, std::move(t));
  }
  auto wire = [&](const std::string& name, auto native, auto cands) {
    auto it = out.find(name);
    if (it == out.end()) fail(Errc::Internal, "theory " + name + " missing from definitions");
    it->second.native = native;
    it->second.candidates = cands;
  };
  wire("top", native_top, family_candidates);
  wire("nei", native_nei, nei_candidates);
  wire("bool", native_bool, bool_candidates);
  wire("stone", native_discrete, family_candidates);
  wire("metrble", native_discrete, family_candidates);
  wire("metr", native_metr, metr_candidates);
  wire("topmet", native_topmet, topmet_candidates);
  wire("set1", native_set1, bare_candidates);
  wire("set2", native_set2, bare_candidates);
  wire("pset2", native_pset2, pointed_candidates);
  wire("subsets", native_subsets, subset_candidates);
  return out;
}

}  // namespace detail

inline const std::map<std::string, Theory>& theories() {
  static const std::map<std::string, Theory> reg = detail::build_theories();
  return reg;
}

inline const Theory& theory(const std::string& name) {
  const auto& reg = theories();
  auto it = reg.find(name);
  if (it == reg.end()) fail(Errc::UnsupportedTheory, "unknown theory '" + name + "'");
  return it->second;
}

inline std::vector<std::string> theory_names() {
  std::vector<std::string> out;
  for (const auto& [name, t] : theories()) out.push_back(name);
  return out;
}

// atoms 1..n, the default domains for enumeration and samples
inline Val default_domain(int n) {
  std::vector<Val> atoms;
  for (int i = 1; i <= n; ++i) atoms.push_back(atom(i));
  return set_of(std::move(atoms));
}

}  // namespace vstar
