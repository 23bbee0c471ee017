#pragma once

// Bounded set-language over a domain/structure pair: terms denote values in
// the universe generated over the domain, formulas are two-sorted-free with
// quantifiers bounded by terms. The only unbounded construct is a rank-capped
// existential, which powers the semi-decidable layer. Kernel rationals get
// two primitive operations (sum, order) so metric axioms stay expressible.

#include <memory>
#include <string>
#include <vector>

#include "vstar/value.hpp"

namespace vstar {

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class TermKind {
  DomainConst,   // D
  StructConst,   // d
  EmptySet,      // empty
  Var,
  Pow,
  BigUnion,
  Prod,
  Pair,
  NatLit,
  RatLit,
  RatSum,
  Sep,   // { var in a | body }
  The,   // the(var in a . body)
};

enum class FormulaKind {
  Eq,
  Mem,
  RatLe,
  Not,
  And,
  Or,
  Implies,
  Iff,
  ForallIn,   // forall var in t1 . f1
  ExistsIn,   // exists var in t1 . f1
  ExistsU,    // exists var [rank n] . f1
};

struct Term {
  TermKind kind;
  std::string var;       // Var name or binder
  TermPtr a, b;
  FormulaPtr body;       // Sep, The
  unsigned long nat = 0; // NatLit
  Rat rat;               // RatLit
};

struct Formula {
  FormulaKind kind;
  TermPtr t1, t2;
  FormulaPtr f1, f2;
  std::string var;
  std::optional<int> rank_cap;  // ExistsU override
};

// ---- constructors ----

inline TermPtr mk_term(Term t) { return std::make_shared<const Term>(std::move(t)); }
inline FormulaPtr mk_formula(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

inline TermPtr t_domain() { return mk_term({.kind = TermKind::DomainConst}); }
inline TermPtr t_struct() { return mk_term({.kind = TermKind::StructConst}); }
inline TermPtr t_empty() { return mk_term({.kind = TermKind::EmptySet}); }
inline TermPtr t_var(std::string name) { return mk_term({.kind = TermKind::Var, .var = std::move(name)}); }
inline TermPtr t_pow(TermPtr a) { return mk_term({.kind = TermKind::Pow, .a = std::move(a)}); }
inline TermPtr t_bigunion(TermPtr a) { return mk_term({.kind = TermKind::BigUnion, .a = std::move(a)}); }
inline TermPtr t_prod(TermPtr a, TermPtr b) {
  return mk_term({.kind = TermKind::Prod, .a = std::move(a), .b = std::move(b)});
}
inline TermPtr t_pair(TermPtr a, TermPtr b) {
  return mk_term({.kind = TermKind::Pair, .a = std::move(a), .b = std::move(b)});
}
inline TermPtr t_nat(unsigned long n) { return mk_term({.kind = TermKind::NatLit, .nat = n}); }
inline TermPtr t_rat(long long p, long long q) {
  return mk_term({.kind = TermKind::RatLit, .rat = rat_normalize({p, q})});
}
inline TermPtr t_ratsum(TermPtr a, TermPtr b) {
  return mk_term({.kind = TermKind::RatSum, .a = std::move(a), .b = std::move(b)});
}
inline TermPtr t_sep(std::string var, TermPtr bound, FormulaPtr body) {
  return mk_term({.kind = TermKind::Sep, .var = std::move(var), .a = std::move(bound), .body = std::move(body)});
}
inline TermPtr t_the(std::string var, TermPtr bound, FormulaPtr body) {
  return mk_term({.kind = TermKind::The, .var = std::move(var), .a = std::move(bound), .body = std::move(body)});
}

inline FormulaPtr f_eq(TermPtr a, TermPtr b) {
  return mk_formula({.kind = FormulaKind::Eq, .t1 = std::move(a), .t2 = std::move(b)});
}
inline FormulaPtr f_mem(TermPtr a, TermPtr b) {
  return mk_formula({.kind = FormulaKind::Mem, .t1 = std::move(a), .t2 = std::move(b)});
}
inline FormulaPtr f_ratle(TermPtr a, TermPtr b) {
  return mk_formula({.kind = FormulaKind::RatLe, .t1 = std::move(a), .t2 = std::move(b)});
}
inline FormulaPtr f_not(FormulaPtr f) { return mk_formula({.kind = FormulaKind::Not, .f1 = std::move(f)}); }
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return mk_formula({.kind = FormulaKind::And, .f1 = std::move(a), .f2 = std::move(b)});
}
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return mk_formula({.kind = FormulaKind::Or, .f1 = std::move(a), .f2 = std::move(b)});
}
inline FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return mk_formula({.kind = FormulaKind::Implies, .f1 = std::move(a), .f2 = std::move(b)});
}
inline FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  return mk_formula({.kind = FormulaKind::Iff, .f1 = std::move(a), .f2 = std::move(b)});
}
inline FormulaPtr f_forall(std::string var, TermPtr bound, FormulaPtr body) {
  return mk_formula(
      {.kind = FormulaKind::ForallIn, .t1 = std::move(bound), .f1 = std::move(body), .var = std::move(var)});
}
inline FormulaPtr f_exists(std::string var, TermPtr bound, FormulaPtr body) {
  return mk_formula(
      {.kind = FormulaKind::ExistsIn, .t1 = std::move(bound), .f1 = std::move(body), .var = std::move(var)});
}
inline FormulaPtr f_exists_u(std::string var, std::optional<int> cap, FormulaPtr body) {
  return mk_formula(
      {.kind = FormulaKind::ExistsU, .f1 = std::move(body), .var = std::move(var), .rank_cap = cap});
}

// ---- structural equality ----

inline bool equal_terms(const TermPtr& a, const TermPtr& b);

inline bool equal_formulas(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->var != b->var || a->rank_cap != b->rank_cap) return false;
  return equal_terms(a->t1, b->t1) && equal_terms(a->t2, b->t2) && equal_formulas(a->f1, b->f1) &&
         equal_formulas(a->f2, b->f2);
}

inline bool equal_terms(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->var != b->var || a->nat != b->nat || !(a->rat == b->rat)) return false;
  return equal_terms(a->a, b->a) && equal_terms(a->b, b->b) && equal_formulas(a->body, b->body);
}

// ---- pretty printing (core syntax, reparseable) ----

inline void print_term(std::string& out, const TermPtr& t);

inline void print_formula(std::string& out, const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Eq:
      print_term(out, f->t1);
      out += " = ";
      print_term(out, f->t2);
      return;
    case FormulaKind::Mem:
      print_term(out, f->t1);
      out += " in ";
      print_term(out, f->t2);
      return;
    case FormulaKind::RatLe:
      out += "ratle(";
      print_term(out, f->t1);
      out += ", ";
      print_term(out, f->t2);
      out += ")";
      return;
    case FormulaKind::Not:
      out += "not (";
      print_formula(out, f->f1);
      out += ")";
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff: {
      const char* op = f->kind == FormulaKind::And       ? " and "
                       : f->kind == FormulaKind::Or      ? " or "
                       : f->kind == FormulaKind::Implies ? " -> "
                                                         : " <-> ";
      out += "(";
      print_formula(out, f->f1);
      out += op;
      print_formula(out, f->f2);
      out += ")";
      return;
    }
    case FormulaKind::ForallIn:
    case FormulaKind::ExistsIn:
      out += "(";
      out += f->kind == FormulaKind::ForallIn ? "forall " : "exists ";
      out += f->var;
      out += " in ";
      print_term(out, f->t1);
      out += " . ";
      print_formula(out, f->f1);
      out += ")";
      return;
    case FormulaKind::ExistsU:
      out += "(exists ";
      out += f->var;
      if (f->rank_cap) {
        out += " rank ";
        out += std::to_string(*f->rank_cap);
      }
      out += " . ";
      print_formula(out, f->f1);
      out += ")";
      return;
  }
}

inline void print_term(std::string& out, const TermPtr& t) {
  switch (t->kind) {
    case TermKind::DomainConst: out += "D"; return;
    case TermKind::StructConst: out += "d"; return;
    case TermKind::EmptySet: out += "empty"; return;
    case TermKind::Var: out += t->var; return;
    case TermKind::Pow:
      out += "pow(";
      print_term(out, t->a);
      out += ")";
      return;
    case TermKind::BigUnion:
      out += "bigunion(";
      print_term(out, t->a);
      out += ")";
      return;
    case TermKind::Prod:
    case TermKind::Pair:
    case TermKind::RatSum: {
      out += t->kind == TermKind::Prod ? "prod(" : t->kind == TermKind::Pair ? "pair(" : "ratsum(";
      print_term(out, t->a);
      out += ", ";
      print_term(out, t->b);
      out += ")";
      return;
    }
    case TermKind::NatLit: out += std::to_string(t->nat); return;
    case TermKind::RatLit:
      out += std::to_string(t->rat.num);
      out += "/";
      out += std::to_string(t->rat.den);
      return;
    case TermKind::Sep:
      out += "{ ";
      out += t->var;
      out += " in ";
      print_term(out, t->a);
      out += " | ";
      print_formula(out, t->body);
      out += " }";
      return;
    case TermKind::The:
      out += "the(";
      out += t->var;
      out += " in ";
      print_term(out, t->a);
      out += " . ";
      print_formula(out, t->body);
      out += ")";
      return;
  }
}

inline std::string pretty(const TermPtr& t) {
  std::string out;
  print_term(out, t);
  return out;
}

inline std::string pretty(const FormulaPtr& f) {
  std::string out;
  print_formula(out, f);
  return out;
}

// ---- scope validation ----

namespace detail {

inline void check_scope_term(const TermPtr& t, std::vector<std::string>& bound);

inline void check_scope_formula(const FormulaPtr& f, std::vector<std::string>& bound) {
  if (!f) return;
  switch (f->kind) {
    case FormulaKind::ForallIn:
    case FormulaKind::ExistsIn:
      check_scope_term(f->t1, bound);
      bound.push_back(f->var);
      check_scope_formula(f->f1, bound);
      bound.pop_back();
      return;
    case FormulaKind::ExistsU:
      bound.push_back(f->var);
      check_scope_formula(f->f1, bound);
      bound.pop_back();
      return;
    default:
      check_scope_term(f->t1, bound);
      check_scope_term(f->t2, bound);
      check_scope_formula(f->f1, bound);
      check_scope_formula(f->f2, bound);
      return;
  }
}

inline void check_scope_term(const TermPtr& t, std::vector<std::string>& bound) {
  if (!t) return;
  switch (t->kind) {
    case TermKind::Var:
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == t->var) return;
      fail(Errc::Scope, "unbound variable " + t->var);
    case TermKind::Sep:
    case TermKind::The:
      check_scope_term(t->a, bound);
      bound.push_back(t->var);
      check_scope_formula(t->body, bound);
      bound.pop_back();
      return;
    default:
      check_scope_term(t->a, bound);
      check_scope_term(t->b, bound);
      return;
  }
}

}  // namespace detail

// throws Scope errors; free_names are treated as bound from outside
inline void check_scope(const FormulaPtr& f, std::vector<std::string> free_names = {}) {
  detail::check_scope_formula(f, free_names);
}
inline void check_scope(const TermPtr& t, std::vector<std::string> free_names = {}) {
  detail::check_scope_term(t, free_names);
}

// free variables in binding-aware order (sorted, deduplicated)
inline void collect_free(const TermPtr& t, std::vector<std::string>& bound, std::vector<std::string>& out);

inline void collect_free(const FormulaPtr& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case FormulaKind::ForallIn:
    case FormulaKind::ExistsIn:
      collect_free(f->t1, bound, out);
      bound.push_back(f->var);
      collect_free(f->f1, bound, out);
      bound.pop_back();
      return;
    case FormulaKind::ExistsU:
      bound.push_back(f->var);
      collect_free(f->f1, bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(f->t1, bound, out);
      collect_free(f->t2, bound, out);
      collect_free(f->f1, bound, out);
      collect_free(f->f2, bound, out);
      return;
  }
}

inline void collect_free(const TermPtr& t, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (!t) return;
  switch (t->kind) {
    case TermKind::Var:
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == t->var) return;
      out.push_back(t->var);
      return;
    case TermKind::Sep:
    case TermKind::The:
      collect_free(t->a, bound, out);
      bound.push_back(t->var);
      collect_free(t->body, bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(t->a, bound, out);
      collect_free(t->b, bound, out);
      return;
  }
}

template <typename Node>
inline std::vector<std::string> free_vars(const Node& n) {
  std::vector<std::string> bound, out;
  collect_free(n, bound, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- syntactic classification ----

enum class LevyClass { Delta0, Sigma1, Pi1, Other };

inline const char* to_string(LevyClass c) {
  switch (c) {
    case LevyClass::Delta0: return "delta0";
    case LevyClass::Sigma1: return "sigma1";
    case LevyClass::Pi1: return "pi1";
    case LevyClass::Other: return "other";
  }
  return "other";
}

namespace detail {

inline bool bounded_only_term(const TermPtr& t);

inline bool bounded_only(const FormulaPtr& f) {
  if (!f) return true;
  if (f->kind == FormulaKind::ExistsU) return false;
  return bounded_only_term(f->t1) && bounded_only_term(f->t2) && bounded_only(f->f1) && bounded_only(f->f2);
}

inline bool bounded_only_term(const TermPtr& t) {
  if (!t) return true;
  return bounded_only_term(t->a) && bounded_only_term(t->b) && bounded_only(t->body);
}

}  // namespace detail

// Delta0: every quantifier bounded. Sigma1: unbounded existentials prefixed
// to a Delta0 matrix. Pi1: the negation of a Sigma1 formula. The classifier
// is syntactic; Delta0 counts as both Sigma1 and Pi1 in implications.
inline LevyClass classify(const FormulaPtr& f) {
  if (detail::bounded_only(f)) return LevyClass::Delta0;
  const Formula* cur = f.get();
  if (cur->kind == FormulaKind::Not) {
    const Formula* inner = cur->f1.get();
    bool sawU = false;
    while (inner->kind == FormulaKind::ExistsU) {
      sawU = true;
      inner = inner->f1.get();
    }
    if (sawU) {
      // share the term-walk: the stripped matrix must be bounded
      FormulaPtr probe = std::make_shared<const Formula>(*inner);
      if (detail::bounded_only(probe)) return LevyClass::Pi1;
    }
    return LevyClass::Other;
  }
  bool sawU = false;
  while (cur->kind == FormulaKind::ExistsU) {
    sawU = true;
    cur = cur->f1.get();
  }
  if (sawU) {
    FormulaPtr probe = std::make_shared<const Formula>(*cur);
    if (detail::bounded_only(probe)) return LevyClass::Sigma1;
  }
  return LevyClass::Other;
}

inline bool in_class(LevyClass have, LevyClass want) {
  if (have == want) return true;
  if (have == LevyClass::Delta0) return want == LevyClass::Sigma1 || want == LevyClass::Pi1;
  return false;
}

// a term is classified by the formulas embedded in its separations and
// descriptions: all Delta0 -> Delta0, mixing Sigma1 with Pi1 -> Other
inline LevyClass classify(const TermPtr& t) {
  if (detail::bounded_only_term(t)) return LevyClass::Delta0;
  struct Walk {
    LevyClass acc = LevyClass::Delta0;
    void join(LevyClass c) {
      if (c == LevyClass::Delta0) return;
      if (acc == LevyClass::Delta0) {
        acc = c;
        return;
      }
      if (acc != c) acc = LevyClass::Other;
    }
    void term(const TermPtr& t) {
      if (!t) return;
      term(t->a);
      term(t->b);
      if (t->body) join(classify(t->body));
    }
  } w;
  w.term(t);
  return w.acc;
}

}  // namespace vstar
