#pragma once

// Bounded evaluation over a quasi-structured environment. Quantifiers, pow,
// bigunion, prod, and separation all relativize membership to the universe
// over the domain, so set-valued domain elements behave as opaque points.
//
// Truth is three-valued: the unbounded existential searches candidates in
// rank-major order up to a cap and reports True (witness found) or Unknown
// (search exhausted), never False. Everything bounded is decided exactly.
// The candidate stream for a given width cap is a prefix of the stream for
// any higher rank cap, which makes True answers persist as caps grow.

#include <map>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vstar/formula.hpp"
#include "vstar/structured.hpp"

namespace vstar {

enum class Truth { False, True, Unknown };

inline Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }

inline Truth truth_not(Truth t) {
  if (t == Truth::Unknown) return Truth::Unknown;
  return t == Truth::True ? Truth::False : Truth::True;
}

struct EvalOptions {
  int rank_cap = 4;                  // default levels searched by unbounded exists
  int width_cap = 4;                 // max member count of generated witness sets
  std::size_t witness_budget = 20000;  // candidates tested per unbounded exists
  std::size_t pow_base_cap = 16;     // powerset argument width guard
  std::size_t prod_cap = 4096;       // product cardinality guard
};

// How separation handles an undecided predicate on an element:
// Exact refuses, Lower drops the element, Upper keeps it. Lower/Upper turn a
// semi-decidable description into set bounds usable for certification.
enum class Approx { Exact, Lower, Upper };

// Free-variable environment. Quantifier scopes nest, so push/pop suffices;
// lookup walks backwards to honor shadowing.
class Assignment {
 public:
  void push(const std::string& name, Val v) { vars_.emplace_back(name, v); }
  void pop() { vars_.pop_back(); }
  Val lookup(const std::string& name) const {
    for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
      if (it->first == name) return it->second;
    fail(Errc::Scope, "unbound variable '" + name + "' at evaluation time");
  }
  void bind(const std::string& name, Val v) { push(name, v); }

 private:
  std::vector<std::pair<std::string, Val>> vars_;
};

class Evaluator {
 public:
  explicit Evaluator(StructuredSet env, EvalOptions opt = {}, Approx mode = Approx::Exact)
      : env_(env), opt_(opt), mode_(mode) {}

  Val term(const TermPtr& t) {
    Assignment a;
    return term(t, a);
  }
  Truth formula(const FormulaPtr& f) {
    Assignment a;
    return formula(f, a);
  }

  Val term(const TermPtr& t, Assignment& a) { return eval_term(t, a); }
  Truth formula(const FormulaPtr& f, Assignment& a) { return eval_formula(f, a); }

  // true if Lower/Upper mode actually dropped or kept an undecided element
  bool approximated() const { return approximated_; }
  const StructuredSet& env() const { return env_; }

 private:
  // members of v that exist inside the universe over the domain
  const std::vector<Val>& visible(Val v) {
    auto it = visible_.find(v);
    if (it != visible_.end()) return it->second;
    return visible_.emplace(v, members_in_universe(v, env_.domain, &universe_)).first->second;
  }

  Truth eval_formula(const FormulaPtr& fp, Assignment& a) {
    const Formula& f = *fp;
    switch (f.kind) {
      case FormulaKind::Eq:
        return truth_of(eval_term(f.t1, a) == eval_term(f.t2, a));
      case FormulaKind::Mem:
        return truth_of(mem(eval_term(f.t1, a), eval_term(f.t2, a)));
      case FormulaKind::RatLe: {
        // predicate reading: both sides code rationals and are ordered
        Val x = eval_term(f.t1, a);
        Val y = eval_term(f.t2, a);
        try {
          return truth_of(rat_le(rat_decode(x), rat_decode(y)));
        } catch (const Error&) {
          return Truth::False;
        }
      }
      case FormulaKind::Not:
        return truth_not(eval_formula(f.f1, a));
      case FormulaKind::And: {
        Truth l = eval_formula(f.f1, a);
        if (l == Truth::False) return Truth::False;
        Truth r = eval_formula(f.f2, a);
        if (r == Truth::False) return Truth::False;
        if (l == Truth::Unknown || r == Truth::Unknown) return Truth::Unknown;
        return Truth::True;
      }
      case FormulaKind::Or: {
        Truth l = eval_formula(f.f1, a);
        if (l == Truth::True) return Truth::True;
        Truth r = eval_formula(f.f2, a);
        if (r == Truth::True) return Truth::True;
        if (l == Truth::Unknown || r == Truth::Unknown) return Truth::Unknown;
        return Truth::False;
      }
      case FormulaKind::Implies: {
        Truth l = eval_formula(f.f1, a);
        if (l == Truth::False) return Truth::True;
        Truth r = eval_formula(f.f2, a);
        if (r == Truth::True) return Truth::True;
        if (l == Truth::Unknown || r == Truth::Unknown) return Truth::Unknown;
        return Truth::False;
      }
      case FormulaKind::Iff: {
        Truth l = eval_formula(f.f1, a);
        Truth r = eval_formula(f.f2, a);
        if (l == Truth::Unknown || r == Truth::Unknown) return Truth::Unknown;
        return truth_of(l == r);
      }
      case FormulaKind::ForallIn: {
        Val bound = eval_term(f.t1, a);
        bool unknown = false;
        for (Val m : visible(bound)) {
          a.push(f.var, m);
          Truth r = eval_formula(f.f1, a);
          a.pop();
          if (r == Truth::False) return Truth::False;
          if (r == Truth::Unknown) unknown = true;
        }
        return unknown ? Truth::Unknown : Truth::True;
      }
      case FormulaKind::ExistsIn: {
        Val bound = eval_term(f.t1, a);
        bool unknown = false;
        for (Val m : visible(bound)) {
          a.push(f.var, m);
          Truth r = eval_formula(f.f1, a);
          a.pop();
          if (r == Truth::True) return Truth::True;
          if (r == Truth::Unknown) unknown = true;
        }
        return unknown ? Truth::Unknown : Truth::False;
      }
      case FormulaKind::ExistsU:
        return exists_unbounded(f, a);
    }
    fail(Errc::Internal, "unhandled formula kind");
  }

  Truth exists_unbounded(const Formula& f, Assignment& a) {
    int cap = f.rank_cap.value_or(opt_.rank_cap);
    std::size_t budget = opt_.witness_budget;

    auto test = [&](Val c) {
      a.push(f.var, c);
      Truth r = eval_formula(f.f1, a);
      a.pop();
      return r;
    };

    // level 0: domain members and the empty set, canonically ordered
    std::vector<Val> pool = visible(env_.domain);
    pool.push_back(empty_set());
    std::sort(pool.begin(), pool.end(), ValLess{});
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::unordered_set<Val> seen(pool.begin(), pool.end());

    for (Val c : pool) {
      if (budget == 0) return Truth::Unknown;
      --budget;
      if (test(c) == Truth::True) return Truth::True;
    }

    // level r+1: sets of up to width_cap values drawn from the pool so far,
    // by size then lexicographically over the sorted pool
    for (int level = 1; level <= cap; ++level) {
      const std::vector<Val> base = pool;
      std::size_t width = std::min<std::size_t>(opt_.width_cap, base.size());
      for (std::size_t s = 1; s <= width; ++s) {
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
          std::vector<Val> kids;
          kids.reserve(s);
          for (std::size_t i : idx) kids.push_back(base[i]);
          Val c = set_of(std::move(kids));
          if (seen.insert(c).second) {
            pool.push_back(c);
            if (budget == 0) return Truth::Unknown;
            --budget;
            if (test(c) == Truth::True) return Truth::True;
          }
          // next combination
          std::size_t i = s;
          while (i > 0 && idx[i - 1] == base.size() - s + i - 1) --i;
          if (i == 0) break;
          ++idx[i - 1];
          for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
      }
      std::sort(pool.begin(), pool.end(), ValLess{});
    }
    return Truth::Unknown;  // no witness within caps; cannot conclude false
  }

  Val eval_term(const TermPtr& tp, Assignment& a) {
    const Term& t = *tp;
    switch (t.kind) {
      case TermKind::DomainConst: return env_.domain;
      case TermKind::StructConst: return env_.structure;
      case TermKind::EmptySet: return empty_set();
      case TermKind::Var: return a.lookup(t.var);
      case TermKind::Pow: {
        const std::vector<Val>& base = visible(eval_term(t.a, a));
        if (base.size() > opt_.pow_base_cap)
          fail(Errc::BoundExceeded,
               "powerset base has " + std::to_string(base.size()) + " members (cap " +
                   std::to_string(opt_.pow_base_cap) + ")");
        std::vector<Val> subsets;
        subsets.reserve(std::size_t{1} << base.size());
        for (std::size_t mask = 0; mask < (std::size_t{1} << base.size()); ++mask) {
          std::vector<Val> kids;
          for (std::size_t i = 0; i < base.size(); ++i)
            if (mask & (std::size_t{1} << i)) kids.push_back(base[i]);
          subsets.push_back(set_of(std::move(kids)));
        }
        return set_of(std::move(subsets));
      }
      case TermKind::BigUnion: {
        std::vector<Val> out;
        for (Val m : visible(eval_term(t.a, a)))
          for (Val z : visible(m)) out.push_back(z);
        return set_of(std::move(out));
      }
      case TermKind::Prod: {
        const std::vector<Val>& xs = visible(eval_term(t.a, a));
        const std::vector<Val>& ys = visible(eval_term(t.b, a));
        if (!ys.empty() && xs.size() > opt_.prod_cap / ys.size())
          fail(Errc::BoundExceeded, "product larger than cap " + std::to_string(opt_.prod_cap));
        std::vector<Val> out;
        out.reserve(xs.size() * ys.size());
        for (Val x : xs)
          for (Val y : ys) out.push_back(kpair(x, y));
        return set_of(std::move(out));
      }
      case TermKind::Pair:
        return kpair(eval_term(t.a, a), eval_term(t.b, a));
      case TermKind::NatLit: return nat_encode(t.nat);
      case TermKind::RatLit: return rat_encode(t.rat);
      case TermKind::RatSum:
        return rat_encode(rat_add(rat_decode(eval_term(t.a, a)), rat_decode(eval_term(t.b, a))));
      case TermKind::Sep:
      case TermKind::The:
        return binder_term(tp, a);
    }
    fail(Errc::Internal, "unhandled term kind");
  }

  // separations and descriptions get memoized on (node, free-variable values);
  // keys hold the shared node so addresses cannot be recycled under the memo
  Val binder_term(const TermPtr& tp, Assignment& a) {
    const Term& t = *tp;
    auto fvit = fv_.find(tp);
    if (fvit == fv_.end()) fvit = fv_.emplace(tp, free_vars(tp)).first;
    std::vector<Val> key;
    key.reserve(fvit->second.size());
    for (const std::string& name : fvit->second) key.push_back(a.lookup(name));
    auto& slot = memo_[tp];
    auto hit = slot.find(key);
    if (hit != slot.end()) return hit->second;

    Val bound = eval_term(t.a, a);
    Val result = nullptr;
    if (t.kind == TermKind::Sep) {
      std::vector<Val> kept;
      for (Val m : visible(bound)) {
        a.push(t.var, m);
        Truth r = eval_formula(t.body, a);
        a.pop();
        if (r == Truth::True) {
          kept.push_back(m);
        } else if (r == Truth::Unknown) {
          switch (mode_) {
            case Approx::Exact:
              fail(Errc::RankCapExceeded, "separation predicate undecided within rank caps");
            case Approx::Lower:
              approximated_ = true;
              break;  // drop
            case Approx::Upper:
              approximated_ = true;
              kept.push_back(m);
              break;
          }
        }
      }
      result = set_of(std::move(kept));
    } else {
      std::vector<Val> witnesses;
      for (Val m : visible(bound)) {
        a.push(t.var, m);
        Truth r = eval_formula(t.body, a);
        a.pop();
        if (r == Truth::Unknown)
          fail(Errc::RankCapExceeded, "description predicate undecided within rank caps");
        if (r == Truth::True) witnesses.push_back(m);
      }
      if (witnesses.empty()) fail(Errc::NoWitness, "description has no witness");
      if (witnesses.size() > 1)
        fail(Errc::MultipleWitnesses,
             "description has " + std::to_string(witnesses.size()) + " witnesses");
      result = witnesses.front();
    }
    slot.emplace(std::move(key), result);
    return result;
  }

  StructuredSet env_;
  EvalOptions opt_;
  Approx mode_;
  bool approximated_ = false;
  std::unordered_map<Val, bool> universe_;
  std::unordered_map<Val, std::vector<Val>> visible_;
  std::unordered_map<TermPtr, std::vector<std::string>> fv_;
  std::unordered_map<TermPtr, std::map<std::vector<Val>, Val>> memo_;
};

// one-shot helpers for closed formulas and terms
inline Truth eval_formula(const FormulaPtr& f, const StructuredSet& env, EvalOptions opt = {},
                          Approx mode = Approx::Exact) {
  Evaluator e(env, opt, mode);
  return e.formula(f);
}

inline Val eval_term(const TermPtr& t, const StructuredSet& env, EvalOptions opt = {},
                     Approx mode = Approx::Exact) {
  Evaluator e(env, opt, mode);
  return e.term(t);
}

}  // namespace vstar
