#pragma once

// Random AST generation for property tests. Two profiles:
//  - full: exercises the whole grammar (round-trip tests);
//  - eval-safe: restricted to shapes that evaluate cheaply and never hit
//    description failures or rational decode errors (semantics tests).

#include <random>
#include <string>
#include <vector>

#include "vstar/formula.hpp"

namespace vstar {

struct GenOptions {
  int max_depth = 3;
  bool eval_safe = false;   // no `the`, no ratsum, no unbounded exists, bounded pow nesting
  int pow_budget = 2;       // pow nesting allowance in eval-safe mode
};

namespace detail {

class AstGen {
 public:
  AstGen(std::mt19937_64& rng, GenOptions opt, std::vector<std::string> scope)
      : rng_(rng), opt_(opt), scope_(std::move(scope)) {}

  TermPtr term(int depth, int pow_budget) {
    if (depth <= 0) return leaf();
    switch (pick(opt_.eval_safe ? 7 : 9)) {
      case 0: return leaf();
      case 1: return t_pair(term(depth - 1, pow_budget), term(depth - 1, pow_budget));
      case 2: return t_bigunion(term(depth - 1, pow_budget));
      case 3:
        if (opt_.eval_safe) {
          if (pow_budget <= 0) return leaf();
          return t_pow(pow_budget >= 2 && pick(2) == 0 ? t_pow(base_const()) : base_const());
        }
        return t_pow(term(depth - 1, pow_budget));
      case 4:
        if (opt_.eval_safe) return t_prod(small_term(), small_term());
        return t_prod(term(depth - 1, pow_budget), term(depth - 1, pow_budget));
      case 5: {
        TermPtr bound = term(depth - 1, pow_budget);
        std::string v = bind();
        FormulaPtr body = formula(depth - 1, pow_budget);
        unbind();
        return t_sep(v, std::move(bound), std::move(body));
      }
      case 6: return leaf();
      case 7: {
        TermPtr bound = term(depth - 1, pow_budget);
        std::string v = bind();
        FormulaPtr body = formula(depth - 1, pow_budget);
        unbind();
        return t_the(v, std::move(bound), std::move(body));
      }
      case 8: return t_ratsum(rat_leaf(), rat_leaf());
    }
    return leaf();
  }

  FormulaPtr formula(int depth, int pow_budget) {
    if (depth <= 0) return atom(depth, pow_budget);
    switch (pick(opt_.eval_safe ? 8 : 9)) {
      case 0: return atom(depth, pow_budget);
      case 1: return f_not(formula(depth - 1, pow_budget));
      case 2: return f_and(formula(depth - 1, pow_budget), formula(depth - 1, pow_budget));
      case 3: return f_or(formula(depth - 1, pow_budget), formula(depth - 1, pow_budget));
      case 4: return f_implies(formula(depth - 1, pow_budget), formula(depth - 1, pow_budget));
      case 5: return f_iff(formula(depth - 1, pow_budget), formula(depth - 1, pow_budget));
      case 6:
      case 7: {
        TermPtr bound = term(depth - 1, pow_budget);
        std::string v = bind();
        FormulaPtr body = formula(depth - 1, pow_budget);
        unbind();
        return pick(2) == 0 ? f_forall(v, std::move(bound), std::move(body))
                            : f_exists(v, std::move(bound), std::move(body));
      }
      case 8: {
        std::string v = bind();
        FormulaPtr body = formula(depth - 1, pow_budget);
        unbind();
        std::optional<int> cap;
        if (pick(2) == 0) cap = static_cast<int>(pick(5));
        return f_exists_u(v, cap, std::move(body));
      }
    }
    return atom(depth, pow_budget);
  }

  FormulaPtr atom(int depth, int pow_budget) {
    int d = std::max(0, depth - 1);
    switch (pick(3)) {
      case 0: return f_eq(term(d, pow_budget), term(d, pow_budget));
      case 1: return f_mem(term(d, pow_budget), term(d, pow_budget));
      default: return f_ratle(term(0, 0), term(0, 0));
    }
  }

 private:
  TermPtr leaf() {
    std::size_t extra = scope_.size();
    switch (std::size_t k = pick(4 + extra); k) {
      case 0: return t_domain();
      case 1: return t_struct();
      case 2: return t_empty();
      case 3: return opt_.eval_safe ? t_nat(pick(3)) : rat_leaf();
      default: return t_var(scope_[k - 4]);
    }
  }

  TermPtr base_const() { return pick(2) == 0 ? t_domain() : t_struct(); }

  TermPtr small_term() {
    switch (pick(3)) {
      case 0: return base_const();
      case 1: return t_empty();
      default: return scope_.empty() ? base_const() : t_var(scope_[pick(scope_.size())]);
    }
  }

  TermPtr rat_leaf() {
    if (pick(2) == 0) return t_nat(pick(4));
    long long p = static_cast<long long>(pick(7)) - 3;
    long long q = static_cast<long long>(pick(3)) + 1;
    return t_rat(p, q);
  }

  std::string bind() {
    static const char* names[] = {"x", "y", "z", "w", "v", "u"};
    std::string v = names[pick(6)];
    scope_.push_back(v);
    return v;
  }

  void unbind() { scope_.pop_back(); }

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  std::mt19937_64& rng_;
  GenOptions opt_;
  std::vector<std::string> scope_;
};

}  // namespace detail

inline TermPtr random_term(std::mt19937_64& rng, GenOptions opt = {},
                           std::vector<std::string> scope = {}) {
  detail::AstGen g(rng, opt, std::move(scope));
  return g.term(opt.max_depth, opt.pow_budget);
}

inline FormulaPtr random_formula(std::mt19937_64& rng, GenOptions opt = {},
                                 std::vector<std::string> scope = {}) {
  detail::AstGen g(rng, opt, std::move(scope));
  return g.formula(opt.max_depth, opt.pow_budget);
}

// eval-safe bounded-only formula over the given free variables
inline FormulaPtr random_delta0(std::mt19937_64& rng, std::vector<std::string> scope = {},
                                int depth = 3) {
  GenOptions opt;
  opt.eval_safe = true;
  opt.max_depth = depth;
  detail::AstGen g(rng, opt, std::move(scope));
  return g.formula(depth, opt.pow_budget);
}

// unbounded-exists prefix over an eval-safe matrix
inline FormulaPtr random_sigma1(std::mt19937_64& rng, int depth = 2) {
  GenOptions opt;
  opt.eval_safe = true;
  opt.max_depth = depth;
  opt.pow_budget = 1;  // keep matrices cheap: they run once per witness candidate
  std::uniform_int_distribution<int> nvars(1, 2);
  int n = nvars(rng);
  std::vector<std::string> scope;
  for (int i = 0; i < n; ++i) scope.push_back("w" + std::to_string(i));
  detail::AstGen g(rng, opt, scope);
  FormulaPtr matrix = g.formula(depth, opt.pow_budget);
  for (int i = n - 1; i >= 0; --i) matrix = f_exists_u(scope[i], std::nullopt, std::move(matrix));
  return matrix;
}

}  // namespace vstar
