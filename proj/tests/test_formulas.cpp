#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "vstar/eval.hpp"
#include "vstar/gen.hpp"
#include "vstar/parser.hpp"

using namespace vstar;
using testing_helpers::thrown_code;

namespace {

StructuredSet sierpinski() {
  Val u = atom(1), v = atom(2);
  Val dom = set_of({u, v});
  Val top = set_of({empty_set(), set_of({u}), set_of({u, v})});
  return make_quasi(dom, top);
}

StructuredSet two_atoms() {
  Val u = atom(1), v = atom(2);
  return make_quasi(set_of({u, v}), empty_set());
}

}  // namespace

TEST_CASE("parsing builds the expected ASTs") {
  FormulaPtr f = parse_formula("forall X in d . forall Y in d . cap(X,Y) in d");
  REQUIRE(f->kind == FormulaKind::ForallIn);
  REQUIRE(f->var == "X");
  REQUIRE(f->t1->kind == TermKind::StructConst);
  const Formula& inner = *f->f1;
  REQUIRE(inner.kind == FormulaKind::ForallIn);
  REQUIRE(inner.f1->kind == FormulaKind::Mem);
  REQUIRE(inner.f1->t1->kind == TermKind::Sep);  // cap desugars to separation

  // spec of the sugar: cap(X, Y) == { $k in X | $k in Y }
  const Term& sep = *inner.f1->t1;
  REQUIRE(sep.a->kind == TermKind::Var);
  REQUIRE(sep.a->var == "X");
  REQUIRE(sep.body->kind == FormulaKind::Mem);
  REQUIRE(sep.body->t2->var == "Y");

  FormulaPtr g = parse_formula("(D = d -> D != empty) and not empty in D");
  REQUIRE(g->kind == FormulaKind::And);
  REQUIRE(g->f1->kind == FormulaKind::Implies);
  REQUIRE(g->f1->f2->kind == FormulaKind::Not);  // != is not-equals
  REQUIRE(g->f2->kind == FormulaKind::Not);

  FormulaPtr h = parse_formula("exists w rank 3 . w = empty");
  REQUIRE(h->kind == FormulaKind::ExistsU);
  REQUIRE(h->rank_cap == 3);
  FormulaPtr h2 = parse_formula("exists w . w = empty");
  REQUIRE(h2->kind == FormulaKind::ExistsU);
  REQUIRE_FALSE(h2->rank_cap.has_value());

  TermPtr t = parse_term("the(x in pow(D) . forall y in D . y in x)");
  REQUIRE(t->kind == TermKind::The);
  REQUIRE(t->a->kind == TermKind::Pow);

  // rationals are distinct literals from naturals
  TermPtr r = parse_term("2/4");
  REQUIRE(r->kind == TermKind::RatLit);
  REQUIRE(r->rat.num == 1);
  REQUIRE(r->rat.den == 2);
  TermPtr neg = parse_term("-3/2");
  REQUIRE(neg->rat.num == -3);
  TermPtr n = parse_term("3");
  REQUIRE(n->kind == TermKind::NatLit);
}

TEST_CASE("parse errors carry positions and codes") {
  auto syntax = [](const std::string& s) {
    try {
      parse_formula(s);
    } catch (const Error& e) {
      REQUIRE(e.code == Errc::Syntax);
      REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring("line"));
      return;
    }
    FAIL("expected a syntax error for: " << s);
  };
  syntax("forall X in d Y in d . X = Y");  // missing dot
  syntax("forall X in . X = X");
  syntax("D =");
  syntax("pow(D");
  syntax("D = D extra");
  syntax("1/0 = empty");
  syntax("theory in a bottle");

  try {
    parse_formula("x in D");
    FAIL("expected a scope error");
  } catch (const Error& e) {
    REQUIRE(e.code == Errc::Scope);
  }
  // declared free variables are fine
  FormulaPtr f = parse_formula("x in D", {"x"});
  REQUIRE(f->kind == FormulaKind::Mem);

  // reserved words cannot bind
  REQUIRE(thrown_code([] { parse_formula("forall pow in D . pow = pow"); }) == Errc::Syntax);
}

TEST_CASE("terms evaluate over the universe") {
  StructuredSet s = sierpinski();
  Val u = atom(1), v = atom(2);
  Evaluator e(s);

  REQUIRE(e.term(parse_term("D")) == s.domain);
  REQUIRE(e.term(parse_term("d")) == s.structure);
  REQUIRE(e.term(parse_term("empty")) == empty_set());
  REQUIRE(e.term(parse_term("pow(D)")) ==
          set_of({empty_set(), set_of({u}), set_of({v}), set_of({u, v})}));
  REQUIRE(e.term(parse_term("bigunion(d)")) == set_of({u, v}));
  REQUIRE(e.term(parse_term("prod(D, D)")) ==
          set_of({kpair(u, u), kpair(u, v), kpair(v, u), kpair(v, v)}));
  REQUIRE(e.term(parse_term("pair(D, empty)")) == kpair(s.domain, empty_set()));
  REQUIRE(e.term(parse_term("{D, empty}")) == set_of({s.domain, empty_set()}));
  REQUIRE(e.term(parse_term("sing(D)")) == set_of({s.domain}));
  REQUIRE(e.term(parse_term("upair(D, D)")) == set_of({s.domain}));
  REQUIRE(e.term(parse_term("cup(D, sing(D))")) == set_of({u, v, s.domain}));
  REQUIRE(e.term(parse_term("cap(d, pow(D))")) == s.structure);  // topology is a set of subsets
  REQUIRE(e.term(parse_term("setminus(pow(D), d)")) == set_of({set_of({v})}));
  REQUIRE(e.term(parse_term("3")) == nat_encode(3));
  REQUIRE(e.term(parse_term("1/2")) == rat_encode({1, 2}));
  REQUIRE(e.term(parse_term("ratsum(1/2, 1/3)")) == rat_encode({5, 6}));
  REQUIRE(e.term(parse_term("ratsum(1/2, -3/2)")) == rat_encode({-1, 1}));
  REQUIRE(e.term(parse_term("{ X in d | X != empty }")) ==
          set_of({set_of({u}), set_of({u, v})}));
  REQUIRE(e.term(parse_term("fst(pair(D, empty))")) == s.domain);
  REQUIRE(e.term(parse_term("snd(pair(D, empty))")) == empty_set());
  REQUIRE(e.term(parse_term("fst(pair(D, D))")) == s.domain);  // degenerate pair

  // definite descriptions: unique, none, many
  REQUIRE(e.term(parse_term("the(x in pow(D) . forall y in D . y in x)")) == s.domain);
  REQUIRE(thrown_code([&] { e.term(parse_term("the(x in D . x = x)")); }) ==
          Errc::MultipleWitnesses);
  REQUIRE(thrown_code([&] { e.term(parse_term("the(x in empty . x = x)")); }) == Errc::NoWitness);
  REQUIRE(thrown_code([&] { e.term(parse_term("ratsum(D, 1/2)")); }).has_value());
}

TEST_CASE("formulas evaluate with exact bounded semantics") {
  StructuredSet s = sierpinski();
  Evaluator e(s);

  auto ev = [&](const std::string& f) { return e.formula(parse_formula(f)); };

  REQUIRE(ev("D in pow(D)") == Truth::True);
  REQUIRE(ev("empty in d") == Truth::True);
  REQUIRE(ev("pow(D) in pow(D)") == Truth::False);
  REQUIRE(ev("d subset pow(D)") == Truth::True);
  REQUIRE(ev("pow(D) subset d") == Truth::False);
  REQUIRE(ev("forall X in d . forall Y in d . cap(X,Y) in d") == Truth::True);
  REQUIRE(ev("exists X in d . not bigunion(d) = X") == Truth::True);
  REQUIRE(ev("let u = pow(D) . D in u") == Truth::True);
  REQUIRE(ev("ratle(1/2, 2/3)") == Truth::True);
  REQUIRE(ev("ratle(2/3, 1/2)") == Truth::False);
  REQUIRE(ev("ratle(1/2, 1/2)") == Truth::True);
  REQUIRE(ev("ratle(D, 1/2)") == Truth::False);    // not a rational: predicate is false
  REQUIRE(ev("ratle(3, 3)") == Truth::False);      // naturals are not rational codes
  REQUIRE(ev("D = D and not D = empty") == Truth::True);
  REQUIRE(ev("D = empty or empty in d") == Truth::True);
  REQUIRE(ev("D = empty -> pow(D) in pow(D)") == Truth::True);
  REQUIRE(ev("(D = D <-> empty = empty)") == Truth::True);
  REQUIRE(ev("(D = D <-> empty in empty)") == Truth::False);
}

TEST_CASE("function application through the graph") {
  // structure maps each atom x to {x}
  Val u = atom(1), v = atom(2);
  Val dom = set_of({u, v});
  Val graph = set_of({kpair(u, set_of({u})), kpair(v, set_of({v}))});
  StructuredSet s = make_quasi(dom, graph);
  Evaluator e(s);
  REQUIRE(e.formula(parse_formula("forall x in D . funcapp(d, x) = sing(x)")) == Truth::True);
  REQUIRE(e.formula(parse_formula("forall x in D . funcapp(d, x) = sing(sing(x))")) == Truth::False);
}

TEST_CASE("evaluation relativizes membership to the universe") {
  // W = {z} is a domain ELEMENT, so its innards must be invisible
  Val z = atom(7);
  Val w = set_of({z});
  StructuredSet s = make_quasi(set_of({w}), set_of({w}));
  Evaluator e(s);
  REQUIRE(e.formula(parse_formula("bigunion(D) = empty")) == Truth::True);
  REQUIRE(e.formula(parse_formula("forall x in D . x = empty")) == Truth::False);
  REQUIRE(e.formula(parse_formula("forall x in D . forall y in x . y != y")) == Truth::True);
  // pow sees W as a point
  REQUIRE(e.term(parse_term("pow(D)")) == set_of({empty_set(), set_of({w})}));
}

TEST_CASE("assignments supply free variables") {
  StructuredSet s = sierpinski();
  Evaluator e(s);
  FormulaPtr f = parse_formula("c in d", {"c"});
  Assignment a;
  a.bind("c", set_of({atom(1)}));
  REQUIRE(e.formula(f, a) == Truth::True);
  a.pop();
  a.bind("c", set_of({atom(2)}));
  REQUIRE(e.formula(f, a) == Truth::False);

  // unbound at evaluation time is a scope error
  Assignment empty_a;
  REQUIRE(thrown_code([&] { e.formula(f, empty_a); }) == Errc::Scope);
}

TEST_CASE("unbounded exists searches rank-major and never answers false") {
  StructuredSet s = two_atoms();
  Evaluator e(s);
  auto ev = [&](const std::string& f) { return e.formula(parse_formula(f)); };

  REQUIRE(ev("exists w . w in D") == Truth::True);                  // level-0 witness
  REQUIRE(ev("exists w . forall x in D . x in w") == Truth::True);  // needs {u, v}
  REQUIRE(ev("exists w . w != w") == Truth::Unknown);               // unsatisfiable: exhausts
  REQUIRE(ev("exists w rank 0 . w in D") == Truth::True);
  REQUIRE(ev("exists w . exists q . (w in q and w in D)") == Truth::True);

  // a witness too wide for the width cap is never generated
  EvalOptions narrow;
  narrow.width_cap = 1;
  Evaluator en(s, narrow);
  REQUIRE(en.formula(parse_formula("exists w . forall x in D . x in w")) == Truth::Unknown);

  // budget exhaustion reports unknown
  EvalOptions tiny;
  tiny.witness_budget = 1;
  Evaluator et(s, tiny);
  REQUIRE(et.formula(parse_formula("exists w . forall x in D . x in w")) == Truth::Unknown);
}

TEST_CASE("separation under undecided predicates follows the approximation mode") {
  StructuredSet s = two_atoms();
  // membership in an atom is never witnessed, so the predicate is unknown on
  // atoms and on the empty set, true on nonempty subsets
  TermPtr t = parse_term("{ x in pow(D) | exists w . w in x }");

  Evaluator exact(s);
  REQUIRE(thrown_code([&] { exact.term(t); }) == Errc::RankCapExceeded);

  Val u = atom(1), v = atom(2);
  Evaluator lower(s, {}, Approx::Lower);
  REQUIRE(lower.term(t) == set_of({set_of({u}), set_of({v}), set_of({u, v})}));
  REQUIRE(lower.approximated());

  Evaluator upper(s, {}, Approx::Upper);
  REQUIRE(upper.term(t) ==
          set_of({empty_set(), set_of({u}), set_of({v}), set_of({u, v})}));
  REQUIRE(upper.approximated());

  // descriptions refuse undecided predicates in every mode
  TermPtr d = parse_term("the(x in pow(D) . exists w . w in x)");
  REQUIRE(thrown_code([&] { Evaluator ex2(s); ex2.term(d); }) == Errc::RankCapExceeded);
  REQUIRE(thrown_code([&] { Evaluator lo2(s, {}, Approx::Lower); lo2.term(d); }) ==
          Errc::RankCapExceeded);
}

TEST_CASE("resource guards trip on oversized constructions") {
  StructuredSet s = sierpinski();
  EvalOptions opt;
  opt.pow_base_cap = 4;
  Evaluator e(s, opt);
  REQUIRE(thrown_code([&] { e.term(parse_term("pow(pow(pow(D)))")); }) == Errc::BoundExceeded);
  EvalOptions opt2;
  opt2.prod_cap = 3;
  Evaluator e2(s, opt2);
  REQUIRE(thrown_code([&] { e2.term(parse_term("prod(D, D)")); }) == Errc::BoundExceeded);
}

TEST_CASE("classification is syntactic") {
  REQUIRE(classify(parse_formula("forall X in d . X subset D")) == LevyClass::Delta0);
  REQUIRE(classify(parse_formula("exists w . w = pow(D)")) == LevyClass::Sigma1);
  REQUIRE(classify(parse_formula("exists w . exists q . w in q")) == LevyClass::Sigma1);
  REQUIRE(classify(parse_formula("not (exists w . not (w subset D))")) == LevyClass::Pi1);
  REQUIRE(classify(parse_formula("(exists w . w = w) and D = D")) == LevyClass::Other);
  REQUIRE(classify(parse_formula("forall X in d . exists w . w = X")) == LevyClass::Other);

  REQUIRE(classify(parse_term("{ x in D | exists w . w = x }")) == LevyClass::Sigma1);
  REQUIRE(classify(parse_term("{ x in D | not (exists w . w = x) }")) == LevyClass::Pi1);
  REQUIRE(classify(parse_term("pow(D)")) == LevyClass::Delta0);
  REQUIRE(classify(parse_term(
              "pair({ x in D | exists w . w = x }, { x in D | not (exists w . w = x) })")) ==
          LevyClass::Other);

  REQUIRE(in_class(LevyClass::Delta0, LevyClass::Sigma1));
  REQUIRE(in_class(LevyClass::Delta0, LevyClass::Pi1));
  REQUIRE(in_class(LevyClass::Sigma1, LevyClass::Sigma1));
  REQUIRE_FALSE(in_class(LevyClass::Sigma1, LevyClass::Pi1));
  REQUIRE_FALSE(in_class(LevyClass::Other, LevyClass::Sigma1));
}

TEST_CASE("free variables and scope checking") {
  FormulaPtr f = parse_formula("x in D and forall y in d . y = x", {"x"});
  REQUIRE(free_vars(f) == std::vector<std::string>{"x"});
  REQUIRE_NOTHROW(check_scope(f, {"x"}));
  REQUIRE(thrown_code([&] { check_scope(f); }) == Errc::Scope);

  TermPtr t = parse_term("{ x in D | x = c }", {"c"});
  REQUIRE(free_vars(t) == std::vector<std::string>{"c"});
}

TEST_CASE("pretty printing emits reparseable core syntax") {
  FormulaPtr f = parse_formula("forall X in d . forall Y in d . cap(X,Y) in d");
  std::string text = pretty(f);
  REQUIRE(text == "(forall X in d . (forall Y in d . { $1 in X | $1 in Y } in d))");
  REQUIRE(equal_formulas(parse_formula(text), f));

  // fresh binders in the input do not collide with desugared ones
  FormulaPtr g = parse_formula("forall $3 in d . cap($3, $3) in d");
  REQUIRE(pretty(g) == "(forall $3 in d . { $4 in $3 | $4 in $3 } in d)");
  REQUIRE(equal_formulas(parse_formula(pretty(g)), g));
}

TEST_CASE("parse of pretty is the identity on random ASTs") {
  std::mt19937_64 rng(20240811);
  int formulas = 0, terms = 0;
  for (int i = 0; i < 500; ++i) {
    FormulaPtr f = random_formula(rng);
    FormulaPtr back = parse_formula(pretty(f));
    REQUIRE(equal_formulas(f, back));
    ++formulas;

    TermPtr t = random_term(rng);
    TermPtr tback = parse_term(pretty(t));
    REQUIRE(equal_terms(t, tback));
    ++terms;
  }
  REQUIRE(formulas == 500);
  REQUIRE(terms == 500);
}

TEST_CASE("true sigma1 answers persist as the rank cap grows") {
  std::mt19937_64 rng(77001);
  StructuredSet s = sierpinski();
  int verified = 0;
  for (int i = 0; i < 60; ++i) {
    FormulaPtr f = random_sigma1(rng);
    std::vector<Truth> at_cap;
    for (int cap = 2; cap <= 5; ++cap) {
      EvalOptions opt;
      opt.rank_cap = cap;
      opt.witness_budget = 250;
      Evaluator e(s, opt);
      at_cap.push_back(e.formula(f));
    }
    for (std::size_t k = 0; k < at_cap.size(); ++k) {
      if (at_cap[k] == Truth::True) {
        for (std::size_t j = k; j < at_cap.size(); ++j) REQUIRE(at_cap[j] == Truth::True);
        ++verified;
        break;
      }
      REQUIRE(at_cap[k] == Truth::Unknown);  // never false
    }
  }
  REQUIRE(verified > 15);  // the sample must actually exercise persistence
}

TEST_CASE("delta0 evaluation ignores the rank cap") {
  std::mt19937_64 rng(55002);
  StructuredSet s = sierpinski();
  std::vector<Val> field_vals = field_members(s);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    GenOptions opt;
    opt.eval_safe = true;
    opt.max_depth = 3;
    opt.pow_budget = 1;
    FormulaPtr f = random_formula(rng, opt, {"c"});
    REQUIRE(classify(f) == LevyClass::Delta0);
    Val c = field_vals[i % field_vals.size()];
    std::vector<Truth> results;
    for (int cap : {0, 3, 9}) {
      EvalOptions eo;
      eo.rank_cap = cap;
      Evaluator e(s, eo);
      Assignment a;
      a.bind("c", c);
      results.push_back(e.formula(f, a));
    }
    REQUIRE(results[0] != Truth::Unknown);
    REQUIRE(results[0] == results[1]);
    REQUIRE(results[1] == results[2]);
    ++checked;
  }
  REQUIRE(checked == 200);
}
