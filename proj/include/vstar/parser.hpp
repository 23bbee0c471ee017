#pragma once

// Concrete syntax for terms, formulas, and definition files. Sugar (subset,
// cap, cup, bigcup, setminus, sing, upair, funcapp, fst, snd, let, finite-set
// literals) desugars into the core grammar at parse time; the pretty printer
// emits core syntax only, so parse(pretty(x)) is the identity on ASTs.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "vstar/formula.hpp"

namespace vstar {

struct TheoryDecl {
  std::string name;
  FormulaPtr formula;
};

// pi_d/pi_s are optional descending companions for the semi-decidable layer:
// same denotation as tau_d/tau_s claimed from above instead of from below
struct InterpDecl {
  std::string name;
  std::string source, target;
  TermPtr tau_d, tau_s;
  TermPtr eta;          // optional isomorphism-graph witness
  TermPtr pi_d, pi_s;   // optional upper companions
};

struct DefFile {
  std::vector<TheoryDecl> theories;
  std::vector<InterpDecl> interps;
};

namespace detail {

enum class Tok {
  End, Ident, Nat,
  LBrace, RBrace, LParen, RParen, Comma, Dot, Semi, Bar, Colon,
  Eq, Neq, Arrow, DArrow, Slash, Minus,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  unsigned long nat = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  const Token& peek2() {
    if (!next_) {
      Token save = cur_;
      advance();  // position advances past the lookahead token; take() replays it
      next_ = cur_;
      cur_ = save;
    }
    return *next_;
  }
  Token take() {
    Token t = cur_;
    if (next_) {
      cur_ = *next_;
      next_.reset();
    } else {
      advance();
    }
    return t;
  }

 private:
  void advance() {
    skip_trivia();
    cur_ = Token{};
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::string id;
      while (pos_ < src_.size()) {
        char k = src_[pos_];
        if (!std::isalnum(static_cast<unsigned char>(k)) && k != '_' && k != '$') break;
        id += k;
        bump();
      }
      cur_.kind = Tok::Ident;
      cur_.text = std::move(id);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      unsigned long n = 0;
      std::string digits;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits += src_[pos_];
        bump();
      }
      try {
        n = std::stoul(digits);
      } catch (const std::exception&) {
        fail(Errc::Syntax, at(cur_) + "numeric literal out of range");
      }
      cur_.kind = Tok::Nat;
      cur_.nat = n;
      cur_.text = std::move(digits);
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two('-', '>')) { bump(); bump(); cur_.kind = Tok::Arrow; return; }
    if (two('<', '-')) {
      if (pos_ + 2 < src_.size() && src_[pos_ + 2] == '>') {
        bump(); bump(); bump();
        cur_.kind = Tok::DArrow;
        return;
      }
      fail(Errc::Syntax, at(cur_) + "expected <->");
    }
    if (two('!', '=')) { bump(); bump(); cur_.kind = Tok::Neq; return; }
    bump();
    switch (c) {
      case '{': cur_.kind = Tok::LBrace; return;
      case '}': cur_.kind = Tok::RBrace; return;
      case '(': cur_.kind = Tok::LParen; return;
      case ')': cur_.kind = Tok::RParen; return;
      case ',': cur_.kind = Tok::Comma; return;
      case '.': cur_.kind = Tok::Dot; return;
      case ';': cur_.kind = Tok::Semi; return;
      case '|': cur_.kind = Tok::Bar; return;
      case ':': cur_.kind = Tok::Colon; return;
      case '=': cur_.kind = Tok::Eq; return;
      case '/': cur_.kind = Tok::Slash; return;
      case '-': cur_.kind = Tok::Minus; return;
      default:
        fail(Errc::Syntax, at(cur_) + "unexpected character '" + std::string(1, c) + "'");
    }
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  static std::string at(const Token& t) {
    return "line " + std::to_string(t.line) + " col " + std::to_string(t.col) + ": ";
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_;
  std::optional<Token> next_;
};

inline bool is_keyword(const std::string& s) {
  static const char* kw[] = {"and", "or",  "not",    "in",       "notin", "subset", "forall",  "exists",
                             "the", "rank", "let",   "empty",    "D",     "d",      "pow",     "bigunion",
                             "prod", "pair", "ratsum", "ratle",   "sing",  "upair",  "cup",     "cap",
                             "bigcup", "setminus", "funcapp", "fst", "snd", "theory", "interp"};
  for (const char* k : kw)
    if (s == k) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(const std::string& src, std::vector<std::string> free_names = {})
      : lex_(src), scope_(std::move(free_names)) {
    // fresh desugaring binders must not collide with $-names already present
    Lexer scan(src);
    while (scan.peek().kind != Tok::End) {
      Token t = scan.take();
      if (t.kind == Tok::Ident && t.text.size() > 1 && t.text[0] == '$') {
        bool digits = true;
        for (std::size_t i = 1; i < t.text.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) digits = false;
        if (digits) fresh_ = std::max(fresh_, std::stoul(t.text.substr(1)));
      }
    }
  }

  FormulaPtr formula_input() {
    FormulaPtr f = formula();
    expect_end();
    return f;
  }

  TermPtr term_input() {
    TermPtr t = term();
    expect_end();
    return t;
  }

  DefFile defs_input() {
    DefFile out;
    while (lex_.peek().kind != Tok::End) {
      Token t = lex_.take();
      if (t.kind != Tok::Ident) err(t, "expected 'theory' or 'interp'");
      if (t.text == "theory") {
        TheoryDecl d;
        d.name = ident("theory name");
        expect(Tok::LBrace, "{");
        d.formula = formula();
        expect(Tok::RBrace, "}");
        require_closed(d.formula, d.name);
        out.theories.push_back(std::move(d));
      } else if (t.text == "interp") {
        out.interps.push_back(interp_decl());
      } else {
        err(t, "expected 'theory' or 'interp'");
      }
    }
    return out;
  }

 private:
  InterpDecl interp_decl() {
    InterpDecl d;
    d.name = ident("interpretation name");
    expect(Tok::Colon, ":");
    d.source = ident("source theory");
    expect(Tok::Arrow, "->");
    d.target = ident("target theory");
    expect(Tok::LBrace, "{");
    while (lex_.peek().kind != Tok::RBrace) {
      Token key = lex_.take();
      if (key.kind != Tok::Ident) err(key, "expected a key (tau_d, tau_s, eta, pi_d, pi_s)");
      expect(Tok::Eq, "=");
      TermPtr t = term();
      expect(Tok::Semi, ";");
      TermPtr* slot = key.text == "tau_d"   ? &d.tau_d
                      : key.text == "tau_s" ? &d.tau_s
                      : key.text == "eta"   ? &d.eta
                      : key.text == "pi_d"  ? &d.pi_d
                      : key.text == "pi_s"  ? &d.pi_s
                                            : nullptr;
      if (!slot) err(key, "unknown key '" + key.text + "'");
      if (*slot) err(key, "duplicate key '" + key.text + "'");
      if (!free_vars(t).empty()) err(key, "open term for key '" + key.text + "'");
      *slot = std::move(t);
    }
    lex_.take();
    if (!d.tau_d || !d.tau_s) fail(Errc::Syntax, "interp " + d.name + ": tau_d and tau_s are required");
    return d;
  }

  // ---- formulas, loosest binding first ----

  FormulaPtr formula() {
    FormulaPtr f = implies_level();
    while (lex_.peek().kind == Tok::DArrow) {
      lex_.take();
      f = f_iff(std::move(f), implies_level());
    }
    return f;
  }

  FormulaPtr implies_level() {
    FormulaPtr f = or_level();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return f_implies(std::move(f), implies_level());  // right associative
    }
    return f;
  }

  FormulaPtr or_level() {
    FormulaPtr f = and_level();
    while (is_word("or")) {
      lex_.take();
      f = f_or(std::move(f), and_level());
    }
    return f;
  }

  FormulaPtr and_level() {
    FormulaPtr f = unary_formula();
    while (is_word("and")) {
      lex_.take();
      f = f_and(std::move(f), unary_formula());
    }
    return f;
  }

  FormulaPtr unary_formula() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.take();
      FormulaPtr f = formula();
      expect(Tok::RParen, ")");
      return f;
    }
    if (is_word("not")) {
      lex_.take();
      return f_not(unary_formula());
    }
    if (is_word("forall") || is_word("exists")) return quantifier();
    if (is_word("let")) {
      lex_.take();
      std::string v = binder("let variable");
      expect(Tok::Eq, "=");
      TermPtr val = term();
      expect(Tok::Dot, ".");
      push(v);
      FormulaPtr body = formula();
      pop();
      // let v = t . f  ==  forall v in {t} . f
      return f_forall(v, t_bigunion(t_pair(val, val)), std::move(body));
    }
    if (is_word("ratle")) {
      lex_.take();
      expect(Tok::LParen, "(");
      TermPtr a = term();
      expect(Tok::Comma, ",");
      TermPtr b = term();
      expect(Tok::RParen, ")");
      return f_ratle(std::move(a), std::move(b));
    }
    return comparison();
  }

  FormulaPtr quantifier() {
    Token q = lex_.take();
    bool universal = q.text == "forall";
    std::string v = binder("quantified variable");
    if (is_word("in")) {
      lex_.take();
      TermPtr bound = term();
      expect(Tok::Dot, ".");
      push(v);
      FormulaPtr body = formula();
      pop();
      return universal ? f_forall(v, std::move(bound), std::move(body))
                       : f_exists(v, std::move(bound), std::move(body));
    }
    if (universal) err(lex_.peek(), "forall requires 'in <term>'");
    std::optional<int> cap;
    if (is_word("rank")) {
      lex_.take();
      Token n = lex_.take();
      if (n.kind != Tok::Nat) err(n, "expected a rank bound");
      cap = static_cast<int>(n.nat);
    }
    expect(Tok::Dot, ".");
    push(v);
    FormulaPtr body = formula();
    pop();
    return f_exists_u(v, cap, std::move(body));
  }

  FormulaPtr comparison() {
    TermPtr a = term();
    Token op = lex_.take();
    if (op.kind == Tok::Eq) return f_eq(std::move(a), term());
    if (op.kind == Tok::Neq) return f_not(f_eq(std::move(a), term()));
    if (op.kind == Tok::Ident && op.text == "in") return f_mem(std::move(a), term());
    if (op.kind == Tok::Ident && op.text == "notin") return f_not(f_mem(std::move(a), term()));
    if (op.kind == Tok::Ident && op.text == "subset") {
      // a subset b  ==  forall $k in a . $k in b
      std::string v = fresh();
      TermPtr b = term();
      return f_forall(v, std::move(a), f_mem(t_var(v), std::move(b)));
    }
    err(op, "expected =, !=, in, notin, or subset");
  }

  // ---- terms ----

  TermPtr term() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Nat) {
      Token n = lex_.take();
      if (lex_.peek().kind == Tok::Slash) {
        lex_.take();
        Token den = lex_.take();
        if (den.kind != Tok::Nat) err(den, "expected a denominator");
        return rat_term(n, static_cast<long long>(n.nat), den);
      }
      return t_nat(n.nat);
    }
    if (t.kind == Tok::Minus) {
      lex_.take();
      Token n = lex_.take();
      if (n.kind != Tok::Nat) err(n, "expected a numerator after '-'");
      expect(Tok::Slash, "/");
      Token den = lex_.take();
      if (den.kind != Tok::Nat) err(den, "expected a denominator");
      return rat_term(n, -static_cast<long long>(n.nat), den);
    }
    if (t.kind == Tok::LBrace) return brace_term();
    if (t.kind != Tok::Ident) err(t, "expected a term");

    Token id = lex_.take();
    const std::string& w = id.text;
    if (w == "D") return t_domain();
    if (w == "d") return t_struct();
    if (w == "empty") return t_empty();
    if (w == "pow") return t_pow(call1());
    if (w == "bigunion" || w == "bigcup") return t_bigunion(call1());
    if (w == "prod") { auto [a, b] = call2(); return t_prod(std::move(a), std::move(b)); }
    if (w == "pair") { auto [a, b] = call2(); return t_pair(std::move(a), std::move(b)); }
    if (w == "ratsum") { auto [a, b] = call2(); return t_ratsum(std::move(a), std::move(b)); }
    if (w == "sing") { TermPtr a = call1(); return t_bigunion(t_pair(a, a)); }
    if (w == "upair") { auto [a, b] = call2(); return t_bigunion(t_pair(std::move(a), std::move(b))); }
    if (w == "cup") {
      // cup(a, b) == bigunion({a, b}) == bigunion(bigunion(pair(a, b)))
      auto [a, b] = call2();
      return t_bigunion(t_bigunion(t_pair(std::move(a), std::move(b))));
    }
    if (w == "cap") {
      auto [a, b] = call2();
      std::string v = fresh();
      return t_sep(v, std::move(a), f_mem(t_var(v), std::move(b)));
    }
    if (w == "setminus") {
      auto [a, b] = call2();
      std::string v = fresh();
      return t_sep(v, std::move(a), f_not(f_mem(t_var(v), std::move(b))));
    }
    if (w == "funcapp") {
      // the unique y with pair(x, y) in f, bounded by union(union(f))
      auto [f, x] = call2();
      std::string y = fresh();
      return t_the(y, t_bigunion(t_bigunion(f)), f_mem(t_pair(std::move(x), t_var(y)), f));
    }
    if (w == "fst" || w == "snd") {
      bool first = w == "fst";
      TermPtr p = call1();
      std::string u = fresh(), v = fresh();
      TermPtr bound = t_bigunion(p);
      FormulaPtr is_pair = f_eq(p, t_pair(t_var(u), t_var(v)));
      if (first) return t_the(u, bound, f_exists(v, bound, std::move(is_pair)));
      return t_the(v, bound, f_exists(u, bound, std::move(is_pair)));
    }
    if (w == "the") {
      expect(Tok::LParen, "(");
      std::string v = binder("description variable");
      expect_word("in");
      TermPtr bound = term();
      expect(Tok::Dot, ".");
      push(v);
      FormulaPtr body = formula();
      pop();
      expect(Tok::RParen, ")");
      return t_the(v, std::move(bound), std::move(body));
    }
    if (is_keyword(w)) err(id, "'" + w + "' cannot start a term");
    // plain variable reference
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (*it == w) return t_var(w);
    fail(Errc::Scope, pos(id) + "unbound variable '" + w + "'");
  }

  TermPtr brace_term() {
    Token open = lex_.take();
    if (lex_.peek().kind == Tok::RBrace) {
      lex_.take();
      return t_empty();
    }
    if (lex_.peek().kind == Tok::Ident && !is_keyword(lex_.peek().text) && lex_.peek2().kind == Tok::Ident &&
        lex_.peek2().text == "in") {
      // set builder { v in bound | body }
      std::string v = binder("separation variable");
      lex_.take();  // in
      TermPtr bound = term();
      expect(Tok::Bar, "|");
      push(v);
      FormulaPtr body = formula();
      pop();
      expect(Tok::RBrace, "}");
      return t_sep(v, std::move(bound), std::move(body));
    }
    // finite set literal {t1, ..., tn} == cup(sing(t1), cup(...))
    std::vector<TermPtr> elems;
    elems.push_back(term());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      elems.push_back(term());
    }
    expect(Tok::RBrace, "}");
    TermPtr acc = t_bigunion(t_pair(elems.back(), elems.back()));
    for (auto it = elems.rbegin() + 1; it != elems.rend(); ++it) {
      TermPtr s = t_bigunion(t_pair(*it, *it));
      acc = t_bigunion(t_bigunion(t_pair(std::move(s), std::move(acc))));
    }
    (void)open;
    return acc;
  }

  TermPtr rat_term(const Token& where, long long p, const Token& den) {
    if (den.nat == 0) err(den, "zero denominator");
    (void)where;
    return t_rat(p, static_cast<long long>(den.nat));
  }

  // ---- helpers ----

  TermPtr call1() {
    expect(Tok::LParen, "(");
    TermPtr a = term();
    expect(Tok::RParen, ")");
    return a;
  }

  std::pair<TermPtr, TermPtr> call2() {
    expect(Tok::LParen, "(");
    TermPtr a = term();
    expect(Tok::Comma, ",");
    TermPtr b = term();
    expect(Tok::RParen, ")");
    return {std::move(a), std::move(b)};
  }

  std::string binder(const char* what) {
    Token t = lex_.take();
    if (t.kind != Tok::Ident) err(t, std::string("expected ") + what);
    if (is_keyword(t.text)) err(t, "'" + t.text + "' is reserved and cannot bind");
    return t.text;
  }

  std::string ident(const char* what) {
    Token t = lex_.take();
    if (t.kind != Tok::Ident || is_keyword(t.text)) err(t, std::string("expected ") + what);
    return t.text;
  }

  bool is_word(const char* w) const {
    return lex_.peek().kind == Tok::Ident && lex_.peek().text == w;
  }

  void expect(Tok k, const char* what) {
    Token t = lex_.take();
    if (t.kind != k) err(t, std::string("expected '") + what + "'");
  }

  void expect_word(const char* w) {
    Token t = lex_.take();
    if (t.kind != Tok::Ident || t.text != w) err(t, std::string("expected '") + w + "'");
  }

  void expect_end() {
    const Token& t = lex_.peek();
    if (t.kind != Tok::End) err(t, "unexpected trailing input");
  }

  void require_closed(const FormulaPtr& f, const std::string& name) {
    auto fv = free_vars(f);
    if (!fv.empty()) fail(Errc::Scope, "theory " + name + ": free variable '" + fv.front() + "'");
  }

  [[noreturn]] void err(const Token& t, const std::string& msg) {
    fail(Errc::Syntax, pos(t) + msg);
  }

  static std::string pos(const Token& t) {
    return "line " + std::to_string(t.line) + " col " + std::to_string(t.col) + ": ";
  }

  std::string fresh() { return "$" + std::to_string(++fresh_); }
  void push(const std::string& v) { scope_.push_back(v); }
  void pop() { scope_.pop_back(); }

  mutable Lexer lex_;
  std::vector<std::string> scope_;
  unsigned long fresh_ = 0;
};

}  // namespace detail

// free_names: variables the caller will supply through an assignment
inline FormulaPtr parse_formula(const std::string& src, std::vector<std::string> free_names = {}) {
  detail::Parser p(src, std::move(free_names));
  return p.formula_input();
}

inline TermPtr parse_term(const std::string& src, std::vector<std::string> free_names = {}) {
  detail::Parser p(src, std::move(free_names));
  return p.term_input();
}

inline DefFile parse_defs(const std::string& src) {
  detail::Parser p(src);
  return p.defs_input();
}

}  // namespace vstar
