#pragma once

// Cantor-Bernstein by history chasing: two injections between finite element
// catalogs become a bijection, with the per-element branch recorded. The
// abstract mode takes raw catalogs and maps; the interpretation mode builds
// them from a pair of domain-preserving interpretations on a fixed-domain
// fiber of models.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vstar/interp.hpp"

namespace vstar {

struct AbstractInjectionPair {
  std::vector<Val> source, target;  // element catalogs T and S
  DomainMap t;                      // total injection T -> S
  DomainMap s;                      // partial or total injection S -> T
};

enum class CbBranch { TStopper, SStopper, Cycle };

inline const char* to_string(CbBranch b) {
  switch (b) {
    case CbBranch::TStopper: return "t-stopper";
    case CbBranch::SStopper: return "s-stopper";
    case CbBranch::Cycle: return "cycle";
  }
  return "?";
}

struct CbTrace {
  Val element = nullptr;   // the T element being placed
  CbBranch branch = CbBranch::TStopper;
  Val image = nullptr;     // u(element)
  std::vector<Val> chain;  // history walked backwards, alternating T,S,T,...
};

struct CbResult {
  std::vector<CbTrace> traces;
  DomainMap u;
  bool bijective = false;
};

namespace detail {

inline bool in_catalog(const std::vector<Val>& cat, Val x) {
  return std::find(cat.begin(), cat.end(), x) != cat.end();
}

inline void validate_injection(const DomainMap& f, const std::vector<Val>& from,
                               const std::vector<Val>& to, bool total, const char* label) {
  std::set<Val, ValLess> seen;
  for (const auto& [x, y] : f.pairs) {
    if (!in_catalog(from, x))
      fail(Errc::IncompleteCatalog, std::string(label) + " maps an element outside its catalog");
    if (!in_catalog(to, y))
      fail(Errc::IncompleteCatalog, std::string(label) + " image leaves the catalog");
    if (!seen.insert(y).second)
      fail(Errc::NotInjective, std::string(label) + " is not injective");
  }
  if (total)
    for (Val x : from)
      if (!f.lookup(x)) fail(Errc::IncompleteCatalog, std::string(label) + " is not total");
}

}  // namespace detail

inline CbResult cantor_bernstein(const AbstractInjectionPair& p) {
  detail::validate_injection(p.t, p.source, p.target, true, "t");
  detail::validate_injection(p.s, p.target, p.source, false, "s");

  auto s_preimage = [&](Val x) -> Val {
    for (const auto& [k, v] : p.s.pairs)
      if (v == x) return k;
    return nullptr;
  };
  auto t_preimage = [&](Val y) -> Val {
    for (const auto& [k, v] : p.t.pairs)
      if (v == y) return k;
    return nullptr;
  };

  CbResult out;
  for (Val x : p.source) {
    CbTrace tr;
    tr.element = x;
    tr.chain.push_back(x);
    // walk the history backwards: T elements ask for an s-preimage, S
    // elements ask for a t-preimage; revisiting a state means a cycle
    Val cur = x;
    bool side_t = true;
    std::set<std::pair<Val, bool>> seen{{x, true}};
    for (;;) {
      Val pre = side_t ? s_preimage(cur) : t_preimage(cur);
      if (!pre) {
        if (side_t) {
          tr.branch = CbBranch::TStopper;
          tr.image = *p.t.lookup(x);
        } else {
          tr.branch = CbBranch::SStopper;
          tr.image = tr.chain[1];  // the s-preimage of x itself
        }
        break;
      }
      cur = pre;
      side_t = !side_t;
      tr.chain.push_back(cur);
      if (!seen.insert({cur, side_t}).second) {
        tr.branch = CbBranch::Cycle;
        tr.image = *p.t.lookup(x);
        break;
      }
    }
    out.u.pairs.push_back({x, tr.image});
    out.traces.push_back(std::move(tr));
  }

  std::set<Val, ValLess> images;
  for (const auto& [k, v] : out.u.pairs) images.insert(v);
  out.bijective = images.size() == out.u.pairs.size() && images.size() == p.target.size();
  return out;
}

// Interpretation mode: fix an atom domain, take all models of each theory on
// it as the catalogs (keyed by structure value, the domain being shared), and
// chase the two apply maps.
inline CbResult cantor_bernstein_fiber(const Interpretation& t, const Interpretation& s,
                                       Val domain, const EvalOptions& opt = {}) {
  if (t.source != s.target || t.target != s.source)
    fail(Errc::InvalidInput, "interpretations do not form a matching pair");
  ModelSet src = model_set(theory(t.source), domain, opt);
  ModelSet dst = model_set(theory(t.target), domain, opt);

  AbstractInjectionPair p;
  for (const StructuredSet& a : src.models) p.source.push_back(a.structure);
  for (const StructuredSet& b : dst.models) p.target.push_back(b.structure);

  auto push_map = [&](const Interpretation& i, const ModelSet& from, const std::vector<Val>& to,
                      DomainMap& f) {
    for (const StructuredSet& a : from.models) {
      StructuredSet out = apply(i, a, opt);
      if (out.domain != domain)
        fail(Errc::NotDomainPreserving, i.name + " leaves the fiber domain");
      if (!detail::in_catalog(to, out.structure))
        fail(Errc::IncompleteCatalog, i.name + " image is outside the model catalog");
      f.pairs.push_back({a.structure, out.structure});
    }
  };
  // validate t before building s: a collapsing forward map should surface as
  // NotInjective, not as whatever the reverse construction trips over
  push_map(t, src, p.target, p.t);
  detail::validate_injection(p.t, p.source, p.target, true, "t");
  push_map(s, dst, p.source, p.s);
  return cantor_bernstein(p);
}

}  // namespace vstar
