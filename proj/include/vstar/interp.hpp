#pragma once

// Interpretations between theories and the equivalence checks built on them:
// applying an interpretation to a model, definitional equivalence,
// bi-interpretability, domain preservation, automorphism obstructions, and
// the computable (Sigma_1 with Pi_1 companion) classification.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vstar/group.hpp"
#include "vstar/theory.hpp"

namespace vstar {

struct Interpretation {
  std::string name;
  std::string source, target;  // theory names
  TermPtr tau_d, tau_s;
  TermPtr eta;         // optional: graph of the isomorphism a ~ roundtrip(a)
  TermPtr pi_d, pi_s;  // optional upper companions for Sigma_1 taus
  // optional executable fast path; must agree with the term route
  std::function<StructuredSet(const StructuredSet&)> native;
  bool claims_domain_preserving = false;
  bool claims_injective = false;
};

struct Sample {
  std::vector<StructuredSet> models;
  std::string description;
};

inline Sample models_up_to(const std::string& theory_name, int max_atoms,
                           const EvalOptions& opt = {}) {
  Sample s;
  for (int k = 1; k <= max_atoms; ++k) {
    ModelSet ms = model_set(theory(theory_name), default_domain(k), opt);
    s.models.insert(s.models.end(), ms.models.begin(), ms.models.end());
  }
  s.description = "all " + theory_name + " models on 1.." + std::to_string(max_atoms) + " atoms";
  return s;
}

struct CheckReport {
  std::string check;
  std::string status;  // verified | refuted | unknown
  std::string sample;
  std::map<std::string, std::string> counterexample;  // nonempty whenever refuted
  std::vector<std::string> witnesses;

  nlohmann::json to_json() const {
    nlohmann::json j{{"check", check}, {"status", status}, {"sample", sample}};
    if (!counterexample.empty()) j["counterexample"] = counterexample;
    if (!witnesses.empty()) j["witnesses"] = witnesses;
    return j;
  }

  std::string text() const {
    std::string out = check + ": " + status + "  [" + sample + "]";
    for (const auto& [k, v] : counterexample) out += "\n  " + k + ": " + v;
    for (const auto& w : witnesses) out += "\n  witness: " + w;
    return out;
  }
};

inline std::string render(const StructuredSet& s) {
  return "(" + to_literal(s.domain) + ", " + to_literal(s.structure) + ")";
}

// ---- applying an interpretation ----

inline StructuredSet apply(const Interpretation& i, const StructuredSet& a,
                           const EvalOptions& opt = {}) {
  if (!satisfies(theory(i.source), a, opt))
    fail(Errc::InvalidInput, "input is not a model of " + i.source);
  Evaluator ev(a, opt);
  StructuredSet out{ev.term(i.tau_d), ev.term(i.tau_s)};
  auto verdict = check_quasi(out);
  if (!verdict.ok)
    fail(Errc::TargetViolation,
         i.name + " output violates quasi clause " + verdict.clause + ": " + verdict.detail);
  if (!satisfies(theory(i.target), out, opt))
    fail(Errc::TargetViolation, i.name + " output is not a model of " + i.target);
  return out;
}

// decode a set of ordered pairs into a map; duplicate keys are rejected
inline DomainMap graph_to_map(Val graph) {
  if (!graph || graph->is_atom()) fail(Errc::NotAFunction, "graph must be a set of pairs");
  DomainMap m;
  for (Val p : graph->members()) {
    auto [x, y] = kpair_decode(p);
    if (m.lookup(x)) fail(Errc::NotAFunction, "duplicate key in graph");
    m.pairs.push_back({x, y});
  }
  return m;
}

namespace detail {

// shared error policy: resource exhaustion is inconclusive, anything else
// refutes the claim on this input
inline void record_failure(CheckReport& r, const StructuredSet& a, const Error& e) {
  bool resource = e.code == Errc::RankCapExceeded || e.code == Errc::BoundExceeded;
  r.status = resource ? "unknown" : "refuted";
  r.counterexample = {{"model", render(a)}, {"error", e.what()}};
}

}  // namespace detail

// ---- domain preservation ----

inline CheckReport check_domain_preserving(const Interpretation& i, const Sample& sample,
                                           const EvalOptions& opt = {}) {
  CheckReport r{"domain_preserving(" + i.name + ")", "verified", sample.description, {}, {}};
  for (const StructuredSet& a : sample.models) {
    try {
      StructuredSet out = apply(i, a, opt);
      if (out.domain != a.domain) {
        r.status = "refuted";
        r.counterexample = {{"model", render(a)},
                            {"input_domain", to_literal(a.domain)},
                            {"output_domain", to_literal(out.domain)}};
        return r;
      }
    } catch (const Error& e) {
      detail::record_failure(r, a, e);
      return r;
    }
  }
  return r;
}

// ---- definitional equivalence ----

inline CheckReport check_defeq(const Interpretation& t, const Interpretation& s,
                               const Sample& sample_t, const Sample& sample_s,
                               const EvalOptions& opt = {}) {
  if (t.source != s.target || t.target != s.source)
    fail(Errc::InvalidInput, "interpretations do not form a matching pair");
  CheckReport r{"defeq(" + t.name + ", " + s.name + ")", "verified",
                sample_t.description + " and " + sample_s.description, {}, {}};
  auto direction = [&](const Interpretation& fwd, const Interpretation& back,
                       const Sample& sample, const char* label) {
    for (const StructuredSet& a : sample.models) {
      try {
        StructuredSet rt = apply(back, apply(fwd, a, opt), opt);
        if (rt.domain != a.domain || rt.structure != a.structure) {
          r.status = "refuted";
          r.counterexample = {{"direction", label},
                              {"model", render(a)},
                              {"roundtrip", render(rt)}};
          if (rt.domain != a.domain) {
            r.counterexample["input_domain"] = to_literal(a.domain);
            r.counterexample["output_domain"] = to_literal(rt.domain);
          }
          return false;
        }
      } catch (const Error& e) {
        detail::record_failure(r, a, e);
        r.counterexample["direction"] = label;
        return false;
      }
    }
    return true;
  };
  if (!direction(t, s, sample_t, "s(t(a))")) return r;
  direction(s, t, sample_s, "t(s(b))");
  return r;
}

// ---- bi-interpretability ----

// Each direction needs an isomorphism a ~ back(fwd(a)). If the forward
// interpretation carries an eta term, its graph is the witness; otherwise
// search is sound only when exactly one isomorphism exists (rigidity), since
// a choice among several cannot be certified definable.
inline CheckReport check_biint(const Interpretation& t, const Interpretation& s,
                               const Sample& sample_t, const Sample& sample_s,
                               const EvalOptions& opt = {}, std::size_t iso_cap = 8) {
  if (t.source != s.target || t.target != s.source)
    fail(Errc::InvalidInput, "interpretations do not form a matching pair");
  CheckReport r{"biint(" + t.name + ", " + s.name + ")", "verified",
                sample_t.description + " and " + sample_s.description, {}, {}};
  bool ambiguous = false;
  auto direction = [&](const Interpretation& fwd, const Interpretation& back,
                       const Sample& sample, const char* label) {
    for (const StructuredSet& a : sample.models) {
      try {
        StructuredSet rt = apply(back, apply(fwd, a, opt), opt);
        if (fwd.eta) {
          Evaluator ev(a, opt);
          DomainMap m = graph_to_map(ev.term(fwd.eta));
          if (!is_isomorphism(m, a, rt)) {
            r.status = "refuted";
            r.counterexample = {{"direction", label},
                                {"model", render(a)},
                                {"roundtrip", render(rt)},
                                {"eta", "not an isomorphism onto the roundtrip"}};
            return false;
          }
          r.witnesses.push_back(std::string(label) + " eta on " + to_literal(a.domain));
        } else {
          auto isos = all_isomorphisms(a, rt, iso_cap);
          if (isos.empty()) {
            r.status = "refuted";
            r.counterexample = {{"direction", label},
                                {"model", render(a)},
                                {"roundtrip", render(rt)},
                                {"error", "no isomorphism onto the roundtrip exists"}};
            return false;
          }
          if (isos.size() > 1) {
            ambiguous = true;  // keep scanning: a refutation would trump this
            continue;
          }
          r.witnesses.push_back(std::string(label) + " unique isomorphism on " +
                                to_literal(a.domain));
        }
      } catch (const Error& e) {
        detail::record_failure(r, a, e);
        r.counterexample["direction"] = label;
        return false;
      }
    }
    return true;
  };
  if (!direction(t, s, sample_t, "a ~ s(t(a))")) return r;
  if (!direction(s, t, sample_s, "b ~ t(s(b))")) return r;
  if (ambiguous) {
    r.status = "unknown";
    r.counterexample = {{"reason", "multiple isomorphisms found but no eta term supplied"}};
  }
  return r;
}

// ---- automorphism obstruction ----

// Bounded refutation: a source model whose automorphism group matches no
// sampled target group refutes bi-interpretability within the searched
// bounds. Absence of an obstruction decides nothing.
inline CheckReport aut_obstruction(const std::string& theory_t, const std::string& theory_s,
                                   const Sample& sample_t, const Sample& sample_s,
                                   std::size_t domain_cap = 8, std::size_t order_cap = 64) {
  CheckReport r{"aut_obstruction(" + theory_t + ", " + theory_s + ")", "unknown",
                sample_t.description + " vs " + sample_s.description, {}, {}};
  std::vector<Group> candidates;
  candidates.reserve(sample_s.models.size());
  for (const StructuredSet& b : sample_s.models) candidates.push_back(automorphism_group(b, domain_cap));
  for (const StructuredSet& a : sample_t.models) {
    Group g = automorphism_group(a, domain_cap);
    bool matched = false;
    for (const Group& h : candidates)
      if (groups_isomorphic(g, h, order_cap).isomorphic) {
        matched = true;
        break;
      }
    if (!matched) {
      std::vector<std::size_t> orders;
      for (const Group& h : candidates) orders.push_back(h.order());
      std::sort(orders.begin(), orders.end());
      orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
      std::string seen;
      for (std::size_t o : orders) seen += (seen.empty() ? "" : ", ") + std::to_string(o);
      r.status = "refuted";
      r.counterexample = {{"model", render(a)},
                          {"aut_order", std::to_string(g.order())},
                          {"candidate_orders", seen.empty() ? "none" : seen}};
      return r;
    }
    r.witnesses.push_back("Aut of " + render(a) + " (order " + std::to_string(g.order()) +
                          ") matched");
  }
  return r;
}

// ---- computable classification ----

// Delta_0 taus are decided outright; Sigma_1 taus verify only against a Pi_1
// companion that agrees on every sample member (lower approximation of the
// tau vs upper approximation of the companion).
inline CheckReport check_computable(const Interpretation& i, const Sample& sample,
                                    const EvalOptions& opt = {}) {
  CheckReport r{"computable(" + i.name + ")", "verified", sample.description, {}, {}};
  struct Side {
    const char* label;
    TermPtr tau, pi;
  };
  for (const Side& side : {Side{"tau_d", i.tau_d, i.pi_d}, Side{"tau_s", i.tau_s, i.pi_s}}) {
    LevyClass c = classify(side.tau);
    if (c == LevyClass::Delta0) {
      r.witnesses.push_back(std::string(side.label) + " is Delta_0");
      continue;
    }
    if (c != LevyClass::Sigma1) {
      r.status = "unknown";
      r.counterexample = {{"reason", std::string(side.label) + " is outside Delta_0/Sigma_1"}};
      return r;
    }
    if (!side.pi) {
      r.status = "unknown";
      r.counterexample = {{"reason", std::string(side.label) + " is Sigma_1 with no Pi_1 companion"}};
      return r;
    }
    for (const StructuredSet& a : sample.models) {
      Evaluator lo(a, opt, Approx::Lower);
      Evaluator hi(a, opt, Approx::Upper);
      Val from_tau, from_pi;
      try {
        from_tau = lo.term(side.tau);
        from_pi = hi.term(side.pi);
      } catch (const Error& e) {
        detail::record_failure(r, a, e);
        return r;
      }
      if (from_tau != from_pi) {
        bool truncated = lo.approximated() || hi.approximated();
        r.status = truncated ? "unknown" : "refuted";
        r.counterexample = {{"model", render(a)},
                            {"side", side.label},
                            {"tau_value", to_literal(from_tau)},
                            {"pi_value", to_literal(from_pi)}};
        if (truncated) r.counterexample["reason"] = "approximations disagree within rank caps";
        return r;
      }
    }
    r.witnesses.push_back(std::string(side.label) +
                          " is Sigma_1 and agrees with its companion on the sample");
  }
  return r;
}

// ---- native constructions for the catalog ----

namespace detail {

inline StructuredSet nat_top_to_nei(const StructuredSet& a) {
  // N(y) = supersets of some open neighborhood of y
  std::vector<Val> graph;
  std::vector<Val> subsets = all_subsets(std::vector<Val>(a.domain->members().begin(),
                                                          a.domain->members().end()));
  for (Val y : a.domain->members()) {
    std::vector<Val> ny;
    for (Val z : subsets)
      for (Val w : a.structure->members())
        if (mem(y, w) && subset_of(w, z)) {
          ny.push_back(z);
          break;
        }
    graph.push_back(kpair(y, set_of(std::move(ny))));
  }
  return {a.domain, set_of(std::move(graph))};
}

inline StructuredSet nat_nei_to_top(const StructuredSet& a) {
  // opens = sets that neighbor each of their points
  std::map<Val, Val, ValLess> n;
  for (Val p : a.structure->members()) {
    auto [y, ny] = kpair_decode(p);
    n[y] = ny;
  }
  std::vector<Val> opens;
  for (Val z : all_subsets(std::vector<Val>(a.domain->members().begin(),
                                            a.domain->members().end()))) {
    bool ok = true;
    for (Val y : z->members())
      if (!mem(z, n.at(y))) {
        ok = false;
        break;
      }
    if (ok) opens.push_back(z);
  }
  return {a.domain, set_of(std::move(opens))};
}

inline StructuredSet nat_bool_to_stone(const StructuredSet& a) {
  // points = ultrafilters: proper, meet-closed, upward-closed, prime
  BoolOps ops;
  if (!decode_bool(a, ops)) fail(Errc::InvalidInput, "not a boolean algebra structure");
  std::vector<Val> carrier(a.domain->members().begin(), a.domain->members().end());
  std::vector<Val> ultras;
  for (Val u : all_subsets(carrier)) {
    if (!mem(ops.top, u) || mem(ops.bot, u)) continue;
    bool ok = true;
    for (Val x : u->members()) {
      for (Val y : u->members())
        if (!mem(ops.meet.at({x, y}), u)) {
          ok = false;
          break;
        }
      if (!ok) break;
      for (Val y : carrier)
        if (!mem(ops.join.at({x, y}), u)) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok)
      for (Val x : carrier)
        if (!mem(x, u) && !mem(ops.neg.at(x), u)) {
          ok = false;
          break;
        }
    if (ok) ultras.push_back(u);
  }
  Val dom = set_of(std::move(ultras));
  return {dom, powerset(dom)};
}

inline StructuredSet nat_stone_to_bool(const StructuredSet& a) {
  // clopen algebra; each clopen c is carried as c + {X} so the empty clopen
  // never enters the domain's transitive closure
  Val anchor = set_of({a.domain});
  std::vector<Val> carrier;
  for (Val c : all_subsets(std::vector<Val>(a.domain->members().begin(),
                                            a.domain->members().end())))
    carrier.push_back(set_union(c, anchor));
  std::vector<Val> mg, jg, ng;
  for (Val x : carrier) {
    ng.push_back(kpair(x, set_union(set_diff(a.domain, x), anchor)));
    for (Val y : carrier) {
      mg.push_back(kpair(kpair(x, y), set_intersect(x, y)));
      jg.push_back(kpair(kpair(x, y), set_union(x, y)));
    }
  }
  Val top = set_union(a.domain, anchor);
  Val tuple = kpair(set_of(std::move(mg)),
                    kpair(set_of(std::move(jg)), kpair(set_of(std::move(ng)), kpair(top, anchor))));
  return {set_of(std::move(carrier)), tuple};
}

inline StructuredSet nat_set2_to_set1(const StructuredSet& a) {
  return {set_of({a.domain}), empty_set()};
}

inline StructuredSet nat_set1_to_pset2(const StructuredSet& a) {
  Val wrapped = set_of({a.domain});
  return {set_of({set_union(a.domain, wrapped), wrapped}), wrapped};
}

inline StructuredSet nat_pset2_to_set1(const StructuredSet& a) {
  return {set_of({a.domain}), empty_set()};
}

inline StructuredSet nat_metr_to_metrble(const StructuredSet& a) {
  return {a.domain, powerset(a.domain)};
}

inline StructuredSet nat_id_subsets(const StructuredSet& a) { return a; }

inline StructuredSet nat_compl_subsets(const StructuredSet& a) {
  return {a.domain, set_diff(a.domain, a.structure)};
}

inline std::map<std::string, Interpretation> build_interps() {
  DefFile defs = parse_defs(interp_defs_text());
  std::map<std::string, Interpretation> reg;
  for (const InterpDecl& d : defs.interps) {
    Interpretation i;
    i.name = d.name;
    i.source = d.source;
    i.target = d.target;
    i.tau_d = d.tau_d;
    i.tau_s = d.tau_s;
    i.eta = d.eta;
    i.pi_d = d.pi_d;
    i.pi_s = d.pi_s;
    reg[i.name] = std::move(i);
  }
  auto wire = [&](const std::string& name, bool dp, bool inj,
                  std::function<StructuredSet(const StructuredSet&)> native) {
    auto it = reg.find(name);
    if (it == reg.end()) fail(Errc::Internal, "catalog interp missing: " + name);
    it->second.claims_domain_preserving = dp;
    it->second.claims_injective = inj;
    it->second.native = std::move(native);
  };
  wire("top_to_nei", true, true, nat_top_to_nei);
  wire("nei_to_top", true, true, nat_nei_to_top);
  wire("bool_to_stone", false, true, nat_bool_to_stone);
  wire("stone_to_bool", false, true, nat_stone_to_bool);
  wire("set2_to_set1", false, true, nat_set2_to_set1);
  wire("set1_to_pset2", false, true, nat_set1_to_pset2);
  wire("pset2_to_set1", false, false, nat_pset2_to_set1);
  wire("metr_to_metrble", true, false, nat_metr_to_metrble);
  wire("id_subsets", true, true, nat_id_subsets);
  wire("compl_subsets", true, true, nat_compl_subsets);
  wire("sid_subsets", true, true, nullptr);
  wire("sid_nopi_subsets", true, true, nullptr);
  return reg;
}

}  // namespace detail

inline const std::map<std::string, Interpretation>& interpretations() {
  static const std::map<std::string, Interpretation> reg = detail::build_interps();
  return reg;
}

inline const Interpretation& interpretation(const std::string& name) {
  const auto& reg = interpretations();
  auto it = reg.find(name);
  if (it == reg.end()) fail(Errc::UnsupportedTheory, "unknown interpretation: " + name);
  return it->second;
}

inline std::vector<std::string> interpretation_names() {
  std::vector<std::string> out;
  for (const auto& [name, i] : interpretations()) out.push_back(name);
  return out;
}

}  // namespace vstar
