// vstar: command-line driver for the finite structured-set workbench.
//
// Verbs:
//   check-theory <name|file>...   validate catalog theories or definition files
//   models <theory>               enumerate models on small atom domains
//   apply <interp> <model>        run one interpretation ("domain ; structure")
//   defeq <pair|t s>              definitional-equivalence check over catalog samples
//   biint <pair|t s>              bi-interpretability check over catalog samples
//   obstruct <theoryT> <theoryS>  automorphism obstruction between two theories
//   cb <t> <s>                    Cantor-Bernstein chase on one shared atom domain
//   suite                         run the full acceptance checklist
//
// Exit codes: 0 = claim verified or listing produced, 2 = claim refuted
// (counterexample in the report), 1 = usage or input error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vstar/acceptance.hpp"
#include "vstar/cb.hpp"
#include "vstar/interp.hpp"

namespace {

using nlohmann::json;
using namespace vstar;

struct Options {
  int max_atoms = 3;
  int atoms = 0;  // 0 = unset, use 1..max_atoms
  int rank_cap = 4;
  std::uint64_t seed = 20260815;
  bool as_json = false;
};

EvalOptions eval_options(const Options& o) {
  EvalOptions e;
  e.rank_cap = o.rank_cap;
  return e;
}

int status_exit(const std::string& status) { return status == "refuted" ? 2 : 0; }

void print_report(const CheckReport& r, bool as_json) {
  if (as_json)
    std::cout << r.to_json().dump(2) << "\n";
  else
    std::cout << r.text() << "\n";
}

// pair aliases like "top-nei" name the interpretations top_to_nei / nei_to_top
std::pair<const Interpretation*, const Interpretation*> resolve_pair(
    const std::vector<std::string>& args) {
  if (args.size() == 1) {
    auto dash = args[0].find('-');
    if (dash == std::string::npos)
      fail(Errc::InvalidInput, "expected a pair alias like top-nei or two interpretation names");
    std::string a = args[0].substr(0, dash), b = args[0].substr(dash + 1);
    return {&interpretation(a + "_to_" + b), &interpretation(b + "_to_" + a)};
  }
  if (args.size() == 2) return {&interpretation(args[0]), &interpretation(args[1])};
  fail(Errc::InvalidInput, "expected one pair alias or two interpretation names");
}

Sample sample_for(const std::string& theory_name, const Options& o) {
  return models_up_to(theory_name, o.max_atoms, eval_options(o));
}

int run_check_theory(const std::vector<std::string>& args, const Options& o) {
  json out = json::array();
  for (const std::string& arg : args) {
    if (std::filesystem::exists(arg)) {
      std::ifstream in(arg);
      std::stringstream buf;
      buf << in.rdbuf();
      DefFile defs = parse_defs(buf.str());
      json entry{{"file", arg}, {"theories", json::array()}, {"interps", json::array()}};
      for (const TheoryDecl& t : defs.theories)
        entry["theories"].push_back({{"name", t.name}, {"class", to_string(classify(t.formula))}});
      for (const InterpDecl& i : defs.interps) {
        json rec{{"name", i.name},
                 {"source", i.source},
                 {"target", i.target},
                 {"tau_d_class", to_string(classify(i.tau_d))},
                 {"tau_s_class", to_string(classify(i.tau_s))}};
        if (i.eta) rec["eta_class"] = to_string(classify(i.eta));
        entry["interps"].push_back(rec);
      }
      out.push_back(entry);
      if (!o.as_json) {
        std::cout << arg << ": " << defs.theories.size() << " theories, " << defs.interps.size()
                  << " interpretations\n";
        for (const auto& t : entry["theories"])
          std::cout << "  theory " << t["name"].get<std::string>() << " ["
                    << t["class"].get<std::string>() << "]\n";
        for (const auto& i : entry["interps"])
          std::cout << "  interp " << i["name"].get<std::string>() << " : "
                    << i["source"].get<std::string>() << " -> " << i["target"].get<std::string>()
                    << " [" << i["tau_d_class"].get<std::string>() << ", "
                    << i["tau_s_class"].get<std::string>() << "]\n";
      }
    } else {
      const Theory& t = theory(arg);  // throws on unknown names
      json entry{{"theory", arg}, {"class", to_string(classify(t.formula))}, {"counts", json::array()}};
      if (!o.as_json) std::cout << "theory " << arg << " [" << entry["class"].get<std::string>() << "]\n";
      for (int k = 1; k <= o.max_atoms; ++k) {
        std::size_t n = model_set(t, default_domain(k), eval_options(o)).models.size();
        entry["counts"].push_back({{"atoms", k}, {"models", n}});
        if (!o.as_json) std::cout << "  " << k << " atoms: " << n << " models\n";
      }
      out.push_back(entry);
    }
  }
  if (o.as_json) std::cout << out.dump(2) << "\n";
  return 0;
}

int run_models(const std::string& name, const Options& o) {
  std::vector<StructuredSet> models;
  if (o.atoms > 0)
    models = model_set(theory(name), default_domain(o.atoms), eval_options(o)).models;
  else
    models = sample_for(name, o).models;
  if (o.as_json) {
    json out{{"theory", name}, {"count", models.size()}, {"models", json::array()}};
    if (o.atoms > 0)
      out["atoms"] = o.atoms;
    else
      out["max_atoms"] = o.max_atoms;
    for (const StructuredSet& m : models) out["models"].push_back(to_literal(m));
    std::cout << out.dump(2) << "\n";
  } else {
    for (const StructuredSet& m : models) std::cout << to_literal(m) << "\n";
    std::cout << models.size() << " models of " << name
              << (o.atoms > 0 ? " on " + std::to_string(o.atoms) + " atoms"
                              : " on up to " + std::to_string(o.max_atoms) + " atoms")
              << "\n";
  }
  return 0;
}

int run_apply(const std::string& name, const std::string& input, const Options& o) {
  const Interpretation& i = interpretation(name);
  StructuredSet in = parse_structured(input);
  StructuredSet out = apply(i, in, eval_options(o));
  if (o.as_json)
    std::cout << json{{"interp", name}, {"input", to_literal(in)}, {"output", to_literal(out)}}
                     .dump(2)
              << "\n";
  else
    std::cout << to_literal(out) << "\n";
  return 0;
}

int run_defeq(const std::vector<std::string>& args, const Options& o) {
  auto [t, s] = resolve_pair(args);
  CheckReport r = check_defeq(*t, *s, sample_for(t->source, o), sample_for(s->source, o),
                              eval_options(o));
  print_report(r, o.as_json);
  return status_exit(r.status);
}

int run_biint(const std::vector<std::string>& args, const Options& o) {
  auto [t, s] = resolve_pair(args);
  CheckReport r = check_biint(*t, *s, sample_for(t->source, o), sample_for(s->source, o),
                              eval_options(o));
  print_report(r, o.as_json);
  return status_exit(r.status);
}

int run_obstruct(const std::string& tn, const std::string& sn, const Options& o) {
  CheckReport r = aut_obstruction(tn, sn, sample_for(tn, o), sample_for(sn, o));
  print_report(r, o.as_json);
  return status_exit(r.status);
}

int run_cb(const std::vector<std::string>& args, const Options& o) {
  auto [t, s] = resolve_pair(args);
  int k = o.atoms > 0 ? o.atoms : 2;
  CbResult c = cantor_bernstein_fiber(*t, *s, default_domain(k), eval_options(o));
  if (o.as_json) {
    json out{{"t", t->name}, {"s", s->name}, {"atoms", k}, {"bijective", c.bijective}};
    out["traces"] = json::array();
    for (const CbTrace& tr : c.traces) {
      json chain = json::array();
      for (Val v : tr.chain) chain.push_back(to_literal(v));
      out["traces"].push_back({{"element", to_literal(tr.element)},
                               {"branch", to_string(tr.branch)},
                               {"image", to_literal(tr.image)},
                               {"chain", chain}});
    }
    out["u"] = json::array();
    for (const auto& [x, y] : c.u.pairs) out["u"].push_back({to_literal(x), to_literal(y)});
    std::cout << out.dump(2) << "\n";
  } else {
    for (const CbTrace& tr : c.traces) {
      std::cout << to_literal(tr.element) << " -> " << to_literal(tr.image) << "  ["
                << to_string(tr.branch) << ", chain";
      for (Val v : tr.chain) std::cout << " " << to_literal(v);
      std::cout << "]\n";
    }
    std::cout << (c.bijective ? "bijective" : "not bijective") << " on " << c.traces.size()
              << " elements\n";
  }
  return 0;
}

int run_suite(const Options& o) {
  auto results = acceptance::run_all(o.seed);
  bool all = true;
  if (o.as_json) {
    json out = json::array();
    for (const auto& r : results) {
      out.push_back({{"criterion", r.number},
                     {"title", r.title},
                     {"pass", r.pass},
                     {"detail", r.detail}});
      all = all && r.pass;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.number << ". " << r.title << " ("
                << r.detail << ")\n";
      all = all && r.pass;
    }
    std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
  }
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite workbench for quasi-structured sets and interpretations"};
  app.require_subcommand(1);
  Options o;

  std::vector<std::string> names;
  std::string input;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--max-atoms", o.max_atoms, "largest atom domain in catalog samples")
        ->capture_default_str();
    cmd->add_option("--atoms", o.atoms, "exact atom domain size (overrides --max-atoms)");
    cmd->add_option("--rank-cap", o.rank_cap, "evaluation rank cap")->capture_default_str();
    cmd->add_flag("--json", o.as_json, "emit JSON instead of text");
    return cmd;
  };

  CLI::App* c_theory = add_common(app.add_subcommand("check-theory", "validate theories or definition files"));
  c_theory->add_option("names", names, "theory names or .vstar files")->required()->expected(-1);
  CLI::App* c_models = add_common(app.add_subcommand("models", "enumerate models of a theory"));
  c_models->add_option("theory", input, "theory name")->required();
  CLI::App* c_apply = add_common(app.add_subcommand("apply", "apply an interpretation to a model"));
  std::string apply_interp, apply_input;
  c_apply->add_option("interp", apply_interp, "interpretation name")->required();
  c_apply->add_option("model", apply_input, "input model as 'domain ; structure'")->required();
  CLI::App* c_defeq = add_common(app.add_subcommand("defeq", "definitional equivalence check"));
  c_defeq->add_option("pair", names, "pair alias (top-nei) or two interpretation names")
      ->required()
      ->expected(1, 2);
  CLI::App* c_biint = add_common(app.add_subcommand("biint", "bi-interpretability check"));
  c_biint->add_option("pair", names, "pair alias (bool-stone) or two interpretation names")
      ->required()
      ->expected(1, 2);
  CLI::App* c_obstruct = add_common(app.add_subcommand("obstruct", "automorphism obstruction"));
  c_obstruct->add_option("theories", names, "two theory names")->required()->expected(2);
  CLI::App* c_cb = add_common(app.add_subcommand("cb", "Cantor-Bernstein chase on one atom domain"));
  c_cb->add_option("pair", names, "pair alias or two interpretation names")
      ->required()
      ->expected(1, 2);
  CLI::App* c_suite = add_common(app.add_subcommand("suite", "run the acceptance checklist"));
  c_suite->add_option("--seed", o.seed, "seed for the randomized criteria")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_theory->parsed()) return run_check_theory(names, o);
    if (c_models->parsed()) return run_models(input, o);
    if (c_apply->parsed()) return run_apply(apply_interp, apply_input, o);
    if (c_defeq->parsed()) return run_defeq(names, o);
    if (c_biint->parsed()) return run_biint(names, o);
    if (c_obstruct->parsed()) return run_obstruct(names[0], names[1], o);
    if (c_cb->parsed()) return run_cb(names, o);
    if (c_suite->parsed()) return run_suite(o);
  } catch (const vstar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
