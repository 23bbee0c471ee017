#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "vstar/theory.hpp"

using namespace vstar;
using testing_helpers::thrown_code;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// independent route: subsets of a k-point space as bitmasks, families as
// bitsets over those; closure checked with bitwise ops only
int count_topologies_bitmask(int k) {
  int n = 1 << k;
  int count = 0;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << n); ++fam) {
    if (!(fam & 1) || !(fam >> (n - 1) & 1)) continue;  // empty set and whole space
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      if (!(fam >> a & 1)) continue;
      for (int b = a; b < n && ok; ++b) {
        if (!(fam >> b & 1)) continue;
        if (!(fam >> (a & b) & 1) || !(fam >> (a | b) & 1)) ok = false;
      }
    }
    if (ok) ++count;
  }
  return count;
}

std::size_t model_count(const std::string& name, int k) {
  return model_set(theory(name), default_domain(k)).models.size();
}

// verdict agreement: the formula route (quasi check + evaluator) must match
// the native route on any input, counting non-quasi structures as non-models
void check_agreement(const Theory& t, const StructuredSet& s) {
  bool formula_says = satisfies(t, s);
  bool native_says = check_quasi(s).ok && t.native(s);
  INFO(t.name << " on " << to_literal(s.domain) << " ; " << to_literal(s.structure));
  CHECK(formula_says == native_says);
}

// small random values over the domain's atoms, empty sets, rational codes,
// pairs, and nested sets; most are garbage for any given theory
Val random_hf(std::mt19937_64& rng, const std::vector<Val>& atoms, int depth) {
  switch (depth > 0 ? rng() % 6 : rng() % 3) {
    case 0: return atoms[rng() % atoms.size()];
    case 1: return empty_set();
    case 2:
      return rat_encode({static_cast<long long>(rng() % 4),
                         static_cast<long long>(rng() % 3 + 1)});
    case 3:
      return kpair(random_hf(rng, atoms, depth - 1), random_hf(rng, atoms, depth - 1));
    default: {
      std::size_t width = rng() % 4;
      std::vector<Val> kids;
      for (std::size_t i = 0; i < width; ++i) kids.push_back(random_hf(rng, atoms, depth - 1));
      return set_of(std::move(kids));
    }
  }
}

// near-miss variants of a candidate: drop a member, add junk, replace wholesale
std::vector<StructuredSet> perturbations(const StructuredSet& s, const std::vector<Val>& atoms) {
  std::vector<StructuredSet> out;
  if (s.structure->is_set()) {
    auto ms = s.structure->members();
    for (std::size_t i = 0; i < ms.size(); ++i) {
      std::vector<Val> kids;
      for (std::size_t j = 0; j < ms.size(); ++j)
        if (j != i) kids.push_back(ms[j]);
      out.push_back({s.domain, set_of(std::move(kids))});
    }
    std::vector<Val> plus(ms.begin(), ms.end());
    plus.push_back(empty_set());
    out.push_back({s.domain, set_of(plus)});
    plus.back() = atoms[0];
    out.push_back({s.domain, set_of(std::move(plus))});
  }
  out.push_back({s.domain, atoms[0]});
  out.push_back({s.domain, empty_set()});
  out.push_back({s.domain, s.domain});
  return out;
}

// canonical powerset algebra on 2^m labeled atoms: element i is the bitmask i
StructuredSet powerset_algebra(Val domain) {
  auto atoms = detail::atoms_of(domain);
  std::size_t k = atoms.size();
  REQUIRE((k & (k - 1)) == 0);
  std::vector<Val> mg, jg, ng;
  for (std::size_t a = 0; a < k; ++a) {
    ng.push_back(kpair(atoms[a], atoms[~a & (k - 1)]));
    for (std::size_t b = 0; b < k; ++b) {
      Val key = kpair(atoms[a], atoms[b]);
      mg.push_back(kpair(key, atoms[a & b]));
      jg.push_back(kpair(key, atoms[a | b]));
    }
  }
  Val tuple = kpair(set_of(std::move(mg)),
                    kpair(set_of(std::move(jg)),
                          kpair(set_of(std::move(ng)), kpair(atoms[k - 1], atoms[0]))));
  return {domain, tuple};
}

}  // namespace

TEST_CASE("definition files mirror the embedded catalog") {
  std::string dir = VSTAR_DEFS_DIR;
  CHECK(slurp(dir + "/theories.vstar") == theory_defs_text());
  CHECK(slurp(dir + "/interps.vstar") == interp_defs_text());
}

TEST_CASE("theory formulas are bounded and reparse exactly") {
  auto names = theory_names();
  REQUIRE(names.size() == 11);
  for (const auto& name : names) {
    const Theory& t = theory(name);
    INFO(name);
    CHECK(classify(t.formula) == LevyClass::Delta0);
    std::string printed = pretty(t.formula);
    CHECK(equal_formulas(parse_formula(printed), t.formula));
  }
}

TEST_CASE("unknown theory names are rejected") {
  CHECK(thrown_code([] { theory("grp"); }) == Errc::UnsupportedTheory);
  CHECK(thrown_code([] { theory(""); }) == Errc::UnsupportedTheory);
}

TEST_CASE("finite topology counts match an independent enumeration") {
  REQUIRE(count_topologies_bitmask(1) == 1);
  REQUIRE(count_topologies_bitmask(2) == 4);
  REQUIRE(count_topologies_bitmask(3) == 29);
  CHECK(model_count("top", 1) == 1);
  CHECK(model_count("top", 2) == 4);
  CHECK(model_count("top", 3) == 29);
  CHECK(thrown_code([] { model_count("top", 4); }) == Errc::BoundExceeded);
}

TEST_CASE("neighborhood systems count like topologies") {
  CHECK(model_count("nei", 1) == 1);
  CHECK(model_count("nei", 2) == 4);
  CHECK(model_count("nei", 3) == 29);
}

TEST_CASE("boolean algebra model counts") {
  CHECK(model_count("bool", 1) == 0);  // one-element algebra excluded
  CHECK(model_count("bool", 2) == 2);
  CHECK(model_count("bool", 3) == 0);  // carrier size must be a power of two
  CHECK(model_count("bool", 4) == 12);
  CHECK(thrown_code([] { model_count("bool", 5); }) == Errc::BoundExceeded);
}

TEST_CASE("discrete-space theories have exactly the powerset model") {
  for (const char* name : {"stone", "metrble"}) {
    for (int k = 1; k <= 3; ++k) {
      ModelSet ms = model_set(theory(name), default_domain(k));
      INFO(name << " at " << k);
      REQUIRE(ms.models.size() == 1);
      CHECK(ms.models[0].structure == powerset(default_domain(k)));
    }
  }
}

TEST_CASE("metric counts over rational pools") {
  CHECK(model_count("metr", 1) == 1);
  CHECK(model_count("metr", 2) == 2);
  CHECK(model_count("metr", 3) == 8);  // distances in {1, 2} always satisfy the triangle
  CHECK(model_count("topmet", 2) == 2);

  // pool {1, 3} breaks the triangle whenever two sides are 1 and one is 3:
  // of the 8 assignments on three points, exactly 3 die that way
  Val dom = default_domain(3);
  const Theory& metr = theory("metr");
  int good = 0;
  for (Val g : detail::metric_graphs(dom, {{1, 1}, {3, 1}})) {
    StructuredSet s{dom, g};
    bool formula_says = satisfies(metr, s);
    CHECK(formula_says == metr.native(s));
    good += formula_says;
  }
  CHECK(good == 5);
}

TEST_CASE("plain set theory model counts") {
  CHECK(model_count("set1", 1) == 1);
  CHECK(model_count("set1", 2) == 0);
  CHECK(model_count("set2", 1) == 0);
  CHECK(model_count("set2", 2) == 1);
  CHECK(model_count("set2", 3) == 0);
  CHECK(model_count("pset2", 1) == 0);
  CHECK(model_count("pset2", 2) == 2);
  CHECK(model_count("pset2", 3) == 0);
  CHECK(model_count("subsets", 1) == 2);
  CHECK(model_count("subsets", 2) == 4);
  CHECK(model_count("subsets", 3) == 8);
}

TEST_CASE("native and formula verdicts agree on every candidate") {
  const std::map<std::string, std::vector<int>> sizes = {
      {"top", {1, 2, 3}},    {"nei", {1, 2, 3}},   {"bool", {1, 2, 4}},
      {"stone", {1, 2, 3}},  {"metrble", {1, 2, 3}}, {"metr", {1, 2, 3}},
      {"topmet", {1, 2, 3}}, {"set1", {1, 2, 3}},  {"set2", {1, 2, 3}},
      {"pset2", {1, 2, 3}},  {"subsets", {1, 2, 3}}};
  for (const auto& [name, ks] : sizes) {
    const Theory& t = theory(name);
    for (int k : ks) {
      Val dom = default_domain(k);
      auto atoms = detail::atoms_of(dom);
      auto cands = t.candidates(dom);
      std::size_t budget = 40;  // perturb only a prefix to bound runtime
      for (std::size_t i = 0; i < cands.size(); ++i) {
        check_agreement(t, cands[i]);
        if (i < budget)
          for (const StructuredSet& p : perturbations(cands[i], atoms))
            check_agreement(t, p);
      }
    }
  }
}

TEST_CASE("native and formula verdicts agree on random structures") {
  std::mt19937_64 rng(20260815);
  for (int k = 2; k <= 3; ++k) {
    Val dom = default_domain(k);
    auto atoms = detail::atoms_of(dom);
    for (int i = 0; i < 300; ++i) {
      StructuredSet s{dom, random_hf(rng, atoms, 2)};
      for (const auto& name : theory_names()) check_agreement(theory(name), s);
    }
    // pair-heavy shapes reach deeper into the graph-decoding clauses
    for (int i = 0; i < 100; ++i) {
      std::vector<Val> entries;
      std::size_t width = rng() % 4 + 1;
      for (std::size_t e = 0; e < width; ++e)
        entries.push_back(kpair(random_hf(rng, atoms, 1), random_hf(rng, atoms, 1)));
      StructuredSet s{dom, set_of(std::move(entries))};
      for (const auto& name : theory_names()) check_agreement(theory(name), s);
    }
  }
}

TEST_CASE("an eight-element boolean algebra satisfies the axioms") {
  StructuredSet alg = powerset_algebra(default_domain(8));
  const Theory& t = theory("bool");
  CHECK(t.native(alg));
  CHECK(satisfies(t, alg));
}

TEST_CASE("model listings are sorted and deduplicated") {
  ModelSet ms = model_set(theory("top"), default_domain(3));
  for (std::size_t i = 1; i < ms.models.size(); ++i) {
    CHECK(StructuredSetLess{}(ms.models[i - 1], ms.models[i]));
  }
}
