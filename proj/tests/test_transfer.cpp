#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "vstar/gen.hpp"
#include "vstar/theory.hpp"

using namespace vstar;
using testing_helpers::random_value;

namespace {

// a random quasi-structured set over the given atoms, or nothing if the
// draw violates the quasi clauses
std::optional<StructuredSet> random_quasi(std::mt19937_64& rng, const std::vector<Val>& atoms,
                                          int max_rank) {
  StructuredSet s{set_of(atoms), random_value(rng, atoms, max_rank)};
  if (!check_quasi(s).ok) return std::nullopt;
  return s;
}

DomainMap atom_bijection(std::mt19937_64& rng, const std::vector<Val>& from,
                         const std::vector<Val>& to) {
  std::vector<Val> img(to);
  std::shuffle(img.begin(), img.end(), rng);
  DomainMap f;
  for (std::size_t i = 0; i < from.size(); ++i) f.pairs.push_back({from[i], img[i]});
  return f;
}

}  // namespace

TEST_CASE("truth of bounded formulas transfers along lifted isomorphisms") {
  std::mt19937_64 rng(20260815);
  std::vector<Val> pool = {atom(1), atom(2), atom(3)};
  std::vector<Val> fresh = {atom(11), atom(12), atom(13)};
  std::uniform_int_distribution<int> natoms(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);

  int cases = 0, discrepancies = 0;
  while (cases < 1000) {
    int k = natoms(rng);
    std::vector<Val> atoms(pool.begin(), pool.begin() + k);
    auto s = random_quasi(rng, atoms, 4);
    if (!s) continue;

    // either an automorphism of the atom set or a relabeling onto fresh atoms
    std::vector<Val> codomain = coin(rng) ? std::vector<Val>(fresh.begin(), fresh.begin() + k)
                                          : atoms;
    DomainMap f = atom_bijection(rng, atoms, codomain);
    StructuredSet lifted = apply_map(f, *s);
    REQUIRE(check_quasi(lifted).ok);

    FormulaPtr phi = random_delta0(rng, {"c0", "c1"});
    Val c0 = random_value(rng, atoms, 3), c1 = random_value(rng, atoms, 3);

    Evaluator ev(*s);
    Assignment asg;
    asg.bind("c0", c0);
    asg.bind("c1", c1);
    Truth before = ev.formula(phi, asg);

    Evaluator ev2(lifted);
    Assignment asg2;
    asg2.bind("c0", lift_value(f, c0));
    asg2.bind("c1", lift_value(f, c1));
    Truth after = ev2.formula(phi, asg2);

    if (before != after) {
      ++discrepancies;
      INFO("formula: " << pretty(phi));
      INFO("structure: " << to_literal(s->domain) << " / " << to_literal(s->structure));
      CHECK(before == after);
    }
    ++cases;
  }
  CHECK(cases >= 1000);
  CHECK(discrepancies == 0);
}

TEST_CASE("lifts compose and preserve identity") {
  std::mt19937_64 rng(915);
  std::vector<Val> a = {atom(1), atom(2), atom(3)};
  std::vector<Val> b = {atom(11), atom(12), atom(13)};
  std::vector<Val> c = {atom(21), atom(22), atom(23)};
  std::uniform_int_distribution<int> pickc(0, 2);

  DomainMap id;
  for (Val x : a) id.pairs.push_back({x, x});

  int pairs = 0;
  while (pairs < 500) {
    DomainMap f = atom_bijection(rng, a, b);
    DomainMap g;
    // half the time g collapses atoms; composition must still match
    if (pairs % 2 == 0) {
      g = atom_bijection(rng, b, c);
    } else {
      for (Val x : b) g.pairs.push_back({x, c[pickc(rng)]});
    }
    DomainMap gf = compose(g, f);
    Val x = random_value(rng, a, 4);
    CHECK(lift_value(gf, x) == lift_value(g, lift_value(f, x)));
    CHECK(lift_value(id, x) == x);
    ++pairs;
  }
  CHECK(pairs >= 500);
}

TEST_CASE("structured-set isomorphism transfers model membership") {
  // a small end-to-end instance of the same lemma: satisfaction of a full
  // theory formula survives relabeling the atoms
  std::mt19937_64 rng(77);
  std::vector<Val> atoms = {atom(1), atom(2)};
  std::vector<Val> fresh = {atom(11), atom(12)};
  Val u = atoms[0], v = atoms[1];
  StructuredSet sier{set_of(atoms), set_of({empty_set(), set_of({u}), set_of({u, v})})};
  DomainMap f = atom_bijection(rng, atoms, fresh);
  StructuredSet moved = apply_map(f, sier);
  Truth here = eval_formula(theory("top").formula, sier);
  Truth there = eval_formula(theory("top").formula, moved);
  CHECK(here == Truth::True);
  CHECK(there == Truth::True);
}
