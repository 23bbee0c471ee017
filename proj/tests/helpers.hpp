#pragma once

// Shared helpers for the test suites: seeded random value generation and an
// interning-independent structural equality oracle.

#include <random>
#include <vector>

#include "vstar/structured.hpp"
#include "vstar/value.hpp"

namespace testing_helpers {

using vstar::Val;

// boolean algebra of bitmasks over log2(k) generators laid onto k atoms:
// atom i plays mask i, so atom 0 is bottom and atom k-1 is top
inline vstar::StructuredSet bitmask_algebra(const std::vector<Val>& atoms) {
  using namespace vstar;
  std::size_t k = atoms.size();
  std::vector<Val> mg, jg, ng;
  for (std::size_t i = 0; i < k; ++i) {
    ng.push_back(kpair(atoms[i], atoms[(~i) & (k - 1)]));
    for (std::size_t j = 0; j < k; ++j) {
      mg.push_back(kpair(kpair(atoms[i], atoms[j]), atoms[i & j]));
      jg.push_back(kpair(kpair(atoms[i], atoms[j]), atoms[i | j]));
    }
  }
  Val tuple = kpair(set_of(std::move(mg)),
                    kpair(set_of(std::move(jg)),
                          kpair(set_of(std::move(ng)), kpair(atoms[k - 1], atoms[0]))));
  return {set_of(atoms), tuple};
}

inline Val random_value(std::mt19937_64& rng, const std::vector<Val>& atoms, int max_rank,
                        int max_width = 3) {
  std::uniform_int_distribution<int> coin(0, 99);
  if (max_rank <= 0 || (coin(rng) < 35 && !atoms.empty())) {
    if (!atoms.empty() && coin(rng) < 70) {
      std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
      return atoms[pick(rng)];
    }
    return vstar::empty_set();
  }
  std::uniform_int_distribution<int> width(0, max_width);
  int n = width(rng);
  std::vector<Val> kids;
  kids.reserve(n);
  for (int i = 0; i < n; ++i) kids.push_back(random_value(rng, atoms, max_rank - 1, max_width));
  return vstar::set_of(std::move(kids));
}

// runs f and reports the error code it throws, or nullopt if it returns
template <typename F>
inline std::optional<vstar::Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const vstar::Error& e) {
    return e.code;
  }
  return std::nullopt;
}

// structural equality that does not lean on interning or canonical member order
inline bool naive_equal(Val a, Val b) {
  if (a->is_atom() || b->is_atom())
    return a->is_atom() && b->is_atom() && a->atom_id() == b->atom_id();
  auto ma = a->members(), mb = b->members();
  if (ma.size() != mb.size()) return false;
  std::vector<bool> used(mb.size(), false);
  for (Val x : ma) {
    bool found = false;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      if (used[j]) continue;
      if (naive_equal(x, mb[j])) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace testing_helpers
