#pragma once

// Automorphism groups of (quasi-)structured sets, finite group isomorphism
// with invariant prefilters, and atomization of pure relational structures.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vstar/structured.hpp"

namespace vstar {

struct Group {
  std::vector<DomainMap> elements;        // closed under composition, element 0 is the identity
  std::vector<std::vector<int>> table;    // table[i][j] = index of elements[i] after elements[j]
  int identity = 0;

  std::size_t order() const { return elements.size(); }

  int element_order(int i) const {
    int cur = i, n = 1;
    while (cur != identity) {
      cur = table[i][cur];
      ++n;
      if (n > static_cast<int>(order())) fail(Errc::Internal, "element order runaway");
    }
    return n;
  }

  std::vector<int> order_multiset() const {
    std::vector<int> out;
    out.reserve(order());
    for (std::size_t i = 0; i < order(); ++i) out.push_back(element_order(static_cast<int>(i)));
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

inline Group group_from_maps(std::vector<DomainMap> maps) {
  // normalize ordering so the table is deterministic; identity first
  std::sort(maps.begin(), maps.end(), [](const DomainMap& a, const DomainMap& b) {
    for (std::size_t i = 0; i < std::min(a.pairs.size(), b.pairs.size()); ++i) {
      if (int c = compare(a.pairs[i].second, b.pairs[i].second); c != 0) return c < 0;
    }
    return a.pairs.size() < b.pairs.size();
  });
  Group g;
  g.elements = std::move(maps);
  std::map<std::vector<std::pair<Val, Val>>, int> index;
  for (std::size_t i = 0; i < g.elements.size(); ++i) index[g.elements[i].pairs] = static_cast<int>(i);
  g.identity = -1;
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    bool is_id = true;
    for (auto& [a, b] : g.elements[i].pairs)
      if (a != b) {
        is_id = false;
        break;
      }
    if (is_id) {
      g.identity = static_cast<int>(i);
      break;
    }
  }
  if (g.identity < 0) fail(Errc::Internal, "automorphism set lacks the identity");
  g.table.assign(g.elements.size(), std::vector<int>(g.elements.size(), -1));
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    for (std::size_t j = 0; j < g.elements.size(); ++j) {
      DomainMap c = compose(g.elements[i], g.elements[j]);
      auto it = index.find(c.pairs);
      if (it == index.end()) fail(Errc::Internal, "automorphisms not closed under composition");
      g.table[i][j] = it->second;
    }
  return g;
}

}  // namespace detail

inline Group automorphism_group(const StructuredSet& a, std::size_t domain_cap = 8) {
  auto verdict = check_quasi(a);
  if (!verdict.ok) fail(Errc::InvalidInput, "automorphisms of an invalid quasi-structured set");
  if (a.domain->size() > domain_cap) fail(Errc::BoundExceeded, "domain too large for automorphism search");
  return detail::group_from_maps(all_isomorphisms(a, a, domain_cap));
}

struct GroupIso {
  bool isomorphic = false;
  std::vector<int> mapping;   // mapping[i] = image index in h
  std::string obstruction;    // first invariant that separated the groups
};

// brute-force isomorphism search after order and element-order prefilters
inline GroupIso groups_isomorphic(const Group& g, const Group& h, std::size_t order_cap = 64) {
  GroupIso r;
  if (g.order() > order_cap || h.order() > order_cap)
    fail(Errc::BoundExceeded, "group order exceeds the search cap");
  if (g.order() != h.order()) {
    r.obstruction = "orders differ: " + std::to_string(g.order()) + " vs " + std::to_string(h.order());
    return r;
  }
  if (g.order_multiset() != h.order_multiset()) {
    r.obstruction = "element order multisets differ";
    return r;
  }
  std::size_t n = g.order();
  std::vector<int> go(n), ho(n);
  for (std::size_t i = 0; i < n; ++i) go[i] = g.element_order(static_cast<int>(i));
  for (std::size_t i = 0; i < n; ++i) ho[i] = h.element_order(static_cast<int>(i));

  std::vector<int> img(n, -1);
  std::vector<bool> used(n, false);
  img[g.identity] = h.identity;
  used[h.identity] = true;

  // assign images in index order, checking every product among settled pairs
  auto consistent = [&](int i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (img[j] < 0) continue;
      int ij = g.table[i][j], ji = g.table[j][static_cast<std::size_t>(i)];
      if (img[ij] >= 0 && h.table[img[i]][img[j]] != img[ij]) return false;
      if (img[ji] >= 0 && h.table[img[j]][img[i]] != img[ji]) return false;
    }
    return true;
  };

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < n; ++i)
    if (static_cast<int>(i) != g.identity) todo.push_back(i);

  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == todo.size()) return true;
    std::size_t i = todo[k];
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || ho[c] != go[i]) continue;
      img[i] = static_cast<int>(c);
      used[c] = true;
      if (consistent(static_cast<int>(i)) && self(self, k + 1)) return true;
      img[i] = -1;
      used[c] = false;
    }
    return false;
  };

  if (search(search, 0)) {
    r.isomorphic = true;
    r.mapping = img;
  } else {
    r.obstruction = "no multiplication-preserving bijection exists";
  }
  return r;
}

// ---- tuples and pure relational structures ----

// arity 1: the element itself; arity >= 2: right-nested ordered pairs
inline Val encode_tuple(const std::vector<Val>& xs) {
  if (xs.empty()) fail(Errc::InvalidInput, "empty tuple");
  Val out = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) out = kpair(xs[i], out);
  return out;
}

inline std::vector<Val> decode_tuple(Val t, int arity) {
  if (arity < 1) fail(Errc::InvalidInput, "arity must be positive");
  std::vector<Val> out;
  for (int i = 0; i + 1 < arity; ++i) {
    auto [x, rest] = kpair_decode(t);
    out.push_back(x);
    t = rest;
  }
  out.push_back(t);
  return out;
}

// bijection search between two pure relational structures, tuples preserved
inline bool simple_isomorphic(Val dom_a, Val rel_a, Val dom_b, Val rel_b, int arity,
                              std::size_t cap = 8) {
  if (dom_a->size() != dom_b->size()) return false;
  if (rel_a->size() != rel_b->size()) return false;
  if (dom_a->size() > cap) fail(Errc::BoundExceeded, "domain too large for structure search");
  std::vector<Val> from(dom_a->members().begin(), dom_a->members().end());
  std::vector<Val> to(dom_b->members().begin(), dom_b->members().end());
  bool found = false;
  detail::for_each_bijection(from, to, [&](DomainMap f) {
    std::vector<Val> mapped;
    for (Val t : rel_a->members()) {
      auto xs = decode_tuple(t, arity);
      for (Val& x : xs) {
        auto y = f.lookup(x);
        if (!y) return true;  // tuple mentions something outside the domain
        x = *y;
      }
      mapped.push_back(encode_tuple(xs));
    }
    if (set_of(std::move(mapped)) == rel_b) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

// ---- atomization ----

// Rebuild a pure simple structure over a quasi-domain: the empty set maps to
// the supplied quasi-domain value, sets map memberwise, and each rebuilt
// element is wrapped so all wrapped elements share one rank and every chain
// from below passes the new domain. Returns a quasi-structured set isomorphic
// to the input as a relational structure.
inline StructuredSet atomize(Val m_domain, Val m_rel, int arity, Val b) {
  if (arity < 1) fail(Errc::InvalidInput, "arity must be positive");
  if (m_domain->is_atom() || !is_pure(m_domain))
    fail(Errc::NotSimple, "domain of a simple structure must be a pure set");
  if (m_rel->is_atom() || !is_pure(m_rel)) fail(Errc::NotSimple, "relation must be a pure set");
  for (Val t : m_rel->members()) {
    std::vector<Val> xs;
    try {
      xs = decode_tuple(t, arity);
    } catch (const Error&) {
      fail(Errc::NotSimple, "relation member is not a tuple of the declared arity");
    }
    for (Val x : xs)
      if (!mem(x, m_domain)) fail(Errc::NotSimple, "tuple component outside the domain");
  }
  if (b->is_atom() || b->size() == 0)
    fail(Errc::NotAQuasiDomain, "need a nonempty set as the quasi-domain seed");
  StructuredSet probe{b, empty_set()};
  auto verdict = check_quasi(probe);
  if (!verdict.ok)
    fail(Errc::NotAQuasiDomain, "seed violates quasi-domain clause " + verdict.clause);

  // f(0) = b, f(x) = { f(y) : y in x }; injective because ranks grow from b
  std::unordered_map<Val, Val> f;
  auto rebuild = [&](auto&& self, Val x) -> Val {
    auto it = f.find(x);
    if (it != f.end()) return it->second;
    Val out;
    if (x->size() == 0) {
      out = b;
    } else {
      std::vector<Val> kids;
      kids.reserve(x->size());
      for (Val y : x->members()) kids.push_back(self(self, y));
      out = set_of(std::move(kids));
    }
    f.emplace(x, out);
    return out;
  };

  std::vector<Val> images;
  for (Val x : m_domain->members()) images.push_back(rebuild(rebuild, x));
  Val image_set = set_of(images);
  Val marker = set_of({image_set});  // outranks every image, so wrapped pairs never collapse

  std::unordered_map<Val, Val> wrap;
  std::vector<Val> wrapped;
  for (std::size_t i = 0; i < images.size(); ++i) {
    Val w = set_of({images[i], marker});
    wrap.emplace(m_domain->members()[i], w);
    wrapped.push_back(w);
  }

  std::vector<Val> tuples;
  for (Val t : m_rel->members()) {
    auto xs = decode_tuple(t, arity);
    for (Val& x : xs) x = wrap.at(x);
    tuples.push_back(encode_tuple(xs));
  }
  return {set_of(std::move(wrapped)), set_of(std::move(tuples))};
}

}  // namespace vstar
