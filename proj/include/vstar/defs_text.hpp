#pragma once

// Built-in theory and interpretation definitions, in the concrete syntax the
// parser accepts. The same text ships as defs/theories.vstar and
// defs/interps.vstar so the file-loading path stays exercised; a test pins
// the copies byte-for-byte.

namespace vstar {

inline const char* theory_defs_text() {
  return R"DEFS(# Built-in theory catalog.
#
# Structures live over an atom domain D with structure value d. Every
# quantifier is bounded, so each sentence decides membership outright on any
# quasi-structured set.

# d is a topology on D: a family of subsets containing the empty set and the
# whole space, closed under pairwise intersection and arbitrary union.
theory top {
  d subset pow(D)
  and empty in d
  and D in d
  and (forall X in d . forall Y in d . cap(X, Y) in d)
  and (forall Z in pow(d) . bigunion(Z) in d)
}

# d assigns each point a neighborhood family: the graph of a total function
# y -> N(y). Each N(y) is a filter of sets around y whose members each
# include an "open core" O that neighbors every one of its own points. The
# core axiom is what makes neighborhood systems and topologies round-trip.
theory nei {
  (forall p in d . exists y in D . exists F in pow(pow(D)) . p = pair(y, F))
  and (forall y in D . exists p in d . fst(p) = y)
  and (forall p in d . forall q in d . (fst(p) = fst(q) -> p = q))
  and (forall y in D . let N = funcapp(d, y) .
        (D in N
         and (forall Z in N . y in Z)
         and (forall Z in N . forall W in pow(D) . (Z subset W -> W in N))
         and (forall Z in N . forall W in N . cap(Z, W) in N)
         and (forall Z in N . exists O in N . (O subset Z and (forall w in O . O in funcapp(d, w))))))
}

# d is a five-tuple (meet, join, complement, top, bottom) making D a
# uniquely complemented distributive lattice with distinct bounds. The
# one-element algebra is excluded by top != bottom.
theory bool {
  let m = fst(d) . let j = fst(snd(d)) . let n = fst(snd(snd(d))) .
  let t = fst(snd(snd(snd(d)))) . let b = snd(snd(snd(snd(d)))) .
  (m subset prod(prod(D, D), D)
   and j subset prod(prod(D, D), D)
   and n subset prod(D, D)
   and t in D
   and b in D
   and t != b
   and (forall x in D . forall y in D . exists z in D . pair(pair(x, y), z) in m)
   and (forall x in D . forall y in D . forall z in D . forall w in D .
         ((pair(pair(x, y), z) in m and pair(pair(x, y), w) in m) -> z = w))
   and (forall x in D . forall y in D . exists z in D . pair(pair(x, y), z) in j)
   and (forall x in D . forall y in D . forall z in D . forall w in D .
         ((pair(pair(x, y), z) in j and pair(pair(x, y), w) in j) -> z = w))
   and (forall x in D . exists z in D . pair(x, z) in n)
   and (forall x in D . forall z in D . forall w in D .
         ((pair(x, z) in n and pair(x, w) in n) -> z = w))
   and (forall x in D . forall y in D . funcapp(m, pair(x, y)) = funcapp(m, pair(y, x)))
   and (forall x in D . forall y in D . funcapp(j, pair(x, y)) = funcapp(j, pair(y, x)))
   and (forall x in D . forall y in D . forall z in D .
         funcapp(m, pair(funcapp(m, pair(x, y)), z)) = funcapp(m, pair(x, funcapp(m, pair(y, z)))))
   and (forall x in D . forall y in D . forall z in D .
         funcapp(j, pair(funcapp(j, pair(x, y)), z)) = funcapp(j, pair(x, funcapp(j, pair(y, z)))))
   and (forall x in D . forall y in D . funcapp(j, pair(x, funcapp(m, pair(x, y)))) = x)
   and (forall x in D . forall y in D . funcapp(m, pair(x, funcapp(j, pair(x, y)))) = x)
   and (forall x in D . forall y in D . forall z in D .
         funcapp(m, pair(x, funcapp(j, pair(y, z)))) = funcapp(j, pair(funcapp(m, pair(x, y)), funcapp(m, pair(x, z)))))
   and (forall x in D . funcapp(m, pair(x, t)) = x)
   and (forall x in D . funcapp(j, pair(x, b)) = x)
   and (forall x in D . funcapp(m, pair(x, funcapp(n, x))) = b)
   and (forall x in D . funcapp(j, pair(x, funcapp(n, x))) = t)
   and (forall x in D . forall y in D .
         ((funcapp(m, pair(x, y)) = b and funcapp(j, pair(x, y)) = t) -> y = funcapp(n, x))))
}

# Finite Stone spaces are exactly the finite discrete spaces, so the
# structure is the full powerset topology.
theory stone {
  d = pow(D)
}

# A finite topology is metrizable exactly when it is discrete.
theory metrble {
  d = pow(D)
}

# d is the graph of a rational-valued metric on ordered pairs of points.
theory metr {
  (forall p in d . (fst(p) in prod(D, D) and ratle(snd(p), snd(p))))
  and (forall q in prod(D, D) . exists p in d . fst(p) = q)
  and (forall p in d . forall q in d . (fst(p) = fst(q) -> p = q))
  and (forall x in D . funcapp(d, pair(x, x)) = 0/1)
  and (forall x in D . forall y in D . (funcapp(d, pair(x, y)) = 0/1 -> x = y))
  and (forall x in D . forall y in D . funcapp(d, pair(x, y)) = funcapp(d, pair(y, x)))
  and (forall x in D . forall y in D . ratle(0/1, funcapp(d, pair(x, y))))
  and (forall x in D . forall y in D . forall z in D .
        ratle(funcapp(d, pair(x, z)), ratsum(funcapp(d, pair(x, y)), funcapp(d, pair(y, z)))))
}

# d pairs a topology with a metric on the same points; finitely the induced
# topology is discrete, so the first component is pinned to the powerset.
theory topmet {
  let t = fst(d) . let m = snd(d) .
  (t = pow(D)
   and (forall p in m . (fst(p) in prod(D, D) and ratle(snd(p), snd(p))))
   and (forall q in prod(D, D) . exists p in m . fst(p) = q)
   and (forall p in m . forall q in m . (fst(p) = fst(q) -> p = q))
   and (forall x in D . funcapp(m, pair(x, x)) = 0/1)
   and (forall x in D . forall y in D . (funcapp(m, pair(x, y)) = 0/1 -> x = y))
   and (forall x in D . forall y in D . funcapp(m, pair(x, y)) = funcapp(m, pair(y, x)))
   and (forall x in D . forall y in D . ratle(0/1, funcapp(m, pair(x, y))))
   and (forall x in D . forall y in D . forall z in D .
         ratle(funcapp(m, pair(x, z)), ratsum(funcapp(m, pair(x, y)), funcapp(m, pair(y, z))))))
}

# One-element domain, no structure.
theory set1 {
  (exists u in D . D = sing(u))
  and d = empty
}

# Two-element domain, no structure.
theory set2 {
  (exists u in D . exists v in D . (u != v and D = upair(u, v)))
  and d = empty
}

# Two-element domain with a chosen point.
theory pset2 {
  (exists u in D . exists v in D . (u != v and D = upair(u, v)))
  and d in D
}

# d is any subset of the domain. A deliberately simple theory used to
# exercise the equivalence machinery. The disjunct with empty rules out
# atoms, which would pass the bounded-quantifier reading of subset vacuously.
theory subsets {
  d subset D
  and (d = empty or (exists x in d . x in D))
}
)DEFS";
}

inline const char* interp_defs_text() {
  return R"DEFS(# Built-in interpretation catalog.
#
# Each interpretation maps a source-theory structure to a target-theory
# structure: tau_d names the new domain, tau_s the new structure value,
# both evaluated inside the source structure. eta, when present, is the
# graph of the isomorphism witnessing a round trip; pi_d/pi_s, when present,
# re-define tau_d/tau_s with negated unbounded searches so that the value
# can also be approached from above.

# A topology induces a neighborhood system: N(y) collects the supersets of
# open sets through y.
interp top_to_nei : top -> nei {
  tau_d = D;
  tau_s = { p in prod(D, pow(pow(D))) |
            exists y in D . p = pair(y, { Z in pow(D) | exists W in d . (y in W and W subset Z) }) };
  eta = { p in prod(D, D) | exists x in D . p = pair(x, x) };
}

# A neighborhood system induces a topology: open sets neighbor all their
# points.
interp nei_to_top : nei -> top {
  tau_d = D;
  tau_s = { Y in pow(D) | forall z in Y . Y in funcapp(d, z) };
  eta = { p in prod(D, D) | exists x in D . p = pair(x, x) };
}

# Stone duality, algebra to space: points are ultrafilters, the topology is
# discrete at this scale.
interp bool_to_stone : bool -> stone {
  tau_d = { U in pow(D) |
            let m = fst(d) . let j = fst(snd(d)) . let n = fst(snd(snd(d))) .
            let t = fst(snd(snd(snd(d)))) . let b = snd(snd(snd(snd(d)))) .
            (t in U
             and b notin U
             and (forall x in U . forall y in U . funcapp(m, pair(x, y)) in U)
             and (forall x in U . forall y in D . funcapp(j, pair(x, y)) in U)
             and (forall x in D . (x in U or funcapp(n, x) in U))) };
  tau_s = pow({ U in pow(D) |
            let m = fst(d) . let j = fst(snd(d)) . let n = fst(snd(snd(d))) .
            let t = fst(snd(snd(snd(d)))) . let b = snd(snd(snd(snd(d)))) .
            (t in U
             and b notin U
             and (forall x in U . forall y in U . funcapp(m, pair(x, y)) in U)
             and (forall x in U . forall y in D . funcapp(j, pair(x, y)) in U)
             and (forall x in D . (x in U or funcapp(n, x) in U))) });
  eta = { p in prod(D, pow(cup({ U0 in pow(D) |
            let m = fst(d) . let j = fst(snd(d)) . let n = fst(snd(snd(d))) .
            let t = fst(snd(snd(snd(d)))) . let b = snd(snd(snd(snd(d)))) .
            (t in U0
             and b notin U0
             and (forall x in U0 . forall y in U0 . funcapp(m, pair(x, y)) in U0)
             and (forall x in U0 . forall y in D . funcapp(j, pair(x, y)) in U0)
             and (forall x in D . (x in U0 or funcapp(n, x) in U0))) },
          sing({ U0 in pow(D) |
            let m = fst(d) . let j = fst(snd(d)) . let n = fst(snd(snd(d))) .
            let t = fst(snd(snd(snd(d)))) . let b = snd(snd(snd(snd(d)))) .
            (t in U0
             and b notin U0
             and (forall x in U0 . forall y in U0 . funcapp(m, pair(x, y)) in U0)
             and (forall x in U0 . forall y in D . funcapp(j, pair(x, y)) in U0)
             and (forall x in D . (x in U0 or funcapp(n, x) in U0))) })))) |
          let X0 = { U0 in pow(D) |
            let m = fst(d) . let j = fst(snd(d)) . let n = fst(snd(snd(d))) .
            let t = fst(snd(snd(snd(d)))) . let b = snd(snd(snd(snd(d)))) .
            (t in U0
             and b notin U0
             and (forall x in U0 . forall y in U0 . funcapp(m, pair(x, y)) in U0)
             and (forall x in U0 . forall y in D . funcapp(j, pair(x, y)) in U0)
             and (forall x in D . (x in U0 or funcapp(n, x) in U0))) } .
          exists bx in D .
            p = pair(bx, { W in cup(X0, sing(X0)) | (bx in W or W = X0) }) };
}

# Stone duality, space to algebra: the clopen sets (all subsets, finitely)
# with intersection, union, and complement. A clopen set c is carried as
# c ∪ {D}: the whole space anchors every element, keeping the empty clopen
# out of the domain's transitive closure, which the quasi clauses forbid.
# Meet and join are still plain intersection and union.
interp stone_to_bool : stone -> bool {
  tau_d = { Y in pow(cup(D, sing(D))) | D in Y };
  tau_s = pair({ p in prod(prod({ Y in pow(cup(D, sing(D))) | D in Y },
                               { Y in pow(cup(D, sing(D))) | D in Y }),
                          { Y in pow(cup(D, sing(D))) | D in Y }) |
                 exists A in { Y in pow(cup(D, sing(D))) | D in Y } .
                 exists B in { Y in pow(cup(D, sing(D))) | D in Y } .
                   p = pair(pair(A, B), cap(A, B)) },
          pair({ p in prod(prod({ Y in pow(cup(D, sing(D))) | D in Y },
                               { Y in pow(cup(D, sing(D))) | D in Y }),
                          { Y in pow(cup(D, sing(D))) | D in Y }) |
                 exists A in { Y in pow(cup(D, sing(D))) | D in Y } .
                 exists B in { Y in pow(cup(D, sing(D))) | D in Y } .
                   p = pair(pair(A, B), cup(A, B)) },
          pair({ p in prod({ Y in pow(cup(D, sing(D))) | D in Y },
                           { Y in pow(cup(D, sing(D))) | D in Y }) |
                 exists A in { Y in pow(cup(D, sing(D))) | D in Y } .
                   p = pair(A, cup(setminus(D, A), sing(D))) },
          pair(cup(D, sing(D)), sing(D)))));
  eta = { p in prod(D, pow({ Y in pow(cup(D, sing(D))) | D in Y })) |
          exists x in D . p = pair(x, { A in { Y in pow(cup(D, sing(D))) | D in Y } | x in A }) };
}

# Forget the second point: any two-element plain set presents a singleton
# by bundling the whole domain as the one element.
interp set2_to_set1 : set2 -> set1 {
  tau_d = sing(D);
  tau_s = empty;
}

# A singleton presents a pointed two-element set: the domain together with
# its singleton, pointed at the singleton.
interp set1_to_pset2 : set1 -> pset2 {
  tau_d = upair(cup(D, sing(D)), sing(D));
  tau_s = sing(D);
}

# Collapse a pointed two-element set to a singleton.
interp pset2_to_set1 : pset2 -> set1 {
  tau_d = sing(D);
  tau_s = empty;
}

# Every finite metric space is metrizable with the discrete topology.
interp metr_to_metrble : metr -> metrble {
  tau_d = D;
  tau_s = pow(D);
}

# Identity on the subsets theory.
interp id_subsets : subsets -> subsets {
  tau_d = D;
  tau_s = d;
}

# Complement within the subsets theory; an involution.
interp compl_subsets : subsets -> subsets {
  tau_d = D;
  tau_s = setminus(D, d);
}

# Identity on subsets, stated with an unbounded search: x is kept when some
# set of rank two turns out to be {x} and lie inside d. The pi_s companion
# states the same set from above, so the two bounds certify computability.
interp sid_subsets : subsets -> subsets {
  tau_d = D;
  tau_s = { x in D | exists w rank 2 . (w = sing(x) and w subset d) };
  pi_d = D;
  pi_s = { x in D | not (exists w rank 2 . (w = sing(x) and not (w subset d))) };
}

# Like sid_subsets but with no companion: computability stays unknown.
interp sid_nopi_subsets : subsets -> subsets {
  tau_d = D;
  tau_s = { x in D | exists w rank 2 . (w = sing(x) and w subset d) };
}
)DEFS";
}

}  // namespace vstar
