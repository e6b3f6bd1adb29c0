#!/usr/bin/env python3
"""Saturating colorings on chordal graphs.

A list assignment demands each color in l(v) on some edge at v.  On a
chordal graph, any demand profile bounded by the down-degrees of a
simplicial elimination order can be met: peel the earliest vertex, pick
distinct representative colors for its later neighbors, recurse, and patch
the missing colors on the peeled star.  Feeding those colorings into the
compensated-subgraph machinery yields, for a k-optimal set D in a chordal
graph, a k-edge-chromatic subgraph where every vertex outside D has degree
exactly k.
"""

from koptlab import (
    chordal_degree_k_subgraph,
    chordal_order,
    is_saturating,
    k_optimal_exhaustive,
    order_orientation,
    saturable_bruteforce,
    saturate_chordal,
)
from koptlab.harness import random_chordal

g = random_chordal(8, seed=12)
print("random chordal graph:", g, "edges", sorted(g.edges))

ordering = chordal_order(g)
print("simplicial elimination order:", ordering.order)
j = order_orientation(g, ordering)
print("down-degrees:", [j.outdegree(v) for v in range(g.n)])

lists = {v: frozenset(range(1, 1 + j.outdegree(v))) for v in range(g.n)}
print("demand lists:", {v: sorted(c) for v, c in lists.items() if c})
psi = saturate_chordal(g, ordering, lists)
print("saturating coloring:", {e: c for e, c in sorted(psi.items())})
print("verified saturating:", is_saturating(g, lists, psi))
print("brute-force oracle agrees:", saturable_bruteforce(g, lists) is not None if g.m <= 12 else "(skipped, too big)")

for k in (1, 2, 3):
    d = k_optimal_exhaustive(g, k).d
    t = chordal_degree_k_subgraph(g, k, d)
    outside = sorted(g.complement_set(d))
    print(f"\nk={k}: optimal set {sorted(d)}, subgraph of {t.size} edges,",
          "outside degrees", {v: t.degree(v) for v in outside})
