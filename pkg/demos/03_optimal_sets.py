#!/usr/bin/env python3
"""k-optimal sets: the potential phi_k(D) = k|D| - |E(G[D])| and what its
maximizers buy you.

A k-dependent set maximizing the potential is always k-dominating, and more:
for any orientation of the outside induced subgraph there is a cross
subgraph, properly colorable with k colors, giving every outside vertex v
degree at least k - outdeg(v).  The local improver turns any violating
orientation into a strictly better set, so its fixed points are always
k-dominating (though occasionally below the global optimum).
"""

from koptlab import (
    cycle_graph,
    is_k_dominating,
    k_optimal_exhaustive,
    k_optimal_local,
    k_optimal_sets,
    matchings_into_d,
    path_graph,
    saturating_matching_complement,
    verify_theorem_main,
)
from koptlab.favaron import outside_subgraph
from koptlab.graphs import orient_all

c5 = cycle_graph(5)
sets, phi = k_optimal_sets(c5, 2)
print("C5, k=2: maximum potential", phi, "achieved by", [sorted(s) for s in sets])
print("all maximizers 2-dominating:", all(is_k_dominating(c5, 2, d) for d in sets))

# the compensated subgraph, for every orientation of the outside
d = sets[0]
sub, order = outside_subgraph(c5, d)
print("\noutside subgraph on", order, "has", sub.m, "edge(s)")
for j in orient_all(sub):
    m = verify_theorem_main(c5, 2, d, j)
    degs = {v: m.degree(v) for v in order}
    outs = {order[i]: j.outdegree(i) for i in range(sub.n)}
    print(f"  arcs {sorted(j.arcs)}: cross degrees {degs} + outdegrees {outs}")

# local improvement from scratch
res = k_optimal_local(c5, 2)
print("\nlocal improver lands on", sorted(res.d), "with potential", res.phi,
      f"({res.certificate})")

# k disjoint matchings of an independent set into the optimum
p = path_graph(5)
opt = k_optimal_exhaustive(p, 1)
print("\nP5 maximum independent set:", sorted(opt.d))
m = saturating_matching_complement(p, opt.d)
print("a matching saturating its complement:", sorted(m))

c4 = cycle_graph(4)
ms = matchings_into_d(c4, 2, {1, 3}, {0})
print("\nC4: two disjoint matchings of {0} into {1, 3}:", [sorted(x) for x in ms])
