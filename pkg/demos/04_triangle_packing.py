#!/usr/bin/env python3
"""Triangle packing and covering on joins of apexes with triangle-free graphs.

On I_k v H every triangle is one apex plus one H-edge, so:
    packing number of the join   = largest k-edge-colorable subgraph of H
    covering number of the join  = k|V(H)| - max potential of H
Both sides are computed by generic exact solvers (branch and bound on the
join; label backtracking and subset enumeration on H), then the translation
constructions realize the optima explicitly.  The sweep at the end checks
cover <= 2 * packing, the special case of the packing-covering conjecture
this family was built to probe.
"""

import random

from koptlab import (
    Graph,
    cover_from_optimal_set,
    cycle_graph,
    join_independent,
    k_optimal_exhaustive,
    normalize_cover,
    nu_exact,
    packing_from_coloring,
    alpha_k_prime,
    tau_exact,
    verify_tuza_connection,
)

c5 = cycle_graph(5)
join = join_independent(2, c5)
packing = nu_exact(join)
cover = tau_exact(join)
print("I_2 v C5: packing", packing.size, "cover", cover.size)

best = alpha_k_prime(c5, 2)
print("largest 2-edge-colorable subgraph of C5:", best.size, "edges")
lifted = packing_from_coloring(c5, 2, best)
print("lifted to an edge-disjoint triangle family of size", lifted.size)

opt = k_optimal_exhaustive(c5, 2)
built = cover_from_optimal_set(c5, 2, opt.d)
print("cover from the optimal set", sorted(opt.d), "has size", built.size)

norm, witness = normalize_cover(c5, 2, cover)
print("normalizing the solver's cover:", cover.size, "->", norm.size,
      "with potential witness", sorted(witness))

print("\nsweep over random triangle-free graphs (n = 6):")
rng = random.Random(4)
worst = 1.0
for trial in range(40):
    pairs = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    rng.shuffle(pairs)
    adj = [0] * 6
    edges = []
    for u, v in pairs:
        if rng.random() < 0.5 and not (adj[u] & adj[v]):
            edges.append((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    h = Graph(6, edges)
    for k in (1, 2):
        r = verify_tuza_connection(h, k)
        assert r.nu_matches and r.tau_matches and r.conjecture_holds
        if r.nu:
            worst = max(worst, r.tau / r.nu)
print("both equalities held on every instance; max cover/packing ratio seen:", round(worst, 3))
