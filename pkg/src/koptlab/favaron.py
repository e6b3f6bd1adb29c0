"""k-dependent and k-dominating sets, the potential phi_k, and k-optimal sets.

For a vertex set D the potential is phi_k(D) = k|D| - |E(G[D])|.  A k-optimal
set is a k-dependent set maximizing the potential; such sets are always
k-dominating, and more strongly admit, for every orientation J of the outside
induced subgraph, a k-edge-chromatic cross subgraph M with
d_M(v) + outdeg_J(v) >= k for every outside vertex v.  This module computes
the optima (exhaustively and by local improvement) and realizes the
compensated subgraph construction, routing any impossible state into the
CounterexampleFound channel.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Iterable

from .caps import EXHAUSTIVE_VERTICES, CapExceeded
from .errors import ContractViolation, CounterexampleFound
from .graphs import (
    Edge,
    Graph,
    Orientation,
    VertexSet,
    bits_to_list,
    encode_graph6,
    induced_subgraph,
    orient_all,
    set_to_bits,
    BipartiteSplit,
)
from .matching import (
    DemandProfile,
    HallViolator,
    KEdgeChromaticSubgraph,
    check_generalized_lebensold,
)


@dataclass(frozen=True)
class OptimalSetResult:
    d: VertexSet
    phi: int
    certificate: str  # "exhaustive" or "local-maximum"


def phi_k(g: Graph, k: int, d: Iterable[int]) -> int:
    """k|d| - number of edges induced by d."""
    mask = set_to_bits(d)
    if mask >> g.n:
        raise ValueError("vertex set out of range")
    return _phi_mask(g, k, mask)


def _phi_mask(g: Graph, k: int, mask: int) -> int:
    deg_sum = 0
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        deg_sum += (g.adj[low.bit_length() - 1] & mask).bit_count()
    return k * mask.bit_count() - deg_sum // 2


def is_k_dependent(g: Graph, k: int, d: Iterable[int]) -> bool:
    """True iff the subgraph induced by d has maximum degree <= k-1."""
    mask = set_to_bits(d)
    return _dependent_mask(g, k, mask)


def _dependent_mask(g: Graph, k: int, mask: int) -> bool:
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        if (g.adj[low.bit_length() - 1] & mask).bit_count() > k - 1:
            return False
    return True


def is_k_dominating(g: Graph, k: int, d: Iterable[int]) -> bool:
    """True iff every vertex outside d has at least k neighbors inside d."""
    mask = set_to_bits(d)
    for v in range(g.n):
        if not (mask >> v) & 1 and (g.adj[v] & mask).bit_count() < k:
            return False
    return True


def prune_to_dependent(g: Graph, k: int, t: Iterable[int]) -> VertexSet:
    """Shrink t to a k-dependent subset without decreasing the potential.

    While some vertex has induced degree >= k, remove the one of maximum
    induced degree (ties to the smallest index); each removal changes the
    potential by degree - k >= 0.
    """
    mask = set_to_bits(t)
    phi_before = _phi_mask(g, k, mask)
    while True:
        worst_v, worst_deg = -1, k - 1
        for v in bits_to_list(mask):
            deg = (g.adj[v] & mask).bit_count()
            if deg > worst_deg:
                worst_v, worst_deg = v, deg
        if worst_v < 0:
            break
        mask &= ~(1 << worst_v)
    if _phi_mask(g, k, mask) < phi_before:
        raise AssertionError("pruning decreased the potential")
    return frozenset(bits_to_list(mask))


def k_optimal_sets(g: Graph, k: int, cap: int = EXHAUSTIVE_VERTICES) -> tuple[list[VertexSet], int]:
    """All potential maximizers among k-dependent sets, lexicographically sorted.

    Returns (maximizers, phi).  Refuses graphs above the vertex cap.
    """
    if g.n > cap:
        raise CapExceeded(f"k_optimal_sets: n={g.n} exceeds cap {cap}")
    best_phi = 0
    best: list[int] = [0]
    for mask in range(1, 1 << g.n):
        if not _dependent_mask(g, k, mask):
            continue
        phi = _phi_mask(g, k, mask)
        if phi > best_phi:
            best_phi, best = phi, [mask]
        elif phi == best_phi:
            best.append(mask)
    sets = sorted((frozenset(bits_to_list(m)) for m in best), key=sorted)
    return sets, best_phi


def k_optimal_exhaustive(g: Graph, k: int, cap: int = EXHAUSTIVE_VERTICES) -> OptimalSetResult:
    """Global maximum by subset enumeration; ties broken to the lex-least set."""
    sets, phi = k_optimal_sets(g, k, cap=cap)
    return OptimalSetResult(sets[0], phi, "exhaustive")


def phi_k_max(g: Graph, k: int, cap: int = EXHAUSTIVE_VERTICES) -> int:
    """Maximum potential over k-dependent sets (equals the unrestricted max)."""
    return k_optimal_sets(g, k, cap=cap)[1]


def gamma_k(g: Graph, k: int, cap: int = EXHAUSTIVE_VERTICES) -> int:
    """Exact minimum size of a k-dominating set, by enumeration."""
    if g.n > cap:
        raise CapExceeded(f"gamma_k: n={g.n} exceeds cap {cap}")
    best = g.n
    for mask in range(1 << g.n):
        size = mask.bit_count()
        if size < best and _dominating_mask(g, k, mask):
            best = size
    return best


def _dominating_mask(g: Graph, k: int, mask: int) -> bool:
    for v in range(g.n):
        if not (mask >> v) & 1 and (g.adj[v] & mask).bit_count() < k:
            return False
    return True


def alpha_k(g: Graph, k: int, cap: int = EXHAUSTIVE_VERTICES) -> int:
    """Exact maximum size of a k-dependent set, by enumeration."""
    if g.n > cap:
        raise CapExceeded(f"alpha_k: n={g.n} exceeds cap {cap}")
    best = 0
    for mask in range(1 << g.n):
        size = mask.bit_count()
        if size > best and _dependent_mask(g, k, mask):
            best = size
    return best


# ---------------------------------------------------------------------------
# the improvement step and the compensated-subgraph construction


def outside_subgraph(g: Graph, d: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on V - d, with its new->old index map."""
    return induced_subgraph(g, g.complement_set(d))


def compensation_demands(g: Graph, k: int, d: Iterable[int], j: Orientation) -> DemandProfile:
    """Demand max(0, k - outdeg_j) for each outside vertex.

    j must orient exactly the induced subgraph on V - d (as produced by
    outside_subgraph; j's vertex i is the i-th smallest outside vertex).
    """
    sub, order = outside_subgraph(g, d)
    if j.base != sub:
        raise ContractViolation(
            "orientation must be over the induced subgraph on the outside vertices"
        )
    return DemandProfile(k, {v: max(0, k - j.outdegree(i)) for i, v in enumerate(order)})


def improve_once(
    g: Graph, k: int, d: Iterable[int], j: Orientation
) -> VertexSet | KEdgeChromaticSubgraph:
    """One step of the potential-improvement dynamics.

    If the demand problem with demands max(0, k - outdeg_j) is feasible, the
    compensated subgraph is returned and d cannot be improved against this
    orientation.  Otherwise the min-cut violator S yields
    B = {v in d : |N(v) & S| <= k-1}, and pruning B | S gives a k-dependent
    set of strictly larger potential, which is returned.
    """
    d = frozenset(d)
    if not is_k_dependent(g, k, d):
        raise ContractViolation("improve_once requires a k-dependent starting set")
    profile = compensation_demands(g, k, d, j)
    res = check_generalized_lebensold(BipartiteSplit(g, d), profile)
    if isinstance(res, KEdgeChromaticSubgraph):
        return res
    smask = set_to_bits(res.s)
    b = frozenset(v for v in d if (g.adj[v] & smask).bit_count() <= k - 1)
    candidate = b | res.s
    improved = prune_to_dependent(g, k, candidate)
    phi_old = phi_k(g, k, d)
    phi_cand = phi_k(g, k, candidate)
    phi_new = phi_k(g, k, improved)
    if not phi_new >= phi_cand > phi_old:
        raise CounterexampleFound(
            "strict potential improvement from a demand violator",
            {
                "graph6": encode_graph6(g),
                "k": k,
                "d": sorted(d),
                "violator": sorted(res.s),
                "phi": [phi_old, phi_cand, phi_new],
            },
        )
    return improved


def verify_theorem_main(
    g: Graph, k: int, d: Iterable[int], j: Orientation
) -> KEdgeChromaticSubgraph:
    """Construct the compensated cross subgraph for a k-optimal set.

    Given a caller-certified k-optimal d and any orientation j of the outside
    induced subgraph, returns a properly <=k-colored subgraph M of the
    D-X bigraph with d_M(v) + outdeg_j(v) >= k for all outside v.  An
    infeasible demand problem here cannot happen for a truly k-optimal set,
    so it raises CounterexampleFound with the full instance.
    """
    d = frozenset(d)
    profile = compensation_demands(g, k, d, j)
    res = check_generalized_lebensold(BipartiteSplit(g, d), profile)
    if isinstance(res, HallViolator):
        raise CounterexampleFound(
            "compensated subgraph existence at a k-optimal set",
            {
                "graph6": encode_graph6(g),
                "k": k,
                "d": sorted(d),
                "arcs": sorted(j.arcs),
                "violator": sorted(res.s),
                "deficiency": res.deficiency,
            },
        )
    _, order = outside_subgraph(g, d)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        if res.degree(v) + j.outdegree(pos[v]) < k:
            raise AssertionError(f"compensation shortfall at vertex {v}")
    return res


def k_optimal_local(
    g: Graph, k: int, orientation_edge_cap: int = 12
) -> OptimalSetResult:
    """Iterate improve_once to a fixed point of the orientation policy.

    Policy: when the outside subgraph has at most orientation_edge_cap edges
    every orientation is tried; beyond that a fixed smallest-last degeneracy
    orientation is used, augmented with sink orientations at any outside
    vertex still missing k neighbors in d (each such orientation is
    guaranteed improvable, so the returned set is always k-dominating).
    Terminates because the potential strictly increases and is at most k*n.
    """
    d: VertexSet = frozenset()
    while True:
        sub, order = outside_subgraph(g, d)
        improved = None
        if sub.m <= orientation_edge_cap:
            for j in orient_all(sub, cap=orientation_edge_cap):
                out = improve_once(g, k, d, j)
                if isinstance(out, frozenset):
                    improved = out
                    break
        else:
            out = improve_once(g, k, d, _degeneracy_orientation(sub))
            if isinstance(out, frozenset):
                improved = out
            else:
                dmask = set_to_bits(d)
                for i, v in enumerate(order):
                    if (g.adj[v] & dmask).bit_count() < k:
                        out = improve_once(g, k, d, _sink_orientation(sub, i))
                        if not isinstance(out, frozenset):
                            raise CounterexampleFound(
                                "undominated vertex must admit improvement",
                                {"graph6": encode_graph6(g), "k": k, "d": sorted(d), "v": v},
                            )
                        improved = out
                        break
        if improved is None:
            break
        d = improved
    if not is_k_dominating(g, k, d):
        raise CounterexampleFound(
            "local fixed points are k-dominating",
            {"graph6": encode_graph6(g), "k": k, "d": sorted(d)},
        )
    return OptimalSetResult(d, phi_k(g, k, d), "local-maximum")


def _degeneracy_orientation(g: Graph) -> Orientation:
    """Orient each edge from the earlier-removed endpoint of a smallest-last
    removal sequence to the later-removed one; outdegrees <= degeneracy."""
    removed = []
    alive = set(range(g.n))
    while alive:
        v = min(alive, key=lambda u: ((g.adj[u] & set_to_bits(alive)).bit_count(), u))
        removed.append(v)
        alive.remove(v)
    pos = {v: i for i, v in enumerate(removed)}
    arcs = [(u, v) if pos[u] < pos[v] else (v, u) for u, v in g.edges]
    return Orientation(g, arcs)


def _sink_orientation(g: Graph, sink: int) -> Orientation:
    """The degeneracy orientation with every edge at `sink` turned inward."""
    base = _degeneracy_orientation(g)
    arcs = [(v, u) if u == sink else (u, v) for u, v in base.arcs]
    return Orientation(g, arcs)


def matchings_into_d(
    g: Graph, k: int, d: Iterable[int], s: Iterable[int]
) -> list[frozenset[Edge]]:
    """k disjoint matchings of an independent set s into a k-optimal set d.

    Specializes the compensated-subgraph construction to an orientation of
    the outside subgraph in which every vertex of s has outdegree 0; each of
    the k color classes then covers all of s.
    """
    d = frozenset(d)
    s = frozenset(s)
    if s & d:
        raise ContractViolation("s must be disjoint from d")
    if not is_k_dependent(g, 1, s):
        raise ContractViolation("s must be independent")
    sub, order = outside_subgraph(g, d)
    s_idx = {i for i, v in enumerate(order) if v in s}
    arcs = []
    for u, v in sub.edges:
        if u in s_idx:
            arcs.append((v, u))
        else:
            arcs.append((u, v))  # v in s_idx or neither; s is independent
    m = verify_theorem_main(g, k, d, Orientation(sub, arcs))
    out = []
    for c in range(1, k + 1):
        cls = frozenset(e for e in m.color_class(c) if e[0] in s or e[1] in s)
        covered = {v for e in cls for v in e if v in s}
        if covered != s:
            raise AssertionError(f"color class {c} fails to saturate s")
        out.append(cls)
    return out


def saturating_matching_complement(g: Graph, d: Iterable[int]) -> frozenset[Edge]:
    """A matching saturating every vertex outside a maximum independent set d.

    Greedy maximal matching inside the outside subgraph first; the leftover
    outside vertices form an independent set, matched into d through the
    demand engine.  A failure there would contradict the maximality of d.
    """
    d = frozenset(d)
    if not is_k_dependent(g, 1, d):
        raise ContractViolation("d must be independent")
    sub, order = outside_subgraph(g, d)
    used = set()
    m1: list[Edge] = []
    for u, v in sub.edge_list():
        if u not in used and v not in used:
            m1.append((order[u], order[v]))
            used.update((u, v))
    leftover = [order[i] for i in range(sub.n) if i not in used]
    res = check_generalized_lebensold(
        BipartiteSplit(g, d), DemandProfile(1, {v: 1 for v in leftover})
    )
    if isinstance(res, HallViolator):
        raise CounterexampleFound(
            "independent remainder matches into a maximum independent set",
            {
                "graph6": encode_graph6(g),
                "d": sorted(d),
                "violator": sorted(res.s),
            },
        )
    matching = frozenset(m1) | res.edges
    touched = set()
    for u, v in matching:
        if u in touched or v in touched:
            raise AssertionError("combined edge set is not a matching")
        touched.update((u, v))
    if not touched >= (set(range(g.n)) - d):
        raise AssertionError("outside vertex left unsaturated")
    return matching
