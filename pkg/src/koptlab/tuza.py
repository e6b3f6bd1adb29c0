"""Triangle packing and covering, maximum k-edge-colorable subgraphs, and the
translation pipelines between them on joins of an independent set with a
triangle-free graph.

On I_k v H every triangle is one apex plus one H-edge, so edge-disjoint
triangle packings correspond to partial k-edge-colorings of H and minimum
triangle covers correspond to potential maximizers.  The exact solvers here
are deliberately generic (branch and bound over the triangle list, and label
backtracking over edges) so they can sit on the opposite side of those
equalities from the constructive translations.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Iterable

from .caps import ALPHA_PRIME_EDGES, TRIANGLE_COUNT, CapExceeded, edge_cap
from .errors import ContractViolation
from .favaron import is_k_dependent, phi_k, k_optimal_exhaustive
from .graphs import (
    Edge,
    Graph,
    VertexSet,
    encode_graph6,
    induced_subgraph,
    join_independent,
    norm_edge,
    triangles,
)
from .matching import KEdgeChromaticSubgraph


class TrianglePacking:
    """A set of pairwise edge-disjoint triangles of a base graph."""

    __slots__ = ("base", "triples")

    def __init__(self, base: Graph, triples: Iterable[tuple[int, int, int]]):
        triples = frozenset(tuple(sorted(t)) for t in triples)
        used: set[Edge] = set()
        for a, b, c in triples:
            tri_edges = [norm_edge(a, b), norm_edge(a, c), norm_edge(b, c)]
            for e in tri_edges:
                if e not in base.edges:
                    raise ContractViolation(f"{(a, b, c)} is not a triangle of the base")
                if e in used:
                    raise ContractViolation(f"edge {e} shared by two packed triangles")
            used.update(tri_edges)
        self.base = base
        self.triples = triples

    @property
    def size(self) -> int:
        return len(self.triples)

    def __repr__(self) -> str:
        return f"TrianglePacking(size={self.size})"


class TriangleCover:
    """An edge set whose removal leaves the base graph triangle-free."""

    __slots__ = ("base", "cover")

    def __init__(self, base: Graph, cover: Iterable[Edge]):
        cover = frozenset(norm_edge(*e) for e in cover)
        if not cover <= base.edges:
            raise ContractViolation("cover contains non-edges")
        remainder = Graph(base.n, base.edges - cover)
        leftover = triangles(remainder)
        if leftover:
            raise ContractViolation(f"removal leaves triangles, e.g. {leftover[0]}")
        self.base = base
        self.cover = cover

    @property
    def size(self) -> int:
        return len(self.cover)

    def __repr__(self) -> str:
        return f"TriangleCover(size={self.size})"


def _triangle_masks(g: Graph) -> tuple[list[tuple[int, int, int]], list[int], dict[Edge, int]]:
    tris = triangles(g)
    edge_index = {e: i for i, e in enumerate(g.edge_list())}
    masks = []
    for a, b, c in tris:
        masks.append(
            (1 << edge_index[norm_edge(a, b)])
            | (1 << edge_index[norm_edge(a, c)])
            | (1 << edge_index[norm_edge(b, c)])
        )
    return tris, masks, edge_index


def _greedy_disjoint_count(masks: list[int], indices: list[int]) -> int:
    used = 0
    count = 0
    for i in indices:
        if masks[i] & used == 0:
            used |= masks[i]
            count += 1
    return count


def nu_exact(g: Graph, cap: int = TRIANGLE_COUNT) -> TrianglePacking:
    """Maximum edge-disjoint triangle packing by branch and bound.

    Branches on the lexicographically first still-available triangle
    (include/exclude); bounds by available count, by free-edge count / 3,
    and by a greedy completion that keeps the incumbent honest.
    """
    tris, masks, _ = _triangle_masks(g)
    if len(tris) > cap:
        raise CapExceeded(f"nu_exact: {len(tris)} triangles exceeds cap {cap}")

    best_count = -1
    best: list[int] = []

    def search(avail: list[int], used: int, chosen: list[int]) -> None:
        nonlocal best_count, best
        # greedy completion (also the incumbent update)
        g_used, completion = used, list(chosen)
        for i in avail:
            if masks[i] & g_used == 0:
                g_used |= masks[i]
                completion.append(i)
        if len(completion) > best_count:
            best_count, best = len(completion), completion
        if not avail:
            return
        free = 0
        for i in avail:
            free |= masks[i]
        if len(chosen) + min(len(avail), free.bit_count() // 3) <= best_count:
            return
        t = avail[0]
        taken = used | masks[t]
        search([i for i in avail[1:] if masks[i] & taken == 0], taken, chosen + [t])
        search(avail[1:], used, chosen)

    search(list(range(len(tris))), 0, [])
    return TrianglePacking(g, [tris[i] for i in best])


def tau_exact(g: Graph, cap: int = TRIANGLE_COUNT) -> TriangleCover:
    """Minimum edge set meeting every triangle, by branch and bound.

    Branches on the three edges of the first un-hit triangle (forbidding
    earlier siblings to avoid revisiting covers); the lower bound is a
    greedy edge-disjoint packing of the un-hit triangles.
    """
    tris, masks, edge_index = _triangle_masks(g)
    if len(tris) > cap:
        raise CapExceeded(f"tau_exact: {len(tris)} triangles exceeds cap {cap}")
    edges = g.edge_list()
    all_indices = list(range(len(tris)))

    # greedy incumbent: repeatedly take the edge hitting the most triangles
    cover_mask = 0
    while True:
        remaining = [i for i in all_indices if masks[i] & cover_mask == 0]
        if not remaining:
            break
        counts = [0] * len(edges)
        for i in remaining:
            m = masks[i]
            while m:
                low = m & -m
                m ^= low
                counts[low.bit_length() - 1] += 1
        cover_mask |= 1 << max(range(len(edges)), key=lambda e: (counts[e], -e))
    best_size = cover_mask.bit_count()
    best_mask = cover_mask

    def search(cover: int, size: int, forbidden: int) -> None:
        nonlocal best_size, best_mask
        remaining = [i for i in all_indices if masks[i] & cover == 0]
        if not remaining:
            if size < best_size:
                best_size, best_mask = size, cover
            return
        if size + _greedy_disjoint_count(masks, remaining) >= best_size:
            return
        tri = masks[remaining[0]]
        branch_forbidden = forbidden
        m = tri
        while m:
            low = m & -m
            m ^= low
            if not low & branch_forbidden:
                search(cover | low, size + 1, branch_forbidden)
                branch_forbidden |= low
    search(0, 0, 0)

    chosen = [edges[i] for i in range(len(edges)) if (best_mask >> i) & 1]
    return TriangleCover(g, chosen)


# ---------------------------------------------------------------------------
# maximum k-edge-colorable subgraph


def _max_matching(g: Graph) -> list[Edge]:
    """Exact maximum matching by include/exclude on the first usable edge."""
    edges = g.edge_list()
    best: list[Edge] = []

    def rec(i: int, used: int, picked: list[Edge]) -> None:
        nonlocal best
        if len(picked) > len(best):
            best = list(picked)
        j = i
        while j < len(edges) and ((used >> edges[j][0]) & 1 or (used >> edges[j][1]) & 1):
            j += 1
        if j == len(edges):
            return
        usable = sum(
            1
            for u, v in edges[j:]
            if not (used >> u) & 1 and not (used >> v) & 1
        )
        if len(picked) + usable <= len(best):
            return
        u, v = edges[j]
        rec(j + 1, used | (1 << u) | (1 << v), picked + [edges[j]])
        rec(j + 1, used, picked)

    rec(0, 0, [])
    return best


def alpha_k_prime(g: Graph, k: int, cap: int | None = None) -> KEdgeChromaticSubgraph:
    """Exact maximum k-edge-colorable subgraph.

    k = 1 runs a maximum-matching search; k >= 2 backtracks over edges with
    labels {skip, 1..k}, keeping every class a matching, breaking color
    symmetry by only opening color c+1 after color c, and pruning against
    k times the matching number.
    """
    limit = edge_cap(ALPHA_PRIME_EDGES, cap)
    if g.m > limit:
        raise CapExceeded(f"alpha_k_prime: {g.m} edges exceeds cap {limit}")
    if k == 1:
        matching = _max_matching(g)
        return KEdgeChromaticSubgraph(g, 1, {e: 1 for e in matching})

    edges = g.edge_list()
    mm = len(_max_matching(g))
    ceiling = min(g.m, k * mm)
    vertex_used = [0] * (k + 1)  # per color, bitmask of saturated vertices
    best_total = -1
    best_assign: dict[Edge, int] = {}
    assign: dict[Edge, int] = {}

    def rec(i: int, colored: int, opened: int) -> None:
        nonlocal best_total, best_assign
        if colored > best_total:
            best_total, best_assign = colored, dict(assign)
        if best_total >= ceiling:
            return
        if i == len(edges) or colored + (len(edges) - i) <= best_total:
            return
        u, v = edges[i]
        bit_u, bit_v = 1 << u, 1 << v
        for c in range(1, min(opened + 1, k) + 1):
            if not (vertex_used[c] & (bit_u | bit_v)):
                vertex_used[c] |= bit_u | bit_v
                assign[edges[i]] = c
                rec(i + 1, colored + 1, max(opened, c))
                del assign[edges[i]]
                vertex_used[c] &= ~(bit_u | bit_v)
        rec(i + 1, colored, opened)

    rec(0, 0, 0)
    return KEdgeChromaticSubgraph(g, k, best_assign)


def alpha_k_prime_greedy(g: Graph, k: int) -> KEdgeChromaticSubgraph:
    """Heuristic lower bound: k successive lexicographic maximal matchings."""
    taken: set[Edge] = set()
    coloring: dict[Edge, int] = {}
    for c in range(1, k + 1):
        used = 0
        for u, v in g.edge_list():
            if (u, v) not in taken and not (used >> u) & 1 and not (used >> v) & 1:
                coloring[(u, v)] = c
                taken.add((u, v))
                used |= (1 << u) | (1 << v)
    return KEdgeChromaticSubgraph(g, k, coloring)


# ---------------------------------------------------------------------------
# translations between H and I_k v H


def packing_from_coloring(h: Graph, k: int, m: KEdgeChromaticSubgraph) -> TrianglePacking:
    """Pair color class i with apex i-1: a packing of size |m| in the join."""
    if triangles(h):
        raise ContractViolation("h must be triangle-free")
    if m.base != h or m.k > k:
        raise ContractViolation("coloring must be a <=k-coloring of h")
    join = join_independent(k, h)
    triples = []
    for (u, v), c in m.colored.items():
        triples.append((c - 1, u + k, v + k))
    return TrianglePacking(join, triples)


def cover_from_optimal_set(h: Graph, k: int, d: Iterable[int]) -> TriangleCover:
    """Cover of the join from a k-dependent set: the edges inside d plus all
    apex edges to vertices outside d; its size is k|V(h)| - phi_k(d)."""
    if triangles(h):
        raise ContractViolation("h must be triangle-free")
    d = frozenset(d)
    if not is_k_dependent(h, k, d):
        raise ContractViolation("d must be k-dependent in h")
    cover = [(u + k, v + k) for u, v in h.edges if u in d and v in d]
    cover.extend((a, w + k) for a in range(k) for w in range(h.n) if w not in d)
    join = join_independent(k, h)
    out = TriangleCover(join, cover)
    expected = k * h.n - phi_k(h, k, d)
    if out.size != expected:
        raise AssertionError(f"cover size {out.size} != k|V| - phi = {expected}")
    return out


def normalize_cover(
    h: Graph, k: int, cover: TriangleCover
) -> tuple[TriangleCover, VertexSet]:
    """Make every apex of a join cover use the cheapest apex's edge pattern.

    Returns (X1, D) where D is the h-vertex set not covered from the cheapest
    apex; the normalized cover satisfies |X1| <= |cover| and
    |X1| >= k|V(h)| - phi_k(D), with the complement still triangle-free.
    """
    join = join_independent(k, h)
    if cover.base != join:
        raise ContractViolation("cover must live on the join of k apexes with h")
    patterns = []
    for a in range(k):
        patterns.append(frozenset(w - k for (x, w) in cover.cover if x == a))
    best_apex = min(range(k), key=lambda a: (len(patterns[a]), a))
    pattern = patterns[best_apex]
    kept = [e for e in cover.cover if e[0] >= k]  # h-internal edges of the cover
    apex_part = [(a, w + k) for a in range(k) for w in sorted(pattern)]
    normalized = TriangleCover(join, kept + apex_part)
    if normalized.size > cover.size:
        raise AssertionError("normalization increased the cover")
    d = frozenset(range(h.n)) - pattern
    if normalized.size < k * h.n - phi_k(h, k, d):
        raise AssertionError("normalized cover below its potential bound")
    return normalized, d


@dataclass(frozen=True)
class TuzaReport:
    """Both sides of the join equalities, plus the special-conjecture check."""

    h_graph6: str
    n_h: int
    k: int
    nu: int
    tau: int
    alpha_prime: int
    phi_max: int
    translated_packing: int
    translated_cover: int

    @property
    def nu_matches(self) -> bool:
        return self.nu == self.alpha_prime

    @property
    def tau_matches(self) -> bool:
        return self.tau == self.k * self.n_h - self.phi_max

    @property
    def conjecture_holds(self) -> bool:
        return self.tau <= 2 * self.nu

    @property
    def all_hold(self) -> bool:
        return self.nu_matches and self.tau_matches and self.conjecture_holds


def verify_tuza_connection(h: Graph, k: int) -> TuzaReport:
    """Compute both join equalities generically and check the special
    packing-covering inequality on I_k v h."""
    if triangles(h):
        raise ContractViolation("h must be triangle-free")
    join = join_independent(k, h)
    packing = nu_exact(join)
    cov = tau_exact(join)
    nu, tau = packing.size, cov.size
    if not nu <= tau <= 3 * nu:
        raise AssertionError(f"packing/cover chain violated: nu={nu}, tau={tau}")
    coloring = alpha_k_prime(h, k)
    opt = k_optimal_exhaustive(h, k)
    translated_packing = packing_from_coloring(h, k, coloring).size
    translated_cover = cover_from_optimal_set(h, k, opt.d).size
    return TuzaReport(
        h_graph6=encode_graph6(h),
        n_h=h.n,
        k=k,
        nu=nu,
        tau=tau,
        alpha_prime=coloring.size,
        phi_max=opt.phi,
        translated_packing=translated_packing,
        translated_cover=translated_cover,
    )


# ---------------------------------------------------------------------------
# Vizing coloring and the colorable-subgraph lower-bound pipeline


def vizing_color(g: Graph, colors: int) -> dict[Edge, int]:
    """Proper edge coloring with the given palette size (>= max degree + 1).

    Fan recoloring: build a maximal fan at one endpoint of the uncolored
    edge, swap a two-color alternating path through that endpoint when the
    fan cannot be finished directly, then rotate a fan prefix.
    """
    if colors < g.max_degree() + 1:
        raise ContractViolation(
            f"need at least max degree + 1 = {g.max_degree() + 1} colors, got {colors}"
        )
    palette = range(1, colors + 1)
    color_of: dict[Edge, int] = {}
    at: dict[tuple[int, int], int] = {}  # (vertex, color) -> other endpoint

    def free(v: int) -> list[int]:
        return [c for c in palette if (v, c) not in at]

    def set_color(u: int, v: int, c: int | None) -> None:
        e = norm_edge(u, v)
        old = color_of.pop(e, None)
        if old is not None:
            del at[(u, old)]
            del at[(v, old)]
        if c is not None:
            color_of[e] = c
            at[(u, c)] = v
            at[(v, c)] = u

    def invert_path(start: int, missing: int, other: int) -> None:
        """Swap two colors along the maximal path from start, which misses
        `missing` and therefore begins (if at all) on an `other` edge."""
        path = []
        cur, want = start, other
        while (cur, want) in at:
            nxt = at[(cur, want)]
            path.append((cur, nxt, want))
            cur, want = nxt, (missing if want == other else other)
        for u, v, _ in path:
            set_color(u, v, None)
        for u, v, c in path:
            set_color(u, v, missing if c == other else other)

    for e in g.edge_list():
        u, v = e
        fan = [v]
        in_fan = {v}
        while True:
            tail = fan[-1]
            grown = False
            for c in free(tail):
                w = at.get((u, c))
                if w is not None and w not in in_fan:
                    fan.append(w)
                    in_fan.add(w)
                    grown = True
                    break
            if not grown:
                break
        c_u = free(u)[0]
        d_tail = free(fan[-1])[0]
        if (u, d_tail) in at:
            # u misses c_u, so the c/d path through u starts on its d edge
            invert_path(u, c_u, d_tail)
        # after the inversion d_tail is free at u; take the first vertex of
        # the still-valid fan prefix missing d_tail and rotate up to it
        target = None
        for idx in range(len(fan)):
            if idx > 0:
                col = color_of.get(norm_edge(u, fan[idx]))
                if col is None or (fan[idx - 1], col) in at:
                    break
            if (fan[idx], d_tail) not in at:
                target = idx
                break
        if target is None:
            raise AssertionError("fan rotation target must exist")
        shifted = [color_of[norm_edge(u, fan[i + 1])] for i in range(target)]
        for i in range(1, target + 1):
            set_color(u, fan[i], None)
        for i in range(target):
            set_color(u, fan[i], shifted[i])
        set_color(u, fan[target], d_tail)

    # full properness sweep; cheap at desk scale
    for (w, c), other in at.items():
        assert color_of[norm_edge(w, other)] == c
    return color_of


def edgetuza_pipeline(
    g: Graph, k: int, d: Iterable[int], saturating: KEdgeChromaticSubgraph
) -> KEdgeChromaticSubgraph:
    """Merge a coloring of the inside of d with matchings saturating the
    outside, producing T with 2|T| >= k|V| - phi_k(d).

    Counting chain asserted along the way: with q cross edges of T and r
    inside edges that fail to survive the merge, each failed edge is
    witnessed by a distinct cross edge, so r <= q and the bound follows.
    """
    d = frozenset(d)
    if not is_k_dependent(g, k, d):
        raise ContractViolation("d must induce maximum degree <= k-1")
    outside = g.complement_set(d)
    for v in outside:
        if saturating.degree(v) != k:
            raise ContractViolation(f"outside vertex {v} has saturating degree != k")

    # matchings of the hypothesis subgraph, trimmed to edges meeting the outside
    m_prime = [
        frozenset(e for e in saturating.color_class(c) if e[0] in outside or e[1] in outside)
        for c in range(1, k + 1)
    ]
    sub, order = induced_subgraph(g, d)
    inside_coloring = vizing_color(sub, k) if sub.m else {}
    n_classes: list[frozenset[Edge]] = [
        frozenset(
            norm_edge(order[a], order[b])
            for (a, b), col in inside_coloring.items()
            if col == c
        )
        for c in range(1, k + 1)
    ]

    merged: dict[Edge, int] = {}
    for c in range(1, k + 1):
        cls = set(m_prime[c - 1])
        touched = {v for e in cls for v in e}
        for e in sorted(n_classes[c - 1]):
            if e[0] not in touched and e[1] not in touched:
                cls.add(e)
                touched.update(e)
        for e in cls:
            merged[e] = c
    t = KEdgeChromaticSubgraph(g, k, merged)

    q = sum(1 for e in t.colored if (e[0] in d) != (e[1] in d))
    inside_edges = {e for e in g.edges if e[0] in d and e[1] in d}
    r = sum(1 for e in inside_edges if e not in t.colored)
    if r > q:
        raise AssertionError(f"dropped inside edges r={r} exceed cross edges q={q}")
    bound = k * g.n - phi_k(g, k, d)
    if 2 * t.size < bound:
        raise AssertionError(f"2|T|={2 * t.size} below the bound {bound}")
    return t
