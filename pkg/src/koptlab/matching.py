"""Degree-constrained bipartite subgraph existence and bipartite edge coloring.

The central routine decides whether a bipartite split has a subgraph, proper
edge-colorable with at most k colors, meeting a per-vertex degree demand on
the X side.  Feasibility is decided by a max-flow computation; a feasible
flow is decomposed into matchings with an alternating-path (Konig) coloring,
and an infeasible instance yields a violating X-subset read off the
reachable-set min cut together with its counting deficiency.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping

from .errors import ContractViolation
from .graphs import BipartiteSplit, Edge, Graph, bits_to_list, norm_edge


class DemandProfile:
    """Per-vertex degree demands on the X side, clamped into 0..k."""

    __slots__ = ("k", "demands")

    def __init__(self, k: int, demands: Mapping[int, int]):
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        self.k = k
        self.demands = {v: max(0, min(k, d)) for v, d in demands.items()}

    def demand(self, v: int) -> int:
        return self.demands.get(v, 0)

    @property
    def total(self) -> int:
        return sum(self.demands.values())

    @classmethod
    def uniform(cls, k: int, x_side) -> "DemandProfile":
        return cls(k, {v: k for v in x_side})

    def __repr__(self) -> str:
        return f"DemandProfile(k={self.k}, demands={dict(sorted(self.demands.items()))})"


class KEdgeChromaticSubgraph:
    """An edge subset of a base graph, properly colored with colors 1..k."""

    __slots__ = ("base", "k", "colored")

    def __init__(self, base: Graph, k: int, colored: Mapping[Edge, int]):
        colored = {norm_edge(*e): c for e, c in colored.items()}
        seen_at: dict[tuple[int, int], Edge] = {}
        for (u, v), c in colored.items():
            if (u, v) not in base.edges:
                raise ContractViolation(f"colored edge ({u},{v}) is not in the base graph")
            if not (1 <= c <= k):
                raise ContractViolation(f"color {c} of edge ({u},{v}) outside 1..{k}")
            for w in (u, v):
                clash = seen_at.get((w, c))
                if clash is not None:
                    raise ContractViolation(
                        f"edges {clash} and {(u, v)} share vertex {w} and color {c}"
                    )
                seen_at[(w, c)] = (u, v)
        self.base = base
        self.k = k
        self.colored: dict[Edge, int] = dict(colored)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(self.colored)

    @property
    def size(self) -> int:
        return len(self.colored)

    def degree(self, v: int) -> int:
        return sum(1 for u, w in self.colored if v in (u, w))

    def color_class(self, c: int) -> frozenset[Edge]:
        return frozenset(e for e, col in self.colored.items() if col == c)

    def color_classes(self) -> list[frozenset[Edge]]:
        """Classes 1..k in order; empty classes included."""
        return [self.color_class(c) for c in range(1, self.k + 1)]

    def __repr__(self) -> str:
        return f"KEdgeChromaticSubgraph(k={self.k}, size={self.size})"


class HallViolator:
    """An X-subset whose demand total exceeds its capped neighborhood count."""

    __slots__ = ("s", "deficiency")

    def __init__(self, s, deficiency: int):
        self.s: frozenset[int] = frozenset(s)
        self.deficiency = deficiency
        if deficiency <= 0:
            raise ValueError("a violator must have positive deficiency")

    def __repr__(self) -> str:
        return f"HallViolator(s={sorted(self.s)}, deficiency={self.deficiency})"


def capped_neighborhood_sum(split: BipartiteSplit, k: int, s) -> int:
    """sum over d_side of min(k, |N(v) & s|), counted in the split's bigraph."""
    smask = 0
    for v in s:
        smask |= 1 << v
    cross_adj = _cross_adjacency(split)
    return sum(min(k, (cross_adj[v] & smask).bit_count()) for v in split.d_side)


def _cross_adjacency(split: BipartiteSplit) -> dict[int, int]:
    adj = {v: 0 for v in range(split.base.n)}
    for u, v in split.cross_edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def check_generalized_lebensold(
    split: BipartiteSplit, profile: DemandProfile
) -> KEdgeChromaticSubgraph | HallViolator:
    """Decide the degree-demand problem on a bipartite split.

    Returns a properly colored subgraph M of the cross bigraph with
    d_M(v) >= demand(v) on the X side and max degree <= k on the D side,
    or a HallViolator S with

        sum_{v in D} min(k, |N(v) & S|)  <  sum_{v in S} demand(v).

    The decision runs as a max flow (source -> x with capacity demand(x),
    x -> d with capacity 1, d -> sink with capacity k); the violator is the
    X part of the source-side reachable set of the final residual network.
    """
    k = profile.k
    x_order = sorted(split.x_side)
    d_order = sorted(split.d_side)
    cross_adj = _cross_adjacency(split)

    # node ids: 0 = source, 1 = sink, then x nodes, then d nodes
    node_of_x = {v: 2 + i for i, v in enumerate(x_order)}
    node_of_d = {v: 2 + len(x_order) + i for i, v in enumerate(d_order)}
    size = 2 + len(x_order) + len(d_order)
    cap = [dict() for _ in range(size)]

    def add_arc(a: int, b: int, c: int) -> None:
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    for v in x_order:
        add_arc(0, node_of_x[v], profile.demand(v))
    for v in x_order:
        for w in bits_to_list(cross_adj[v]):
            add_arc(node_of_x[v], node_of_d[w], 1)
    for w in d_order:
        add_arc(node_of_d[w], 1, k)

    flow_value = _max_flow(cap, 0, 1)

    if flow_value == profile.total:
        edges: dict[Edge, int] = {}
        for v in x_order:
            nv = node_of_x[v]
            for w in bits_to_list(cross_adj[v]):
                # flow on x->d shows up as gained reverse capacity
                if cap[node_of_d[w]][nv] > 0:
                    edges[norm_edge(v, w)] = 0
        flow_graph = Graph(split.base.n, edges.keys())
        coloring = konig_color(flow_graph, k)
        return KEdgeChromaticSubgraph(split.base, k, coloring.colored)

    reachable = _residual_reachable(cap, 0)
    s = frozenset(v for v in x_order if node_of_x[v] in reachable)
    deficiency = sum(profile.demand(v) for v in s) - capped_neighborhood_sum(split, k, s)
    if flow_value + deficiency != profile.total:
        raise AssertionError("max flow plus cut deficiency must equal the demand total")
    return HallViolator(s, deficiency)


def _max_flow(cap: list[dict[int, int]], source: int, sink: int) -> int:
    """Edmonds-Karp on the residual table; neighbors scanned in sorted order."""
    total = 0
    while True:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in sorted(cap[a]):
                if b not in parent and cap[a][b] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return total
        # bottleneck along the path
        path = []
        b = sink
        while b != source:
            a = parent[b]
            path.append((a, b))
            b = a
        push = min(cap[a][b] for a, b in path)
        for a, b in path:
            cap[a][b] -= push
            cap[b][a] += push
        total += push


def _residual_reachable(cap: list[dict[int, int]], source: int) -> set[int]:
    seen = {source}
    queue = deque([source])
    while queue:
        a = queue.popleft()
        for b in sorted(cap[a]):
            if b not in seen and cap[a][b] > 0:
                seen.add(b)
                queue.append(b)
    return seen


def lebensold_classic(split: BipartiteSplit, k: int) -> KEdgeChromaticSubgraph | HallViolator:
    """The uniform all-demands-equal-k case: k disjoint matchings saturating X."""
    return check_generalized_lebensold(split, DemandProfile.uniform(k, split.x_side))


def auxiliary_extension(split: BipartiteSplit, profile: DemandProfile) -> BipartiteSplit:
    """Attach k - demand(v) pendant D-vertices to each X vertex v.

    The extended split reduces the general demand problem to the uniform one:
    the generalized check on the original split is feasible exactly when the
    classic check on the extension is.
    """
    k = profile.k
    base = split.base
    edges = list(base.edges)
    new_d = []
    nxt = base.n
    for v in sorted(split.x_side):
        for _ in range(k - profile.demand(v)):
            edges.append((v, nxt))
            new_d.append(nxt)
            nxt += 1
    extended = Graph(nxt, edges)
    return BipartiteSplit(extended, split.d_side | frozenset(new_d))


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """A 2-coloring of each component (BFS, smallest vertex first), or None."""
    color = [-1] * g.n
    left, right = set(), set()
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        left.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    (left if color[w] == 0 else right).add(w)
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return frozenset(left), frozenset(right)


def konig_color(g: Graph, k: int) -> KEdgeChromaticSubgraph:
    """Properly color every edge of a bipartite graph with at most k colors.

    Requires max degree <= k.  Follows the alternating-path argument: when
    no color is free at both endpoints of the next edge, swap the two
    candidate colors along the alternating path starting at one endpoint,
    after which a shared free color exists.
    """
    sides = bipartition(g)
    if sides is None:
        raise ContractViolation("konig_color requires a bipartite graph")
    if g.max_degree() > k:
        raise ContractViolation(
            f"konig_color requires max degree <= {k}, got {g.max_degree()}"
        )
    # edge_at[(v, c)] = edge of color c incident to v, if any
    edge_at: dict[tuple[int, int], Edge] = {}
    color_of: dict[Edge, int] = {}

    def free_colors(v: int) -> list[int]:
        return [c for c in range(1, k + 1) if (v, c) not in edge_at]

    def assign(e: Edge, c: int) -> None:
        old = color_of.get(e)
        if old is not None:
            del edge_at[(e[0], old)]
            del edge_at[(e[1], old)]
        color_of[e] = c
        edge_at[(e[0], c)] = e
        edge_at[(e[1], c)] = e

    for e in g.edge_list():
        u, v = e
        fu = free_colors(u)
        fv = free_colors(v)
        shared = sorted(set(fu) & set(fv))
        if shared:
            assign(e, shared[0])
            continue
        a, b = fu[0], fv[0]
        # walk the a/b alternating path from v (v misses b, so it starts on a)
        path = []
        cur, want = v, a
        while (cur, want) in edge_at:
            f = edge_at[(cur, want)]
            path.append(f)
            cur = f[0] if f[1] == cur else f[1]
            want = a if want == b else b
        # two-phase swap: consecutive path edges share vertices, so remove
        # every path edge from the maps before re-adding with flipped colors
        flipped = {f: (b if color_of[f] == a else a) for f in path}
        for f in path:
            old = color_of.pop(f)
            del edge_at[(f[0], old)]
            del edge_at[(f[1], old)]
        for f, c in flipped.items():
            color_of[f] = c
            edge_at[(f[0], c)] = f
            edge_at[(f[1], c)] = f
        assign(e, a)

    return KEdgeChromaticSubgraph(g, k, color_of)
