"""Sequential decompositions of orientations, kernels, and the kernel-method
construction of saturating colorings.

A good decomposition splits the arcs of an odd-dicycle-free orientation into
ordered layers whose components are directed paths or even cycles, with
per-vertex outdegrees non-increasing across layers.  Equivalently (and this
is what the search exploits): every vertex's out-arcs occupy layers
1..outdegree bijectively, and no two arcs of a layer share a head.  From a
good decomposition, an auxiliary bigraph colored by layer index feeds the
kernel method, whose color classes project back to matchings that realize
any list demand bounded by the outdegrees.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from collections.abc import Iterable, Mapping

from .caps import DECOMP_SEARCH_EDGES, KERNEL_VERTICES, CapExceeded, edge_cap
from .errors import ContractViolation, CounterexampleFound
from .graphs import (
    Arc,
    BipartiteSplit,
    Edge,
    Graph,
    Orientation,
    encode_graph6,
    norm_edge,
)
from .saturation import PartialEdgeColoring, is_saturating, normalize_lists


class SequentialDecomposition:
    """An ordered partition of an arc set into layers (trailing empties dropped)."""

    __slots__ = ("layers",)

    def __init__(self, layers: Iterable[Iterable[Arc]]):
        stacked = [frozenset(layer) for layer in layers]
        while stacked and not stacked[-1]:
            stacked.pop()
        seen: set[Arc] = set()
        for layer in stacked:
            if layer & seen:
                raise ValueError(f"arcs {sorted(layer & seen)} appear in two layers")
            seen |= layer
        self.layers: tuple[frozenset[Arc], ...] = tuple(stacked)

    @property
    def depth(self) -> int:
        return len(self.layers)

    def all_arcs(self) -> frozenset[Arc]:
        return frozenset(a for layer in self.layers for a in layer)

    def __repr__(self) -> str:
        return f"SequentialDecomposition(depth={self.depth})"


@dataclass(frozen=True)
class GoodDecompositionCertificate:
    base: Orientation
    decomposition: SequentialDecomposition


@dataclass(frozen=True)
class InvalidDecomposition:
    condition: str
    witness: object


def find_odd_directed_cycle(vertices: Iterable[int], arcs: Iterable[Arc]) -> list[int] | None:
    """First odd simple directed cycle in DFS order, as a vertex list, or None."""
    out: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in sorted(arcs):
        out.setdefault(u, []).append(v)
        out.setdefault(v, [])
    found: list[int] | None = None

    def dfs(path: list[int], on_path: set[int]) -> bool:
        nonlocal found
        u = path[-1]
        for w in out[u]:
            if w == path[0] and len(path) >= 3 and len(path) % 2 == 1:
                found = list(path)
                return True
            if w > path[0] and w not in on_path:
                path.append(w)
                on_path.add(w)
                if dfs(path, on_path):
                    return True
                on_path.remove(w)
                path.pop()
        return False

    for s in sorted(out):
        if dfs([s], {s}):
            return found
    return None


def _layer_shape_violation(layer: frozenset[Arc]) -> tuple[str, object] | None:
    """None if every component is a directed path or even cycle."""
    outd: dict[int, int] = {}
    ind: dict[int, int] = {}
    for u, v in layer:
        outd[u] = outd.get(u, 0) + 1
        ind[v] = ind.get(v, 0) + 1
        if outd[u] > 1:
            return ("vertex with layer outdegree above 1", u)
        if ind[v] > 1:
            return ("vertex with layer indegree above 1", v)
    succ = {u: v for u, v in layer}
    # strip path arcs: walk forward from every path start
    on_cycle = dict(succ)
    for u in succ:
        if u not in ind:  # a path start
            cur = u
            while cur in on_cycle:
                nxt = on_cycle.pop(cur)
                cur = nxt
    # what remains is a disjoint union of directed cycles
    while on_cycle:
        start = min(on_cycle)
        cycle = [start]
        cur = on_cycle.pop(start)
        while cur != start:
            cycle.append(cur)
            cur = on_cycle.pop(cur)
        if len(cycle) % 2 == 1:
            return ("odd directed cycle inside a layer", cycle)
    return None


def validate_good(
    base: Orientation, layers: SequentialDecomposition
) -> GoodDecompositionCertificate | InvalidDecomposition:
    """Check the three conditions of a good decomposition, in a fixed order,
    reporting the first failure with a witness."""
    if layers.all_arcs() != base.arcs:
        raise ContractViolation("layers do not partition the base arc set")
    cycle = find_odd_directed_cycle(range(base.base.n), base.arcs)
    if cycle is not None:
        return InvalidDecomposition("odd directed cycle in the orientation", cycle)
    for i, layer in enumerate(layers.layers):
        bad = _layer_shape_violation(layer)
        if bad is not None:
            return InvalidDecomposition(bad[0] + f" (layer {i + 1})", bad[1])
    outs: list[dict[int, int]] = []
    for layer in layers.layers:
        cnt: dict[int, int] = {}
        for u, _ in layer:
            cnt[u] = cnt.get(u, 0) + 1
        outs.append(cnt)
    for i in range(len(outs) - 1):
        for v in range(base.base.n):
            if outs[i].get(v, 0) < outs[i + 1].get(v, 0):
                return InvalidDecomposition(
                    "outdegree not monotone across layers", (v, i + 1)
                )
    return GoodDecompositionCertificate(base, layers)


@dataclass(frozen=True)
class SearchExhausted:
    complete: bool  # True: the whole space was covered and nothing exists
    orientations_tried: int
    assignments_tried: int


def search_good_decomposition(
    g: Graph, budget: int | None = None, cap: int | None = None
) -> GoodDecompositionCertificate | SearchExhausted:
    """Exhaustive search for a good decomposition of some orientation of g.

    Orientations are enumerated in Gray-code order over edge-direction bits;
    those with a directed odd cycle are skipped.  For the rest, layer
    assignment uses the prefix reformulation: each vertex's out-arcs get the
    slots 1..outdegree bijectively, backtracking on per-layer head clashes.
    An exhausted full space is a genuine counterexample report; a budget stop
    (counted in backtracking nodes) is marked incomplete.
    """
    limit = edge_cap(DECOMP_SEARCH_EDGES, cap)
    if budget is None and g.m > limit:
        raise CapExceeded(
            f"search_good_decomposition: {g.m} edges exceeds exhaustive cap {limit}; "
            f"pass a budget for sampling mode"
        )
    edges = g.edge_list()
    nodes = 0
    orientations = 0
    for idx in range(1 << g.m):
        code = idx ^ (idx >> 1)
        arcs = [
            (v, u) if (code >> i) & 1 else (u, v) for i, (u, v) in enumerate(edges)
        ]
        orientations += 1
        if find_odd_directed_cycle(range(g.n), arcs) is not None:
            continue
        out_arcs: dict[int, list[Arc]] = {v: [] for v in range(g.n)}
        for a in sorted(arcs):
            out_arcs[a[0]].append(a)
        tails = [v for v in range(g.n) if out_arcs[v]]
        assignment: dict[Arc, int] = {}
        used_heads: set[tuple[int, int]] = set()

        def assign(ti: int) -> bool:
            nonlocal nodes
            nodes += 1
            if budget is not None and nodes > budget:
                return False
            if ti == len(tails):
                return True
            v = tails[ti]
            arcs_v = out_arcs[v]

            def place(ai: int, free_slots: tuple[int, ...]) -> bool:
                if ai == len(arcs_v):
                    return assign(ti + 1)
                arc = arcs_v[ai]
                for si, slot in enumerate(free_slots):
                    if (slot, arc[1]) in used_heads:
                        continue
                    used_heads.add((slot, arc[1]))
                    assignment[arc] = slot
                    if place(ai + 1, free_slots[:si] + free_slots[si + 1 :]):
                        return True
                    del assignment[arc]
                    used_heads.discard((slot, arc[1]))
                return False

            return place(0, tuple(range(1, len(arcs_v) + 1)))

        if assign(0):
            depth = max(assignment.values(), default=0)
            layers = [
                frozenset(a for a, s in assignment.items() if s == i)
                for i in range(1, depth + 1)
            ]
            base = Orientation(g, arcs)
            cert = validate_good(base, SequentialDecomposition(layers))
            if isinstance(cert, InvalidDecomposition):
                raise AssertionError(f"search produced an invalid certificate: {cert}")
            return cert
        if budget is not None and nodes > budget:
            return SearchExhausted(False, orientations, nodes)
    return SearchExhausted(True, orientations, nodes)


def kernel_bruteforce(
    vertices: Iterable[int], arcs: Iterable[Arc], cap: int = KERNEL_VERTICES
) -> frozenset[int] | None:
    """Smallest-lexicographic kernel of a digraph by subset enumeration.

    A kernel is an independent set (no arcs between members, either way)
    that every outside vertex sends an arc into.
    """
    verts = sorted(set(vertices))
    if len(verts) > cap:
        raise CapExceeded(f"kernel_bruteforce: {len(verts)} vertices exceeds cap {cap}")
    arcset = {(u, v) for u, v in arcs if u in verts and v in verts}
    into: dict[int, set[int]] = {v: set() for v in verts}
    for u, v in arcset:
        into[u].add(v)  # u can escape into v
    best: tuple[int, ...] | None = None
    for mask in range(1 << len(verts)):
        members = [verts[i] for i in range(len(verts)) if (mask >> i) & 1]
        mset = set(members)
        if any(u in mset and v in mset for u, v in arcset):
            continue
        if all(v in mset or into[v] & mset for v in verts):
            key = tuple(members)
            if best is None or key < best:
                best = key
    return frozenset(best) if best is not None else None


def galvin_orientation(u_bigraph: BipartiteSplit, phi: Mapping[Edge, int]) -> Orientation:
    """Kernel-perfect orientation of the line graph of an edge-colored bigraph.

    Line vertices are the cross edges in sorted order.  For conflicting
    edges, the one of lower color points at the higher when they meet on the
    x side, and the higher points at the lower when they meet on the d side.
    """
    edges = sorted(u_bigraph.cross_edges)
    colors = {}
    for e in edges:
        if e not in phi:
            raise ContractViolation(f"edge {e} missing a color")
        colors[e] = phi[e]
    index = {e: i for i, e in enumerate(edges)}
    line_edges = []
    arcs = []
    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1 :]:
            shared = set(e1) & set(e2)
            if not shared:
                continue
            if colors[e1] == colors[e2]:
                raise ContractViolation(
                    f"edges {e1} and {e2} share a vertex and the color {colors[e1]}"
                )
            w = shared.pop()
            line_edges.append((index[e1], index[e2]))
            low, high = (e1, e2) if colors[e1] < colors[e2] else (e2, e1)
            if w in u_bigraph.x_side:
                arcs.append((index[low], index[high]))
            else:
                arcs.append((index[high], index[low]))
    line = Graph(len(edges), line_edges)
    return Orientation(line, arcs)


def _cover_matching(arcs_c: set[Arc]) -> set[Edge]:
    """A matching in the underlying graph covering every positive-outdegree
    vertex: odd-position arcs of each path, one alternating class per even
    cycle (the class containing the lexicographically least arc)."""
    succ = {u: v for u, v in arcs_c}
    ind: dict[int, int] = {}
    for _, v in arcs_c:
        ind[v] = ind.get(v, 0) + 1
    chosen: set[Edge] = set()
    remaining = dict(succ)
    for u in sorted(succ):
        if u in ind or u not in remaining:
            continue
        take = True  # odd positions, counted from the path start
        cur = u
        while cur in remaining:
            nxt = remaining.pop(cur)
            if take:
                chosen.add(norm_edge(cur, nxt))
            take = not take
            cur = nxt
    while remaining:
        least = min((u, v) for u, v in remaining.items())
        take = True
        cur = least[0]
        while cur in remaining:
            nxt = remaining.pop(cur)
            if take:
                chosen.add(norm_edge(cur, nxt))
            take = not take
            cur = nxt
    return chosen


def decomposition_to_saturating(
    g: Graph, cert: GoodDecompositionCertificate, l: Mapping[int, Iterable[int]]
) -> PartialEdgeColoring:
    """Saturating coloring of g for lists bounded by the certificate's
    outdegrees, built with the kernel method.

    Steps: auxiliary bigraph with one x/y copy pair per vertex and one edge
    per arc, colored by layer index (properness and the 1..degree prefix at
    each x copy asserted); lists padded to exact outdegree with fresh
    colors and lifted to the line graph; kernel-greedy list coloring over
    the kernel-perfect line orientation; each color class projects to a
    subdigraph with in/out degrees at most 1 whose path/even-cycle
    components admit matchings covering the positive-outdegree vertices;
    the union of those matchings, dummies stripped, saturates the lists.
    """
    base = cert.base
    if base.base != g:
        raise ContractViolation("certificate does not orient this graph")
    lists = normalize_lists(g, l)
    for v in range(g.n):
        if len(lists[v]) > base.outdegree(v):
            raise ContractViolation(
                f"list at {v} larger than outdegree {base.outdegree(v)}"
            )
    payload = {
        "graph6": encode_graph6(g),
        "arcs": sorted(base.arcs),
        "layers": [sorted(layer) for layer in cert.decomposition.layers],
        "lists": {v: sorted(c) for v, c in lists.items()},
    }

    # auxiliary bigraph: x copy of v is v, y copy is n + v
    n = g.n
    aux_edges = {}
    for i, layer in enumerate(cert.decomposition.layers, start=1):
        for u, v in layer:
            aux_edges[(u, n + v)] = i
    aux = Graph(2 * n, aux_edges.keys())
    split = BipartiteSplit(aux, d_side=range(n, 2 * n))
    for v in range(n):
        at_x = sorted(aux_edges[e] for e in aux_edges if e[0] == v)
        if at_x != list(range(1, len(at_x) + 1)):
            raise CounterexampleFound("layer colors form a prefix at each x copy", payload)
        at_y = [aux_edges[e] for e in aux_edges if e[1] == n + v]
        if len(at_y) != len(set(at_y)):
            raise CounterexampleFound("layer coloring proper at y copies", payload)

    orientation = galvin_orientation(split, aux_edges)
    line_vertices = sorted(split.cross_edges)
    arc_of_line = {i: (e[0], e[1] - n) for i, e in enumerate(line_vertices)}
    for i, e in enumerate(line_vertices):
        if orientation.outdegree(i) > aux.degree(e[0]) - 1:
            raise CounterexampleFound(
                "line out-neighborhoods below the x-copy degree", payload
            )

    # pad to exact outdegree with fresh colors, then lift to the line graph
    real = set().union(*lists.values())
    dummy = (max(real) if real else 0) + 1
    padded: dict[int, set[int]] = {}
    for v in range(n):
        extra = set()
        while len(lists[v]) + len(extra) < base.outdegree(v):
            extra.add(dummy)
            dummy += 1
        padded[v] = set(lists[v]) | extra
    line_lists = {i: set(padded[line_vertices[i][0]]) for i in range(len(line_vertices))}

    # kernel-greedy list coloring of the line graph
    psi_line: dict[int, int] = {}
    all_colors = sorted(set().union(*line_lists.values())) if line_lists else []
    for c in all_colors:
        group = [i for i in sorted(line_lists) if i not in psi_line and c in line_lists[i]]
        if not group:
            continue
        member = set(group)
        sub_arcs = [(a, b) for a, b in orientation.arcs if a in member and b in member]
        kern = kernel_bruteforce(group, sub_arcs)
        if kern is None:
            raise CounterexampleFound("kernel existence in the line orientation", payload)
        for i in kern:
            psi_line[i] = c
        for i in group:
            if i not in kern:
                line_lists[i].discard(c)
    if len(psi_line) != len(line_vertices):
        raise CounterexampleFound("kernel-greedy colors every line vertex", payload)

    # project classes back to arcs, take covering matchings, strip dummies
    xi: PartialEdgeColoring = {}
    for c in sorted(set(psi_line.values())):
        arcs_c = {arc_of_line[i] for i, col in psi_line.items() if col == c}
        outs: dict[int, int] = {}
        ins: dict[int, int] = {}
        for u, v in arcs_c:
            outs[u] = outs.get(u, 0) + 1
            ins[v] = ins.get(v, 0) + 1
        if any(x > 1 for x in outs.values()) or any(x > 1 for x in ins.values()):
            raise CounterexampleFound("class subdigraphs have in/out degree <= 1", payload)
        for e in _cover_matching(arcs_c):
            if c in real:
                xi[e] = c
    if not is_saturating(g, lists, xi):
        raise CounterexampleFound("kernel-method coloring saturates the lists", payload)
    return xi


# ---------------------------------------------------------------------------
# JSON fixture exchange: {"arcs": [[u,v],...], "layers": [[arc_index,...],...]}


def cert_to_json(cert: GoodDecompositionCertificate) -> str:
    arcs = sorted(cert.base.arcs)
    index = {a: i for i, a in enumerate(arcs)}
    layers = [sorted(index[a] for a in layer) for layer in cert.decomposition.layers]
    return json.dumps({"arcs": [list(a) for a in arcs], "layers": layers})


def cert_from_json(text: str, n: int | None = None) -> tuple[Orientation, SequentialDecomposition]:
    data = json.loads(text)
    arcs = [tuple(a) for a in data["arcs"]]
    size = n if n is not None else (max((max(a) for a in arcs), default=-1) + 1)
    base = Orientation(Graph(size, [norm_edge(*a) for a in arcs]), arcs)
    layers = [[arcs[i] for i in layer] for layer in data["layers"]]
    return base, SequentialDecomposition(layers)
