"""List-saturating partial edge colorings and the chordal constructions.

A list assignment demands, at each vertex v and each color c in its list,
some incident edge colored c; a proper partial edge coloring meeting every
demand is saturating.  Chordal graphs satisfy every demand profile bounded
by the down-degrees of a simplicial elimination order, and combining that
with the compensated cross subgraph of a k-optimal set yields a
k-edge-chromatic subgraph whose outside vertices all have degree exactly k.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Callable, Iterable, Mapping

from .caps import SATURABLE_EDGES, SATURABLE_PALETTE, CapExceeded, edge_cap
from .errors import ContractViolation, CounterexampleFound
from .favaron import outside_subgraph, verify_theorem_main
from .graphs import Edge, Graph, Orientation, encode_graph6, norm_edge, set_to_bits
from .matching import KEdgeChromaticSubgraph

ListAssignment = dict[int, frozenset[int]]
PartialEdgeColoring = dict[Edge, int]
SaturationWitness = Callable[[Graph, ListAssignment], PartialEdgeColoring]


def normalize_lists(g: Graph, l: Mapping[int, Iterable[int]]) -> ListAssignment:
    """Defined on every vertex; absent vertices get the empty list."""
    out = {v: frozenset() for v in range(g.n)}
    for v, colors in l.items():
        if not 0 <= v < g.n:
            raise ValueError(f"list vertex {v} out of range")
        out[v] = frozenset(colors)
    return out


def check_proper(g: Graph, psi: Mapping[Edge, int]) -> None:
    seen: set[tuple[int, int]] = set()
    for (u, v), c in psi.items():
        if norm_edge(u, v) not in g.edges:
            raise ContractViolation(f"colored non-edge ({u},{v})")
        for w in (u, v):
            if (w, c) in seen:
                raise ContractViolation(f"color {c} repeated at vertex {w}")
            seen.add((w, c))


def is_saturating(g: Graph, l: Mapping[int, Iterable[int]], psi: Mapping[Edge, int]) -> bool:
    """True iff every color in every vertex list appears on an incident edge."""
    check_proper(g, psi)
    lists = normalize_lists(g, l)
    present: dict[int, set[int]] = {v: set() for v in range(g.n)}
    for (u, v), c in psi.items():
        present[u].add(c)
        present[v].add(c)
    return all(lists[v] <= present[v] for v in range(g.n))


def saturable_bruteforce(
    g: Graph,
    l: Mapping[int, Iterable[int]],
    cap: int | None = None,
    palette_cap: int = SATURABLE_PALETTE,
) -> PartialEdgeColoring | None:
    """Exhaustive search for a saturating coloring; the saturation oracle.

    Any saturating coloring can be trimmed to one in which every colored
    edge fills a listed demand at one of its endpoints, so trying, for each
    (vertex, color) demand in turn, every incident edge that could carry the
    color enumerates the whole space.
    """
    limit = edge_cap(SATURABLE_EDGES, cap)
    if g.m > limit:
        raise CapExceeded(f"saturable_bruteforce: {g.m} edges exceeds cap {limit}")
    lists = normalize_lists(g, l)
    palette = set().union(*lists.values()) if lists else set()
    if len(palette) > palette_cap:
        raise CapExceeded(
            f"saturable_bruteforce: palette of {len(palette)} exceeds cap {palette_cap}"
        )
    demands = [(v, c) for v in range(g.n) for c in sorted(lists[v])]
    psi: PartialEdgeColoring = {}
    used: set[tuple[int, int]] = set()

    def rec(i: int) -> bool:
        if i == len(demands):
            return True
        v, c = demands[i]
        if (v, c) in used:
            return rec(i + 1)
        for w in g.neighbors(v):
            e = norm_edge(v, w)
            if e in psi or (w, c) in used:
                continue
            psi[e] = c
            used.add((v, c))
            used.add((w, c))
            if rec(i + 1):
                return True
            del psi[e]
            used.discard((v, c))
            used.discard((w, c))
        return False

    if rec(0):
        return dict(psi)
    return None


# ---------------------------------------------------------------------------
# chordal elimination orders


@dataclass(frozen=True)
class EliminationOrder:
    order: tuple[int, ...]

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def is_simplicial(g: Graph, order: Iterable[int]) -> bool:
    """Do the later neighbors of each vertex form a clique?"""
    seq = list(order)
    if sorted(seq) != list(range(g.n)):
        return False
    pos = {v: i for i, v in enumerate(seq)}
    for v in seq:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        for i in range(len(later)):
            for j in range(i + 1, len(later)):
                if not g.has_edge(later[i], later[j]):
                    return False
    return True


def chordal_order(g: Graph) -> EliminationOrder | None:
    """Maximum-cardinality search plus a simpliciality verification pass.

    Returns a simplicial elimination order, or None exactly when the graph
    is not chordal.
    """
    weights = [0] * g.n
    visited: list[int] = []
    unvisited = set(range(g.n))
    while unvisited:
        v = max(unvisited, key=lambda u: (weights[u], -u))
        visited.append(v)
        unvisited.remove(v)
        for w in g.neighbors(v):
            if w in unvisited:
                weights[w] += 1
    order = tuple(reversed(visited))
    if not is_simplicial(g, order):
        return None
    return EliminationOrder(order)


def order_orientation(g: Graph, ord: EliminationOrder) -> Orientation:
    """Each edge directed from its later endpoint to its earlier endpoint,
    so outdegree counts earlier neighbors."""
    if not is_simplicial(g, ord.order):
        raise ContractViolation("order is not a simplicial elimination order")
    pos = ord.position()
    arcs = [(v, u) if pos[u] < pos[v] else (u, v) for u, v in g.edges]
    return Orientation(g, arcs)


def saturate_chordal(
    g: Graph, ord: EliminationOrder, l: Mapping[int, Iterable[int]]
) -> PartialEdgeColoring:
    """Saturating coloring for any lists bounded by the elimination
    orientation's outdegrees.

    Peel the earliest vertex v: its later neighbors w_1 < ... < w_t have
    down-degree >= i at w_i, so distinct representative colors c_i exist
    once short lists are padded with fresh dummy colors.  Recurse on g - v
    with c_i removed, then color each edge v w_i whose color c_i is still
    missing at w_i.  Dummy colors never reach the output.
    """
    if not is_simplicial(g, ord.order):
        raise ContractViolation("order is not a simplicial elimination order")
    lists = normalize_lists(g, l)
    j = order_orientation(g, ord)
    for v in range(g.n):
        if len(lists[v]) > j.outdegree(v):
            raise ContractViolation(
                f"list at {v} has {len(lists[v])} colors but outdegree {j.outdegree(v)}"
            )
    pos = ord.position()
    earlier_mask = [0] * g.n
    for v in range(g.n):
        earlier_mask[v] = set_to_bits(w for w in g.neighbors(v) if pos[w] < pos[v])
    real_colors = set().union(*lists.values()) if g.n else set()
    dummy_next = (max(real_colors) if real_colors else 0) + 1

    psi: PartialEdgeColoring = {}
    seq = list(ord.order)

    def peel(idx: int, cur: dict[int, frozenset[int]], remaining: int) -> None:
        nonlocal dummy_next
        if idx >= g.n - 1:
            return
        v = seq[idx]
        rest = remaining & ~(1 << v)
        later = sorted(
            (w for w in g.neighbors(v) if (rest >> w) & 1), key=lambda w: pos[w]
        )
        taken: set[int] = set()
        chosen: list[tuple[int, int | None]] = []
        for i, w in enumerate(later, start=1):
            down = (earlier_mask[w] & remaining).bit_count()
            if down < i:
                raise AssertionError(
                    f"down-degree {down} of later neighbor #{i} below {i}"
                )
            avail = sorted(c for c in cur[w] if c not in taken)
            if avail:
                c = avail[0]
            else:
                c = dummy_next  # fresh pad color, stripped from the output
                dummy_next += 1
            taken.add(c)
            chosen.append((w, c if c in cur[w] else None))
        nxt = dict(cur)
        for w, c in chosen:
            if c is not None:
                nxt[w] = cur[w] - {c}
        peel(idx + 1, nxt, rest)
        present = {w: set() for w in later}
        for (a, b), c in psi.items():
            if a in present:
                present[a].add(c)
            if b in present:
                present[b].add(c)
        for w, c in chosen:
            if c is not None and c not in present[w]:
                psi[norm_edge(v, w)] = c

    peel(0, lists, set_to_bits(range(g.n)))
    if not is_saturating(g, lists, psi):
        raise CounterexampleFound(
            "chordal saturating construction",
            {"graph6": encode_graph6(g), "order": seq, "lists": {v: sorted(c) for v, c in lists.items()}},
        )
    return psi


# ---------------------------------------------------------------------------
# from saturating colorings to degree-exactly-k subgraphs


def satur_pipeline(
    g: Graph,
    k: int,
    d: Iterable[int],
    j: Orientation,
    sat_witness: SaturationWitness,
) -> KEdgeChromaticSubgraph:
    """Outside-degree-exactly-k subgraph from a k-optimal set d plus a
    saturation witness for the outside subgraph.

    The compensated cross subgraph M' leaves each outside vertex v short in
    exactly min(outdeg_j(v), k) color classes; those class indices become
    v's list, the witness saturates them inside the outside subgraph, and
    class-wise merging (witness edges first, then the non-conflicting M'
    edges) yields the subgraph.  Every failed internal guarantee raises
    CounterexampleFound.
    """
    d = frozenset(d)
    m_prime = verify_theorem_main(g, k, d, j)
    sub, order = outside_subgraph(g, d)
    classes = m_prime.color_classes()
    covered = [
        {v for e in cls for v in e} for cls in classes
    ]
    lists: ListAssignment = {}
    for i, v in enumerate(order):
        missing = frozenset(
            c for c in range(1, k + 1) if v not in covered[c - 1]
        )
        if len(missing) != min(j.outdegree(i), k):
            raise CounterexampleFound(
                "list size equals min(outdegree, k)",
                {"graph6": encode_graph6(g), "k": k, "d": sorted(d), "v": v},
            )
        lists[i] = missing

    psi = sat_witness(sub, lists)
    if not is_saturating(sub, lists, psi):
        raise CounterexampleFound(
            "saturation witness output",
            {"graph6": encode_graph6(g), "k": k, "d": sorted(d),
             "lists": {v: sorted(c) for v, c in lists.items()}},
        )

    merged: dict[Edge, int] = {}
    for c in range(1, k + 1):
        star = {
            norm_edge(order[a], order[b]): c
            for (a, b), col in psi.items()
            if col == c
        }
        touched = {v for e in star for v in e}
        merged.update(star)
        for e in sorted(classes[c - 1]):
            if e[0] not in touched and e[1] not in touched:
                merged[e] = c
                touched.update(e)
    result = KEdgeChromaticSubgraph(g, k, merged)
    for v in order:
        if result.degree(v) != k:
            raise CounterexampleFound(
                "outside degrees exactly k after merge",
                {"graph6": encode_graph6(g), "k": k, "d": sorted(d), "v": v,
                 "degree": result.degree(v)},
            )
    return result


def chordal_degree_k_subgraph(g: Graph, k: int, d: Iterable[int]) -> KEdgeChromaticSubgraph:
    """The chordal route end to end: elimination orientation of the outside
    subgraph, chordal saturation as the witness, then the pipeline."""
    d = frozenset(d)
    sub, _ = outside_subgraph(g, d)
    ord = chordal_order(sub)
    if ord is None:
        raise ContractViolation("outside subgraph is not chordal")
    j = order_orientation(sub, ord)

    def witness(s: Graph, lists: ListAssignment) -> PartialEdgeColoring:
        return saturate_chordal(s, ord, lists)

    return satur_pipeline(g, k, d, j, witness)


# ---------------------------------------------------------------------------
# "v: c1 c2 ..." serialization used by the harness instance files


def parse_lists(text: str) -> dict[int, frozenset[int]]:
    out: dict[int, frozenset[int]] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, tail = line.partition(":")
        v = int(head)
        out[v] = frozenset(int(tok) for tok in tail.split())
    return out


def format_lists(l: Mapping[int, Iterable[int]]) -> str:
    lines = []
    for v in sorted(l):
        colors = " ".join(str(c) for c in sorted(l[v]))
        lines.append(f"{v}: {colors}".rstrip())
    return "\n".join(lines) + "\n"
