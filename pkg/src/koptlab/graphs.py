"""Simple undirected graphs, orientations, and bipartite splits.

Vertices are always the integers 0..n-1.  Adjacency is kept as one Python
int bitmask per vertex, so neighbourhood intersections and degree counts
are single machine-level operations at desk scale.  All values here are
immutable after construction and safe to share across workers.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .caps import ORIENT_ALL_EDGES, CapExceeded, edge_cap

Edge = tuple[int, int]
Arc = tuple[int, int]
VertexSet = frozenset[int]


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the offending byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def norm_edge(u: int, v: int) -> Edge:
    """Canonical (low, high) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph: no loops, no parallel edges, vertices 0..n-1."""

    __slots__ = ("n", "edges", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            canon.add(norm_edge(u, v))
        adj = [0] * n
        for u, v in canon:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.edges: frozenset[Edge] = frozenset(canon)
        self.adj: tuple[int, ...] = tuple(adj)
        self._hash = hash((n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def neighbors(self, v: int) -> list[int]:
        return bits_to_list(self.adj[v])

    def edge_list(self) -> list[Edge]:
        """All edges in lexicographic order (the canonical edge indexing)."""
        return sorted(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def complement_set(self, s: Iterable[int]) -> VertexSet:
        return frozenset(range(self.n)) - frozenset(s)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Graph, (self.n, tuple(sorted(self.edges))))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def bits_to_list(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def set_to_bits(s: Iterable[int]) -> int:
    mask = 0
    for v in s:
        mask |= 1 << v
    return mask


class Orientation:
    """An assignment of a direction to every edge of a base graph."""

    __slots__ = ("base", "arcs", "_out")

    def __init__(self, base: Graph, arcs: Iterable[Arc]):
        arcset = frozenset((u, v) for u, v in arcs)
        seen = set()
        for u, v in arcset:
            e = norm_edge(u, v)
            if e not in base.edges:
                raise ValueError(f"arc ({u},{v}) is not over a base edge")
            if e in seen:
                raise ValueError(f"edge {e} oriented twice")
            seen.add(e)
        if len(seen) != base.m:
            missing = sorted(base.edges - seen)[:3]
            raise ValueError(f"unoriented base edges, e.g. {missing}")
        out = [0] * base.n
        for u, v in arcset:
            out[u] |= 1 << v
        self.base = base
        self.arcs: frozenset[Arc] = arcset
        self._out = tuple(out)

    def outdegree(self, v: int) -> int:
        return self._out[v].bit_count()

    def indegree(self, v: int) -> int:
        return self.base.degree(v) - self.outdegree(v)

    def out_neighbors(self, v: int) -> list[int]:
        return bits_to_list(self._out[v])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Orientation)
            and self.base == other.base
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return hash((self.base, self.arcs))

    def __repr__(self) -> str:
        return f"Orientation({self.base!r}, arcs={sorted(self.arcs)})"


class BipartiteSplit:
    """A graph split into a D side and an X side.

    cross_edges is the edge set of the maximal bipartite subgraph between
    the two sides; edges inside either side remain in the base graph but
    are not part of the split's bigraph.
    """

    __slots__ = ("base", "d_side", "x_side", "cross_edges")

    def __init__(self, base: Graph, d_side: Iterable[int], x_side: Iterable[int] | None = None):
        d = frozenset(d_side)
        if not all(0 <= v < base.n for v in d):
            raise ValueError("d_side out of range")
        x = base.complement_set(d) if x_side is None else frozenset(x_side)
        if d | x != frozenset(range(base.n)) or d & x:
            raise ValueError("d_side and x_side must partition the vertex set")
        self.base = base
        self.d_side = d
        self.x_side = x
        self.cross_edges: frozenset[Edge] = frozenset(
            e for e in base.edges if (e[0] in d) != (e[1] in d)
        )

    def cross_graph(self) -> Graph:
        """The bigraph itself, on the base's vertex labels."""
        return Graph(self.base.n, self.cross_edges)

    def __repr__(self) -> str:
        return f"BipartiteSplit(d={sorted(self.d_side)}, x={sorted(self.x_side)})"


# ---------------------------------------------------------------------------
# graph6 (short form, n <= 62), bit-exact


def parse_graph6(text: str) -> Graph:
    """Decode a short-form graph6 string into a Graph."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    data = s.encode("ascii", errors="replace")
    head = data[0]
    if head == 126:  # '~' starts the long form
        raise Graph6Error("long-form graph6 (n >= 63) is not supported", 0)
    if not (63 <= head <= 125):
        raise Graph6Error(f"bad header byte {head}", 0)
    n = head - 63
    need_bits = n * (n - 1) // 2
    need_bytes = (need_bits + 5) // 6
    if len(data) - 1 < need_bytes:
        raise Graph6Error(
            f"truncated bit vector: need {need_bytes} bytes, got {len(data) - 1}",
            len(data),
        )
    if len(data) - 1 > need_bytes:
        raise Graph6Error("trailing bytes after bit vector", 1 + need_bytes)
    bits = []
    for i, byte in enumerate(data[1:], start=1):
        if not (63 <= byte <= 126):
            raise Graph6Error(f"bad data byte {byte}", i)
        val = byte - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    if any(bits[need_bits:]):
        raise Graph6Error("nonzero padding bits", len(data) - 1)
    return Graph(n, edges)


def encode_graph6(g: Graph) -> str:
    """Encode a Graph as a short-form graph6 string (n <= 62)."""
    if g.n > 62:
        raise ValueError(f"short-form graph6 requires n <= 62, got {g.n}")
    bits = []
    for v in range(1, g.n):
        row = g.adj[v]
        for u in range(v):
            bits.append((row >> u) & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


# ---------------------------------------------------------------------------
# plain edge-list text format: first line "n m", then m lines "u v"


def parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge-list input")
    try:
        n, m = map(int, lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad header line {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        u, v = map(int, ln.split())
        edges.append((u, v))
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# constructions and elementary queries


def join_independent(k: int, h: Graph) -> Graph:
    """Join k mutually non-adjacent apex vertices to every vertex of h.

    The apexes take indices 0..k-1 and h's vertices are shifted up by k,
    so splits into (apexes, h) are positionally predictable.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    edges = [(u + k, v + k) for u, v in h.edges]
    edges.extend((a, w + k) for a in range(k) for w in range(h.n))
    return Graph(k + h.n, edges)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on s, re-indexed; returns (subgraph, new->old map)."""
    order = sorted(set(s))
    if order and not (0 <= order[0] and order[-1] < g.n):
        raise ValueError("vertex set out of range")
    pos = {v: i for i, v in enumerate(order)}
    edges = [
        (pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos
    ]
    return Graph(len(order), edges), order


def orient_all(g: Graph, cap: int | None = None) -> Iterator[Orientation]:
    """Yield all 2^m orientations, ordered by edge-index direction bits."""
    limit = edge_cap(ORIENT_ALL_EDGES, cap)
    if g.m > limit:
        raise CapExceeded(
            f"orient_all: {g.m} edges exceeds cap {limit}; "
            f"raise the cap explicitly to insist"
        )
    ordered = g.edge_list()
    for code in range(1 << g.m):
        arcs = [
            (v, u) if (code >> i) & 1 else (u, v)
            for i, (u, v) in enumerate(ordered)
        ]
        yield Orientation(g, arcs)


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All 3-cliques, each listed once, lexicographically sorted."""
    out = []
    for u, v in g.edge_list():
        common = g.adj[u] & g.adj[v] & ~((1 << (v + 1)) - 1)
        for w in bits_to_list(common):
            out.append((u, v, w))
    out.sort()
    return out


# small generators used throughout the tests and demos


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the hub at index 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
