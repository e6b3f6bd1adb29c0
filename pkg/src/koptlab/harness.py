"""Verification campaigns: graph sources, property checks, JSONL reports.

Each property check takes one (graph, k) instance and returns holds /
violated / skipped with a replayable witness payload.  Campaigns stream one
report per instance; any violation is also pushed to a counterexample sink
immediately.  Everything is deterministic given the source parameters: the
per-instance random generator is seeded from a stable digest of the
property name, the graph6 string, and k.
"""

from __future__ import annotations

import hashlib
import random
import time
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .caps import SOURCE_EXHAUSTIVE_VERTICES, CapExceeded
from .errors import CounterexampleFound
from . import favaron, kernels, saturation, tuza
from .graphs import (
    Edge,
    Graph,
    BipartiteSplit,
    encode_graph6,
    norm_edge,
    orient_all,
    parse_edge_list,
    parse_graph6,
    triangles,
)
from .matching import (
    DemandProfile,
    HallViolator,
    KEdgeChromaticSubgraph,
    auxiliary_extension,
    check_generalized_lebensold,
    lebensold_classic,
)


# ---------------------------------------------------------------------------
# graph sources


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for mask in range(1 << len(pairs)):
        yield Graph(n, (pairs[i] for i in range(len(pairs)) if (mask >> i) & 1))


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


def random_chordal(n: int, seed: int) -> Graph:
    """Reverse simplicial construction: each inserted vertex attaches to a
    random clique inside the closed neighborhood of a random earlier vertex,
    so the reversed insertion order is a simplicial elimination order."""
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    edges: list[Edge] = []
    for v in range(1, n):
        anchor = rng.randrange(v)
        cands = [anchor] + sorted(nbrs[anchor])
        rng.shuffle(cands)
        want = rng.randint(1, len(cands))
        clique: list[int] = []
        for c in cands:
            if len(clique) == want:
                break
            if all(x in nbrs[c] for x in clique):
                clique.append(c)
        for c in clique:
            edges.append((c, v))
            nbrs[c].add(v)
            nbrs[v].add(c)
    g = Graph(n, edges)
    if saturation.chordal_order(g) is None:
        raise AssertionError("construction failed to be chordal")
    return g


@dataclass(frozen=True)
class GraphSource:
    """Where a campaign's graphs come from; see the factory classmethods."""

    kind: str
    path: str | None = None
    n: int = 0
    p: float = 0.0
    seed: int | None = None
    count: int = 0
    dedup_degrees: bool = False

    @classmethod
    def graph6_file(cls, path: str) -> "GraphSource":
        return cls(kind="graph6-file", path=path)

    @classmethod
    def edge_list_file(cls, path: str) -> "GraphSource":
        return cls(kind="edge-list-file", path=path)

    @classmethod
    def exhaustive(cls, n: int, dedup_degrees: bool = False) -> "GraphSource":
        if n > SOURCE_EXHAUSTIVE_VERTICES:
            raise CapExceeded(
                f"exhaustive source capped at n <= {SOURCE_EXHAUSTIVE_VERTICES}"
            )
        return cls(kind="exhaustive", n=n, dedup_degrees=dedup_degrees)

    @classmethod
    def random(cls, n: int, p: float, seed: int, count: int) -> "GraphSource":
        if seed is None:
            raise ValueError("random sources require a seed")
        return cls(kind="random", n=n, p=p, seed=seed, count=count)

    @classmethod
    def random_chordal(cls, n: int, seed: int, count: int) -> "GraphSource":
        if seed is None:
            raise ValueError("random sources require a seed")
        return cls(kind="random-chordal", n=n, seed=seed, count=count)

    def graphs(self) -> Iterator[Graph]:
        if self.kind == "graph6-file":
            for line in Path(self.path).read_text().splitlines():
                line = line.strip()
                if line:
                    yield parse_graph6(line)
        elif self.kind == "edge-list-file":
            yield parse_edge_list(Path(self.path).read_text())
        elif self.kind == "exhaustive":
            seen: set[tuple[int, ...]] = set()
            for g in all_labeled_graphs(self.n):
                if self.dedup_degrees:
                    key = tuple(sorted(g.degree(v) for v in range(g.n)))
                    if key in seen:
                        continue
                    seen.add(key)
                yield g
        elif self.kind == "random":
            for i in range(self.count):
                yield random_graph(self.n, self.p, self.seed + i)
        elif self.kind == "random-chordal":
            for i in range(self.count):
                yield random_chordal(self.n, self.seed + i)
        else:
            raise ValueError(f"unknown source kind {self.kind}")


# ---------------------------------------------------------------------------
# exact searches used by the conjecture properties


def degree_k_subgraph_bruteforce(
    g: Graph, k: int, d: Iterable[int]
) -> KEdgeChromaticSubgraph | None:
    """Exact search for k edge-disjoint matchings each saturating V - d."""
    outside = sorted(g.complement_set(d))
    used: set[Edge] = set()
    assignment: dict[Edge, int] = {}

    def fill(c: int, idx: int, vmask: int) -> bool:
        if idx == len(outside):
            return c == k or fill(c + 1, 0, 0)
        v = outside[idx]
        if (vmask >> v) & 1:
            return fill(c, idx + 1, vmask)
        for w in g.neighbors(v):
            e = norm_edge(v, w)
            if e in used or (vmask >> w) & 1:
                continue
            used.add(e)
            assignment[e] = c
            if fill(c, idx + 1, vmask | (1 << v) | (1 << w)):
                return True
            used.discard(e)
            del assignment[e]
        return False

    if fill(1, 0, 0):
        return KEdgeChromaticSubgraph(g, k, assignment)
    return None


def degree_demand_bruteforce(split: BipartiteSplit, profile: DemandProfile) -> bool:
    """Independent oracle for the demand problem: backtrack over colored
    subsets of the cross edges, never consulting flows or alternating paths.

    Sound prunings only: per-vertex remaining-edge potential against the
    demand, and never coloring an edge whose X endpoint is already met
    (removing such an edge from any witness leaves a witness).
    """
    k = profile.k
    edges = sorted(split.cross_edges)
    x_order = sorted(split.x_side)
    need = {v: profile.demand(v) for v in x_order}
    m = len(edges)
    suffix = {v: [0] * (m + 1) for v in x_order}
    for i in range(m - 1, -1, -1):
        u, w = edges[i]
        for v in x_order:
            suffix[v][i] = suffix[v][i + 1] + (1 if v in (u, w) else 0)

    deg = {v: 0 for v in x_order}
    used: set[tuple[int, int]] = set()

    def rec(i: int, unmet: int) -> bool:
        if unmet == 0:
            return True
        if i == m:
            return False
        if any(deg[v] + suffix[v][i] < need[v] for v in x_order):
            return False
        u, w = edges[i]
        x_end = u if u in deg else w
        if deg[x_end] < need[x_end]:
            for c in range(1, k + 1):
                if (u, c) in used or (w, c) in used:
                    continue
                used.add((u, c))
                used.add((w, c))
                deg[x_end] += 1
                drop = 1 if deg[x_end] == need[x_end] else 0
                if rec(i + 1, unmet - drop):
                    return True
                deg[x_end] -= 1
                used.discard((u, c))
                used.discard((w, c))
        return rec(i + 1, unmet)

    return rec(0, sum(1 for v in x_order if need[v] > 0))


# ---------------------------------------------------------------------------
# property checks


@dataclass(frozen=True)
class VerificationReport:
    property: str
    graph6: str
    k: int
    outcome: str  # holds | violated | skipped
    witness: dict | None
    ms: float

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "graph6": self.graph6,
            "k": self.k,
            "outcome": self.outcome,
            "witness": self.witness,
            "ms": self.ms,
        }


def _rng_for(prop: str, graph6: str, k: int) -> random.Random:
    digest = hashlib.blake2b(f"{prop}|{graph6}|{k}".encode(), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def _check_favaron(g: Graph, k: int, rng: random.Random):
    if g.n > 10:
        return "skipped", {"reason": "n above property ceiling 10"}
    sets, phi = favaron.k_optimal_sets(g, k)
    for d in sets:
        if not favaron.is_k_dominating(g, k, d):
            return "violated", {"d": sorted(d), "phi": phi}
    return "holds", None

def _check_main(g: Graph, k: int, rng: random.Random):
    if g.n > 7:
        return "skipped", {"reason": "n above property ceiling 7"}
    sets, phi = favaron.k_optimal_sets(g, k)
    for d in sets:
        sub, _ = favaron.outside_subgraph(g, d)
        if sub.m > 10:
            return "skipped", {"reason": "outside subgraph above 10 edges"}
        for j in orient_all(sub):
            try:
                favaron.verify_theorem_main(g, k, d, j)
            except CounterexampleFound as exc:
                return "violated", exc.payload
    return "holds", None


def _check_lebensold(g: Graph, k: int, rng: random.Random):
    split = BipartiteSplit(g, d_side=[v for v in range(g.n) if v % 2 == 0])
    if len(split.cross_edges) > 16:
        return "skipped", {"reason": "cross bigraph above 16 edges"}
    profile = DemandProfile(k, {v: rng.randint(0, k) for v in split.x_side})
    res = check_generalized_lebensold(split, profile)
    feasible = isinstance(res, KEdgeChromaticSubgraph)
    oracle = degree_demand_bruteforce(split, profile)
    ext = lebensold_classic(auxiliary_extension(split, profile), k)
    ext_feasible = isinstance(ext, KEdgeChromaticSubgraph)
    witness = {
        "demands": {str(v): profile.demand(v) for v in sorted(split.x_side)},
        "flow": feasible,
        "bruteforce": oracle,
        "extension": ext_feasible,
    }
    if feasible == oracle == ext_feasible:
        return "holds", None
    return "violated", witness


def _check_tuza_join(g: Graph, k: int, rng: random.Random):
    if triangles(g):
        return "skipped", {"reason": "h must be triangle-free"}
    if g.n > 7 or k * g.m > 60:
        return "skipped", {"reason": "join above desk caps"}
    report = tuza.verify_tuza_connection(g, k)
    witness = {
        "nu": report.nu,
        "tau": report.tau,
        "alpha_prime": report.alpha_prime,
        "phi_max": report.phi_max,
    }
    if report.nu_matches and report.tau_matches:
        return "holds", None
    return "violated", witness


def _check_conj_tuza(g: Graph, k: int, rng: random.Random):
    if triangles(g):
        return "skipped", {"reason": "h must be triangle-free"}
    if g.n > 7 or k * g.m > 60:
        return "skipped", {"reason": "join above desk caps"}
    report = tuza.verify_tuza_connection(g, k)
    if report.conjecture_holds:
        return "holds", None
    return "violated", {"nu": report.nu, "tau": report.tau}


def _check_conj_sec1deg(g: Graph, k: int, rng: random.Random):
    if g.n > 7:
        return "skipped", {"reason": "n above property ceiling 7"}
    sets, phi = favaron.k_optimal_sets(g, k)
    for d in sets:
        found = degree_k_subgraph_bruteforce(g, k, d)
        if found is None:
            return "violated", {"d": sorted(d), "phi": phi}
    return "holds", None


def _check_conj_decomp(g: Graph, k: int, rng: random.Random):
    if g.m > 10:
        return "skipped", {"reason": "above exhaustive search cap"}
    res = kernels.search_good_decomposition(g)
    if isinstance(res, kernels.GoodDecompositionCertificate):
        return "holds", None
    if res.complete:
        return "violated", {
            "orientations_tried": res.orientations_tried,
            "assignments_tried": res.assignments_tried,
        }
    return "skipped", {"reason": "budget exhausted before completion"}


def _random_lists_for(j_outdeg: Callable[[int], int], n: int, rng: random.Random):
    lists = {}
    for v in range(n):
        size = rng.randint(0, j_outdeg(v))
        palette = list(range(1, 7))
        rng.shuffle(palette)
        lists[v] = frozenset(palette[:size])
    return lists


def _check_chordal_pipeline(g: Graph, k: int, rng: random.Random):
    if saturation.chordal_order(g) is None:
        return "skipped", {"reason": "graph not chordal"}
    if g.n > 12:
        return "skipped", {"reason": "n above property ceiling 12"}
    d = favaron.k_optimal_exhaustive(g, k).d
    try:
        result = saturation.chordal_degree_k_subgraph(g, k, d)
    except CounterexampleFound as exc:
        return "violated", exc.payload
    outside = g.complement_set(d)
    if any(result.degree(v) != k for v in outside):
        return "violated", {"d": sorted(d)}
    return "holds", None


def _check_chordal_saturate(g: Graph, k: int, rng: random.Random):
    ordering = saturation.chordal_order(g)
    if ordering is None:
        return "skipped", {"reason": "graph not chordal"}
    if g.m > 12:
        return "skipped", {"reason": "edge count above oracle cap"}
    j = saturation.order_orientation(g, ordering)
    lists = _random_lists_for(j.outdegree, g.n, rng)
    try:
        psi = saturation.saturate_chordal(g, ordering, lists)
    except CounterexampleFound as exc:
        return "violated", exc.payload
    if not saturation.is_saturating(g, lists, psi):
        return "violated", {"lists": {v: sorted(c) for v, c in lists.items()}}
    if saturation.saturable_bruteforce(g, lists) is None:
        return "violated", {
            "reason": "oracle denies saturability",
            "lists": {v: sorted(c) for v, c in lists.items()},
        }
    return "holds", None


def _check_decomp_saturate(g: Graph, k: int, rng: random.Random):
    if g.m > 8:
        return "skipped", {"reason": "above search cap 8 edges"}
    res = kernels.search_good_decomposition(g)
    if not isinstance(res, kernels.GoodDecompositionCertificate):
        return "skipped", {"reason": "no good decomposition found"}
    lists = _random_lists_for(res.base.outdegree, g.n, rng)
    try:
        xi = kernels.decomposition_to_saturating(g, res, lists)
    except CounterexampleFound as exc:
        return "violated", exc.payload
    if not saturation.is_saturating(g, lists, xi):
        return "violated", {"lists": {v: sorted(c) for v, c in lists.items()}}
    return "holds", None


def _check_gamma_alpha(g: Graph, k: int, rng: random.Random):
    if g.n > 10:
        return "skipped", {"reason": "n above property ceiling 10"}
    if favaron.gamma_k(g, k) <= favaron.alpha_k(g, k):
        return "holds", None
    return "violated", {"gamma": favaron.gamma_k(g, k), "alpha": favaron.alpha_k(g, k)}


PROPERTIES: dict[str, Callable] = {
    "favaron": _check_favaron,
    "main": _check_main,
    "lebensold": _check_lebensold,
    "tuza-join": _check_tuza_join,
    "conj-tuza": _check_conj_tuza,
    "conj-sec1deg": _check_conj_sec1deg,
    "conj-decomp": _check_conj_decomp,
    "chordal-pipeline": _check_chordal_pipeline,
    "chordal-saturate": _check_chordal_saturate,
    "decomp-saturate": _check_decomp_saturate,
    "gamma-alpha": _check_gamma_alpha,
}

# properties that ignore k entirely run once per graph
K_FREE = {"conj-decomp", "decomp-saturate"}


def run_instance(prop: str, graph6: str, k: int) -> VerificationReport:
    g = parse_graph6(graph6)
    rng = _rng_for(prop, graph6, k)
    start = time.perf_counter()
    try:
        outcome, witness = PROPERTIES[prop](g, k, rng)
    except CapExceeded as exc:
        outcome, witness = "skipped", {"reason": str(exc)}
    except CounterexampleFound as exc:
        outcome, witness = "violated", exc.payload
    except Exception as exc:  # per-instance errors must not abort a campaign
        outcome, witness = "skipped", {"reason": f"error: {exc!r}"}
    ms = (time.perf_counter() - start) * 1000.0
    return VerificationReport(prop, graph6, k, outcome, witness, round(ms, 3))


def _run_instance_tuple(args: tuple[str, str, int]) -> VerificationReport:
    return run_instance(*args)


def run_property(
    prop: str,
    source: GraphSource,
    k_range: Iterable[int],
    jobs: int = 1,
) -> Iterator[VerificationReport]:
    """One report per (graph, k) pair; instance errors surface as reports."""
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; known: {sorted(PROPERTIES)}")
    ks = [0] if prop in K_FREE else list(k_range)
    instances = [
        (prop, encode_graph6(g), k) for g in source.graphs() for k in ks
    ]
    if jobs <= 1:
        for item in instances:
            yield _run_instance_tuple(item)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_run_instance_tuple, instances, chunksize=16)
