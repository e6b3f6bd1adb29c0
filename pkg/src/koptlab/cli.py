"""Command-line front end.

Subcommands:
  compute   {phi|nu|tau|alpha-k-prime|gamma-k|alpha-k|k-optimal}
  verify    <property>
  search    {tuza-special|sec1deg|decomp}
  decompose {chordal-saturate|galvin}

Exit codes: 0 every checked instance holds; 1 at least one violation was
found (counterexamples written to the sink); 2 usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import favaron, harness, kernels, saturation, tuza
from .caps import CapExceeded
from .errors import ContractViolation, CounterexampleFound
from .graphs import Graph, Graph6Error, parse_edge_list, parse_graph6

SEARCH_PROPERTY = {
    "tuza-special": "conj-tuza",
    "sec1deg": "conj-sec1deg",
    "decomp": "conj-decomp",
}


def _add_source_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", metavar="FILE", help="edge-list or graph6 file")
    p.add_argument("--graph6", metavar="STRING", help="a single graph6 string")
    p.add_argument("--exhaustive", type=int, metavar="N", help="all labeled graphs on N vertices")
    p.add_argument(
        "--random",
        nargs=4,
        metavar=("N", "P", "SEED", "COUNT"),
        help="COUNT random graphs G(N, P) from SEED",
    )
    p.add_argument(
        "--random-chordal",
        nargs=3,
        metavar=("N", "SEED", "COUNT"),
        help="COUNT random chordal graphs on N vertices from SEED",
    )


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-k", default="1", metavar="INT[,INT..]", help="k values (default 1)")
    p.add_argument("--out", metavar="FILE", help="JSONL report path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--cap-override",
        type=int,
        default=None,
        help="override edge-based exact-solver caps (acknowledged-risky)",
    )


def _parse_ks(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _sniff_graph_file(path: str) -> list[Graph]:
    text = Path(path).read_text()
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    parts = first.split()
    if len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts):
        return [parse_edge_list(text)]
    return [parse_graph6(ln) for ln in text.splitlines() if ln.strip()]


def _source_from_args(args) -> harness.GraphSource | list[Graph]:
    given = [
        args.graph is not None,
        args.graph6 is not None,
        args.exhaustive is not None,
        args.random is not None,
        getattr(args, "random_chordal", None) is not None,
    ]
    if sum(given) != 1:
        raise SystemExit2("exactly one graph source is required")
    if args.graph is not None:
        return _sniff_graph_file(args.graph)
    if args.graph6 is not None:
        return [parse_graph6(args.graph6)]
    if args.exhaustive is not None:
        return harness.GraphSource.exhaustive(args.exhaustive)
    if args.random is not None:
        n, p, seed, count = args.random
        return harness.GraphSource.random(int(n), float(p), int(seed), int(count))
    n, seed, count = args.random_chordal
    return harness.GraphSource.random_chordal(int(n), int(seed), int(count))


class SystemExit2(Exception):
    """Usage or I/O error; mapped to exit code 2."""


class _ListSource:
    def __init__(self, graphs: list[Graph]):
        self._graphs = graphs

    def graphs(self):
        return iter(self._graphs)


def _iter_graphs(source) -> list[Graph]:
    if isinstance(source, list):
        return source
    return list(source.graphs())


def cmd_compute(args) -> int:
    ks = _parse_ks(args.k)
    graphs = _iter_graphs(_source_from_args(args))
    need_set = args.quantity == "phi"
    chosen = None
    if need_set:
        if not args.set:
            raise SystemExit2("compute phi requires --set")
        chosen = frozenset(int(tok) for tok in args.set.split(","))
    for g in graphs:
        for k in ks if args.quantity not in ("nu", "tau") else [ks[0]]:
            if args.quantity == "phi":
                value = favaron.phi_k(g, k, chosen)
            elif args.quantity == "nu":
                value = tuza.nu_exact(g).size
            elif args.quantity == "tau":
                value = tuza.tau_exact(g).size
            elif args.quantity == "alpha-k-prime":
                value = tuza.alpha_k_prime(g, k, cap=args.cap_override).size
            elif args.quantity == "gamma-k":
                value = favaron.gamma_k(g, k)
            elif args.quantity == "alpha-k":
                value = favaron.alpha_k(g, k)
            else:  # k-optimal
                res = favaron.k_optimal_exhaustive(g, k)
                value = f"phi={res.phi} set={','.join(map(str, sorted(res.d)))}"
            print(value)
    return 0


def _emit_reports(reports, out_path: str | None) -> int:
    violations = 0
    out_handle = open(out_path, "w", encoding="utf-8") if out_path else None
    sink_path = (out_path + ".counterexamples.jsonl") if out_path else None
    sink_handle = None
    try:
        for rep in reports:
            line = json.dumps(rep.to_json(), sort_keys=True)
            if out_handle is not None:
                out_handle.write(line + "\n")
            else:
                print(line)
            if rep.outcome == "violated":
                violations += 1
                if sink_path is not None:
                    if sink_handle is None:
                        sink_handle = open(sink_path, "w", encoding="utf-8")
                    sink_handle.write(line + "\n")
                    sink_handle.flush()
                else:
                    print(f"counterexample: {line}", file=sys.stderr)
    finally:
        if out_handle is not None:
            out_handle.close()
        if sink_handle is not None:
            sink_handle.close()
    return 1 if violations else 0


def cmd_verify(args, prop: str | None = None) -> int:
    prop = prop or args.property
    ks = _parse_ks(args.k)
    source = _source_from_args(args)
    if isinstance(source, list):
        source = _ListSource(source)
    reports = harness.run_property(prop, source, ks, jobs=args.jobs)
    return _emit_reports(reports, args.out)


def cmd_search(args) -> int:
    return cmd_verify(args, prop=SEARCH_PROPERTY[args.target])


def cmd_decompose(args) -> int:
    graphs = _iter_graphs(_source_from_args(args))
    if len(graphs) != 1:
        raise SystemExit2("decompose works on a single graph")
    g = graphs[0]
    lists = {}
    if args.lists:
        lists = saturation.parse_lists(Path(args.lists).read_text())
    if args.construction == "chordal-saturate":
        ordering = saturation.chordal_order(g)
        if ordering is None:
            raise SystemExit2("graph is not chordal")
        psi = saturation.saturate_chordal(g, ordering, lists)
        print(json.dumps({
            "order": list(ordering.order),
            "coloring": [[list(e), c] for e, c in sorted(psi.items())],
        }))
        return 0
    # galvin
    if args.cert:
        base, layers = kernels.cert_from_json(Path(args.cert).read_text(), n=g.n)
        cert = kernels.validate_good(base, layers)
        if isinstance(cert, kernels.InvalidDecomposition):
            raise SystemExit2(f"certificate invalid: {cert.condition}")
    else:
        found = kernels.search_good_decomposition(g)
        if not isinstance(found, kernels.GoodDecompositionCertificate):
            raise SystemExit2("no good decomposition found within caps")
        cert = found
    xi = kernels.decomposition_to_saturating(g, cert, lists)
    print(json.dumps({
        "certificate": json.loads(kernels.cert_to_json(cert)),
        "coloring": [[list(e), c] for e, c in sorted(xi.items())],
    }))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="koptlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="exact invariants of given graphs")
    p_compute.add_argument(
        "quantity",
        choices=["phi", "nu", "tau", "alpha-k-prime", "gamma-k", "alpha-k", "k-optimal"],
    )
    p_compute.add_argument("--set", help="comma-separated vertex set (for phi)")
    _add_source_flags(p_compute)
    _add_common_flags(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser("verify", help="run a property campaign")
    p_verify.add_argument("property", choices=sorted(harness.PROPERTIES))
    _add_source_flags(p_verify)
    _add_common_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_search = sub.add_parser("search", help="hunt for conjecture counterexamples")
    p_search.add_argument("target", choices=sorted(SEARCH_PROPERTY))
    _add_source_flags(p_search)
    _add_common_flags(p_search)
    p_search.set_defaults(func=cmd_search)

    p_dec = sub.add_parser("decompose", help="run a saturating construction")
    p_dec.add_argument("construction", choices=["chordal-saturate", "galvin"])
    p_dec.add_argument("--lists", metavar="FILE", help='list file, lines "v: c1 c2 ..."')
    p_dec.add_argument("--cert", metavar="FILE", help="good-decomposition JSON certificate")
    _add_source_flags(p_dec)
    _add_common_flags(p_dec)
    p_dec.set_defaults(func=cmd_decompose)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cap_override", None) is not None:
        os.environ["KOPTLAB_CAP_EDGES"] = str(args.cap_override)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, Graph6Error, ContractViolation, CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CounterexampleFound as exc:
        print(f"counterexample: {json.dumps(exc.payload)}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
