#!/usr/bin/env python3
"""Verification campaigns over graph sources.

Each property check takes a (graph, k) instance and reports holds, violated
(with a replayable witness), or skipped (with the reason).  Campaigns stream
JSONL-ready records; a violated record from the conjecture properties would
be the most valuable output this package can produce.
"""

import json
from collections import Counter

from koptlab import GraphSource, run_property
from koptlab.harness import PROPERTIES

print("registered properties:", ", ".join(sorted(PROPERTIES)))

print("\nexhaustive n=4 sweep of the domination property:")
tally = Counter()
for report in run_property("favaron", GraphSource.exhaustive(4), [1, 2, 3]):
    tally[report.outcome] += 1
print(" ", dict(tally))

print("\nrandom chordal pipeline campaign (JSONL records):")
src = GraphSource.random_chordal(9, seed=3, count=4)
for report in run_property("chordal-pipeline", src, [2]):
    print(" ", json.dumps(report.to_json(), sort_keys=True))

print("\nconjecture hunt on every graph with at most 5 vertices would run:")
print("  koptlab search decomp --exhaustive 5 --out decomp.jsonl")
print("  koptlab search tuza-special --exhaustive 6 -k 1,2 --out tuza.jsonl")
print("(exit code 1 plus a .counterexamples.jsonl sink if anything is found)")
