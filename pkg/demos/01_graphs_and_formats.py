#!/usr/bin/env python3
"""Graphs, graph6 strings, edge lists, joins, triangles, orientations.

Vertices are always 0..n-1.  The graph6 short form packs the upper triangle
of the adjacency matrix into printable bytes; "D?{" is the 5-vertex star.
"""

from koptlab import (
    complete_graph,
    cycle_graph,
    encode_graph6,
    format_edge_list,
    join_independent,
    orient_all,
    parse_graph6,
    path_graph,
    triangles,
)

star = parse_graph6("D?{")
print("parsed D?{ :", star, "edges", sorted(star.edges))
print("re-encoded  :", encode_graph6(star))
print("K4 encodes  :", encode_graph6(complete_graph(4)))

print("\nedge-list form of C5:")
print(format_edge_list(cycle_graph(5)))

# joins: k mutually non-adjacent apexes over a base graph, apexes first
j = join_independent(2, cycle_graph(5))
print("I_2 v C5:", j, "=", j.m, "edges (5 in C5 plus 2*5 apex edges)")
print("its triangles are exactly apex + C5-edge pairs:")
for t in triangles(j):
    print("   ", t)

# every triangle of a join of an independent set with a triangle-free graph
# uses exactly one apex, which is what links packings to matchings

print("\nall orientations of P3, ordered by direction bits:")
for o in orient_all(path_graph(3)):
    print("   ", sorted(o.arcs), "outdegrees", [o.outdegree(v) for v in range(3)])
