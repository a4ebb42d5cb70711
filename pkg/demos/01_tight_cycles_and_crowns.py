"""
Tight cycles and crowns
=======================

A tight cycle in a k-graph is a cyclic vertex order in which every k
consecutive vertices form an edge.  A crown is a tight cycle with a rim:
each rim vertex can be spliced into the base cycle or left out, and every
choice still closes into a tight cycle.
"""

from tightcycles import ColouredHypergraph, Hypergraph, TightCycle, build_crown, validate_cycle
from tightcycles.tight import absorbs

# the complete 3-graph on six vertices, all edges coloured 1
G = ColouredHypergraph.monochromatic(Hypergraph.complete(3, 6))
print("colour of (0 1 2 3 4 5):", validate_cycle(G, TightCycle(3, (0, 1, 2, 3, 4, 5))))

# a single vertex is a (degenerate) cycle; 2..k vertices are not
print("colour of a single vertex:", validate_cycle(G, TightCycle(3, (4,))))

# a crown with k=3 and four rim vertices
crown = build_crown(3, 4)
print(f"crown: base {crown.base}, rim {crown.rim}, {len(crown.edges)} edges")

# take only the crown's edges as the host and close it over two rim vertices
H = ColouredHypergraph.monochromatic(Hypergraph(3, len(crown.vertices), crown.edges))
cycle = crown.cycle_with(crown.rim[1:3])
print("closed over two rim vertices:", cycle.seq)

# the base absorbs any subset of the rim
ok, witnesses = absorbs(H, crown.base, crown.rim)
print(f"absorbs every rim subset: {ok} ({len(witnesses)} witnesses)")
