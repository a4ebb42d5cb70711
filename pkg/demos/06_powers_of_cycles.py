"""
Squares of cycles
=================

Powers of tight cycles reduce to tight cycles: the monochromatic
(k+p-1)-cliques of G form a new hypergraph, and a tight cycle there
is a p-th power of a tight cycle in G.
"""

from tightcycles import io as tio
from tightcycles.driver import power_partition, power_reduce

G = tio.generate(2, 8, 2, seed=11)

# monochromatic triangles become the edges of a 3-graph
H = power_reduce(G, 2)
print(f"{len(H.edges)} monochromatic triangles out of 56")

# partition K_8 into monochromatic squares of cycles
for pc in power_partition(G, 2):
    kind = "single vertex" if len(pc.seq) == 1 else f"colour {pc.colour}, {len(pc.edges())} edges"
    print(f"   {pc.seq}: {kind}")
