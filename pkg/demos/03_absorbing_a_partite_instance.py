"""
Covering a well-linked part
===========================

Given parts B_1, ..., B_{k-1} and a set B_k whose vertices all have dense
links into B_1 x ... x B_{k-1}, the absorption pipeline covers B_k by a
few monochromatic tight cycles that use the other parts only as padding.
"""

import itertools

from tightcycles import ColouredHypergraph
from tightcycles.absorption import absorb_cover

# k = 3: parts of eight vertices each and B_k of eight vertices
parts = [list(range(0, 8)), list(range(8, 16))]
Bk = list(range(16, 24))

# each vertex of B_k sees the whole product of the parts in its own colour
colouring = {tuple(sorted((a, b, v))): 1 + v % 2 for a, b, v in itertools.product(*parts, Bk)}
G = ColouredHypergraph.from_colouring(3, 24, 2, colouring)

result = absorb_cover(G, parts, Bk)
for plan in result.plans:
    print(f"colour {plan.colour}: {plan.t} block(s), rim {plan.rim}")
    print(f"   lifted cycle of {len(plan.cycle)} vertices: {plan.cycle.seq}")
print("B_k covered:", set(Bk) <= result.covered, "| left as single vertices:", result.degenerate)
