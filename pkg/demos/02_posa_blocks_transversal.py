"""
Three combinatorial tools
=========================

Cycle covers of graphs by at most alpha cycles, grouping a set family
into fours with a large common part, and picking an independent
transversal from sparse blocks.
"""

import random

from tightcycles import Hypergraph, independence_number
from tightcycles.lemmas import SubsetFamily, group_blocks, independent_transversal, posa_cycle_cover

rng = random.Random(0)

# a sparse random graph on 12 vertices
edges = [(u, v) for u in range(12) for v in range(u + 1, 12) if rng.random() < 0.3]
G = Hypergraph.from_edges(2, 12, edges)
cover = posa_cycle_cover(G)
print(f"{len(cover)} cycles cover the graph; alpha = {independence_number(G)}")
for cycle in cover:
    print("  ", cycle)

# 40 random subsets of a ground set of 100, each of size at least 50
members = [frozenset(rng.sample(range(100), rng.randint(50, 100))) for _ in range(40)]
grouping = group_blocks(SubsetFamily(100, members), eps=0.5)
sizes = [len(b.intersection) for b in grouping.blocks]
print(f"{len(grouping.blocks)} blocks of four, smallest common part {min(sizes)}, "
      f"{len(grouping.leftover)} left over (allowed {grouping.leftover_bound})")

# four blocks of a graph with few edges between them
blocks = [list(range(6 * i, 6 * i + 6)) for i in range(4)]
sparse = Hypergraph.from_edges(2, 24, [(0, 6), (7, 12), (13, 18)])
print("independent transversal:", independent_transversal(sparse, blocks))
