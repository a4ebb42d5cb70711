"""Brute-force oracles, written independently of the search kernels.

They use plain tuple lookups instead of completion bitmasks so that tests can
cross-check the fast code paths against them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator, Optional

import numpy as np

from .errors import InvalidArgument, SizeLimitError
from .hypergraph import ColouredHypergraph, Hypergraph
from .tight import ANY_COLOUR, TightCycle

ENUMERATE_LIMIT = 14
MIN_PARTITION_LIMIT = 10
SCAN_LIMIT = 1 << 24


def _window_colours(G, seq, closed: bool):
    k, L = G.k, len(seq)
    stop = L if closed else L - k + 1
    for p in range(stop):
        yield G.colour_of(seq[(p + q) % L] for q in range(k))


def enumerate_mono_tight_cycles(G: ColouredHypergraph, max_len: Optional[int] = None,
                                graph_convention: bool = False) -> Iterator[tuple]:
    """Yield ``(cycle, colour)`` for every non-degenerate monochromatic tight cycle.

    Each cycle appears once, rotated to start at its least vertex and
    reflected so that the second vertex is below the last.  With
    ``graph_convention`` (k=2) single edges are included as 2-cycles.
    """
    k, n = G.k, G.n
    if n > ENUMERATE_LIMIT:
        raise SizeLimitError(f"cycle enumeration is limited to n <= {ENUMERATE_LIMIT}")
    if graph_convention and k != 2:
        raise InvalidArgument("the single-edge convention only exists for graphs (k=2)")
    top = n if max_len is None else min(max_len, n)
    if graph_convention:
        for e in sorted(G.edges):
            if top >= 2:
                yield TightCycle(2, e), G.colour[e]

    def extend(seq: list, colour):
        L = len(seq)
        if L >= k + 1 and seq[1] < seq[-1]:
            closing = set(_window_colours(G, seq, True))
            if closing == {colour}:
                yield TightCycle(k, tuple(seq)), colour
        if L == top:
            return
        for w in range(seq[0] + 1, n):
            if w in seq:
                continue
            c = colour
            if L + 1 >= k:
                c = G.colour_of(seq[L + 1 - k:] + [w])
                if c is None or (colour is not None and c != colour):
                    continue
            seq.append(w)
            yield from extend(seq, c)
            seq.pop()

    for s in range(n):
        yield from extend([s], None)


def _spans(G: ColouredHypergraph, vertices: tuple, graph_convention: bool):
    """A monochromatic tight cycle on exactly ``vertices`` (plain backtracking)."""
    k = G.k
    L = len(vertices)
    if L == 1:
        return TightCycle(k, vertices), ANY_COLOUR
    if L == 2 and graph_convention:
        c = G.colour_of(vertices)
        return (TightCycle(k, vertices), c) if c is not None else None
    if L <= k:
        return None
    first, rest = vertices[0], vertices[1:]
    for colour in G.used_colours():
        seq = [first]

        def grow() -> bool:
            if len(seq) == L:
                return set(_window_colours(G, seq, True)) == {colour}
            for w in rest:
                if w in seq:
                    continue
                if len(seq) + 1 >= k and G.colour_of(seq[len(seq) + 1 - k:] + [w]) != colour:
                    continue
                seq.append(w)
                if grow():
                    return True
                seq.pop()
            return False

        if grow():
            return TightCycle(k, tuple(seq)), colour
    return None


def min_partition_size(G: ColouredHypergraph, graph_convention: bool = False):
    """Exact minimum number of monochromatic tight cycles partitioning ``V(G)``.

    Returns ``(count, witness)`` with ``witness`` a list of ``(cycle, colour)``.
    """
    n = G.n
    if n > MIN_PARTITION_LIMIT:
        raise SizeLimitError(f"exact minimum partition is limited to n <= {MIN_PARTITION_LIMIT}")
    if graph_convention and G.k != 2:
        raise InvalidArgument("the single-edge convention only exists for graphs (k=2)")
    if n == 0:
        return 0, []
    spans: dict = {}
    for size in range(1, n + 1):
        for vs in combinations(range(n), size):
            hit = _spans(G, vs, graph_convention)
            if hit is not None:
                spans[sum(1 << v for v in vs)] = hit
    by_low: dict = {}
    for m in spans:
        low = (m & -m).bit_length() - 1
        by_low.setdefault(low, []).append(m)

    @lru_cache(maxsize=None)
    def best(mask: int):
        if not mask:
            return 0, ()
        low = (mask & -mask).bit_length() - 1
        answer = None
        for S in by_low[low]:
            if S & ~mask:
                continue
            cnt, rest = best(mask & ~S)
            if answer is None or cnt + 1 < answer[0]:
                answer = (cnt + 1, (S,) + rest)
        return answer

    count, masks = best((1 << n) - 1)
    return count, [spans[m] for m in masks]


def lehel_split(G: ColouredHypergraph):
    """Two vertex-disjoint cycles of colours 1 and 2 covering ``V`` (k=2, graph convention).

    Either cycle may be empty or a single vertex.  Returns the pair
    ``(cycle_1, cycle_2)`` (``None`` for an empty one) or ``None``.
    """
    if G.k != 2:
        raise InvalidArgument("the two-colour split is a statement about graphs")
    n = G.n
    V = tuple(range(n))

    def spans_in(vs, colour):
        if not vs:
            return ()
        if len(vs) == 1:
            return TightCycle(2, vs)
        if len(vs) == 2:
            return TightCycle(2, vs) if G.colour_of(vs) == colour else None
        hit = _spans(_colour_only(G, colour), vs, False)
        return hit[0] if hit else None

    for size in range(n + 1):
        for S in combinations(V, size):
            T = tuple(v for v in V if v not in S)
            a, b = spans_in(S, 1), spans_in(T, 2)
            if a is not None and b is not None:
                return (a or None), (b or None)
    return None


def _colour_only(G: ColouredHypergraph, colour: int) -> ColouredHypergraph:
    edges = {e: 1 for e, c in G.colour.items() if c == colour}
    return ColouredHypergraph(Hypergraph(G.k, G.n, frozenset(edges)), 1, edges)


# -- colouring scans -----------------------------------------------------------

@dataclass(frozen=True)
class ScanReport:
    k: int
    r: int
    n: int
    graph_convention: bool
    pruned: bool
    colourings: int          # colourings covered (orbits expanded when pruned)
    classes: int             # colourings actually solved
    worst: int
    witness: Optional[tuple]  # colour of each edge, edges in lexicographic order
    complete: bool
    lehel_ok: Optional[bool] = None

    def witness_instance(self) -> Optional[ColouredHypergraph]:
        if self.witness is None:
            return None
        return colouring_instance(self.k, self.n, self.r, self.witness)


def colouring_instance(k: int, n: int, r: int, colours) -> ColouredHypergraph:
    edges = list(combinations(range(n), k))
    return ColouredHypergraph.from_colouring(k, n, r, dict(zip(edges, (int(c) for c in colours))))


def _edge_permutations(n: int, k: int) -> np.ndarray:
    """Row ``g``: position of the image of each edge under vertex permutation ``g``."""
    edges = list(combinations(range(n), k))
    index = {e: i for i, e in enumerate(edges)}
    rows = []
    for perm in permutations(range(n)):
        rows.append([index[tuple(sorted(perm[v] for v in e))] for e in edges])
    return np.array(rows, dtype=np.int64)


def colouring_scan(k: int, r: int, n: int, graph_convention: bool = False, prune: bool = True,
                   limit: int = SCAN_LIMIT, max_classes: Optional[int] = None) -> ScanReport:
    """Worst case over all r-colourings of the complete k-graph on n vertices.

    With ``prune`` only one colouring per isomorphism class is solved: the
    orbit of each unsolved colouring under vertex permutations is marked as
    done.  Stopping at ``max_classes`` gives a report flagged incomplete.
    """
    if graph_convention and k != 2:
        raise InvalidArgument("the single-edge convention only exists for graphs (k=2)")
    if n > MIN_PARTITION_LIMIT:
        raise SizeLimitError(f"scans solve each colouring exactly; n <= {MIN_PARTITION_LIMIT}")
    m = len(list(combinations(range(n), k)))
    total = r ** m
    if total > limit:
        raise SizeLimitError(f"{r}^{m} colourings exceed the scan limit {limit}")
    weights = r ** np.arange(m, dtype=np.int64)
    perms = _edge_permutations(n, k) if prune else None
    done = np.zeros(total, dtype=bool)
    worst, witness, classes, covered = -1, None, 0, 0
    lehel = True if (k == 2 and r == 2 and graph_convention) else None
    complete = True
    for code in range(total):
        if done[code]:
            continue
        if max_classes is not None and classes >= max_classes:
            complete = False
            break
        digits = (code // weights) % r
        if prune:
            # the colouring g(c) puts colour c[e] on edge perm[g][e]
            images = np.zeros((len(perms), m), dtype=np.int64)
            np.put_along_axis(images, perms, np.broadcast_to(digits, perms.shape), axis=1)
            orbit = np.unique(images @ weights)
            done[orbit] = True
            covered += len(orbit)
        else:
            done[code] = True
            covered += 1
        classes += 1
        colours = tuple(int(d) + 1 for d in digits)
        G = colouring_instance(k, n, r, colours) if m else ColouredHypergraph(Hypergraph(k, n), r, {})
        count, _ = min_partition_size(G, graph_convention)
        if count > worst:
            worst, witness = count, colours
        if lehel is not None and lehel_split(G) is None:
            lehel = False
    return ScanReport(k, r, n, graph_convention, prune, covered, classes, worst, witness,
                      complete, lehel)
