"""Bounded searches: longest monochromatic tight cycle, crown embedding, connectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from . import _kernels
from .errors import InvalidArgument
from .hypergraph import ColouredHypergraph, LinkGraph, VertexPartition, bits, mask_of
from .tight import (
    ANY_COLOUR, Crown, TightCycle, TightPath, is_positively_oriented, oriented,
    tp_pair, prescribed_length, validate_cycle, validate_path,
)

EXACT_CYCLE_BOUND = 14


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one bounded search.

    Results are reproducible whenever the node limit, not the time limit,
    is what stops a search.
    """

    node_limit: int = 200_000
    time_limit: Optional[float] = None
    seed: int = 0

    def __post_init__(self):
        if self.node_limit is not None and self.node_limit <= 0:
            raise InvalidArgument("node_limit must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise InvalidArgument("time_limit must be positive")
        if self.seed < 0:
            raise InvalidArgument("seed must be non-negative")

    def unlimited(self) -> "SearchBudget":
        return SearchBudget(None, self.time_limit, self.seed)


@dataclass(frozen=True)
class FoundCycle:
    cycle: TightCycle
    colour: int
    exact: bool


def longest_mono_tight_cycle(G: ColouredHypergraph, forbidden: Iterable[int] = (),
                             budget: Optional[SearchBudget] = None,
                             exact_bound: int = EXACT_CYCLE_BOUND) -> FoundCycle:
    """Longest monochromatic tight cycle avoiding ``forbidden``.

    The search is exhaustive (no node limit) when at most ``exact_bound``
    vertices are available, otherwise it returns the best cycle found within
    ``budget``.  Ties go to the lowest colour, then to the first canonical
    sequence in lexicographic search order.  Falls back to the lowest
    available vertex as a degenerate cycle.
    """
    budget = budget or SearchBudget()
    avail = mask_of(range(G.n)) & ~mask_of(forbidden)
    if not avail:
        raise InvalidArgument("every vertex is forbidden")
    size = bin(avail).count("1")
    meter = _kernels.Meter.from_budget(budget.unlimited() if size <= exact_bound else budget)
    best_seq, best_colour, exact = None, None, True
    for c in G.used_colours():
        beat = len(best_seq) if best_seq else 0
        seq, complete = _kernels.longest_in_colour(G.completions(c), G.k, avail, meter, beat)
        if seq is not None:
            best_seq, best_colour = seq, c
        if not complete:
            exact = False
            if meter.exhausted:
                break
        if best_seq and len(best_seq) == size:
            break
    if best_seq is None:
        v = (avail & -avail).bit_length() - 1
        return FoundCycle(TightCycle(G.k, (v,)), ANY_COLOUR, exact)
    cycle = TightCycle(G.k, best_seq)
    validate_cycle(G, cycle, best_colour)
    return FoundCycle(cycle, best_colour, exact)


def _match_rim(cands: list) -> Optional[list]:
    """Distinct representatives for the rim slots (augmenting paths)."""
    owner: dict = {}

    def augment(i, seen):
        for v in bits(cands[i]):
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = i
                return True
        return False

    for i in range(len(cands)):
        if not augment(i, set()):
            return None
    out = [None] * len(cands)
    for v, i in owner.items():
        out[i] = v
    return out


def find_mono_crown(G: ColouredHypergraph, t: int, forbidden: Iterable[int] = (),
                    budget: Optional[SearchBudget] = None):
    """Embed the order-``t`` crown monochromatically, avoiding ``forbidden``.

    Returns ``(crown, colour)`` with the crown in host labels, or ``None``
    when the search space or the budget is exhausted.
    """
    k = G.k
    nb = t * (k - 1)
    if nb < k + 1:
        raise InvalidArgument(f"crown of order {t} has a base too short for k={k}")
    budget = budget or SearchBudget()
    avail = mask_of(range(G.n)) & ~mask_of(forbidden)
    if bin(avail).count("1") < nb + t:
        return None
    meter = _kernels.Meter.from_budget(budget)

    # slot i is determined once base index (k-1)i + 2k-3 is placed (no wrap)
    ready = {}
    for i in range(t):
        last = (k - 1) * i + 2 * k - 3
        if last < nb:
            ready.setdefault(last, []).append(i)

    def slot_candidates(comp, base, i, used):
        m = avail & ~used
        for j in range(k):
            start = (k - 1) * i + j
            run = mask_of(base[(start + q) % nb] for q in range(k - 1))
            m &= comp.get(run, 0)
            if not m:
                return 0
        return m

    for c in G.used_colours():
        comp = G.completions(c)
        base: list = []
        result: list = []

        def dfs(used):
            meter.tick()
            L = len(base)
            if L == nb:
                if not _kernels.closes(comp, base, k):
                    return
                cands = [slot_candidates(comp, base, i, used) for i in range(t)]
                if not all(cands):
                    return
                rim = _match_rim(cands)
                if rim is not None:
                    result.append((tuple(base), tuple(rim)))
                    raise _kernels._Stop
                return
            for i in ready.get(L - 1, ()):
                if not slot_candidates(comp, base, i, used):
                    return
            free = avail & ~used
            cand = comp.get(_kernels._prefix_mask(base, k), 0) & free if L >= k - 1 else free
            for w in bits(cand):
                base.append(w)
                dfs(used | (1 << w))
                base.pop()

        try:
            dfs(0)
        except _kernels._Stop:
            if result:
                crown = Crown(k, t, *result[0])
                for e in crown.edges:
                    assert G.colour_of(e) == c
                return crown, c
            return None
    return None


def connect(H, e: Iterable[int], f: Iterable[int], forbidden: Iterable[int] = (),
            length: Optional[int] = None, parts=None,
            budget: Optional[SearchBudget] = None, codegree_floor: int = 1) -> Optional[TightPath]:
    """Positively oriented tight path in ``H`` from ``e`` to ``f``.

    ``H`` is a w-uniform :class:`LinkGraph` (its parts are used) or a
    :class:`~tightcycles.hypergraph.Hypergraph` with explicit ``parts``.  The
    path has exactly ``length`` edges (default :func:`prescribed_length`),
    starts with ``e`` and ends with ``f`` in their forced orders and has
    internal vertices outside ``forbidden``.  Returns ``None`` when no such
    path is found within ``budget`` or when ``e`` or ``f`` has co-degree
    below ``codegree_floor``.
    """
    if parts is None:
        if not isinstance(H, LinkGraph) or H.parts is None:
            raise InvalidArgument("connect needs the parts of H")
        parts = H.parts
    P = VertexPartition(tuple(parts))
    w = H.uniformity if isinstance(H, LinkGraph) else H.k
    if len(P) != w:
        raise InvalidArgument(f"{w}-uniform H needs {w} parts, got {len(P)}")
    e, f = tuple(e), tuple(f)
    S = set(forbidden)
    if S & set(e) or S & set(f):
        raise InvalidArgument("e and f must avoid the forbidden set")
    if set(e) & set(f):
        raise InvalidArgument("e and f must be disjoint")
    if len(e) != w - 1 or len(f) != w - 1:
        raise InvalidArgument(f"e and f must be {w - 1}-sets")
    if w >= 2:
        e, f = oriented(e, P), oriented(f, P)
        t = tp_pair(e, f, P)
        if length is None:
            length = prescribed_length(e, f, P)
        if length % w != t:
            return None
    elif length is None:
        length = 2
    m = length + w - 1
    internal = m - 2 * (w - 1)
    if internal < 0:
        raise InvalidArgument(f"length {length} too short to separate e and f")
    if _codegree(H, e) < codegree_floor or _codegree(H, f) < codegree_floor:
        return None

    comp = H.completions
    meter = _kernels.Meter.from_budget(budget or SearchBudget())
    pool = mask_of(P.support) & ~mask_of(S) & ~mask_of(e) & ~mask_of(f)
    seq = list(e)
    found: list = []

    def dfs(used, placed):
        meter.tick()
        if placed == internal:
            tail = len(seq)
            for v in f:
                if not comp.get(_kernels._prefix_mask(seq, w), 0) >> v & 1:
                    del seq[tail:]
                    return
                seq.append(v)
            found.append(tuple(seq))
            raise _kernels._Stop
        cand = comp.get(_kernels._prefix_mask(seq, w), 0) & pool & ~used
        for x in bits(cand):
            seq.append(x)
            dfs(used | (1 << x), placed + 1)
            seq.pop()

    try:
        dfs(0, 0)
    except _kernels._Stop:
        pass
    if not found:
        return None
    path = TightPath(w, found[0])
    validate_path(H, path)
    assert path.length == length and is_positively_oriented(path.seq, P)
    return path


def _codegree(H, e) -> int:
    em = mask_of(e)
    return bin(H.completions.get(em, 0)).count("1")
