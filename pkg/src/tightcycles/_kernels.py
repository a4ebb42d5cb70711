"""Bitmask depth-first search kernels for tight cycles.

A colour class is represented by its completion table: ``comp[m]`` is the
mask of vertices ``w`` such that the (k-1)-set ``m`` plus ``w`` is an edge.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded
from .hypergraph import bits


class _Stop(Exception):
    pass


@dataclass
class Meter:
    """Node and wall-clock accounting for one bounded search."""

    node_limit: Optional[int] = None
    deadline: Optional[float] = None
    nodes: int = 0

    @classmethod
    def from_budget(cls, budget) -> "Meter":
        if budget is None:
            return cls()
        deadline = None
        if budget.time_limit is not None:
            deadline = time.monotonic() + budget.time_limit
        return cls(budget.node_limit, deadline)

    def tick(self):
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _Stop
        if self.deadline is not None and self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _Stop

    @property
    def exhausted(self) -> bool:
        return self.node_limit is not None and self.nodes > self.node_limit


def is_window(comp: dict, window_mask: int) -> bool:
    low = window_mask & -window_mask
    return bool(comp.get(window_mask ^ low, 0) & low)


def closes(comp: dict, seq: list, k: int) -> bool:
    """Whether the wrap-around windows of ``seq`` are edges."""
    L = len(seq)
    for p in range(L - k + 1, L):
        w = 0
        for q in range(p, p + k):
            w |= 1 << seq[q % L]
        if not is_window(comp, w):
            return False
    return True


def normalise(seq) -> tuple:
    """Rotate to start at the minimum and orient so that seq[1] < seq[-1]."""
    seq = list(seq)
    i = seq.index(min(seq))
    seq = seq[i:] + seq[:i]
    if len(seq) > 2 and seq[1] > seq[-1]:
        seq = [seq[0]] + seq[:0:-1]
    return tuple(seq)


def _prefix_mask(seq, k):
    m = 0
    for v in seq[len(seq) - (k - 1):]:
        m |= 1 << v
    return m


def longest_in_colour(comp: dict, k: int, avail: int, meter: Meter, beat: int = 0):
    """Longest tight cycle (at least k+1 vertices) inside ``avail``.

    Returns ``(seq, complete)``; ``seq`` is ``None`` unless a cycle longer
    than ``beat`` exists.  ``complete`` is False if the meter stopped the
    search early.
    """
    best = [beat, None]
    total = bin(avail).count("1")
    seq: list = []

    def dfs(used: int, pool: int):
        meter.tick()
        L = len(seq)
        if L >= k + 1 and L > best[0] and closes(comp, seq, k):
            best[0], best[1] = L, tuple(seq)
            if L == total:
                raise _Stop
        free = pool & ~used
        if L + bin(free).count("1") <= best[0]:
            return
        if L >= k - 1:
            cand = comp.get(_prefix_mask(seq, k), 0) & free
        else:
            cand = free
        for w in bits(cand):
            seq.append(w)
            dfs(used | (1 << w), pool)
            seq.pop()

    complete = True
    try:
        for s in bits(avail):
            higher = avail & ~((1 << (s + 1)) - 1)
            if 1 + bin(higher).count("1") <= best[0]:
                break
            seq.append(s)
            dfs(1 << s, higher)
            seq.pop()
    except _Stop:
        complete = best[0] == total
    return (normalise(best[1]) if best[1] else None), complete


def spanning_in_colour(comp: dict, k: int, target: int, meter: Meter):
    """A tight cycle whose vertex set is exactly ``target``, or ``None``.

    Raises :class:`BudgetExceeded` if the meter runs out first.
    """
    size = bin(target).count("1")
    if size < k + 1:
        return None
    # every vertex needs an edge inside the target
    covered = 0
    for key, m in comp.items():
        if key & ~target == 0:
            inner = m & target
            if inner:
                covered |= key | inner
    if covered != target:
        return None
    s = (target & -target).bit_length() - 1
    seq = [s]
    found: list = []

    def dfs(used: int):
        meter.tick()
        L = len(seq)
        if L == size:
            if closes(comp, seq, k):
                found.append(tuple(seq))
                raise _Stop
            return
        free = target & ~used
        cand = comp.get(_prefix_mask(seq, k), 0) & free if L >= k - 1 else free
        for w in bits(cand):
            seq.append(w)
            dfs(used | (1 << w))
            seq.pop()

    try:
        dfs(1 << s)
    except _Stop:
        if found:
            return normalise(found[0])
        raise BudgetExceeded(f"spanning-cycle search stopped after {meter.nodes} nodes")
    return None

