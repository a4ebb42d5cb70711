"""Block grouping of set families, Pósa cycle covers and independent transversals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from .errors import HypothesisViolation, InternalError, InvalidArgument, TransversalStuck
from .hypergraph import ColouredHypergraph, link_size


# -- blocks of four --------------------------------------------------------------

@dataclass(frozen=True)
class SubsetFamily:
    """Subsets of the ground set ``0..ground_size-1``, each tagged with an owner."""

    ground_size: int
    members: tuple
    owners: tuple = ()

    def __post_init__(self):
        members = tuple(frozenset(m) for m in self.members)
        owners = tuple(self.owners) or tuple(range(len(members)))
        if len(owners) != len(members):
            raise InvalidArgument("one owner per member is required")
        if len(set(owners)) != len(owners):
            raise InvalidArgument("owners must be distinct")
        for o, m in zip(owners, members):
            if m and (min(m) < 0 or max(m) >= self.ground_size):
                raise InvalidArgument(f"member {o!r} leaves the ground set")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "owners", owners)

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class Block:
    owners: tuple
    intersection: frozenset


@dataclass(frozen=True)
class BlockGrouping:
    blocks: tuple
    leftover: tuple
    delta: Fraction
    leftover_bound: Fraction


def blocks_delta(eps) -> Fraction:
    """Guaranteed relative size of a block intersection: ``eps^4 / 2^6``."""
    eps = Fraction(eps)
    return eps ** 4 / 64


def blocks_leftover_bound(eps) -> Fraction:
    """``8/eps^2 + 2/eps``."""
    eps = Fraction(eps)
    return 8 / eps ** 2 + 2 / eps


def _greedy_matching(items: list, threshold: Fraction):
    """Maximal matching of ``(tag, set)`` items joined when they share ``threshold``."""
    matched = [False] * len(items)
    pairs, single = [], []
    for i, (tag_i, s_i) in enumerate(items):
        if matched[i]:
            continue
        for j in range(i + 1, len(items)):
            if not matched[j] and len(s_i & items[j][1]) >= threshold:
                matched[i] = matched[j] = True
                pairs.append(((tag_i, items[j][0]), s_i & items[j][1]))
                break
        else:
            single.append(tag_i)
    return pairs, single


def group_blocks(F: SubsetFamily, eps) -> BlockGrouping:
    """Group all but boundedly many members into fours with a large common part.

    Two rounds of a maximal matching: first on members sharing at least
    ``(eps/2)^2 m`` elements, then on the pair intersections with the same
    rule applied to their guaranteed size.  Unmatched members (and the owners
    of unmatched pairs) are returned as ``leftover``.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InvalidArgument(f"eps must lie in (0, 1], got {eps}")
    m = F.ground_size
    for o, s in zip(F.owners, F.members):
        if len(s) < eps * m:
            raise InvalidArgument(f"member {o!r} has {len(s)} < eps*m = {eps * m} elements")
    eps1 = (eps / 2) ** 2
    pairs, left1 = _greedy_matching(list(zip(F.owners, F.members)), eps1 * m)
    quads, left2 = _greedy_matching(pairs, (eps1 / 2) ** 2 * m)
    blocks = tuple(Block(o1 + o2, s) for (o1, o2), s in quads)
    leftover = tuple(left1) + tuple(o for pair in left2 for o in pair)
    return BlockGrouping(blocks, leftover, blocks_delta(eps), blocks_leftover_bound(eps))


# -- Pósa cycle cover ----------------------------------------------------------

def _adjacency(G) -> dict:
    host = G.host if isinstance(G, ColouredHypergraph) else G
    if host.k != 2:
        raise InvalidArgument(f"expected a graph (k=2), got k={host.k}")
    adj = {v: set() for v in range(host.n)}
    for u, v in host.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _rotate(path: list, i: int) -> list:
    # path endpoint adjacent to path[i]: keep path[:i+1], reverse the rest
    return path[:i + 1] + path[:i:-1]


def _grow(adj: dict, alive: set, start: int, max_rotations: int) -> list:
    path = [start]
    on = {start}
    for _ in range(2):
        while True:
            end = path[-1]
            out = sorted(adj[end] & alive - on)
            if out:
                path.append(out[0])
                on.add(out[0])
                continue
            rotated = _extend_by_rotation(adj, alive, on, path, max_rotations)
            if rotated is None:
                break
            path = rotated
        path.reverse()
    return path


def _extend_by_rotation(adj, alive, on, path, max_rotations):
    """Breadth-first over Pósa rotations for an endpoint with a new neighbour."""
    seen = {tuple(path)}
    queue = [path]
    tried = 0
    while queue and tried < max_rotations:
        p = queue.pop(0)
        pos = {v: i for i, v in enumerate(p)}
        end = p[-1]
        for u in sorted(adj[end] & alive):
            i = pos[u]
            if i >= len(p) - 2:
                continue
            q = _rotate(p, i)
            key = tuple(q)
            if key in seen:
                continue
            seen.add(key)
            tried += 1
            if adj[q[-1]] & alive - on:
                return q
            queue.append(q)
    return None


def _close(adj: dict, alive: set, path: list) -> tuple:
    # the endpoint has all its live neighbours on the path
    end = path[-1]
    pos = {v: i for i, v in enumerate(path)}
    nbrs = [pos[u] for u in adj[end] & alive]
    assert all(u in pos for u in adj[end] & alive)
    if not nbrs:
        return (end,)
    return tuple(path[min(nbrs):])


def posa_cycle_cover(G, max_rotations: int = 200) -> list:
    """Vertex-disjoint cycles covering every vertex, at most ``alpha(G)`` of them.

    Single vertices and single edges count as cycles.  Each round grows a
    path by extension and Pósa rotation until one endpoint has all its
    neighbours on the path, then cuts off the cycle closed by that
    endpoint's farthest neighbour.  Removing that cycle lowers the
    independence number of what remains, which gives the bound.
    """
    adj = _adjacency(G)
    alive = set(adj)
    cycles = []
    while alive:
        path = _grow(adj, alive, min(alive), max_rotations)
        best = _close(adj, alive, path)
        rev = _close(adj, alive, path[::-1])
        if len(rev) > len(best):
            best = rev
        cycles.append(best)
        alive -= set(best)
    return cycles


def posa_path_cover(G, max_rotations: int = 200) -> list:
    """At most ``alpha(G)`` vertex-disjoint paths covering every vertex."""
    return [list(c) for c in posa_cycle_cover(G, max_rotations)]


def is_graph_cycle(adj: dict, cycle: Sequence[int]) -> bool:
    L = len(cycle)
    if L == 1:
        return True
    if L == 2:
        return cycle[1] in adj[cycle[0]]
    return all(cycle[(i + 1) % L] in adj[cycle[i]] for i in range(L))


# -- independent transversal ---------------------------------------------------

def transversal_eps(k: int, m: int) -> Fraction:
    """``m^{-(k-1)^2}``."""
    return Fraction(1, m ** ((k - 1) ** 2))


def transversal_hypothesis_violation(H, blocks: Sequence[Iterable[int]], eps=None):
    """First ``(i, (i_1..i_{k-1}), v)`` (1-based) breaking the sparse-link hypothesis, or ``None``."""
    host = H.host if isinstance(H, ColouredHypergraph) else H
    k, m = host.k, len(blocks)
    eps = transversal_eps(k, m) if eps is None else Fraction(eps)
    B = [sorted(b) for b in blocks]
    for i in range(k, m + 1):
        for idx in combinations(range(1, i), k - 1):
            parts = [B[j - 1] for j in idx]
            cap = eps
            for p in parts:
                cap *= len(p)
            for v in B[i - 1]:
                if link_size(host, [v], parts) > cap:
                    return i, idx, v
    return None


@dataclass
class TransversalTrace:
    """Per-block record of the forbidden sets met by the greedy choice."""

    delta: Fraction = Fraction(0)
    steps: list = field(default_factory=list)


def independent_transversal(H, blocks: Sequence[Iterable[int]], checked: bool = True,
                            trace: Optional[TransversalTrace] = None) -> list:
    """One vertex per block, no edge among them.

    Picks ``v_m, ..., v_1`` in turn, each the least vertex of its block
    outside every forbidden set ``B̄_j(s, i)``: vertices completing an edge
    with already chosen ones (``s = 1``) or whose link with the chosen ones
    into the earlier blocks is too dense (``s >= 2``, threshold
    ``eps / delta^(k-s)`` with ``delta = m^{-(k-1)}``, ``eps = delta^(k-1)``).

    With ``checked`` the hypothesis is verified first (raising
    :class:`HypothesisViolation`) and a stuck greedy is an internal error;
    unchecked, a stuck greedy raises :class:`TransversalStuck`.
    """
    host = H.host if isinstance(H, ColouredHypergraph) else H
    k, m = host.k, len(blocks)
    B = [sorted(set(b)) for b in blocks]
    if any(not b for b in B):
        raise InvalidArgument("blocks must be non-empty")
    flat = [v for b in B for v in b]
    if len(set(flat)) != len(flat):
        raise InvalidArgument("blocks must be disjoint")
    delta = Fraction(1, m ** (k - 1))
    eps = delta ** (k - 1)
    if checked:
        bad = transversal_hypothesis_violation(host, B, eps)
        if bad is not None:
            i, idx, v = bad
            raise HypothesisViolation(
                f"vertex {v} of block {i} has a dense link into blocks {idx}", witness=bad)
    if trace is not None:
        trace.delta = delta
    edges = host.edges
    chosen: dict = {m: B[m - 1][0]}
    if trace is not None:
        trace.steps.append({"block": m, "forbidden": {}, "chosen": chosen[m]})

    for j in range(m - 1, 0, -1):
        forbidden: dict = {}
        later = range(j + 1, m + 1)
        # s = 1: j is the smallest index, the k-1 others are chosen already
        for top in combinations(later, k - 1):
            pins = [chosen[i] for i in top]
            forbidden[(1, (j,) + top)] = {u for u in B[j - 1] if tuple(sorted(pins + [u])) in edges}
        for s in range(2, k):
            for below in combinations(range(1, j), s - 1):
                for above in combinations(later, k - s):
                    pins = [chosen[i] for i in above]
                    parts = [B[i - 1] for i in below]
                    cap = eps / delta ** (k - s)
                    for p in parts:
                        cap *= len(p)
                    forbidden[(s, below + (j,) + above)] = {
                        u for u in B[j - 1] if link_size(host, pins + [u], parts) >= cap
                    }
        union = set().union(*forbidden.values()) if forbidden else set()
        free = [u for u in B[j - 1] if u not in union]
        if not free:
            if checked:
                raise InternalError(f"greedy stuck at block {j} although the hypothesis holds")
            raise TransversalStuck(f"every vertex of block {j} is forbidden", block=j)
        chosen[j] = free[0]
        if trace is not None:
            trace.steps.append({"block": j, "forbidden": forbidden, "chosen": chosen[j]})
    return [chosen[i] for i in range(1, m + 1)]


def choices_bound(k: int, m: int) -> int:
    """``C(m-1, k-1)``, the number of forbidden sets met per block."""
    return comb(m - 1, k - 1)
