"""Tight paths and cycles, part types, crowns, absorbers and cycle lifting."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import _kernels
from .errors import (
    InvalidArgument, InvalidCycle, MalformedCycle,
    PreconditionViolation, SizeLimitError,
)
from .hypergraph import ColouredHypergraph, VertexPartition, mask_of

#: colour reported for a degenerate (single-vertex) cycle
ANY_COLOUR = 0

ABSORBS_SUBSET_LIMIT = 12


@dataclass(frozen=True)
class TightPath:
    """An ordered vertex sequence read as a k-uniform tight path.

    ``length`` counts edges, i.e. windows of k consecutive vertices.
    """

    k: int
    seq: tuple

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(v) for v in self.seq))
        if not self.seq:
            raise InvalidArgument("a path needs at least one vertex")
        if len(set(self.seq)) != len(self.seq):
            raise InvalidArgument(f"path {self.seq} repeats a vertex")

    @property
    def length(self) -> int:
        return max(len(self.seq) - self.k + 1, 0)

    def windows(self):
        return windows(self.seq, self.k, cyclic=False)


@dataclass(frozen=True)
class TightCycle:
    """A cyclic vertex sequence read as a k-uniform tight cycle."""

    k: int
    seq: tuple

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(v) for v in self.seq))
        if not self.seq:
            raise MalformedCycle("a cycle needs at least one vertex")

    @property
    def degenerate(self) -> bool:
        return len(self.seq) == 1

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.seq)

    def __len__(self) -> int:
        return len(self.seq)

    def windows(self):
        return windows(self.seq, self.k, cyclic=True)

    def canonical(self) -> "TightCycle":
        return TightCycle(self.k, _kernels.normalise(self.seq))


def windows(seq: Sequence[int], k: int, cyclic: bool):
    """Yield the k-windows of ``seq`` in order (wrapping when ``cyclic``)."""
    L = len(seq)
    if cyclic:
        for p in range(L):
            yield tuple(seq[(p + q) % L] for q in range(k))
    else:
        for p in range(L - k + 1):
            yield tuple(seq[p:p + k])


def _window_colour(host, window) -> Optional[int]:
    if isinstance(host, ColouredHypergraph):
        return host.colour_of(window)
    return 1 if tuple(sorted(window)) in host.edges else None


def _check_windows(host, seq, k, cyclic, colour) -> Optional[int]:
    target = colour
    for w in windows(seq, k, cyclic):
        c = _window_colour(host, w)
        if c is None:
            raise InvalidCycle(f"window {w} is not an edge", window=w)
        if target is None:
            target = c
        elif c != target:
            raise InvalidCycle(f"window {w} has colour {c}, expected {target}", window=w)
    return target


def validate_cycle(G, cycle: TightCycle, colour: Optional[int] = None,
                   graph_convention: bool = False) -> int:
    """Check that ``cycle`` is a monochromatic tight cycle of ``G``.

    Returns the witnessing colour, or :data:`ANY_COLOUR` for a single vertex
    when no colour was asked for.  With ``colour`` given, every window must
    have exactly that colour.  ``graph_convention`` (k=2 only) also accepts a
    single edge as a cycle.

    Raises :class:`MalformedCycle` for repeated vertices or a length in
    ``2..k`` and :class:`InvalidCycle` naming the first bad window.
    """
    k = G.k
    seq = cycle.seq
    if cycle.k != k:
        raise MalformedCycle(f"cycle is {cycle.k}-uniform but host is {k}-uniform")
    if graph_convention and k != 2:
        raise InvalidArgument("the single-edge convention only exists for graphs (k=2)")
    if len(set(seq)) != len(seq):
        dup = next(v for v, c in Counter(seq).items() if c > 1)
        raise MalformedCycle(f"vertex {dup} repeats in {seq}")
    if any(not 0 <= v < G.n for v in seq):
        raise MalformedCycle(f"{seq} has a vertex outside 0..{G.n - 1}")
    if len(seq) == 1:
        return ANY_COLOUR if colour is None else colour
    if len(seq) == 2 and graph_convention:
        return _check_windows(G, seq, 2, False, colour)
    if len(seq) <= k:
        raise MalformedCycle(f"a {k}-uniform tight cycle needs 1 or at least {k + 1} vertices, got {len(seq)}")
    return _check_windows(G, seq, k, True, colour)


def is_mono_cycle(G, cycle: TightCycle, colour: Optional[int] = None,
                  graph_convention: bool = False) -> bool:
    try:
        validate_cycle(G, cycle, colour, graph_convention)
    except (InvalidCycle, MalformedCycle):
        return False
    return True


def validate_path(H, path: TightPath, colour: Optional[int] = None) -> Optional[int]:
    """Check every window of ``path``; returns the common colour (``None`` if none)."""
    if len(set(path.seq)) != len(path.seq):
        raise InvalidArgument(f"path {path.seq} repeats a vertex")
    return _check_windows(H, path.seq, path.k, False, colour)


# -- part types ---------------------------------------------------------------

def tp(e: Iterable[int], P: VertexPartition) -> int:
    """Index (1-based) of the unique block of ``P`` that ``e`` misses."""
    e = tuple(e)
    k = len(P)
    if len(e) != k - 1:
        raise InvalidArgument(f"type needs a {k - 1}-set, got {e}")
    hit = set()
    for v in e:
        i = P.block_index.get(v)
        if i is None:
            raise InvalidArgument(f"vertex {v} lies in no block")
        if i in hit:
            raise InvalidArgument(f"{e} meets block {i} twice")
        hit.add(i)
    (missing,) = set(range(1, k + 1)) - hit
    return missing


def tp_pair(e, f, P: VertexPartition) -> int:
    """``(tp(f) - tp(e)) mod k``."""
    return (tp(f, P) - tp(e, P)) % len(P)


def prescribed_length(e, f, P: VertexPartition) -> int:
    """Length of the short connecting path between ``e`` and ``f``.

    ``k + t`` when the pair type ``t`` is at least 2, else ``2k + t``; always
    in ``{k+2, ..., 2k+1}``.
    """
    k = len(P)
    t = tp_pair(e, f, P)
    return k + t if t >= 2 else 2 * k + t


def oriented(e: Iterable[int], P: VertexPartition) -> tuple:
    """Order a partite (k-1)-set the way a positively oriented path must.

    The blocks follow the missing block cyclically, so the next vertex of a
    path continuing from ``e`` lies in block ``tp(e)``.
    """
    e = tuple(e)
    k = len(P)
    if not e:
        return ()
    miss = tp(e, P)
    rank = {((miss + j - 1) % k) + 1: j for j in range(1, k)}
    return tuple(sorted(e, key=lambda v: rank[P.block_index[v]]))


def is_positively_oriented(seq: Sequence[int], P: VertexPartition) -> bool:
    k = len(P)
    idx = [P.block_index.get(v) for v in seq]
    if None in idx:
        return False
    return all((idx[p + 1] - idx[p]) % k == 1 % k for p in range(len(idx) - 1))


# -- crowns --------------------------------------------------------------------

@dataclass(frozen=True)
class Crown:
    """Base tight cycle on ``t(k-1)`` vertices plus ``t`` rim vertices.

    Rim vertex ``rim[i]`` forms an edge with each of the ``k`` runs of
    ``k-1`` consecutive base vertices starting at ``base[(k-1)i + j]``,
    ``j = 0..k-1``.  ``base`` and ``rim`` hold vertex labels, so the same
    type describes the abstract crown and an embedding of it.
    """

    k: int
    t: int
    base: tuple
    rim: tuple

    def __post_init__(self):
        if len(self.base) != self.t * (self.k - 1) or len(self.rim) != self.t:
            raise InvalidArgument("crown base/rim sizes do not match k and t")
        if len(set(self.base) | set(self.rim)) != len(self.base) + len(self.rim):
            raise InvalidArgument("crown vertices must be distinct")

    @property
    def vertices(self) -> tuple:
        return self.base + self.rim

    def base_edges(self) -> list:
        return [tuple(sorted(w)) for w in windows(self.base, self.k, cyclic=True)]

    def rim_edges(self, i: int) -> list:
        k, nb = self.k, len(self.base)
        out = []
        for j in range(k):
            start = (k - 1) * i + j
            run = [self.base[(start + q) % nb] for q in range(k - 1)]
            out.append(tuple(sorted(run + [self.rim[i]])))
        return out

    @property
    def edges(self) -> frozenset:
        es = set(self.base_edges())
        for i in range(self.t):
            es.update(self.rim_edges(i))
        return frozenset(es)

    def cycle_with(self, rim_subset: Iterable[int]) -> TightCycle:
        """The tight cycle on the base plus the chosen rim vertices.

        Rim vertex ``i`` is spliced in after ``base[(k-1)i + k-2]``.
        """
        chosen = set(rim_subset)
        unknown = chosen - set(self.rim)
        if unknown:
            raise InvalidArgument(f"{sorted(unknown)} are not rim vertices")
        k = self.k
        after = {(k - 1) * i + k - 2: self.rim[i] for i in range(self.t) if self.rim[i] in chosen}
        seq = []
        for p, v in enumerate(self.base):
            seq.append(v)
            if p in after:
                seq.append(after[p])
        return TightCycle(k, tuple(seq))


def build_crown(k: int, t: int) -> Crown:
    """The abstract crown with base ``0..t(k-1)-1`` and rim after it."""
    if k < 2 or t < 1:
        raise InvalidArgument(f"crown needs k >= 2 and t >= 1, got k={k}, t={t}")
    nb = t * (k - 1)
    if nb < k + 1:
        raise InvalidArgument(f"base of {nb} vertices is too short for a {k}-uniform tight cycle")
    return Crown(k, t, tuple(range(nb)), tuple(range(nb, nb + t)))


# -- absorbers -----------------------------------------------------------------

def spanning_mono_cycle(G: ColouredHypergraph, vertices: Iterable[int], budget=None):
    """A monochromatic tight cycle on exactly ``vertices``: ``(cycle, colour)`` or ``None``."""
    vs = sorted(set(vertices))
    if len(vs) == 1:
        return TightCycle(G.k, (vs[0],)), ANY_COLOUR
    target = mask_of(vs)
    meter = _kernels.Meter.from_budget(budget)
    for c in G.used_colours():
        seq = _kernels.spanning_in_colour(G.completions(c), G.k, target, meter)
        if seq is not None:
            return TightCycle(G.k, seq), c
    return None


def absorbs(G: ColouredHypergraph, A: Iterable[int], B: Iterable[int], budget=None,
            max_rim: int = ABSORBS_SUBSET_LIMIT):
    """Decide whether ``A`` absorbs ``B``.

    Returns ``(ok, witnesses)`` where ``witnesses`` maps each ``frozenset``
    ``B' ⊆ B`` that was solved to a ``(cycle, colour)`` pair spanning exactly
    ``A ∪ B'``.  The search stops at the first subset without a cycle.
    """
    A, B = frozenset(A), frozenset(B)
    if A & B:
        raise InvalidArgument("absorber and absorbed set must be disjoint")
    if len(B) > max_rim:
        raise SizeLimitError(f"2^{len(B)} subsets exceed the limit of 2^{max_rim}")
    witnesses: dict = {}
    order = sorted(B)
    for size in range(len(order) + 1):
        for sub in combinations(order, size):
            span = A | frozenset(sub)
            if not span:
                return False, witnesses
            found = spanning_mono_cycle(G, span, budget)
            if found is None:
                return False, witnesses
            witnesses[frozenset(sub)] = found
    return True, witnesses


# -- lifting -------------------------------------------------------------------

def lift_conditions(aux_seq: Sequence[int], rim: Sequence[int], k: int):
    """The k-sets required for lifting, in checking order.

    Yields ``((s, i), condition, vertices)`` with 1-based ``s`` and ``i``:
    condition ``"i"`` asks that the aux window starting at ``u_{s,i}`` joined
    with ``v_s`` is an edge, condition ``"ii"`` asks the same of the window
    starting at ``u_{s,1}`` and ``v_{s-1}`` (with ``v_0 = v_t``).
    """
    t = len(rim)
    L = len(aux_seq)
    w = k - 1
    for s in range(1, t + 1):
        for i in range(1, k):
            p = (s - 1) * w + (i - 1)
            window = tuple(aux_seq[(p + q) % L] for q in range(w))
            yield (s, i), "i", window + (rim[s - 1],)
        p = (s - 1) * w
        window = tuple(aux_seq[(p + q) % L] for q in range(w))
        yield (s, 1), "ii", window + (rim[s - 2],)


def lift_cycle(G: ColouredHypergraph, aux: TightCycle, rim: Sequence[int],
               parts: Optional[Sequence[Iterable[int]]] = None,
               colour: Optional[int] = None) -> TightCycle:
    """Interleave rim vertices into a (k-1)-uniform cycle to get a k-uniform one.

    ``aux.seq`` is read as ``t`` consecutive groups of ``k-1`` vertices and
    ``rim[s-1]`` is placed after group ``s``.  Every precondition is checked
    and the first failure raises :class:`PreconditionViolation` with its
    ``(s, i)``.  Without ``colour`` the common colour is the most frequent
    colour among the required edges (ties to the lowest).
    """
    k = G.k
    rim = tuple(rim)
    t = len(rim)
    w = k - 1
    aux_seq = tuple(aux.seq)
    if aux.k != w:
        raise InvalidArgument(f"auxiliary cycle must be {w}-uniform, got {aux.k}")
    if t < 2:
        raise InvalidArgument("lifting needs at least two rim vertices")
    if len(aux_seq) != t * w:
        raise InvalidArgument(f"auxiliary cycle has {len(aux_seq)} vertices, expected {t * w}")
    everything = aux_seq + rim
    if len(set(everything)) != len(everything):
        raise InvalidArgument("auxiliary and rim vertices must all be distinct")
    if parts is not None:
        part_sets = [frozenset(p) for p in parts]
        if len(part_sets) != w:
            raise InvalidArgument(f"expected {w} parts, got {len(part_sets)}")
        for p, u in enumerate(aux_seq):
            s, i = divmod(p, w)
            if u not in part_sets[i]:
                raise PreconditionViolation(
                    f"u_{{{s + 1},{i + 1}}} = {u} is not in part {i + 1}", (s + 1, i + 1), "parts")

    conditions = list(lift_conditions(aux_seq, rim, k))
    if colour is None:
        tally = Counter(c for *_, vs in conditions if (c := G.colour_of(vs)) is not None)
        colour = min(tally, key=lambda c: (-tally[c], c)) if tally else 1
    for loc, cond, vs in conditions:
        c = G.colour_of(vs)
        if c is None:
            raise PreconditionViolation(
                f"condition ({cond}) fails at (s, i) = {loc}: {tuple(sorted(vs))} is not an edge", loc, cond)
        if c != colour:
            raise PreconditionViolation(
                f"condition ({cond}) fails at (s, i) = {loc}: edge has colour {c}, not {colour}", loc, cond)

    seq = []
    for s in range(t):
        seq.extend(aux_seq[s * w:(s + 1) * w])
        seq.append(rim[s])
    lifted = TightCycle(k, tuple(seq))
    validate_cycle(G, lifted, colour)
    return lifted
