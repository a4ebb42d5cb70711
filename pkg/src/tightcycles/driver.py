"""End-to-end partition into monochromatic tight cycles, with certificates.

The driver follows the step iteration for hosts of bounded independence
number: reserve a crown (whose base absorbs its rim), cover most of the
rest greedily, absorb the well-linked leftovers into the reserved rims and
carry the poorly linked ones into the next step.  Whatever a stage cannot
handle at desk scale goes to an exhaustive fallback, so a valid
certificate is always produced.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

from . import _kernels
from .absorption import AbsorptionConfig, absorb_cover
from .digest import instance_digest
from .errors import (
    AbsorptionError, BudgetExceeded, InternalError, InvalidArgument, InvalidCycle,
    MalformedCycle, SizeLimitError, TransversalStuck,
)
from .hypergraph import (
    ColouredHypergraph, EXACT_ALPHA_LIMIT, bits, clique_hypergraph, independence_number,
    link_size, mask_of,
)
from .lemmas import independent_transversal
from .search import SearchBudget, find_mono_crown, longest_mono_tight_cycle
from .tight import ANY_COLOUR, TightCycle, validate_cycle

log = logging.getLogger(__name__)

PROVENANCE = ("greedy", "absorber", "fallback", "degenerate")
FALLBACK_BOUND = 14


# -- certificates --------------------------------------------------------------

@dataclass(frozen=True)
class PartitionCertificate:
    """Vertex-disjoint monochromatic tight cycles covering the host.

    ``cycles`` holds ``(TightCycle, colour)`` pairs (colour
    :data:`~tightcycles.tight.ANY_COLOUR` for single vertices) and
    ``provenance`` one tag from :data:`PROVENANCE` per cycle.
    """

    digest: str
    cycles: tuple
    provenance: tuple
    graph_convention: bool = False
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.cycles) != len(self.provenance):
            raise InvalidArgument("one provenance tag per cycle is required")
        bad = set(self.provenance) - set(PROVENANCE)
        if bad:
            raise InvalidArgument(f"unknown provenance tags {sorted(bad)}")

    def __len__(self):
        return len(self.cycles)

    def histogram(self) -> dict:
        counts = Counter(self.provenance)
        return {tag: counts.get(tag, 0) for tag in PROVENANCE}


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str = ""
    vertex: Optional[int] = None
    window: Optional[tuple] = None
    cycle_index: Optional[int] = None

    def __bool__(self):
        return self.accepted


def verify_certificate(G: ColouredHypergraph, cert: PartitionCertificate,
                       check_digest: bool = True) -> Verdict:
    """Check exact cover and per-cycle validity, independently of the producer."""
    if check_digest and cert.digest and cert.digest != instance_digest(G):
        return Verdict(False, "certificate digest does not match the instance")
    seen: dict = {}
    for idx, (cyc, colour) in enumerate(cert.cycles):
        if not isinstance(cyc, TightCycle):
            return Verdict(False, f"entry {idx} is not a tight cycle", cycle_index=idx)
        for v in cyc.seq:
            if v in seen:
                return Verdict(False, f"vertex {v} lies on cycles {seen[v]} and {idx}",
                               vertex=v, cycle_index=idx)
            seen[v] = idx
        try:
            want = None if colour == ANY_COLOUR and cyc.degenerate else colour
            if want is not None and not 1 <= want <= G.r:
                return Verdict(False, f"cycle {idx} has colour {colour} outside 1..{G.r}",
                               cycle_index=idx)
            validate_cycle(G, cyc, want, graph_convention=cert.graph_convention)
        except InvalidCycle as exc:
            return Verdict(False, f"cycle {idx}: {exc}", window=exc.window, cycle_index=idx)
        except MalformedCycle as exc:
            return Verdict(False, f"cycle {idx}: {exc}", cycle_index=idx)
    missing = sorted(set(range(G.n)) - set(seen))
    if missing:
        return Verdict(False, f"vertex {missing[0]} is not covered", vertex=missing[0])
    return Verdict(True, "ok")


# -- configuration and state ---------------------------------------------------

@dataclass(frozen=True)
class DriverConfig:
    """Constants and budgets of :func:`partition`.

    ``eps`` and ``gamma`` default to ``1/(4rk)`` and ``1/(8k)`` once the
    instance is known (see :meth:`resolved`).  With ``spanning_shortcut`` a
    monochromatic cycle through every vertex, if the first search finds one,
    is returned on its own instead of reserving absorbers.
    """

    eps: Optional[Fraction] = None
    beta: Fraction = Fraction(1, 8)
    gamma: Optional[Fraction] = None
    search_budget: SearchBudget = SearchBudget(node_limit=20_000)
    crown_budget: SearchBudget = SearchBudget(node_limit=20_000)
    fallback_budget: SearchBudget = SearchBudget(node_limit=2_000_000)
    fallback_bound: int = FALLBACK_BOUND
    absorption: Optional[AbsorptionConfig] = None
    use_crowns: bool = True
    spanning_shortcut: bool = True
    max_greedy_cycles: Optional[int] = None
    seed: int = 0

    def resolved(self, k: int, r: int) -> "DriverConfig":
        eps = Fraction(self.eps) if self.eps is not None else Fraction(1, 4 * r * k)
        gamma = Fraction(self.gamma) if self.gamma is not None else Fraction(1, 8 * k)
        beta = Fraction(self.beta)
        for name, v in (("eps", eps), ("beta", beta), ("gamma", gamma)):
            if not 0 < v < 1:
                raise InvalidArgument(f"{name} must lie in (0, 1), got {v}")
        absorption = self.absorption or AbsorptionConfig(eps=eps, seed=self.seed)
        return replace(self, eps=eps, gamma=gamma, beta=beta, absorption=absorption)


@dataclass
class Absorber:
    j: int
    crown: object
    colour: int


@dataclass
class DriverState:
    """Bookkeeping of one step ``j``; ``blocks[i]`` is ``B_{i+1}^{(j)}``."""

    j: int
    blocks: list
    R: set = field(default_factory=set)
    R_prime: set = field(default_factory=set)
    R_dprime: set = field(default_factory=set)
    absorbers: list = field(default_factory=list)
    covered: set = field(default_factory=set)

    def check(self, n: int):
        named = [set(b) for b in self.blocks] + [self.R_prime, self.R_dprime - self.covered]
        named += [set(a.crown.base) for a in self.absorbers]
        total = sum(len(s) for s in named)
        union = set().union(*named) if named else set()
        if total != len(union):
            raise InternalError(f"driver sets overlap at step {self.j}")
        if union & (self.covered - self.R_dprime):
            raise InternalError(f"a covered vertex is still listed at step {self.j}")
        if not union | self.covered <= set(range(n)):
            raise InternalError("driver sets leave the vertex range")

    def snapshot(self) -> dict:
        return {
            "j": self.j,
            "blocks": [sorted(b) for b in self.blocks],
            "R": sorted(self.R),
            "R_prime": sorted(self.R_prime),
            "R_dprime": sorted(self.R_dprime),
            "absorbers": [(a.j, a.crown.base, a.crown.rim, a.colour) for a in self.absorbers],
        }


# -- greedy cover --------------------------------------------------------------

@dataclass(frozen=True)
class GreedyResult:
    cycles: tuple
    uncovered: frozenset


def greedy_cover(G: ColouredHypergraph, forbidden: Iterable[int] = (), gamma=0,
                 budget: Optional[SearchBudget] = None, target: Optional[int] = None,
                 max_cycles: Optional[int] = None, exact_bound: int = 0) -> GreedyResult:
    """Extract longest monochromatic tight cycles until few vertices remain.

    Stops once at most ``target`` (default ``gamma`` times the pool size)
    vertices are uncovered, when only single vertices are left to take, or
    after ``max_cycles`` extractions.
    """
    blocked = set(forbidden)
    pool = set(range(G.n)) - blocked
    if target is None:
        target = Fraction(gamma) * len(pool)
    cycles = []
    while pool and len(pool) > target:
        if max_cycles is not None and len(cycles) >= max_cycles:
            break
        found = longest_mono_tight_cycle(G, set(range(G.n)) - pool, budget, exact_bound=exact_bound)
        if found.cycle.degenerate:
            break
        validate_cycle(G, found.cycle, found.colour)
        cycles.append((found.cycle, found.colour))
        pool -= found.cycle.vertices
    return GreedyResult(tuple(cycles), frozenset(pool))


# -- exhaustive fallback -------------------------------------------------------

@dataclass(frozen=True)
class FallbackResult:
    cycles: tuple
    exact: bool
    warning: Optional[str] = None


def brute_force_partition(G: ColouredHypergraph, subset: Optional[Iterable[int]] = None,
                          budget: Optional[SearchBudget] = None, bound: int = FALLBACK_BOUND,
                          graph_convention: bool = False) -> FallbackResult:
    """Minimum partition of ``subset`` into monochromatic tight cycles.

    Memoized search over vertex masks.  Sets larger than ``bound``, or a
    search that exhausts ``budget``, give all single vertices and a warning.
    ``graph_convention`` (k=2) also allows single edges.
    """
    U = sorted(set(range(G.n)) if subset is None else set(subset))
    if any(not 0 <= v < G.n for v in U):
        raise InvalidArgument("subset leaves the vertex range")
    if graph_convention and G.k != 2:
        raise InvalidArgument("the single-edge convention only exists for graphs (k=2)")
    singles = tuple((TightCycle(G.k, (v,)), ANY_COLOUR) for v in U)
    if len(U) > bound:
        return FallbackResult(singles, False, f"{len(U)} vertices exceed the fallback bound {bound}")
    k = G.k
    meter = _kernels.Meter.from_budget(budget or SearchBudget(node_limit=2_000_000))
    colours = G.used_colours()
    spans: dict = {}

    def spannable(mask: int):
        if mask in spans:
            return spans[mask]
        size = bin(mask).count("1")
        out = None
        vs = list(bits(mask))
        if size == 1:
            out = (TightCycle(k, tuple(vs)), ANY_COLOUR)
        elif size == 2 and graph_convention:
            c = G.colour_of(vs)
            if c is not None:
                out = (TightCycle(k, tuple(vs)), c)
        elif size > k:
            for c in colours:
                seq = _kernels.spanning_in_colour(G.completions(c), k, mask, meter)
                if seq is not None:
                    out = (TightCycle(k, seq), c)
                    break
        spans[mask] = out
        return out

    # vertices on no edge inside U can only be single vertices
    full = mask_of(U)
    touched = 0
    for e in G.edges:
        em = mask_of(e)
        if em & full == em:
            touched |= em
    alone = full & ~touched

    @lru_cache(maxsize=None)
    def best(mask: int):
        if not mask:
            return 0, ()
        if spannable(mask):
            return 1, (mask,)
        low = mask & -mask
        rest = mask ^ low
        answer = None
        sub = rest
        while True:
            S = sub | low
            if S != mask and spannable(S):
                cnt, parts = best(mask ^ S)
                if answer is None or cnt + 1 < answer[0]:
                    answer = (cnt + 1, (S,) + parts)
                    if answer[0] == 2:
                        break
            if not sub:
                break
            sub = (sub - 1) & rest
        assert answer is not None  # the singleton {low} always works
        return answer

    try:
        _, masks = best(full & ~alone)
    except (_kernels._Stop, BudgetExceeded):
        return FallbackResult(singles, False, f"fallback search budget exhausted after {meter.nodes} nodes")
    cycles = [spans[m] for m in masks] + [(TightCycle(k, (v,)), ANY_COLOUR) for v in bits(alone)]
    cycles.sort(key=lambda cc: cc[0].seq)
    return FallbackResult(tuple(cycles), True)


# -- the driver ----------------------------------------------------------------

def _split_even(vs: list, parts: int) -> list:
    return [vs[i::parts] for i in range(parts)]


def _resolve_alpha(G: ColouredHypergraph, alpha: Optional[int]) -> int:
    if G.n <= EXACT_ALPHA_LIMIT:
        exact = independence_number(G)
        if alpha is None:
            return exact
        if alpha < exact:
            raise InvalidArgument(f"declared alpha {alpha} is below the true value {exact}")
        return alpha
    if alpha is None:
        raise SizeLimitError(f"n = {G.n} is too large to compute alpha; declare it")
    return alpha


def partition(G: ColouredHypergraph, alpha: Optional[int] = None,
              config: Optional[DriverConfig] = None, trace: Optional[list] = None) -> PartitionCertificate:
    """Partition the vertices of ``G`` into monochromatic tight cycles.

    ``alpha`` bounds the independence number (computed exactly when omitted
    and ``n`` is small).  ``trace``, if given, receives one
    :meth:`DriverState.snapshot` per step.  The returned certificate is
    verified before it is handed out.
    """
    cfg = (config or DriverConfig()).resolved(G.k, G.r)
    alpha = _resolve_alpha(G, alpha)
    k, n = G.k, G.n
    V = set(range(n))
    out: list = []          # (cycle, colour, tag)
    covered: set = set()
    residue: set = set()
    diagnostics: dict = {"alpha": alpha, "absorption_failures": [], "steps": 0,
                         "transversal": None, "fallback_warnings": []}

    def emit(cycle, colour, tag):
        if covered & cycle.vertices:
            raise InternalError(f"cycle {cycle.seq} reuses covered vertices")
        covered.update(cycle.vertices)
        out.append((cycle, colour, tag))

    state = DriverState(j=k - 1, blocks=[])
    R_prime = set(V)
    if cfg.spanning_shortcut and n > k:
        found = longest_mono_tight_cycle(G, (), cfg.search_budget, exact_bound=0)
        if len(found.cycle) == n:
            emit(found.cycle, found.colour, "greedy")
            R_prime = set()
    steps = [k - 1] + list(range(k, alpha + 1))
    for j in steps:
        if not R_prime:
            break
        diagnostics["steps"] += 1
        state.j = j
        free = set(R_prime)
        # absorber: a monochromatic crown inside R'_j
        crown, colour = None, None
        if cfg.use_crowns:
            t_min = max(1, -(-(k + 1) // (k - 1))) if k > 1 else 1
            t = max(t_min, int(cfg.beta * len(free)))
            while t >= t_min and crown is None:
                if t * k <= len(free):
                    hit = find_mono_crown(G, t, V - free, cfg.crown_budget)
                    if hit is not None:
                        crown, colour = hit
                t -= 1
        B = set(crown.rim) if crown else set()
        if crown:
            state.absorbers.append(Absorber(j, crown, colour))
            free -= set(crown.vertices)
        if j == k - 1:
            state.blocks = [set(p) for p in _split_even(sorted(B), k - 1)]
        else:
            state.blocks.append(B)
        # greedy cover of the rest
        anchor = min((len(b) for b in state.blocks if b), default=0) if j == k - 1 else len(B)
        greedy = greedy_cover(G, V - free, budget=cfg.search_budget, target=cfg.gamma * anchor,
                              max_cycles=cfg.max_greedy_cycles)
        for cyc, c in greedy.cycles:
            emit(cyc, c, "greedy")
        R = set(greedy.uncovered)
        # split into poorly linked R' and well-linked R''
        tuples = [T for T in combinations(range(len(state.blocks)), k - 1)
                  if all(state.blocks[i] for i in T)]
        groups: dict = {}
        R_next = set()
        for v in sorted(R):
            for T in tuples:
                parts = [state.blocks[i] for i in T]
                total = 1
                for p in parts:
                    total *= len(p)
                if link_size(G, [v], parts) >= cfg.eps * total:
                    groups.setdefault(T, []).append(v)
                    break
            else:
                R_next.add(v)
        state.R, state.R_prime = R, R_next
        state.R_dprime = R - R_next
        for T, group in sorted(groups.items()):
            parts = [sorted(state.blocks[i]) for i in T]
            try:
                res = absorb_cover(G, parts, group, cfg.absorption)
            except AbsorptionError as exc:
                diagnostics["absorption_failures"].append((j, T, exc.stage))
                residue.update(group)
                continue
            for cyc, c in res.cycles:
                emit(cyc, c, "absorber")
                for i in T:
                    state.blocks[i] -= cyc.vertices
            residue.update(res.degenerate)
        state.covered = set(covered)
        state.check(n)
        if trace is not None:
            trace.append(state.snapshot())
        R_prime = R_next

    # the last poorly linked set should be empty; try for the contradiction
    if R_prime:
        blocks = [sorted(b) for b in state.blocks] + [sorted(R_prime)]
        if all(blocks) and len(blocks) >= k:
            try:
                witness = independent_transversal(G, blocks, checked=False)
                diagnostics["transversal"] = ("independent", witness)
                log.warning("independent set of size %d contradicts alpha=%d", len(witness), alpha)
            except TransversalStuck as exc:
                diagnostics["transversal"] = ("stuck", exc.block)
        residue |= R_prime

    leftover = sorted(residue - covered)
    fb = brute_force_partition(G, leftover, cfg.fallback_budget, cfg.fallback_bound)
    # the absorbers may swallow the leftover better than they close on their own
    absorbers = sorted(state.absorbers, key=lambda a: -a.j)
    if leftover and absorbers:
        for chosen in (absorbers, absorbers[:1]):
            pool = set(leftover)
            for a in chosen:
                pool |= {v for v in a.crown.vertices if v not in covered}
            if len(pool) > cfg.fallback_bound:
                continue
            merged = brute_force_partition(G, pool, cfg.fallback_budget, cfg.fallback_bound)
            if merged.exact and len(merged.cycles) < len(fb.cycles) + len(chosen):
                fb = merged
                absorbers = [a for a in absorbers if a not in chosen]
                diagnostics["merged_absorbers"] = len(chosen)
            break
    if fb.warning:
        diagnostics["fallback_warnings"].append(fb.warning)
    for cyc, c in fb.cycles:
        emit(cyc, c, "degenerate" if cyc.degenerate else "fallback")

    # close each remaining absorber over its surviving rim, latest step first
    for absorber in absorbers:
        rim_left = [v for v in absorber.crown.rim if v not in covered]
        cyc = absorber.crown.cycle_with(rim_left)
        validate_cycle(G, cyc, absorber.colour)
        emit(cyc, absorber.colour, "absorber")

    # anything never touched (cannot happen, but the certificate must cover V)
    stray = sorted(V - covered)
    if stray:
        raise InternalError(f"vertices {stray} were never covered")

    out.sort(key=lambda item: item[0].seq)
    cert = PartitionCertificate(
        instance_digest(G), tuple((c, col) for c, col, _ in out), tuple(tag for *_, tag in out),
        diagnostics=diagnostics)
    verdict = verify_certificate(G, cert)
    if not verdict:
        raise InternalError(f"assembled certificate is invalid: {verdict.reason}")
    return cert


# -- powers of tight cycles ----------------------------------------------------

def power_reduce(G: ColouredHypergraph, p: int) -> ColouredHypergraph:
    """The ``(k+p-1)``-graph of monochromatic ``(k+p-1)``-cliques, coloured by clique colour."""
    if p < 1:
        raise InvalidArgument(f"power must be positive, got {p}")
    K = G.k + p - 1
    if G.n < K:
        raise InvalidArgument(f"n = {G.n} is below k + p - 1 = {K}")
    return clique_hypergraph(G, K, monochromatic=True)


@dataclass(frozen=True)
class PowerCycle:
    """The ``p``-th power of a tight cycle: every k-subset of every window is an edge."""

    k: int
    p: int
    seq: tuple
    colour: int

    @property
    def window_size(self) -> int:
        return self.k + self.p - 1

    def edges(self) -> frozenset:
        L, K = len(self.seq), self.window_size
        if L == 1:
            return frozenset()
        out = set()
        for s in range(L):
            window = [self.seq[(s + q) % L] for q in range(K)]
            out.update(tuple(sorted(e)) for e in combinations(window, self.k))
        return frozenset(out)


def power_lift_back(G: ColouredHypergraph, cycle: TightCycle, colour: int, p: int) -> PowerCycle:
    """Turn a tight cycle of the reduced instance into a checked power of a cycle in ``G``."""
    K = G.k + p - 1
    if cycle.k != K:
        raise InvalidArgument(f"expected a {K}-uniform cycle, got {cycle.k}")
    if not cycle.degenerate and len(cycle) <= K:
        raise MalformedCycle(f"a {K}-uniform tight cycle needs 1 or more than {K} vertices")
    pc = PowerCycle(G.k, p, cycle.seq, colour)
    for e in sorted(pc.edges()):
        c = G.colour_of(e)
        if c != colour:
            raise InvalidCycle(f"{e} is {'missing' if c is None else f'coloured {c}'}", window=e)
    return pc


def power_partition(G: ColouredHypergraph, p: int, config: Optional[DriverConfig] = None) -> list:
    """Partition ``V(G)`` into monochromatic p-th powers of tight cycles."""
    H = power_reduce(G, p)
    cert = partition(H, None, config)
    return [power_lift_back(G, cyc, c, p) for cyc, c in cert.cycles]
