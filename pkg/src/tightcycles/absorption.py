"""Covering a well-linked part by boundedly many monochromatic tight cycles.

The pipeline runs on a k-partite instance ``B_1, ..., B_{k-1}, B_k`` where
every ``v`` in ``B_k`` has a dense link into ``B_1 x ... x B_{k-1}``:

1. split ``B_k`` by majority link colour and the other parts at random;
2. group the link graphs into blocks of four with a dense common part;
3. cover the block graph by paths;
4. per path, build an auxiliary ``(k-1)``-uniform tight cycle from chosen
   edges and connector paths and lift it through the ``4t`` owners.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .errors import AbsorptionError, HypothesisViolation, InvalidArgument
from .hypergraph import ColouredHypergraph, Hypergraph, link_graph, link_size
from .lemmas import SubsetFamily, blocks_delta, group_blocks, posa_path_cover
from .search import SearchBudget, connect
from .tight import TightCycle, lift_cycle, validate_cycle


@dataclass(frozen=True)
class AbsorptionConfig:
    """Thresholds and budgets for :func:`absorb_cover`.

    Unset thresholds are derived from ``eps``: ``delta1`` is the block
    guarantee ``eps^4/64`` and each later constant halves the previous one.
    """

    eps: Fraction = Fraction(1, 4)
    delta1: Optional[Fraction] = None
    delta2: Optional[Fraction] = None
    delta3: Optional[Fraction] = None
    gamma: Optional[Fraction] = None
    connector_budget: SearchBudget = SearchBudget(node_limit=20_000)
    split_retries: int = 50
    seed: int = 0
    enforce_size_ratio: bool = False

    def __post_init__(self):
        eps = Fraction(self.eps)
        if not 0 < eps <= 1:
            raise InvalidArgument(f"eps must lie in (0, 1], got {eps}")
        d1 = Fraction(self.delta1) if self.delta1 is not None else blocks_delta(eps)
        d2 = Fraction(self.delta2) if self.delta2 is not None else d1 / 2
        d3 = Fraction(self.delta3) if self.delta3 is not None else d2 / 2
        g = Fraction(self.gamma) if self.gamma is not None else d3 / 2
        if not 0 < g < d3 < d2 < d1 < eps:
            raise InvalidArgument("need 0 < gamma < delta3 < delta2 < delta1 < eps")
        if self.split_retries < 1:
            raise InvalidArgument("split_retries must be positive")
        for name, value in (("eps", eps), ("delta1", d1), ("delta2", d2), ("delta3", d3), ("gamma", g)):
            object.__setattr__(self, name, value)

    def scaled(self, eps: Fraction) -> "AbsorptionConfig":
        """The same config at a lower floor; thresholds scale like ``eps^4``."""
        f = (Fraction(eps) / self.eps) ** 4
        return AbsorptionConfig(eps, self.delta1 * f, self.delta2 * f, self.delta3 * f,
                                self.gamma * f, self.connector_budget, self.split_retries,
                                self.seed, self.enforce_size_ratio)


@dataclass(frozen=True)
class ColourClass:
    colour: int
    parts: tuple
    vertices: tuple


def _product(parts) -> int:
    out = 1
    for p in parts:
        out *= len(p)
    return out


def _check_instance(G: ColouredHypergraph, parts, Bk):
    k = G.k
    if len(parts) != k - 1:
        raise InvalidArgument(f"expected {k - 1} parts besides B_k, got {len(parts)}")
    seen: set = set()
    for p in list(parts) + [Bk]:
        if seen & set(p):
            raise InvalidArgument("B_1, ..., B_k must be disjoint")
        seen |= set(p)
    if any(not 0 <= v < G.n for v in seen):
        raise InvalidArgument("a part has a vertex outside the host")


def colour_split(G: ColouredHypergraph, parts: Sequence[Sequence[int]], Bk: Sequence[int],
                 eps, seed: int = 0, retries: int = 50) -> list:
    """Reduce to one colour per sub-instance.

    Each ``v`` in ``B_k`` keeps its majority link colour (ties to the lowest),
    which has density at least ``eps/r``.  The other parts are then split at
    random into near-equal pieces, one per colour in use, until every ``v``
    keeps density ``eps/(2r)`` inside its colour's pieces.  Returns a list of
    :class:`ColourClass` in colour order.  A single colour class keeps the
    parts whole.
    """
    eps = Fraction(eps)
    parts = [sorted(p) for p in parts]
    _check_instance(G, parts, Bk)
    r = G.r
    total = _product(parts)
    classes: dict = {}
    for v in sorted(Bk):
        sizes = {c: link_size(G, [v], parts, colour_filter=c) for c in range(1, r + 1)}
        if sum(sizes.values()) < eps * total:
            raise HypothesisViolation(
                f"vertex {v} has link {sum(sizes.values())} < eps * {total}", witness=v)
        c = min(sizes, key=lambda c: (-sizes[c], c))
        assert sizes[c] >= eps / r * total
        classes.setdefault(c, []).append(v)
    colours = sorted(classes)
    if len(colours) <= 1:
        return [ColourClass(c, tuple(tuple(p) for p in parts), tuple(classes[c])) for c in colours]

    floor = eps / (2 * r)
    rng = random.Random(seed)
    q = len(colours)
    for _ in range(retries):
        pieces = {c: [] for c in colours}
        for p in parts:
            shuffled = p[:]
            rng.shuffle(shuffled)
            for i, c in enumerate(colours):
                pieces[c].append(tuple(sorted(shuffled[i::q])))
        if all(
            all(pieces[c]) and all(
                link_size(G, [v], pieces[c], colour_filter=c) >= floor * _product(pieces[c])
                for v in classes[c])
            for c in colours
        ):
            return [ColourClass(c, tuple(pieces[c]), tuple(classes[c])) for c in colours]
    raise AbsorptionError(f"no balanced split found in {retries} tries", stage="colour-split")


@dataclass(frozen=True)
class BlockPathPlan:
    """Everything chosen for one path of blocks.

    ``e`` holds ``e_0..e_t`` and ``e_prime`` holds ``e'_1..e'_{t-1}``, each
    ordered by part.  ``rim`` is ``v_1..v_{4t}``.
    """

    colour: int
    blocks: tuple
    e: tuple
    e_prime: tuple
    P: tuple
    Q: tuple
    rim: tuple
    aux: TightCycle
    cycle: TightCycle

    @property
    def t(self) -> int:
        return len(self.blocks)


@dataclass
class AbsorptionResult:
    cycles: list = field(default_factory=list)      # (TightCycle, colour)
    degenerate: list = field(default_factory=list)  # vertices of B_k left as singletons
    plans: list = field(default_factory=list)

    @property
    def covered(self) -> frozenset:
        out = set(self.degenerate)
        for cyc, _ in self.cycles:
            out |= cyc.vertices
        return frozenset(out)


def rim_labels(t: int) -> list:
    """1-based rim positions of block ``s`` (1..t): ``2s-1, 2s, 4t-2s+1, 4t-2s+2``."""
    return [(2 * s - 1, 2 * s, 4 * t - 2 * s + 1, 4 * t - 2 * s + 2) for s in range(1, t + 1)]


def _part_order(edge, part_of) -> tuple:
    return tuple(sorted(edge, key=lambda v: part_of[v]))


def _choose_edges(block_edges: list, t: int, reserved: set):
    """Pairwise disjoint ``e_0..e_t`` and ``e'_1..e'_{t-1}``, greedy lexicographic."""
    pools = []  # (kind, s, candidate edge set)
    pools.append(("e", 0, block_edges[0]))
    for s in range(1, t):
        common = block_edges[s - 1] & block_edges[s]
        pools.append(("e", s, common))
        pools.append(("e'", s, common))
    pools.append(("e", t, block_edges[t - 1]))
    used = set(reserved)
    chosen = {}
    for kind, s, cand in pools:
        for edge in sorted(cand):
            if not used & set(edge):
                chosen[(kind, s)] = edge
                used |= set(edge)
                break
        else:
            return None
    return chosen


def _plan_path(G, colour, parts, blocks, block_edges, reserved: set, config) -> BlockPathPlan:
    k = G.k
    w = k - 1
    t = len(blocks)
    part_of = {v: i for i, p in enumerate(parts) for v in p}
    chosen = _choose_edges(block_edges, t, reserved)
    if chosen is None:
        raise AbsorptionError(f"no disjoint edge choice for a path of {t} blocks", stage="edge-choice")
    e = [_part_order(chosen[("e", s)], part_of) for s in range(t + 1)]
    ep = {0: e[0], t: e[t]}
    for s in range(1, t):
        ep[s] = _part_order(chosen[("e'", s)], part_of)
    used = set(reserved)
    for edge in e + list(ep.values()):
        used |= set(edge)

    hosts = [Hypergraph(w, G.n, frozenset(edges)) for edges in block_edges]
    length = 2 * k - 3

    def link(host, start, end):
        forbidden = used - set(start) - set(end)
        path = connect(host, start, end, forbidden=forbidden, length=length, parts=parts,
                       budget=config.connector_budget)
        if path is None:
            raise AbsorptionError(f"no connector from {start} to {end}", stage="connector")
        inner = path.seq[w - 1:len(path.seq) - (w - 1)]
        assert len(inner) == k - 1 and not used & set(inner)
        used.update(inner)
        return path, inner

    P, Q, P_inner, Q_inner = [], [], [], []
    for s in range(1, t + 1):
        path, inner = link(hosts[s - 1], e[s - 1][1:], e[s][:-1])
        P.append(path)
        P_inner.append(inner)
    for s in range(t, 0, -1):
        path, inner = link(hosts[s - 1], ep[s][1:], ep[s - 1][:-1])
        Q.append(path)
        Q_inner.append(inner)

    groups = [e[0]]
    for s in range(1, t + 1):
        groups += [P_inner[s - 1], e[s]]
    for q, s in enumerate(range(t, 0, -1)):
        groups.append(Q_inner[q])
        if s > 1:
            groups.append(ep[s - 1])
    assert len(groups) == 4 * t
    aux_seq = tuple(v for g in groups for v in g)
    aux = TightCycle(w, aux_seq)

    rim = [None] * (4 * t)
    for s, labels in enumerate(rim_labels(t)):
        for pos, v in zip(labels, blocks[s].owners):
            rim[pos - 1] = v
    cycle = lift_cycle(G, aux, rim, parts=parts, colour=colour)
    return BlockPathPlan(colour, tuple(blocks), tuple(e), tuple(ep[s] for s in range(1, t)),
                         tuple(P), tuple(reversed(Q)), tuple(rim), aux, cycle)


def _cover_one_colour(G, cls: ColourClass, config: AbsorptionConfig, reserved: set,
                      result: AbsorptionResult):
    parts = [list(p) for p in cls.parts]
    ground = list(product(*parts))
    index = {tuple(sorted(x)): i for i, x in enumerate(ground)}
    m = len(ground)
    links = {v: link_graph(G, [v], parts, colour_filter=cls.colour).edges for v in cls.vertices}
    family = SubsetFamily(m, [[index[x] for x in links[v]] for v in cls.vertices], cls.vertices)
    grouping = group_blocks(family, config.eps)
    result.degenerate.extend(grouping.leftover)
    blocks = list(grouping.blocks)
    for b in blocks:
        if len(b.intersection) < config.delta1 * m:
            raise AbsorptionError(f"block {b.owners} has a sparse common link", stage="blocks")
    if not blocks:
        return
    # block graph: adjacent when the common links share delta3 * m edges
    adj = [(i, j) for i in range(len(blocks)) for j in range(i + 1, len(blocks))
           if len(blocks[i].intersection & blocks[j].intersection) >= config.delta3 * m]
    paths = posa_path_cover(Hypergraph.from_edges(2, len(blocks), adj))
    if len(paths) > 2 / config.delta2:
        raise AbsorptionError(f"{len(paths)} block paths exceed 2/delta2", stage="block-paths")
    for path in paths:
        chain = [blocks[i] for i in path]
        edges = [{ground[x] for x in b.intersection} for b in chain]
        edges = [{tuple(sorted(x)) for x in es} for es in edges]
        plan = _plan_path(G, cls.colour, parts, chain, edges, reserved, config)
        reserved |= set(plan.cycle.vertices)
        result.plans.append(plan)
        result.cycles.append((plan.cycle, cls.colour))


def absorb_cover(G: ColouredHypergraph, parts: Sequence[Sequence[int]], Bk: Sequence[int],
                 config: Optional[AbsorptionConfig] = None) -> AbsorptionResult:
    """Vertex-disjoint monochromatic tight cycles covering ``B_k``.

    Every vertex of ``B_k`` ends up either on a lifted cycle or in
    ``result.degenerate`` (the few owners left over by the block grouping).
    Cycles use ``B_1..B_{k-1}`` only as padding.  Any stage that cannot be
    completed at this size raises :class:`AbsorptionError` naming it, and no
    partial result is returned.
    """
    config = config or AbsorptionConfig()
    k = G.k
    if k < 2:
        raise InvalidArgument("absorption needs k >= 2")
    parts = [sorted(p) for p in parts]
    Bk = sorted(Bk)
    _check_instance(G, parts, Bk)
    if config.enforce_size_ratio and len(parts[-1]) * config.gamma < len(Bk):
        raise InvalidArgument(f"|B_{k - 1}| = {len(parts[-1])} < |B_k| / gamma")
    result = AbsorptionResult()
    if not Bk:
        return result
    if any(not p for p in parts):
        raise AbsorptionError("an empty part leaves no links", stage="hypothesis")
    try:
        classes = colour_split(G, parts, Bk, config.eps, config.seed, config.split_retries)
    except HypothesisViolation as exc:
        raise AbsorptionError(str(exc), stage="hypothesis") from exc
    # floor guaranteed per colour class: eps, eps/r unsplit, eps/(2r) split
    if G.r == 1:
        sub = config
    elif len(classes) == 1:
        sub = config.scaled(config.eps / G.r)
    else:
        sub = config.scaled(config.eps / (2 * G.r))
    reserved: set = set()
    for cls in classes:
        _cover_one_colour(G, cls, sub, reserved, result)

    # final re-check, independent of the construction
    seen: set = set(result.degenerate)
    for cyc, c in result.cycles:
        validate_cycle(G, cyc, c)
        assert not seen & cyc.vertices
        seen |= cyc.vertices
    assert set(Bk) <= seen
    assert seen - set(Bk) <= set().union(*map(set, parts))
    return result
