"""Uniform hypergraphs, edge colourings, link graphs and small exact quantities.

Vertices are the integers ``0..n-1`` and every edge is stored as a sorted
tuple, so two hypergraphs with the same edge set compare and serialise
identically.  Colours are the integers ``1..r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InvalidArgument, SizeLimitError

Edge = tuple

EXACT_ALPHA_LIMIT = 24


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int):
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _completion_table(edges: Iterable[Edge]) -> dict:
    # (k-1)-subset mask -> mask of vertices completing it to an edge
    table: dict = {}
    for e in edges:
        em = mask_of(e)
        for v in e:
            key = em ^ (1 << v)
            table[key] = table.get(key, 0) | (1 << v)
    return table


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on the vertex set ``0..n-1``."""

    k: int
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.k < 1:
            raise InvalidArgument(f"uniformity must be positive, got {self.k}")
        if self.n < 0:
            raise InvalidArgument(f"vertex count must be non-negative, got {self.n}")
        normalised = set()
        for e in self.edges:
            t = tuple(sorted(e))
            if len(t) != self.k or len(set(t)) != self.k:
                raise InvalidArgument(f"edge {e} is not a {self.k}-set")
            if t[0] < 0 or t[-1] >= self.n:
                raise InvalidArgument(f"edge {e} has a vertex outside 0..{self.n - 1}")
            normalised.add(t)
        object.__setattr__(self, "edges", frozenset(normalised))

    @classmethod
    def from_edges(cls, k: int, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Build from an edge list, rejecting duplicate edges."""
        seen = set()
        for e in edges:
            t = tuple(sorted(e))
            if t in seen:
                raise InvalidArgument(f"duplicate edge {t}")
            seen.add(t)
        return cls(k, n, frozenset(seen))

    @classmethod
    def complete(cls, k: int, n: int) -> "Hypergraph":
        return cls(k, n, frozenset(combinations(range(n), k)))

    def __contains__(self, vertices) -> bool:
        return tuple(sorted(vertices)) in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def incidence(self) -> dict:
        inc: dict = {v: [] for v in range(self.n)}
        for e in sorted(self.edges):
            for v in e:
                inc[v].append(e)
        return inc

    @cached_property
    def edge_masks(self) -> frozenset:
        return frozenset(mask_of(e) for e in self.edges)

    @cached_property
    def completions(self) -> dict:
        return _completion_table(self.edges)

    def degree(self, vertices: Iterable[int]) -> int:
        """Number of edges containing ``vertices`` (co-degree for (k-1)-sets)."""
        vs = set(vertices)
        if not vs:
            return len(self.edges)
        v0 = min(vs)
        return sum(1 for e in self.incidence.get(v0, ()) if vs.issubset(e))

    def induced(self, vertices: Iterable[int]) -> "Hypergraph":
        vs = set(vertices)
        return Hypergraph(self.k, self.n, frozenset(e for e in self.edges if vs.issuperset(e)))


@dataclass(frozen=True)
class ColouredHypergraph:
    """A k-uniform hypergraph whose edges carry colours in ``1..r``."""

    host: Hypergraph
    r: int
    colour: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.r < 1:
            raise InvalidArgument(f"colour count must be positive, got {self.r}")
        normalised = {tuple(sorted(e)): c for e, c in self.colour.items()}
        if set(normalised) != set(self.host.edges):
            missing = sorted(set(self.host.edges) - set(normalised))
            extra = sorted(set(normalised) - set(self.host.edges))
            raise InvalidArgument(
                f"colouring must be defined exactly on the edges "
                f"(missing {missing[:3]}, extra {extra[:3]})"
            )
        for e, c in normalised.items():
            if not isinstance(c, int) or not 1 <= c <= self.r:
                raise InvalidArgument(f"edge {e} has colour {c!r} outside 1..{self.r}")
        object.__setattr__(self, "colour", dict(sorted(normalised.items())))

    @classmethod
    def from_colouring(cls, k: int, n: int, r: int, colouring: Mapping) -> "ColouredHypergraph":
        host = Hypergraph(k, n, frozenset(tuple(sorted(e)) for e in colouring))
        return cls(host, r, colouring)

    @classmethod
    def monochromatic(cls, host: Hypergraph, colour: int = 1, r: Optional[int] = None) -> "ColouredHypergraph":
        return cls(host, r or colour, {e: colour for e in host.edges})

    @property
    def k(self) -> int:
        return self.host.k

    @property
    def n(self) -> int:
        return self.host.n

    @property
    def edges(self) -> frozenset:
        return self.host.edges

    @property
    def incidence(self) -> dict:
        return self.host.incidence

    def colour_of(self, vertices: Iterable[int]) -> Optional[int]:
        """Colour of the edge on ``vertices``, or ``None`` if it is not an edge."""
        return self.colour.get(tuple(sorted(vertices)))

    @cached_property
    def _classes(self) -> dict:
        classes: dict = {c: [] for c in range(1, self.r + 1)}
        for e, c in self.colour.items():
            classes[c].append(e)
        return classes

    def colour_class(self, c: int) -> Hypergraph:
        self._check_colour(c)
        return Hypergraph(self.k, self.n, frozenset(self._classes[c]))

    @cached_property
    def _completion_tables(self) -> dict:
        return {c: _completion_table(es) for c, es in self._classes.items()}

    def completions(self, c: int) -> dict:
        """Map each (k-1)-subset mask to the mask of vertices completing it in colour ``c``."""
        self._check_colour(c)
        return self._completion_tables[c]

    def used_colours(self) -> list:
        return [c for c in range(1, self.r + 1) if self._classes[c]]

    def restrict_to(self, vertices: Iterable[int]) -> "ColouredHypergraph":
        vs = set(vertices)
        return ColouredHypergraph(
            self.host.induced(vs), self.r,
            {e: c for e, c in self.colour.items() if vs.issuperset(e)},
        )

    def _check_colour(self, c):
        if not isinstance(c, int) or not 1 <= c <= self.r:
            raise InvalidArgument(f"unknown colour {c!r}; colours are 1..{self.r}")


@dataclass(frozen=True)
class VertexPartition:
    """An ordered family of pairwise disjoint non-empty vertex blocks."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        seen: set = set()
        for i, b in enumerate(blocks):
            if not b:
                raise InvalidArgument(f"block {i + 1} is empty")
            if seen & b:
                raise InvalidArgument(f"block {i + 1} overlaps an earlier block")
            if min(b) < 0:
                raise InvalidArgument(f"block {i + 1} contains a negative vertex")
            seen |= b
        object.__setattr__(self, "blocks", blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, i):
        return self.blocks[i]

    @cached_property
    def block_index(self) -> dict:
        """Vertex -> 1-based index of its block."""
        return {v: i + 1 for i, b in enumerate(self.blocks) for v in b}

    @property
    def support(self) -> frozenset:
        return frozenset(self.block_index)


@dataclass(frozen=True)
class LinkGraph:
    """Link of a pinned vertex tuple, optionally restricted to parts.

    ``edges`` are sorted ``uniformity``-tuples.  When ``parts`` is given the
    link is partite: every edge meets each part exactly once.
    """

    uniformity: int
    pins: tuple
    edges: frozenset
    parts: Optional[tuple] = None
    vertices: frozenset = frozenset()

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, vertices) -> bool:
        return tuple(sorted(vertices)) in self.edges

    @cached_property
    def completions(self) -> dict:
        return _completion_table(self.edges)


def link_graph(G, pins: Sequence[int], parts: Optional[Sequence[Iterable[int]]] = None,
               colour_filter: Optional[int] = None) -> LinkGraph:
    """Link graph of ``pins`` in ``G``.

    ``G`` may be a :class:`Hypergraph` or a :class:`ColouredHypergraph`; with
    ``colour_filter`` only edges of that colour count.
    """
    pins = tuple(pins)
    coloured = isinstance(G, ColouredHypergraph)
    host = G.host if coloured else G
    k = host.k
    if len(set(pins)) != len(pins):
        raise InvalidArgument(f"pins {pins} are not distinct")
    if len(pins) >= k:
        raise InvalidArgument(f"{len(pins)} pins leave nothing of a {k}-edge")
    if any(not 0 <= v < host.n for v in pins):
        raise InvalidArgument(f"pin outside 0..{host.n - 1}")
    if colour_filter is not None:
        if not coloured:
            raise InvalidArgument("colour filter given for an uncoloured hypergraph")
        G._check_colour(colour_filter)
    part_sets = None
    if parts is not None:
        part_sets = tuple(frozenset(p) for p in parts)
        if len(part_sets) != k - len(pins):
            raise InvalidArgument(f"expected {k - len(pins)} parts, got {len(part_sets)}")
        seen = set(pins)
        for p in part_sets:
            if seen & p:
                raise InvalidArgument("parts must be disjoint from the pins and from each other")
            seen |= p

    candidates = host.incidence[pins[0]] if pins else sorted(host.edges)
    pinset = set(pins)
    result = set()
    for e in candidates:
        if not pinset.issubset(e):
            continue
        if colour_filter is not None and G.colour[e] != colour_filter:
            continue
        rest = tuple(v for v in e if v not in pinset)
        if part_sets is not None and not _meets_each_once(rest, part_sets):
            continue
        result.add(rest)
    if part_sets is not None:
        verts = frozenset().union(*part_sets) if part_sets else frozenset()
    else:
        verts = frozenset(range(host.n)) - pinset
    return LinkGraph(k - len(pins), pins, frozenset(result), part_sets, verts)


def _meets_each_once(vertices, part_sets) -> bool:
    hit = [0] * len(part_sets)
    for v in vertices:
        for i, p in enumerate(part_sets):
            if v in p:
                hit[i] += 1
                break
        else:
            return False
    return all(h == 1 for h in hit)


def link_size(G, pins: Sequence[int], parts: Sequence[Iterable[int]],
              colour_filter: Optional[int] = None) -> int:
    """``len(link_graph(G, pins, parts, colour_filter))`` without building the set."""
    coloured = isinstance(G, ColouredHypergraph)
    host = G.host if coloured else G
    part_of = {}
    for i, p in enumerate(parts):
        for v in p:
            part_of[v] = i
    pinset = set(pins)
    need = len(parts)
    count = 0
    for e in host.incidence[pins[0]]:
        if not pinset.issubset(e):
            continue
        if colour_filter is not None and G.colour[e] != colour_filter:
            continue
        seen = set()
        for v in e:
            if v in pinset:
                continue
            i = part_of.get(v)
            if i is None or i in seen:
                break
            seen.add(i)
        else:
            if len(seen) == need:
                count += 1
    return count


def density(H: Hypergraph) -> Fraction:
    """Exact edge density ``|E| / C(n, k)``."""
    if H.n < H.k:
        raise InvalidArgument(f"density undefined for n={H.n} < k={H.k}")
    return Fraction(len(H.edges), comb(H.n, H.k))


def partite_clique_set(P: VertexPartition, k: int, n: Optional[int] = None) -> Hypergraph:
    """The complete ``P``-partite k-graph: k-sets with at most one vertex per block."""
    if n is None:
        n = max(P.support) + 1 if P.support else 0
    edges = set()
    for chosen in combinations(P.blocks, k):
        for e in product(*[sorted(b) for b in chosen]):
            edges.add(tuple(sorted(e)))
    return Hypergraph(k, n, frozenset(edges))


def clique_hypergraph(H, k: int, monochromatic: bool = True):
    """All k-sets whose every j-subset is an edge of the j-graph ``H``.

    For a :class:`ColouredHypergraph` with ``monochromatic`` set, the j-subsets
    must also share one colour and the result is coloured by it.
    """
    coloured = isinstance(H, ColouredHypergraph)
    host = H.host if coloured else H
    j, n = host.k, host.n
    if k < j:
        raise InvalidArgument(f"target uniformity {k} below source uniformity {j}")
    use_colour = coloured and monochromatic
    found: dict = {}

    def extend(current: list, colour: Optional[int]):
        if len(current) == k:
            found[tuple(current)] = colour
            return
        start = current[-1] + 1 if current else 0
        for w in range(start, n):
            c = colour
            ok = True
            if len(current) >= j - 1:
                for sub in combinations(current, j - 1):
                    e = sub + (w,)
                    if e not in host.edges:
                        ok = False
                        break
                    if use_colour:
                        ce = H.colour[e]
                        if c is None:
                            c = ce
                        elif ce != c:
                            ok = False
                            break
            if ok:
                current.append(w)
                extend(current, c)
                current.pop()

    extend([], None)
    if use_colour:
        if j == k:
            return H
        return ColouredHypergraph(Hypergraph(k, n, frozenset(found)), H.r, found)
    return Hypergraph(k, n, frozenset(found))


def independence_number(H, limit: int = EXACT_ALPHA_LIMIT) -> int:
    """Size of a largest vertex set containing no edge, by branch and bound.

    The bound greedily splits the candidates into groups whose k-subsets are
    all edges; such a group contributes at most k-1 vertices.
    """
    host = H.host if isinstance(H, ColouredHypergraph) else H
    n, k = host.n, host.k
    if n > limit:
        raise SizeLimitError(f"exact independence number limited to n <= {limit}, got n={n}")
    masks = host.edge_masks
    inc = {v: [m for m in masks if m >> v & 1] for v in range(n)}
    if k == 1:
        return n - len({e[0] for e in host.edges})

    def complete_with(group: list, v: int) -> bool:
        if len(group) < k - 1:
            return True
        for sub in combinations(group, k - 1):
            if (mask_of(sub) | (1 << v)) not in masks:
                return False
        return True

    def group_bound(cand: int) -> int:
        groups: list = []
        for v in bits(cand):
            for g in groups:
                if complete_with(g, v):
                    g.append(v)
                    break
            else:
                groups.append([v])
        return sum(min(len(g), k - 1) for g in groups)

    best = 0

    def search(chosen: int, size: int, cand: int):
        nonlocal best
        if size > best:
            best = size
        if not cand:
            return
        if size + bin(cand).count("1") <= best:
            return
        if size + group_bound(cand) <= best:
            return
        v = (cand & -cand).bit_length() - 1
        rest = cand ^ (1 << v)
        with_v = chosen | (1 << v)
        nxt = rest
        for e in inc[v]:
            left = e & ~with_v
            if left and left & (left - 1) == 0:
                nxt &= ~left
        search(with_v, size + 1, nxt)
        search(chosen, size, rest)

    search(0, 0, mask_of(range(n)))
    return best
