import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import complete_mono, satisfying_lift_instance
from tightcycles.errors import (
    InvalidArgument, InvalidCycle, MalformedCycle, PreconditionViolation, SizeLimitError,
)
from tightcycles.hypergraph import ColouredHypergraph, Hypergraph, VertexPartition
from tightcycles.tight import (
    ANY_COLOUR, TightCycle, TightPath, absorbs, build_crown, is_mono_cycle,
    is_positively_oriented, lift_conditions, lift_cycle, oriented, prescribed_length,
    spanning_mono_cycle, tp, tp_pair, validate_cycle, validate_path,
)


class TestValidateCycle:
    def test_single_vertex_is_a_cycle(self):
        G = ColouredHypergraph(Hypergraph(3, 4), 2, {})
        assert validate_cycle(G, TightCycle(3, (2,))) == ANY_COLOUR
        assert validate_cycle(G, TightCycle(3, (2,)), colour=2) == 2

    @pytest.mark.parametrize("seq", [(0, 1), (0, 1, 2)])
    def test_lengths_two_to_k_are_malformed(self, seq):
        with pytest.raises(MalformedCycle):
            validate_cycle(complete_mono(3, 5), TightCycle(3, seq))

    def test_graph_convention_allows_an_edge(self):
        G = complete_mono(2, 3)
        assert validate_cycle(G, TightCycle(2, (0, 2)), graph_convention=True) == 1
        with pytest.raises(MalformedCycle):
            validate_cycle(G, TightCycle(2, (0, 2)))
        with pytest.raises(InvalidArgument):
            validate_cycle(complete_mono(3, 4), TightCycle(3, (0,)), graph_convention=True)

    def test_repeated_vertex(self):
        with pytest.raises(MalformedCycle, match="repeats"):
            validate_cycle(complete_mono(3, 5), TightCycle(3, (0, 1, 2, 0)))

    def test_bad_window_is_named(self):
        G = ColouredHypergraph.from_colouring(
            3, 4, 2, {e: 1 for e in itertools.combinations(range(4), 3) if e != (0, 2, 3)})
        with pytest.raises(InvalidCycle) as info:
            validate_cycle(G, TightCycle(3, (0, 1, 2, 3)))
        assert sorted(info.value.window) == [0, 2, 3]

    def test_colour_mismatch(self):
        col = {e: 1 for e in itertools.combinations(range(4), 3)}
        col[(0, 1, 2)] = 2
        G = ColouredHypergraph.from_colouring(3, 4, 2, col)
        assert not is_mono_cycle(G, TightCycle(3, (0, 1, 2, 3)))
        assert is_mono_cycle(G, TightCycle(3, (0,)))

    def test_canonical(self):
        assert TightCycle(3, (3, 1, 0, 2)).canonical().seq == (0, 1, 3, 2)


class TestPaths:
    def test_length_counts_edges(self):
        assert TightPath(3, (0, 1, 2, 3, 4)).length == 3
        assert TightPath(3, (0, 1)).length == 0

    def test_repeats_rejected(self):
        with pytest.raises(InvalidArgument):
            TightPath(2, (0, 1, 0))

    def test_validate_path(self):
        H = Hypergraph.from_edges(2, 4, [(0, 1), (1, 2)])
        assert validate_path(H, TightPath(2, (0, 1, 2))) == 1
        with pytest.raises(InvalidCycle):
            validate_path(H, TightPath(2, (0, 1, 2, 3)))


class TestTypes:
    P = VertexPartition(((0, 1), (2, 3), (4, 5)))

    def test_tp(self):
        assert tp((0, 2), self.P) == 3
        assert tp((2, 4), self.P) == 1
        with pytest.raises(InvalidArgument):
            tp((0, 1), self.P)

    def test_pair_and_prescribed(self):
        e, f = (0, 2), (3, 5)  # miss 3 and 1
        assert tp_pair(e, f, self.P) == 1
        assert prescribed_length(e, f, self.P) == 7
        assert prescribed_length((0, 2), (1, 4), self.P) == 3 + 2  # t = 2

    def test_oriented(self):
        assert oriented((2, 0), self.P) == (0, 2)   # misses 3: order 1, 2
        assert oriented((4, 0), self.P) == (4, 0)   # misses 2: order 3, 1
        assert is_positively_oriented((0, 2, 4, 1, 3), self.P)
        assert not is_positively_oriented((0, 4, 2), self.P)

    @given(st.integers(3, 5), st.data())
    @settings(max_examples=40, deadline=None)
    def test_prescribed_range(self, k, data):
        P = VertexPartition(tuple((2 * i, 2 * i + 1) for i in range(k)))
        skip_e = data.draw(st.integers(0, k - 1))
        skip_f = data.draw(st.integers(0, k - 1))
        e = [2 * i for i in range(k) if i != skip_e]
        f = [2 * i + 1 for i in range(k) if i != skip_f]
        assert k + 2 <= prescribed_length(e, f, P) <= 2 * k + 1


class TestCrown:
    @pytest.mark.parametrize("k,t,verts,edges", [(3, 4, 12, 20), (2, 5, 10, 15), (4, 3, 12, 21)])
    def test_counts(self, k, t, verts, edges):
        c = build_crown(k, t)
        assert len(c.vertices) == verts
        assert len(c.edges) == edges

    def test_too_short(self):
        with pytest.raises(InvalidArgument):
            build_crown(3, 1)

    @pytest.mark.parametrize("k,t", [(2, 4), (3, 3), (4, 3)])
    def test_every_subset_closes(self, k, t):
        c = build_crown(k, t)
        G = ColouredHypergraph.monochromatic(Hypergraph(k, len(c.vertices), c.edges))
        for size in range(t + 1):
            for sub in itertools.combinations(c.rim, size):
                cyc = c.cycle_with(sub)
                assert cyc.vertices == set(c.base) | set(sub)
                validate_cycle(G, cyc, 1)

    def test_cycle_with_rejects_strangers(self):
        with pytest.raises(InvalidArgument):
            build_crown(3, 3).cycle_with([0])

    def test_absorbs(self):
        c = build_crown(3, 3)
        G = ColouredHypergraph.monochromatic(Hypergraph(3, 9, c.edges))
        ok, witnesses = absorbs(G, c.base, c.rim)
        assert ok and len(witnesses) == 8
        for sub, (cyc, col) in witnesses.items():
            assert cyc.vertices == set(c.base) | sub
            validate_cycle(G, cyc, col)

    def test_absorbs_fails_without_rim_edges(self):
        c = build_crown(3, 3)
        edges = c.edges - set(c.rim_edges(0))
        G = ColouredHypergraph.monochromatic(Hypergraph(3, 9, frozenset(edges)))
        ok, _ = absorbs(G, c.base, c.rim)
        assert not ok

    def test_absorbs_limit(self):
        with pytest.raises(SizeLimitError):
            absorbs(complete_mono(2, 20), range(3), range(3, 20), max_rim=10)


def test_spanning_cycle():
    G = complete_mono(3, 6)
    cyc, col = spanning_mono_cycle(G, [0, 2, 3, 5])
    assert cyc.vertices == {0, 2, 3, 5} and col == 1
    assert spanning_mono_cycle(G, [0, 1, 2]) is None


class TestLift:
    def test_valid_lift(self, rng):
        for t in (2, 3, 4):
            G, aux, rim, colour = satisfying_lift_instance(rng, t)
            cyc = lift_cycle(G, aux, rim)
            assert validate_cycle(G, cyc) == colour
            assert cyc.seq[2] == rim[0]

    def test_mutations_report_location(self, rng):
        G, aux, rim, colour = satisfying_lift_instance(rng, 3)
        for loc, cond, vs in lift_conditions(aux.seq, rim, 3):
            e = tuple(sorted(vs))
            colouring = dict(G.colour)
            del colouring[e]
            H = ColouredHypergraph.from_colouring(3, G.n, 3, colouring)
            with pytest.raises(PreconditionViolation) as info:
                lift_cycle(H, aux, rim)
            assert (info.value.location, info.value.condition) == (loc, cond)

    def test_part_check(self):
        G, aux, rim, _ = satisfying_lift_instance(random.Random(3), 2)
        parts = [[aux.seq[0], aux.seq[2]], [aux.seq[1]]]
        with pytest.raises(PreconditionViolation) as info:
            lift_cycle(G, aux, rim, parts=parts)
        assert info.value.location == (2, 2)

    def test_shape_errors(self):
        G = complete_mono(3, 8)
        with pytest.raises(InvalidArgument):
            lift_cycle(G, TightCycle(2, (0, 1, 2, 3)), [4])
        with pytest.raises(InvalidArgument):
            lift_cycle(G, TightCycle(2, (0, 1, 2)), [4, 5])
        with pytest.raises(InvalidArgument):
            lift_cycle(G, TightCycle(2, (0, 1, 2, 3)), [3, 5])


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_crown_edge_count_formula(k):
    for t in range(2, 9):
        if t * (k - 1) >= k + 1:
            assert len(build_crown(k, t).edges) == t * (2 * k - 1)


def test_tp_pair_identity():
    P = VertexPartition(((0, 1), (2, 3), (4, 5)))
    assert tp_pair((0, 2), (0, 2), P) == 0
    assert tp_pair((0, 4), (2, 4), P) == 2  # tp 2 then tp 1


class TestAbsorbsEdges:
    def test_empty_rim(self):
        ok, witnesses = absorbs(complete_mono(3, 5), range(5), [])
        assert ok and len(witnesses) == 1

    def test_base_minus_a_vertex(self):
        c = build_crown(3, 3)
        G = ColouredHypergraph.monochromatic(Hypergraph(3, 9, c.edges))
        assert not absorbs(G, c.base[1:], c.rim)[0]

    @given(st.integers(0, 2 ** 32))
    @settings(max_examples=25, deadline=None)
    def test_monotone_in_edges(self, seed):
        rng = random.Random(seed)
        c = build_crown(2, 4)
        extra = [e for e in itertools.combinations(range(12), 2) if rng.random() < 0.3]
        before = ColouredHypergraph.monochromatic(Hypergraph(2, 12, c.edges))
        after = ColouredHypergraph.monochromatic(Hypergraph(2, 12, c.edges | frozenset(extra)))
        assert absorbs(before, c.base, c.rim)[0]
        assert absorbs(after, c.base, c.rim)[0]
