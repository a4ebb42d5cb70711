import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import coloured_instances, complete_mono, random_instance
from tightcycles.errors import InvalidArgument
from tightcycles.hypergraph import ColouredHypergraph, Hypergraph, VertexPartition, link_graph, partite_clique_set
from tightcycles.oracles import enumerate_mono_tight_cycles
from tightcycles.search import SearchBudget, connect, find_mono_crown, longest_mono_tight_cycle
from tightcycles.tight import ANY_COLOUR, build_crown, is_positively_oriented, prescribed_length, validate_cycle, validate_path


class TestBudget:
    @pytest.mark.parametrize("kw", [{"node_limit": 0}, {"time_limit": -1.0}, {"seed": -1}])
    def test_rejects(self, kw):
        with pytest.raises(InvalidArgument):
            SearchBudget(**kw)


class TestLongest:
    def test_complete_is_hamiltonian(self):
        found = longest_mono_tight_cycle(complete_mono(3, 9))
        assert len(found.cycle) == 9 and found.exact

    def test_edgeless_falls_back_to_a_vertex(self):
        G = ColouredHypergraph(Hypergraph(3, 5), 1, {})
        found = longest_mono_tight_cycle(G, forbidden=[0, 1])
        assert found.cycle.seq == (2,) and found.colour == ANY_COLOUR

    def test_forbidden(self):
        found = longest_mono_tight_cycle(complete_mono(3, 7), forbidden=[0, 3])
        assert found.cycle.vertices == {1, 2, 4, 5, 6}

    def test_all_forbidden(self):
        with pytest.raises(InvalidArgument):
            longest_mono_tight_cycle(complete_mono(2, 3), forbidden=[0, 1, 2])

    @given(coloured_instances(n=st.integers(1, 7)))
    @settings(max_examples=80, deadline=None)
    def test_matches_enumeration(self, G):
        best = max((len(c) for c, _ in enumerate_mono_tight_cycles(G)), default=1)
        found = longest_mono_tight_cycle(G)
        assert len(found.cycle) == best
        if best > 1:
            validate_cycle(G, found.cycle, found.colour)


class TestCrownSearch:
    def test_finds_in_crown_host(self):
        c = build_crown(3, 4)
        G = ColouredHypergraph.monochromatic(Hypergraph(3, 12, c.edges))
        crown, colour = find_mono_crown(G, 4)
        assert crown.edges <= G.edges and colour == 1

    def test_respects_forbidden_and_colour(self):
        G = ColouredHypergraph.from_colouring(
            3, 14, 2, {e: 1 + (sum(e) % 2) for e in itertools.combinations(range(14), 3)})
        hit = find_mono_crown(G, 2, forbidden=[0])
        assert hit is not None
        crown, colour = hit
        # a mono crown needs six vertices of one parity; odd triples take colour 2
        parity = {v % 2 for v in crown.vertices}
        assert len(parity) == 1 and colour == 1 + 3 * parity.pop() % 2
        assert 0 not in crown.vertices
        assert all(G.colour_of(e) == colour for e in crown.edges)

    def test_parity_colouring_on_eight_has_none(self):
        G = ColouredHypergraph.from_colouring(
            3, 8, 2, {e: 1 + (sum(e) % 2) for e in itertools.combinations(range(8), 3)})
        assert find_mono_crown(G, 2) is None

    def test_absent(self):
        G = ColouredHypergraph(Hypergraph(2, 6), 1, {})
        assert find_mono_crown(G, 3) is None


class TestConnect:
    P = VertexPartition(((0, 1, 2), (3, 4, 5), (6, 7, 8)))

    def test_prescribed_length(self):
        H = partite_clique_set(self.P, 3, 9)
        path = connect(H, (0, 3), (4, 7), parts=self.P.blocks)
        assert path.length == prescribed_length((0, 3), (4, 7), self.P)
        assert path.seq[:2] == (0, 3) and path.seq[-2:] == (4, 7)
        assert is_positively_oriented(path.seq, self.P)
        validate_path(H, path)

    def test_wrong_residue_is_none(self):
        H = partite_clique_set(self.P, 3, 9)
        assert connect(H, (0, 3), (4, 7), parts=self.P.blocks, length=6) is None

    def test_forbidden_blocks_interior(self):
        H = partite_clique_set(self.P, 3, 9)
        path = connect(H, (0, 3), (4, 7), parts=self.P.blocks, forbidden=[1, 5, 6, 8])
        assert path is None or not {1, 5, 6, 8} & set(path.seq)

    def test_link_graph_input(self):
        G = complete_mono(4, 10)
        L = link_graph(G, [9], [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
        path = connect(L, (0, 3), (5, 8), budget=SearchBudget(node_limit=5000))
        assert path is not None and path.length == prescribed_length((0, 3), (5, 8), self.P)

    def test_codegree_floor(self):
        H = partite_clique_set(self.P, 3, 9)
        assert connect(H, (0, 3), (4, 7), parts=self.P.blocks, codegree_floor=4) is None

    def test_argument_errors(self):
        H = partite_clique_set(self.P, 3, 9)
        with pytest.raises(InvalidArgument):
            connect(H, (0, 3), (3, 7), parts=self.P.blocks)
        with pytest.raises(InvalidArgument):
            connect(H, (0, 3), (4, 7))
        with pytest.raises(InvalidArgument):
            connect(H, (0, 3), (4, 7), parts=self.P.blocks, forbidden=[0])

    @given(st.data())
    @settings(max_examples=30, deadline=None)
    def test_any_pair_in_complete_partite(self, data):
        H = partite_clique_set(self.P, 3, 9)
        e = data.draw(st.sampled_from([(0, 3), (1, 6), (4, 8)]))
        f = data.draw(st.sampled_from([(2, 5), (2, 7), (5, 7)]))
        if set(e) & set(f):
            return
        path = connect(H, e, f, parts=self.P.blocks)
        assert path is not None
        assert path.length % 3 == (path.length and prescribed_length(e, f, self.P) % 3)


def test_longest_matches_oracle_up_to_ten():
    rng = random.Random(10)
    for n, k, p in [(8, 2, 0.5), (9, 3, 0.6), (10, 3, 0.5), (10, 2, 0.35)]:
        G = random_instance(rng, k, n, 2, p)
        best = max((len(c) for c, _ in enumerate_mono_tight_cycles(G)), default=1)
        assert len(longest_mono_tight_cycle(G, budget=SearchBudget(node_limit=10 ** 7), exact_bound=n).cycle) == best


def test_crown_in_random_two_colouring():
    G = random_instance(random.Random(12), 3, 12, 2, 1.0)
    hit = find_mono_crown(G, 3)
    assert hit is not None
    crown, colour = hit
    assert len(crown.edges) == 3 * (2 * 3 - 1)
    assert all(G.colour_of(e) == colour for e in crown.edges)


def test_crown_in_complete():
    crown, colour = find_mono_crown(complete_mono(3, 12), 4)
    assert len(crown.vertices) == 12 and colour == 1


def test_connect_dense_random():
    """Success is not guaranteed on random hosts; every path found must re-validate."""
    rng = random.Random(13)
    P = VertexPartition(tuple(tuple(range(4 * i, 4 * i + 4)) for i in range(3)))
    e, f = (0, 4), (2, 9)
    found = 0
    for _ in range(20):
        H = Hypergraph.from_edges(3, 12, [x for x in partite_clique_set(P, 3, 12).edges if rng.random() < 0.9])
        S = rng.sample([v for v in range(12) if v not in e + f], 2)
        path = connect(H, e, f, forbidden=S, parts=P.blocks)
        if path is not None:
            found += 1
            validate_path(H, path)
            assert not set(S) & set(path.seq)
            assert is_positively_oriented(path.seq, P)
            assert path.length == prescribed_length(e, f, P)
    print(f"dense connect success {found}/20")
    assert found >= 10
