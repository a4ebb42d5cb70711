import dataclasses
import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import coloured_instances, complete_mono, random_instance
from tightcycles import io as tio
from tightcycles.driver import (
    DriverConfig, PartitionCertificate, brute_force_partition, greedy_cover, partition,
    power_lift_back, power_partition, power_reduce, verify_certificate,
)
from tightcycles.errors import InvalidArgument, InvalidCycle, SizeLimitError
from tightcycles.hypergraph import ColouredHypergraph, Hypergraph
from tightcycles.oracles import min_partition_size
from tightcycles.search import SearchBudget
from tightcycles.tight import ANY_COLOUR, TightCycle, validate_cycle


class TestPartition:
    def test_monochromatic_complete_is_one_cycle(self):
        cert = partition(complete_mono(3, 10))
        assert len(cert) == 1 and len(cert.cycles[0][0]) == 10

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_tiny_hosts(self, n):
        G = ColouredHypergraph(Hypergraph(3, n), 2, {})
        cert = partition(G)
        assert len(cert) == n and set(cert.provenance) == {"degenerate"}

    def test_two_coloured_complete(self):
        G = random_instance(random.Random(1), 3, 12, 2, 1.0)
        cert = partition(G)
        assert verify_certificate(G, cert)
        assert sum(cert.histogram().values()) == len(cert)

    @given(coloured_instances(n=st.integers(1, 8)))
    @settings(max_examples=40, deadline=None)
    def test_never_beats_the_optimum(self, G):
        cert = partition(G)
        assert verify_certificate(G, cert)
        assert len(cert) >= min_partition_size(G)[0]

    def test_trace_snapshots(self):
        G = random_instance(random.Random(4), 2, 12, 2, 0.7)
        trace = []
        cert = partition(G, config=DriverConfig(spanning_shortcut=False), trace=trace)
        assert trace and trace[0]["j"] == 1
        assert [s["j"] for s in trace] == sorted(s["j"] for s in trace)
        assert cert.diagnostics["steps"] == len(trace)

    def test_declared_alpha_checked(self):
        with pytest.raises(InvalidArgument):
            partition(ColouredHypergraph(Hypergraph(2, 4), 1, {}), alpha=2)

    def test_large_host_needs_alpha(self):
        with pytest.raises(SizeLimitError):
            partition(ColouredHypergraph(Hypergraph(2, 30), 1, {}))

    def test_spanning_shortcut(self):
        G = complete_mono(2, 7)
        assert partition(G).provenance == ("greedy",)
        assert len(partition(G, config=DriverConfig(spanning_shortcut=False))) >= 1

    def test_leftover_merged_into_absorber(self):
        # at n=8 the crown leaves too few free vertices for a greedy cycle
        G = tio.generate(3, 8, 2, seed=8001)
        cert = partition(G, config=DriverConfig(seed=1, spanning_shortcut=False))
        assert cert.diagnostics.get("merged_absorbers") == 1
        assert len(cert) == min_partition_size(G)[0]

    def test_without_crowns(self):
        G = random_instance(random.Random(2), 3, 10, 3, 0.8)
        cert = partition(G, config=DriverConfig(use_crowns=False))
        assert verify_certificate(G, cert)

    def test_config_resolution(self):
        cfg = DriverConfig().resolved(3, 2)
        assert cfg.eps == Fraction(1, 24) and cfg.gamma == Fraction(1, 24)


class TestGreedy:
    def test_complete(self):
        res = greedy_cover(complete_mono(3, 10))
        assert len(res.cycles) == 1 and not res.uncovered

    def test_edgeless(self):
        res = greedy_cover(ColouredHypergraph(Hypergraph(3, 5), 1, {}))
        assert res.cycles == () and res.uncovered == frozenset(range(5))

    def test_gamma_target(self):
        G = random_instance(random.Random(7), 3, 12, 1, 1.0)
        res = greedy_cover(G, gamma=Fraction(1, 10))
        assert len(res.uncovered) <= 1

    def test_forbidden_and_cap(self):
        res = greedy_cover(complete_mono(2, 8), forbidden=[0, 1], max_cycles=0)
        assert res.uncovered == frozenset(range(2, 8))


class TestFallback:
    def test_single_vertex(self):
        res = brute_force_partition(complete_mono(3, 5), [2])
        assert res.exact and len(res.cycles) == 1

    def test_complete_four(self):
        res = brute_force_partition(complete_mono(3, 4))
        assert res.exact and len(res.cycles) == 1

    def test_matches_oracle(self):
        rng = random.Random(11)
        for _ in range(30):
            G = random_instance(rng, rng.choice([2, 3]), rng.randint(1, 7), rng.randint(1, 3), rng.random())
            res = brute_force_partition(G)
            assert res.exact and len(res.cycles) == min_partition_size(G)[0]

    def test_graph_convention(self):
        G = ColouredHypergraph.from_colouring(2, 2, 1, {(0, 1): 1})
        assert len(brute_force_partition(G, graph_convention=True).cycles) == 1
        assert len(brute_force_partition(G).cycles) == 2

    def test_bound_and_budget(self):
        G = complete_mono(3, 8)
        res = brute_force_partition(G, bound=5)
        assert not res.exact and "bound" in res.warning and len(res.cycles) == 8
        G = random_instance(random.Random(0), 3, 12, 2, 0.6)
        res = brute_force_partition(G, budget=SearchBudget(node_limit=10))
        assert not res.exact and "budget" in res.warning


class TestVerify:
    def setup_method(self):
        self.G = random_instance(random.Random(3), 3, 9, 2, 0.9)
        self.cert = partition(self.G)

    def test_accepts(self):
        assert verify_certificate(self.G, self.cert)

    def test_duplicate_vertex(self):
        v = self.cert.cycles[0][0].seq[0]
        extra = (TightCycle(3, (v,)), ANY_COLOUR)
        bad = dataclasses.replace(self.cert, cycles=self.cert.cycles + (extra,),
                                  provenance=self.cert.provenance + ("degenerate",))
        verdict = verify_certificate(self.G, bad)
        assert not verdict and verdict.vertex == v

    def test_missing_vertex(self):
        idx = 0
        bad = dataclasses.replace(self.cert, cycles=self.cert.cycles[:idx] + self.cert.cycles[idx + 1:],
                                  provenance=self.cert.provenance[:idx] + self.cert.provenance[idx + 1:])
        verdict = verify_certificate(self.G, bad)
        assert not verdict and "not covered" in verdict.reason

    def test_recoloured_window(self):
        cyc, col = max(self.cert.cycles, key=lambda cc: len(cc[0]))
        if cyc.degenerate:
            pytest.skip("no proper cycle in this certificate")
        window = tuple(sorted(cyc.seq[:3]))
        colouring = dict(self.G.colour)
        colouring[window] = 3 - col
        H = ColouredHypergraph.from_colouring(3, self.G.n, 2, colouring)
        verdict = verify_certificate(H, self.cert, check_digest=False)
        assert not verdict and verdict.window is not None and sorted(verdict.window) == list(window)
        assert not verify_certificate(H, self.cert)  # digest differs too

    def test_unknown_provenance(self):
        with pytest.raises(InvalidArgument):
            PartitionCertificate("", (), ("magic",))


class TestPowers:
    def test_first_power_is_identity(self):
        G = random_instance(random.Random(5), 2, 7, 2, 1.0)
        assert power_reduce(G, 1).colour == G.colour

    def test_square_of_complete(self):
        H = power_reduce(complete_mono(2, 6), 2)
        assert H.k == 3 and len(H.edges) == 20

    def test_lift_back(self):
        G = random_instance(random.Random(6), 2, 8, 2, 1.0)
        for pc in power_partition(G, 2):
            for e in pc.edges():
                assert G.colour_of(e) == pc.colour

    def test_lift_back_rejects(self):
        G = ColouredHypergraph.from_colouring(
            2, 5, 2, {e: 1 for e in itertools.combinations(range(5), 2) if e != (0, 2)} | {(0, 2): 2})
        with pytest.raises(InvalidCycle):
            power_lift_back(G, TightCycle(3, (0, 1, 2, 3, 4)), 1, 2)
        with pytest.raises(InvalidArgument):
            power_lift_back(G, TightCycle(2, (0, 1, 2)), 1, 2)

    def test_bad_power(self):
        with pytest.raises(InvalidArgument):
            power_reduce(complete_mono(2, 4), 0)


def test_certificate_cycles_validate():
    G = random_instance(random.Random(8), 2, 11, 3, 0.6)
    cert = partition(G)
    for cyc, col in cert.cycles:
        if not cyc.degenerate:
            validate_cycle(G, cyc, col)
