import itertools
import random

import pytest
from hypothesis import strategies as st

from tightcycles.hypergraph import ColouredHypergraph, Hypergraph
from tightcycles.lemmas import transversal_eps
from tightcycles.tight import TightCycle, lift_conditions


def random_instance(rng: random.Random, k: int, n: int, r: int, p: float) -> ColouredHypergraph:
    colouring = {e: rng.randint(1, r) for e in itertools.combinations(range(n), k) if rng.random() < p}
    return ColouredHypergraph(Hypergraph(k, n, frozenset(colouring)), r, colouring)


def complete_mono(k: int, n: int) -> ColouredHypergraph:
    return ColouredHypergraph.monochromatic(Hypergraph.complete(k, n))


@st.composite
def coloured_instances(draw, k=st.sampled_from([2, 3]), n=st.integers(1, 8), r=st.integers(1, 3)):
    k, n, r = draw(k), draw(n), draw(r)
    edges = list(itertools.combinations(range(n), k))
    colours = draw(st.lists(st.integers(0, r), min_size=len(edges), max_size=len(edges)))
    colouring = {e: c for e, c in zip(edges, colours) if c}
    return ColouredHypergraph(Hypergraph(k, n, frozenset(colouring)), r, colouring)


def sparse_transversal_instance(rng: random.Random, k: int, m: int, size: int, noise: float = 0.2):
    """Blocks of ``size`` vertices whose partite links backwards stay within the allowed cap.

    Each vertex of block ``i`` receives at most ``floor(eps * prod |B_j|)`` edges into every
    choice of ``k-1`` earlier blocks.  Edges meeting some block twice are added as noise;
    they do not enter the hypothesis.
    """
    eps = transversal_eps(k, m)
    blocks = [list(range(i * size, (i + 1) * size)) for i in range(m)]
    owner = {v: i for i, b in enumerate(blocks) for v in b}
    edges = set()
    for i in range(k - 1, m):
        for idx in itertools.combinations(range(i), k - 1):
            cap = int(eps * size ** (k - 1))
            for v in blocks[i]:
                cells = list(itertools.product(*(blocks[j] for j in idx)))
                for cell in rng.sample(cells, rng.randint(0, cap)):
                    edges.add(tuple(sorted((v,) + cell)))
    n = m * size
    for e in itertools.combinations(range(n), k):
        if len({owner[v] for v in e}) < k and rng.random() < noise:
            edges.add(e)
    return Hypergraph(k, n, frozenset(edges)), blocks


def satisfying_lift_instance(rng: random.Random, t: int, k: int = 3, noise: float = 0.3):
    """Random aux cycle and rim with exactly the required edges plus noise of other colours."""
    w = k - 1
    n = t * w + t + 4
    order = list(range(n))
    rng.shuffle(order)
    aux = order[:t * w]
    rim = order[t * w:t * w + t]
    colour = rng.randint(1, 3)
    required = {tuple(sorted(vs)) for *_, vs in lift_conditions(aux, rim, k)}
    colouring = {e: colour for e in required}
    for e in itertools.combinations(range(n), k):
        if e not in colouring and rng.random() < noise:
            colouring[e] = rng.choice([c for c in (1, 2, 3) if c != colour])
    G = ColouredHypergraph.from_colouring(k, n, 3, colouring)
    return G, TightCycle(w, tuple(aux)), rim, colour


@pytest.fixture
def rng():
    return random.Random(20241016)


# -- acceptance report ---------------------------------------------------------

ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Record ``(number, passed, detail)`` for the summary printed at the end of the run."""
    def record(number: int, passed: bool, detail: str):
        ACCEPTANCE[number] = (passed, detail)
        print(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
