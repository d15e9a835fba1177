import pytest
from hypothesis import strategies as st

from flames.digraph import RootedDigraph
from flames.generators import random_digraph


def digraph(*edges, vertices=()):
    return RootedDigraph.from_edges("r", edges, vertices)


@pytest.fixture
def G1():
    return digraph(("r", "v"))


@pytest.fixture
def G2():
    return digraph(("r", "a"), ("r", "b"), ("a", "v"), ("b", "v"), ("a", "b"))


@pytest.fixture
def G6():
    return digraph(("r", "a"), ("a", "b"), ("a", "c"), ("b", "v"), ("c", "v"))


@st.composite
def small_digraphs(draw, min_n=2, max_n=7, max_density=0.6):
    n = draw(st.integers(min_n, max_n))
    density = draw(st.floats(0.0, max_density))
    seed = draw(st.integers(0, 2**63 - 1))
    return random_digraph(n, density, seed)
