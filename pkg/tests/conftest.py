"""Shared builders and hypothesis strategies for the test suite."""
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from gainrank.gains import Gain
from gainrank.graphs import GainGraph, SimpleGraph


@st.composite
def simple_graphs(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)) if pairs else st.just([]))
    return SimpleGraph.build(n, chosen)


@st.composite
def small_gain_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)) if pairs else st.just([]))
    edges = []
    for u, v in chosen:
        num = draw(st.integers(min_value=0, max_value=23))
        edges.append((u, v, Gain.from_angle(Fraction(num, 24))))
    return GainGraph.build(n, edges)


def gain_graph(n, *edges):
    """edges as (u, v) with gain 1, or (u, v, gain-token/Gain)."""
    full = [(e[0], e[1], e[2] if len(e) > 2 else Gain.one()) for e in edges]
    return GainGraph.build(n, full)


def cycle_graph(l, first_gain="1"):
    """Cycle 0-1-...-(l-1)-0; the product lands on the closing edge 0-(l-1)."""
    edges = [(i, i + 1, "1") for i in range(l - 1)]
    edges.append((0, l - 1, first_gain))
    return GainGraph.build(l, edges)


@pytest.fixture
def triangle():
    return cycle_graph(3)


@pytest.fixture
def square():
    return cycle_graph(4)


@pytest.fixture
def double_squares():
    """Two 4-cycles sharing a center vertex, plus a pendant at the center."""
    from gainrank.generators import double_square_pendant

    G = double_square_pendant()
    return GainGraph.build(G.n, [(u, v, Gain.one()) for u, v in G.edges])
