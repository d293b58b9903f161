"""Random and exhaustive graph generation."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from gainrank.combinatorics.blocks import cycles_pairwise_disjoint, cyclomatic_number
from gainrank.combinatorics.cycles import cycle_record
from gainrank.errors import SizeLimitError
from gainrank.gains import Gain
from gainrank.generators import (
    GainSetSpec,
    assign_gains,
    double_square_pendant,
    enumerate_connected_cacti,
    enumerate_connected_graphs,
    make_cycle,
    make_extremal,
    random_connected_graph,
)
from gainrank.graphs import SimpleGraph, underlying
from gainrank.theorems import verify_equivalence


def test_gain_set_values():
    assert len(GainSetSpec("trivial").values()) == 1
    assert len(GainSetSpec("signed").values()) == 2
    assert len(GainSetSpec("gaussian").values()) == 4
    assert len(GainSetSpec("roots", q=8).values()) == 8
    assert GainSetSpec("uniform").values() is None


def test_gain_set_parse():
    assert GainSetSpec.parse("signed").kind == "signed"
    spec = GainSetSpec.parse("roots:12", seed=7)
    assert (spec.kind, spec.q, spec.seed) == ("roots", 12, 7)
    with pytest.raises(ValueError):
        GainSetSpec.parse("octonion")
    with pytest.raises(ValueError):
        GainSetSpec("roots")
    with pytest.raises(ValueError):
        GainSetSpec("signed", q=3)


def test_uniform_samples_stay_off_the_imaginary_axis():
    spec = GainSetSpec("uniform", seed=3)
    rng = random.Random(3)
    for _ in range(200):
        g = spec.sample(rng)
        assert abs(abs(g.value) - 1.0) < 1e-9
        assert abs(g.value.real) >= 1e-6


@given(st.integers(min_value=1, max_value=10), st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=2**31))
def test_random_connected_graph_shape(n, extra, seed):
    slack = n * (n - 1) // 2 - (n - 1)
    if extra > slack:
        with pytest.raises(ValueError):
            random_connected_graph(n, extra, seed)
        return
    G = random_connected_graph(n, extra, seed)
    assert G.n == n
    assert len(G.edges) == n - 1 + extra
    assert G.is_connected()
    # same seed, same graph
    assert random_connected_graph(n, extra, seed).edges == G.edges


def test_assign_gains_deterministic():
    G = random_connected_graph(6, 2, seed=5)
    a = assign_gains(G, GainSetSpec("gaussian", seed=11))
    b = assign_gains(G, GainSetSpec("gaussian", seed=11))
    assert a == b
    assert underlying(a).edges == G.edges


def test_make_cycle_hits_target():
    for token in ("1", "-1", "i", "rot(1/8)"):
        g = make_cycle(5, token)
        rec = cycle_record(g, tuple(range(5)))
        assert rec.gain.approx_eq(Gain.parse_token(token))
    with pytest.raises(ValueError):
        make_cycle(2, "1")


@pytest.mark.parametrize(
    "kind,lengths",
    [
        ("lower", [4]),
        ("lower", [4, 6]),
        ("upper", [3]),
        ("upper", [3, 5, 7]),
    ],
)
def test_make_extremal_shapes(kind, lengths):
    g = make_extremal(kind, len(lengths), lengths, tree_glue_seed=1)
    assert cyclomatic_number(g) == len(lengths)
    ok, cycles = cycles_pairwise_disjoint(g)
    assert ok and len(cycles) == len(lengths)
    assert sorted(len(c) for c in cycles) == sorted(lengths)
    v = verify_equivalence(g)
    assert v.consistent
    if kind == "lower":
        assert v.spectral_lower and v.structural_lower.holds
    else:
        assert v.spectral_upper and v.structural_upper.holds


def test_make_extremal_validation():
    with pytest.raises(ValueError):
        make_extremal("sideways", 1, [4])
    with pytest.raises(ValueError):
        make_extremal("lower", 2, [4])
    with pytest.raises(ValueError):
        make_extremal("lower", 1, [5])
    with pytest.raises(ValueError):
        make_extremal("upper", 1, [4])
    with pytest.raises(ValueError):
        make_extremal("upper", 1, [2])


def test_enumerate_connected_counts():
    # connected labeled graphs: 1 on 2 vertices, 4 on 3, 38 on 4
    by_n = {}
    for G in enumerate_connected_graphs(4):
        by_n.setdefault(G.n, []).append(G)
    assert len(by_n[2]) == 1
    assert len(by_n[3]) == 4
    assert len(by_n[4]) == 38
    for graphs in by_n.values():
        assert all(G.is_connected() for G in graphs)
        assert len(set(g.edges for g in graphs)) == len(graphs)


def test_enumerate_limit():
    with pytest.raises(SizeLimitError):
        next(enumerate_connected_graphs(9))
    with pytest.raises(SizeLimitError):
        next(enumerate_connected_cacti(9))


def cactus_reference_count(n):
    """Filter the full enumeration down to pairwise disjoint cycles."""
    count = 0
    for G in enumerate_connected_graphs(n):
        if G.n == n and cycles_pairwise_disjoint(G)[0]:
            count += 1
    return count


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 4), (4, 31), (5, 347)])
def test_cactus_counts_match_filter(n, expected):
    got = list(enumerate_connected_cacti(n))
    assert len(got) == expected
    assert len(set(c.edges for c in got)) == expected
    assert cactus_reference_count(n) == expected
    for c in got:
        G = SimpleGraph.build(c.n, c.edges)
        assert G.is_connected()
        ok, cycles = cycles_pairwise_disjoint(G)
        assert ok
        assert sorted(map(len, cycles)) == sorted(map(len, c.cycles))


def test_cactus_enumeration_deterministic():
    a = [c.edges for c in enumerate_connected_cacti(5)]
    b = [c.edges for c in enumerate_connected_cacti(5)]
    assert a == b


def test_double_square_pendant_shape():
    G = double_square_pendant()
    assert (G.n, len(G.edges)) == (8, 9)
    degs = G.degrees()
    assert degs[0] == 5 and degs[7] == 1
    assert cyclomatic_number(G) == 2
