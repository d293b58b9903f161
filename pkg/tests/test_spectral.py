"""Hermitian adjacency, inertia, and the three rank backends."""

import math

import numpy as np
import pytest
from conftest import small_gain_graphs
from hypothesis import given, settings

from gainrank.gains import Gain
from gainrank.graphs import GainGraph
from gainrank.spectral import (
    char_poly_numeric,
    eigenvalues,
    exact_rank,
    hermitian_adjacency,
    inertia,
    rank,
)


@given(small_gain_graphs())
def test_adjacency_is_hermitian(g):
    h = hermitian_adjacency(g)
    assert np.allclose(h, h.conj().T)
    assert np.allclose(np.diag(h), 0)


def test_square_spectrum(square):
    w = eigenvalues(hermitian_adjacency(square))
    assert np.allclose(sorted(w), [-2, 0, 0, 2], atol=1e-9)
    res = inertia(hermitian_adjacency(square))
    assert (res.p_plus, res.n_zero, res.n_minus) == (1, 2, 1)
    assert res.rank == 2


def test_triangle_spectrum(triangle):
    w = eigenvalues(hermitian_adjacency(triangle))
    assert np.allclose(sorted(w), [-1, -1, 2], atol=1e-9)
    res = inertia(hermitian_adjacency(triangle))
    assert (res.p_plus, res.n_minus, res.rank) == (1, 2, 3)


def test_imaginary_triangle_is_real_symmetric_in_disguise():
    # gain i around a triangle: eigenvalues +-sqrt(3) and 0
    g = GainGraph.build(3, [(0, 1, "i"), (1, 2, "1"), (2, 0, "1")])
    w = sorted(eigenvalues(hermitian_adjacency(g)))
    s3 = math.sqrt(3)
    assert np.allclose(w, [-s3, 0, s3], atol=1e-9)


@settings(max_examples=40)
@given(small_gain_graphs())
def test_backends_agree_on_axis_gains(g):
    # snap to gains in {1, -1, i, -i} where the exact path applies
    edges = [(e.u, e.v, Gain.from_angle(round(4 * e.gain.angle), 4)) for e in g.edges]
    g = GainGraph.build(g.n, edges)
    r = rank(g, mode="numeric")
    assert rank(g, mode="exact") == r
    assert exact_rank(g) == r


def test_exact_mode_rejects_general_rotation():
    g = GainGraph.build(2, [(0, 1, "rot(1/8)")])
    with pytest.raises(ValueError):
        exact_rank(g)
    assert rank(g, mode="numeric") == 2


def test_rank_mode_validation(triangle):
    with pytest.raises(ValueError):
        rank(triangle, mode="symbolic")


def test_char_poly_matches_eigenvalues(double_squares):
    h = hermitian_adjacency(double_squares)
    coeffs = char_poly_numeric(h)
    n = len(coeffs)
    for lam in eigenvalues(h):
        val = lam**n + sum(c * lam ** (n - 1 - k) for k, c in enumerate(coeffs))
        assert abs(val) < 1e-6


def test_inertia_rejects_non_square():
    with pytest.raises(ValueError):
        inertia(np.zeros((2, 3)))
