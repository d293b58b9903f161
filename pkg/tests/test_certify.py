"""The batch certification engines and their low-level kernels."""

import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gainrank.certify import (
    _COS8,
    _batched_matching_counts,
    _max_index_positive,
    _rank_threshold,
    _unpack_counts,
    certify_equivalences,
    run_alphabet_slice,
    run_cactus_slice,
    run_signed_slice,
    worker_count,
)
from gainrank.combinatorics.matching import matching_number_bruteforce
from gainrank.errors import SizeLimitError, TheoremViolation
from gainrank.gains import Gain
from gainrank.generators import enumerate_connected_graphs
from gainrank.graphs import SimpleGraph

from conftest import simple_graphs


def adjacency_masks(G):
    masks = np.zeros((1, G.n), dtype=np.int64)
    for u, v in G.edges:
        masks[0, u] |= 1 << v
        masks[0, v] |= 1 << u
    return masks


@settings(max_examples=50)
@given(simple_graphs(max_n=7))
def test_packed_matching_dp_matches_bruteforce(G):
    p = _batched_matching_counts(adjacency_masks(G), G.n)
    full = p[(1 << G.n) - 1]
    levels = G.n // 2 + 1
    counts = _unpack_counts(full, levels)
    assert counts[0, 0] == 1
    assert int(_max_index_positive(counts)[0]) == matching_number_bruteforce(G)
    # level 1 counts the edges
    if levels > 1:
        assert counts[0, 1] == len(G.edges)


def test_packed_dp_induced_subsets():
    G = SimpleGraph.build(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    p = _batched_matching_counts(adjacency_masks(G), 4)
    # subset {0, 1}: one edge, one 1-matching
    counts = _unpack_counts(p[0b0011], 2)
    assert counts[0].tolist() == [1, 1]
    # subset {0, 2}: no edges
    counts = _unpack_counts(p[0b0101], 2)
    assert counts[0].tolist() == [1, 0]
    # full square: 1 empty, 4 single edges, 2 perfect matchings
    counts = _unpack_counts(p[0b1111], 3)
    assert counts[0].tolist() == [1, 4, 2]


def test_cos_table():
    for k in range(8):
        assert _COS8[k] == pytest.approx(math.cos(2 * math.pi * k / 8), abs=1e-12)


def test_rank_threshold_monotone():
    assert _rank_threshold(5, 1) == 0.5
    assert _rank_threshold(5, 0) == 0.5
    t = _rank_threshold(6, 3)
    assert 0 < t < 0.5
    assert t == pytest.approx(0.5 * 3.0 ** (-5))
    assert _rank_threshold(8, 4) < t


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("GAINRANK_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("GAINRANK_WORKERS", "0")
    with pytest.raises(ValueError):
        worker_count()
    monkeypatch.delenv("GAINRANK_WORKERS")
    assert worker_count() >= 1


def test_signed_slice_tiny():
    rep = run_signed_slice(3)
    assert rep.ok
    assert rep.graphs == 5
    # one graph per sign assignment of each edge set: 2 + 3*4 + 8
    assert rep.instances == 22


def test_alphabet_slice_gaussian_exhaustive():
    gaussian = tuple(Gain.from_angle(j, 4) for j in range(4))
    rep = run_alphabet_slice(
        enumerate_connected_graphs(3), gaussian, cap=None, name="tiny-gaussian"
    )
    assert rep.ok
    assert rep.graphs == 5
    assert rep.instances == sum(4 ** len(G.edges) for G in enumerate_connected_graphs(3))


def test_alphabet_slice_subsample_cap():
    signed = (Gain.from_angle(0), Gain.from_angle(1, 2))
    rep = run_alphabet_slice(
        enumerate_connected_graphs(4), signed, cap=3, seed=9, name="capped"
    )
    assert rep.ok
    assert rep.graphs == 43
    assert rep.instances <= 3 * 43


def test_alphabet_slice_rejects_unbounded_product():
    big = SimpleGraph.build(8, list(combinations(range(8), 2)))
    signed = (Gain.from_angle(0), Gain.from_angle(1, 2))
    with pytest.raises(SizeLimitError):
        run_alphabet_slice([big], signed, cap=None)


def test_cactus_slice_tiny():
    rep = run_cactus_slice(n_max=5, cap=10, seed=1, check_every=7)
    assert rep.ok
    assert rep.graphs == 383
    assert rep.cross_checks > 0


def test_certify_equivalences_combined():
    res = certify_equivalences(signed_n_max=3, cactus_n_max=4, cap=5, seed=2)
    assert res.ok
    assert set(res.slices) == {"signed-exhaustive", "cactus-roots8"}
    assert res.instances == sum(s.instances for s in res.slices.values())
    assert res.require_ok() is res


def test_require_ok_escalates():
    from gainrank.certify import CertificationResult, Failure, SliceReport

    rep = SliceReport(name="bad")
    rep.failures.append(Failure("made-up mismatch", "n 2\ne 0 1 1"))
    res = CertificationResult(slices={"bad": rep})
    assert not res.ok
    with pytest.raises(TheoremViolation) as exc:
        res.require_ok()
    assert "made-up mismatch" in str(exc.value)
    assert exc.value.instance == "n 2\ne 0 1 1"
