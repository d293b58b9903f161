"""Determinant and characteristic coefficients from elementary subgraphs.

An elementary subgraph of a vertex set S covers every vertex of S exactly
once by disjoint single edges and cycles. Summing the signed, cycle-weighted
contributions over all of them gives det of the Hermitian adjacency on S,
and from there the characteristic coefficients and a rank value that never
touches floating point spectra. Deliberately combinatorial: this is the
cross-check for the numeric path, so it shares no code with it.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from ..errors import SizeLimitError
from ..graphs import GainGraph
from .cycles import CycleRecord, cycle_record

SPAN_LIMIT = 14
COEFF_LIMIT = 12
COEFF_TOL = 1e-8


@dataclass(frozen=True)
class ElementarySubgraph:
    edge_components: tuple[tuple[int, int], ...]
    cycle_components: tuple[CycleRecord, ...]

    @property
    def vertex_span(self) -> frozenset[int]:
        verts = set()
        for e in self.edge_components:
            verts.update(e)
        for c in self.cycle_components:
            verts.update(c.vertices)
        return frozenset(verts)

    @property
    def component_count(self) -> int:
        return len(self.edge_components) + len(self.cycle_components)

    def weight(self) -> float:
        """Contribution to the determinant of its span, without the global sign."""
        w = 2.0 ** len(self.cycle_components)
        for c in self.cycle_components:
            w *= c.real_part
        return w


def elementary_spanning_subgraphs(
    g: GainGraph, subset: Iterable[int], limit: int = SPAN_LIMIT
) -> list[ElementarySubgraph]:
    """All covers of `subset` by vertex-disjoint edges and cycles of g."""
    S = sorted(set(subset))
    if any(v < 0 or v >= g.n for v in S):
        raise ValueError("subset contains vertices outside the graph")
    if len(S) > limit:
        raise SizeLimitError(f"elementary cover search limited to {limit} vertices, got {len(S)}")
    k = len(S)
    pos = {v: i for i, v in enumerate(S)}
    in_s = set(S)
    adj: list[list[int]] = [[] for _ in range(k)]
    for e in g.edges:
        if e.u in in_s and e.v in in_s:
            adj[pos[e.u]].append(pos[e.v])
            adj[pos[e.v]].append(pos[e.u])
    for ws in adj:
        ws.sort()

    full = (1 << k) - 1
    out: list[ElementarySubgraph] = []
    k2s: list[tuple[int, int]] = []
    cycs: list[tuple[int, ...]] = []

    def cycles_through(i: int, mask: int):
        """Simple cycles through position i avoiding covered positions."""
        found: list[tuple[int, ...]] = []
        path = [i]
        on = 1 << i

        def walk(v: int):
            nonlocal on
            for w in adj[v]:
                if w == i:
                    if len(path) >= 3 and path[1] < path[-1]:
                        found.append(tuple(path))
                elif not (mask >> w) & 1 and not (on >> w) & 1:
                    path.append(w)
                    on |= 1 << w
                    walk(w)
                    path.pop()
                    on &= ~(1 << w)

        walk(i)
        return found

    def rec(mask: int):
        if mask == full:
            out.append(
                ElementarySubgraph(
                    edge_components=tuple(sorted(k2s)),
                    cycle_components=tuple(cycle_record(g, tuple(S[p] for p in c)) for c in cycs),
                )
            )
            return
        i = ((~mask) & full)
        i = (i & -i).bit_length() - 1
        for j in adj[i]:
            if not (mask >> j) & 1 and j != i:
                k2s.append((S[i], S[j]))
                rec(mask | (1 << i) | (1 << j))
                k2s.pop()
        for cyc in cycles_through(i, mask):
            bits = 0
            for p in cyc:
                bits |= 1 << p
            cycs.append(cyc)
            rec(mask | bits)
            cycs.pop()

    rec(0)
    return out


def subgraph_determinant(g: GainGraph, subset: Iterable[int], limit: int = SPAN_LIMIT) -> float:
    """det of the Hermitian adjacency restricted to `subset`, combinatorially.

    Each elementary cover U contributes (-1)^(|S| - p) * 2^c * prod of cycle
    real parts, with p components of which c are cycles.
    """
    S = sorted(set(subset))
    total = 0.0
    for u in elementary_spanning_subgraphs(g, S, limit=limit):
        total += (-1.0) ** (len(S) - u.component_count) * u.weight()
    return total


def char_coeff_combinatorial(g: GainGraph, k: int, limit: int = COEFF_LIMIT) -> float:
    """Coefficient of x^(n-k) in the characteristic polynomial, by covers.

    Equal to the sum of (-1)^p * 2^c * prod of cycle real parts over all
    elementary subgraphs spanning exactly k vertices anywhere in g.
    """
    if g.n > limit:
        raise SizeLimitError(f"combinatorial coefficients limited to n <= {limit}, got n={g.n}")
    if not 0 <= k <= g.n:
        raise ValueError(f"coefficient index {k} out of range for n={g.n}")
    if k == 0:
        return 1.0
    total = 0.0
    for S in combinations(range(g.n), k):
        for u in elementary_spanning_subgraphs(g, S):
            total += (-1.0) ** u.component_count * u.weight()
    return total


def rank_combinatorial(g: GainGraph, limit: int = COEFF_LIMIT, tol: float = COEFF_TOL) -> int:
    """Largest k with a nonzero k-th coefficient; zero when all vanish."""
    if g.n > limit:
        raise SizeLimitError(f"combinatorial rank limited to n <= {limit}, got n={g.n}")
    for k in range(g.n, 0, -1):
        if abs(char_coeff_combinatorial(g, k, limit=limit)) > tol:
            return k
    return 0
