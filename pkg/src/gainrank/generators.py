"""Seeded instance generation: random graphs, gain assignment, exhaustive
streams, and constructors that target the extremal families.

Everything is deterministic given its seed; streams have a fixed order so
runs are reproducible and shardable by index.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, NamedTuple

from .errors import SizeLimitError
from .gains import Gain
from .graphs import GainGraph, SimpleGraph
from .theorems import verify_equivalence

GRAPH_ENUM_LIMIT = 8
EXTREMAL_RETRIES = 20
_UNIFORM_REAL_BAND = 1e-6


@dataclass(frozen=True)
class GainSetSpec:
    """Which gain alphabet to draw from, and the seed that fixes the draws.

    kinds: trivial (only 1), signed (+-1), gaussian (+-1, +-i), roots (all
    q-th roots of unity), uniform (modulus-1 floats). Only uniform is
    infinite; the others expose their full value list.
    """

    kind: str
    q: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("trivial", "signed", "gaussian", "roots", "uniform"):
            raise ValueError(f"unknown gain set kind {self.kind!r}")
        if self.kind == "roots":
            if self.q is None or self.q < 1:
                raise ValueError("roots gain set needs q >= 1")
        elif self.q is not None:
            raise ValueError(f"q only applies to roots, not {self.kind!r}")

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "GainSetSpec":
        if text.startswith("roots:"):
            return cls("roots", q=int(text.split(":", 1)[1]), seed=seed)
        return cls(text, seed=seed)

    def values(self) -> tuple[Gain, ...] | None:
        """The finite alphabet, or None for uniform."""
        if self.kind == "trivial":
            return (Gain.one(),)
        if self.kind == "signed":
            return (Gain.from_angle(0), Gain.from_angle(1, 2))
        if self.kind == "gaussian":
            return tuple(Gain.from_angle(j, 4) for j in range(4))
        if self.kind == "roots":
            return tuple(Gain.from_angle(j, self.q) for j in range(self.q))
        return None

    def sample(self, rng: random.Random) -> Gain:
        vals = self.values()
        if vals is not None:
            return vals[rng.randrange(len(vals))]
        # uniform floats; stay clear of the purely-imaginary axis so cycle
        # classification never sits on the Type-E boundary by accident
        while True:
            theta = rng.random()
            z = complex(math.cos(2 * math.pi * theta), math.sin(2 * math.pi * theta))
            if abs(z.real) >= _UNIFORM_REAL_BAND:
                return Gain.from_complex(z)


def _strip_decode(n: int, deg: list[int], seq) -> list[tuple[int, int]]:
    """Shared leaf-stripping decode; deg holds 1 + remaining occurrences,
    with protected vertices set above any reachable value. Consumed leaves
    are marked 0. The pointer only moves forward: a vertex can drop to
    degree one below it only through the current decrement, and that case
    is caught immediately."""
    ptr = 0
    leaf = -1
    edges = []
    for a in seq:
        if leaf == -1:
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
        edges.append((leaf, a))
        deg[leaf] = 0
        deg[a] -= 1
        if deg[a] == 1 and a < ptr:
            leaf = a
        else:
            leaf = -1
    return edges


def _prufer_decode(n: int, seq: Iterable[int]) -> list[tuple[int, int]]:
    """Edges of the labeled tree with the given length n-2 sequence."""
    seq = list(seq)
    deg = [1] * n
    for a in seq:
        deg[a] += 1
    edges = _strip_decode(n, deg, seq)
    u, v = (x for x in range(n) if deg[x] == 1)
    edges.append((u, v))
    return edges


def random_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    return _prufer_decode(n, [rng.randrange(n) for _ in range(n - 2)])


def random_connected_graph(n: int, extra_edges: int, seed: int) -> SimpleGraph:
    """Uniform labeled spanning tree plus `extra_edges` distinct non-tree edges."""
    if n < 1:
        raise ValueError("need at least one vertex")
    slack = n * (n - 1) // 2 - (n - 1)
    if not 0 <= extra_edges <= slack:
        raise ValueError(f"extra_edges={extra_edges} infeasible for n={n} (max {slack})")
    rng = random.Random(seed)
    edges = set(tuple(sorted(e)) for e in random_tree(n, rng))
    non_tree = [e for e in combinations(range(n), 2) if e not in edges]
    edges.update(rng.sample(non_tree, extra_edges))
    return SimpleGraph.build(n, sorted(edges))


def assign_gains(G: SimpleGraph, spec: GainSetSpec) -> GainGraph:
    rng = random.Random(spec.seed)
    return GainGraph.build(G.n, [(u, v, spec.sample(rng)) for u, v in G.edges])


def make_cycle(l: int, target_gain) -> GainGraph:
    """Cycle 0-1-...-(l-1)-0 whose canonical gain product is target_gain.

    The whole product sits on the first edge; every other edge carries 1.
    """
    if l < 3:
        raise ValueError(f"cycle length must be at least 3, got {l}")
    gain = Gain.coerce(target_gain)
    edges = [(0, 1, gain)]
    edges += [(i, i + 1, Gain.one()) for i in range(1, l - 1)]
    edges.append((0, l - 1, Gain.one()))
    return GainGraph.build(l, edges)


def _extremal_candidate(
    kind: str, cycle_lengths: list[int], rng: random.Random
) -> GainGraph:
    k = len(cycle_lengths)
    edges: list[tuple[int, int, Gain]] = []
    offsets = []
    pos = 0
    for l in cycle_lengths:
        offsets.append(pos)
        if kind == "lower":
            target = Gain.from_angle(0) if (l // 2) % 2 == 0 else Gain.from_angle(1, 2)
        else:
            # +-1 keeps the real part of the product away from zero and keeps
            # the verification on the exact rank backend
            target = Gain.from_angle(0) if rng.random() < 0.5 else Gain.from_angle(1, 2)
        edges.append((pos, pos + 1, target))
        edges += [(pos + i, pos + i + 1, Gain.one()) for i in range(1, l - 1)]
        edges.append((pos, pos + l - 1, Gain.one()))
        pos += l
    if k >= 2:
        # each cycle gets a pendant 2-path through a fresh midpoint; the
        # midpoints are then joined by a random tree, so every cycle-to-cycle
        # connection passes through at least two fresh vertices
        mids = []
        for i, l in enumerate(cycle_lengths):
            attach = offsets[i] + rng.randrange(l)
            mid, tip = pos, pos + 1
            pos += 2
            mids.append(mid)
            edges.append((attach, mid, Gain.one()))
            edges.append((mid, tip, Gain.one()))
        for a, b in random_tree(k, rng):
            edges.append((mids[a], mids[b], Gain.one()))
    return GainGraph.build(pos, edges)


def make_extremal(
    kind: str, num_cycles: int, cycle_lengths: list[int], tree_glue_seed: int = 0
) -> GainGraph:
    """Graph that provably attains the lower (2m-2c) or upper (2m+c) rank bound.

    Builds disjoint cycles of the requested lengths with appropriate gains,
    glues them through fresh vertices, then actually verifies the structural
    predicate and the spectral equality, retrying the glue a bounded number
    of times. A single cycle is returned bare.
    """
    if kind not in ("lower", "upper"):
        raise ValueError(f"kind must be lower or upper, got {kind!r}")
    if num_cycles != len(cycle_lengths):
        raise ValueError(f"num_cycles={num_cycles} but {len(cycle_lengths)} lengths given")
    if num_cycles < 1:
        raise ValueError("need at least one cycle")
    for l in cycle_lengths:
        if l < 3:
            raise ValueError(f"cycle length {l} too short")
        if kind == "lower" and l % 2:
            raise ValueError(f"lower kind needs even lengths, got {l}")
        if kind == "upper" and l % 2 == 0:
            raise ValueError(f"upper kind needs odd lengths, got {l}")
    rng = random.Random(tree_glue_seed)
    last = None
    for _ in range(EXTREMAL_RETRIES):
        g = _extremal_candidate(kind, list(cycle_lengths), rng)
        verdict = verify_equivalence(g)
        spectral = verdict.spectral_lower if kind == "lower" else verdict.spectral_upper
        structural = (
            verdict.structural_lower if kind == "lower" else verdict.structural_upper
        )
        if spectral and structural.holds and verdict.consistent:
            return g
        last = g
    raise RuntimeError(
        f"extremal construction failed after {EXTREMAL_RETRIES} attempts; "
        f"last candidate had {last.n} vertices: {last.edges!r}"
    )


def _connected_mask(n: int, pairs: list[tuple[int, int]], mask: int) -> bool:
    adj = [0] * n
    for i, (u, v) in enumerate(pairs):
        if (mask >> i) & 1:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    reach = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in range(n):
            if (frontier >> v) & 1:
                nxt |= adj[v]
        frontier = nxt & ~reach
        reach |= nxt
    return reach == (1 << n) - 1


def enumerate_connected_graphs(n_max: int) -> Iterator[SimpleGraph]:
    """All connected labeled graphs on 2..n_max vertices, no isomorphism
    reduction, in a fixed order (by n, then by edge-subset index)."""
    if n_max > GRAPH_ENUM_LIMIT:
        raise SizeLimitError(f"exhaustive enumeration limited to n <= {GRAPH_ENUM_LIMIT}")
    for n in range(2, n_max + 1):
        pairs = list(combinations(range(n), 2))
        min_edges = n - 1
        for mask in range(1 << len(pairs)):
            if mask.bit_count() < min_edges:
                continue
            if not _connected_mask(n, pairs, mask):
                continue
            yield SimpleGraph.build(
                n, [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
            )


class CactusStructure(NamedTuple):
    """A connected graph with pairwise vertex-disjoint cycles, plus the
    cycles themselves (known from construction, not re-derived)."""

    n: int
    edges: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[int, ...], ...]


def _rooted_forest_decode(n: int, roots: tuple[int, ...], seq: tuple[int, ...]) -> list[tuple[int, int]]:
    """Forest on n vertices in which each tree holds exactly one root.

    seq has length n - len(roots); entries are stripped-leaf neighbours in
    smallest-leaf order, the last necessarily a root. Every sequence with
    that shape decodes to a distinct forest, which is exactly the counting
    identity k * n^(n-k-1).
    """
    deg = [1] * n
    for a in seq:
        deg[a] += 1
    for r in roots:
        deg[r] = n + 2  # roots are never stripped
    return _strip_decode(n, deg, seq)


def _cycle_edges(order: tuple[int, ...]) -> list[tuple[int, int]]:
    return [(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]


def _cycle_orders(K: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Distinct cycles on vertex set K: fix the least vertex first and break
    the direction symmetry, giving (|K|-1)!/2 arrangements."""
    rest = K[1:]
    if len(K) == 3:
        yield K
        return
    for p in permutations(rest):
        if p[0] < p[-1]:
            yield (K[0],) + p


def _unicyclic(n: int) -> Iterator[CactusStructure]:
    for k in range(3, n + 1):
        for K in combinations(range(n), k):
            for order in _cycle_orders(K):
                cyc = _cycle_edges(order)
                if k == n:
                    yield CactusStructure(n, tuple(sorted(tuple(sorted(e)) for e in cyc)), (order,))
                    continue
                free = n - k - 1
                for head in product(range(n), repeat=free):
                    for last in K:
                        forest = _rooted_forest_decode(n, K, head + (last,))
                        edges = tuple(sorted(tuple(sorted(e)) for e in cyc + forest))
                        yield CactusStructure(n, edges, (order,))


def _bicyclic(n: int) -> Iterator[CactusStructure]:
    for k1 in range(3, n - 2):
        for k2 in range(k1, n - k1 + 1):
            for K1 in combinations(range(n), k1):
                rest = tuple(v for v in range(n) if v not in K1)
                for K2 in combinations(rest, k2):
                    if k1 == k2 and K2[0] < K1[0]:
                        continue
                    yield from _bicyclic_pair(n, K1, K2)


def _bicyclic_pair(n: int, K1: tuple[int, ...], K2: tuple[int, ...]) -> Iterator[CactusStructure]:
    outside = tuple(v for v in range(n) if v not in K1 and v not in K2)
    M = len(outside) + 2  # contracted node count: outside vertices + 2 cycle nodes
    w1, w2 = M - 2, M - 1
    for order1 in _cycle_orders(K1):
        cyc1 = _cycle_edges(order1)
        for order2 in _cycle_orders(K2):
            base = cyc1 + _cycle_edges(order2)
            cycles = (order1, order2)
            if M == 2:
                # no outside vertices: single connecting edge between the cycles
                for a in K1:
                    for b in K2:
                        edges = tuple(sorted(tuple(sorted(e)) for e in base + [(a, b)]))
                        yield CactusStructure(n, edges, cycles)
                continue
            for seq in product(range(M), repeat=M - 2):
                tree = _prufer_decode(M, seq)
                # every contracted-tree edge at a cycle node fans out over
                # that cycle's vertices
                choice_lists = []
                for a, b in tree:
                    ca = [outside[a]] if a < M - 2 else list(K1 if a == w1 else K2)
                    cb = [outside[b]] if b < M - 2 else list(K1 if b == w1 else K2)
                    choice_lists.append([(x, y) for x in ca for y in cb])
                for picks in product(*choice_lists):
                    edges = tuple(sorted(tuple(sorted(e)) for e in base + list(picks)))
                    yield CactusStructure(n, edges, cycles)


def enumerate_connected_cacti(n: int) -> Iterator[CactusStructure]:
    """All connected labeled graphs on exactly n vertices whose cycles are
    pairwise vertex-disjoint, built constructively (trees, then one cycle,
    then two cycles; three disjoint cycles need n >= 9).

    Order is fixed: trees by sequence, then unicyclic, then bicyclic.
    """
    if n > GRAPH_ENUM_LIMIT:
        raise SizeLimitError(f"cactus enumeration limited to n <= {GRAPH_ENUM_LIMIT}")
    if n < 2:
        return
    if n == 2:
        yield CactusStructure(2, ((0, 1),), ())
        return
    for seq in product(range(n), repeat=n - 2):
        edges = tuple(sorted(tuple(sorted(e)) for e in _prufer_decode(n, seq)))
        yield CactusStructure(n, edges, ())
    yield from _unicyclic(n)
    if n >= 6:
        yield from _bicyclic(n)


def double_square_pendant() -> SimpleGraph:
    """Two 4-cycles sharing one vertex, plus a pendant edge at that vertex."""
    return SimpleGraph.build(
        8,
        [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (4, 5), (5, 6), (0, 6), (0, 7)],
    )
