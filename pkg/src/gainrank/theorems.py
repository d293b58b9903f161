"""Rank bounds, cycle classification, and structural optimality checks.

Everything here comes in two halves that must agree: a spectral statement
about the rank of the Hermitian adjacency, and a purely structural statement
about cycles and matchings. verify_equivalence computes both and refuses to
paper over a disagreement.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .combinatorics import (
    block_decomposition,
    cycle_matching_condition,
    cycle_record,
    cycle_vertex_set,
    cycles_pairwise_disjoint,
    cyclomatic_number,
    matching_number,
    max_acyclic_deletion_matching,
    odd_cycle_transversal,
)
from .combinatorics.cycles import CycleRecord
from .errors import TheoremViolation
from .graphs import GainGraph, SimpleGraph, pendant_vertices, serialize_gain_graph, underlying
from .spectral import rank as spectral_rank

TYPE_TOL = 1e-9
ORACLE_LIMIT = 12
CROSS_CHECK_LIMIT = 9

_AXIS_ANGLES = {Fraction(0), Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)}


class CycleType(enum.Enum):
    """The five spectral classes a gain cycle can fall into.

    Even cycles split on whether the gain product hits the one value that
    drops the rank by two; odd cycles split by the sign of the (suitably
    twisted) real part, with a separate class for purely imaginary products.
    """

    EVEN_SINGULAR = "even_singular"
    EVEN_REGULAR = "even_regular"
    ODD_POSITIVE = "odd_positive"
    ODD_NEGATIVE = "odd_negative"
    ODD_IMAGINARY = "odd_imaginary"

    @property
    def is_even(self) -> bool:
        return self in (CycleType.EVEN_SINGULAR, CycleType.EVEN_REGULAR)


def classify_cycle(g: GainGraph, cycle: "CycleRecord | tuple[int, ...]") -> CycleType:
    """Type of one cycle of g; validates that the sequence really is a cycle."""
    verts = cycle.vertices if isinstance(cycle, CycleRecord) else tuple(cycle)
    rec = cycle_record(g, verts)
    l = rec.length
    if l % 2 == 0:
        target_angle = Fraction(0) if (l // 2) % 2 == 0 else Fraction(1, 2)
        if rec.gain.angle is not None:
            singular = rec.gain.angle == target_angle
        else:
            target = 1.0 if target_angle == 0 else -1.0
            singular = abs(rec.gain.value - target) <= TYPE_TOL
        return CycleType.EVEN_SINGULAR if singular else CycleType.EVEN_REGULAR
    re = rec.real_part
    if abs(re) <= TYPE_TOL:
        return CycleType.ODD_IMAGINARY
    twisted = re if ((l - 1) // 2) % 2 == 0 else -re
    return CycleType.ODD_POSITIVE if twisted > 0 else CycleType.ODD_NEGATIVE


def cycle_inertia(l: int, t: CycleType) -> tuple[int, int]:
    """(positive, negative) eigenvalue counts of a gain cycle of length l, type t."""
    if l < 3:
        raise ValueError(f"cycle length must be at least 3, got {l}")
    if t.is_even != (l % 2 == 0):
        raise ValueError(f"type {t.name} inconsistent with length {l}")
    if t is CycleType.EVEN_SINGULAR:
        return (l - 2) // 2, (l - 2) // 2
    if t is CycleType.EVEN_REGULAR:
        return l // 2, l // 2
    if t is CycleType.ODD_POSITIVE:
        return (l + 1) // 2, (l - 1) // 2
    if t is CycleType.ODD_NEGATIVE:
        return (l - 1) // 2, (l + 1) // 2
    return (l - 1) // 2, (l - 1) // 2


@dataclass(frozen=True)
class BoundReport:
    rank: int
    m: int
    c: int
    lower_basic: int  # 2m - 2c
    upper_basic: int  # 2m + c
    holds_basic: bool
    b: int | None = None
    acyclic_deletion_value: int | None = None
    lower_refined: int | None = None  # 2 * acyclic_deletion_value
    upper_refined: int | None = None  # 2m + b
    holds_refined: bool | None = None


@dataclass(frozen=True)
class StructuralReport:
    """Outcome of the three structural conditions, with failure diagnostics.

    Conditions are checked in order: (disjoint) no two cycles share a vertex,
    (types) every cycle is of the required type, (matching) contracting the
    cycles changes nothing about the matching number away from them. A later
    flag is None when an earlier failure made it unevaluable. Witness vertices
    refer to the graph the report was asked about, even for components.
    """

    holds: bool
    first_failure: str | None  # "disjoint" | "types" | "matching" | None
    witness: tuple[int, ...] | None
    cycles_disjoint: bool
    types_ok: bool | None
    matching_ok: bool | None
    components: tuple["StructuralReport", ...] = field(default=())

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class OptimalityVerdict:
    spectral_lower: bool  # rank == 2m - 2c
    spectral_upper: bool  # rank == 2m + c
    structural_lower: StructuralReport
    structural_upper: StructuralReport
    consistent: bool
    rank: int
    rank_backend: str


def _component_rank(g: GainGraph) -> tuple[int, str]:
    """Rank of a connected piece, preferring backends that cannot round.

    Exact elimination handles fourth-root gains; the coefficient oracle covers
    everything small; numerics remain for large graphs with irrational gains.
    Small graphs additionally cross-check against the numeric value, and a
    disagreement is an internal bug worth crashing on.
    """
    if all(e.gain.angle in _AXIS_ANGLES for e in g.edges):
        r, backend = spectral_rank(g, mode="exact"), "exact"
    elif g.n <= ORACLE_LIMIT:
        r, backend = spectral_rank(g, mode="oracle"), "oracle"
    else:
        r, backend = spectral_rank(g, mode="numeric"), "numeric"
    if backend != "numeric" and g.n <= CROSS_CHECK_LIMIT:
        rn = spectral_rank(g, mode="numeric")
        if rn != r:
            raise RuntimeError(
                f"rank backends disagree on n={g.n}: {backend}={r}, numeric={rn}"
            )
    return r, backend


def graph_rank(g: GainGraph) -> tuple[int, str]:
    """Rank summed over components, with the set of backends that produced it."""
    total = 0
    backends: set[str] = set()
    for sub, _ in g.components():
        r, backend = _component_rank(sub)
        total += r
        backends.add(backend)
    return total, "+".join(sorted(backends)) if backends else "trivial"


def check_rank_bounds(g: GainGraph) -> BoundReport:
    """Rank against 2m-2c and 2m+c. Valid componentwise, hence globally."""
    r, _ = graph_rank(g)
    m = matching_number(underlying(g))
    c = cyclomatic_number(g)
    lower, upper = 2 * m - 2 * c, 2 * m + c
    return BoundReport(
        rank=r, m=m, c=c,
        lower_basic=lower, upper_basic=upper,
        holds_basic=lower <= r <= upper,
    )


def check_refined_bounds(g: GainGraph) -> BoundReport:
    """Adds the transversal upper bound and the acyclic-deletion lower bound.

    The refined interval always sits inside the basic one; that containment
    is asserted because it is proven, not observed.
    """
    base = check_rank_bounds(g)
    b, _ = odd_cycle_transversal(underlying(g))
    adv, _ = max_acyclic_deletion_matching(underlying(g))
    lower, upper = 2 * adv, 2 * base.m + b
    if lower < base.lower_basic or upper > base.upper_basic:
        raise TheoremViolation(
            f"refined interval [{lower}, {upper}] escapes basic "
            f"[{base.lower_basic}, {base.upper_basic}]",
            instance=serialize_gain_graph(g),
        )
    return BoundReport(
        rank=base.rank, m=base.m, c=base.c,
        lower_basic=base.lower_basic, upper_basic=base.upper_basic,
        holds_basic=base.holds_basic,
        b=b, acyclic_deletion_value=adv,
        lower_refined=lower, upper_refined=upper,
        holds_refined=lower <= base.rank <= upper,
    )


def _overlap_witness(G: SimpleGraph) -> tuple[int, ...]:
    """Vertices demonstrating that cycles are not pairwise disjoint."""
    dec = block_decomposition(G)
    cyc_idx = set(dec.cycle_block_indices())
    for i, blk in enumerate(dec.block_edges):
        if len(blk) > 1 and i not in cyc_idx:
            return tuple(sorted({v for e in blk for v in e}))
    # all non-bridge blocks are cycles, so two of them meet in a cut vertex
    owner: dict[int, int] = {}
    vsets = dec.blocks
    for i in cyc_idx:
        for v in vsets[i]:
            if v in owner:
                return tuple(sorted(vsets[owner[v]] | vsets[i]))
            owner[v] = i
    raise AssertionError("no overlap found despite disjointness failure")


def _structural_component(g: GainGraph, accept) -> StructuralReport:
    ok, cycles = cycles_pairwise_disjoint(g)
    if not ok:
        return StructuralReport(
            holds=False, first_failure="disjoint",
            witness=_overlap_witness(underlying(g)),
            cycles_disjoint=False, types_ok=None, matching_ok=None,
        )
    for verts in cycles:
        t = classify_cycle(g, verts)
        if not accept(t):
            return StructuralReport(
                holds=False, first_failure="types", witness=verts,
                cycles_disjoint=True, types_ok=False, matching_ok=None,
            )
    okm, _, _ = cycle_matching_condition(g)
    if not okm:
        return StructuralReport(
            holds=False, first_failure="matching",
            witness=tuple(sorted(cycle_vertex_set(g))),
            cycles_disjoint=True, types_ok=True, matching_ok=False,
        )
    return StructuralReport(
        holds=True, first_failure=None, witness=None,
        cycles_disjoint=True, types_ok=True, matching_ok=True,
    )


def _structural(g: GainGraph, accept) -> StructuralReport:
    """Componentwise evaluation, witnesses translated back to g's vertex ids."""
    parts: list[StructuralReport] = []
    for sub, kept in g.components():
        rep = _structural_component(sub, accept)
        if rep.witness is not None:
            rep = StructuralReport(
                holds=rep.holds, first_failure=rep.first_failure,
                witness=tuple(kept[v] for v in rep.witness),
                cycles_disjoint=rep.cycles_disjoint,
                types_ok=rep.types_ok, matching_ok=rep.matching_ok,
            )
        parts.append(rep)
    failing = [p for p in parts if not p.holds]

    def merged(flags):
        vals = [f for f in flags if f is not None]
        if any(f is False for f in vals):
            return False
        if len(vals) < len(list(flags)):
            return None
        return True

    return StructuralReport(
        holds=not failing,
        first_failure=failing[0].first_failure if failing else None,
        witness=failing[0].witness if failing else None,
        cycles_disjoint=all(p.cycles_disjoint for p in parts),
        types_ok=merged([p.types_ok for p in parts]),
        matching_ok=merged([p.matching_ok for p in parts]),
        components=tuple(parts),
    )


def lower_optimal_structural(g: GainGraph) -> StructuralReport:
    """Structural test for rank hitting 2m-2c: disjoint singular even cycles
    plus the matching condition. Acyclic components pass vacuously."""
    return _structural(g, lambda t: t is CycleType.EVEN_SINGULAR)


def upper_optimal_structural(g: GainGraph) -> StructuralReport:
    """Structural test for rank hitting 2m+c: disjoint odd cycles whose gain
    products keep a nonzero real part, plus the matching condition."""
    return _structural(g, lambda t: t in (CycleType.ODD_POSITIVE, CycleType.ODD_NEGATIVE))


def verify_equivalence(g: GainGraph) -> OptimalityVerdict:
    """Spectral extremality versus structural characterization, per component.

    Both spectral equalities and both structural predicates distribute over
    components (rank, matching number, and cyclomatic number are additive),
    so the graph-level flag is the conjunction of component flags.
    """
    spectral_lower = spectral_upper = True
    total = 0
    backends: set[str] = set()
    for sub, _ in g.components():
        r, backend = _component_rank(sub)
        backends.add(backend)
        m = matching_number(underlying(sub))
        c = cyclomatic_number(sub)
        spectral_lower &= r == 2 * m - 2 * c
        spectral_upper &= r == 2 * m + c
        total += r
    sl = lower_optimal_structural(g)
    su = upper_optimal_structural(g)
    return OptimalityVerdict(
        spectral_lower=spectral_lower,
        spectral_upper=spectral_upper,
        structural_lower=sl,
        structural_upper=su,
        consistent=(spectral_lower == sl.holds) and (spectral_upper == su.holds),
        rank=total,
        rank_backend="+".join(sorted(backends)) if backends else "trivial",
    )


def signed_cycle_rule(l: int, sign: int) -> bool:
    """Even cycle with all gains in {+1, -1}: when is it the singular type?

    Builds the cycle, classifies it, and asserts the classification agrees
    with the residue rule: singular iff (l = 0 mod 4 and product +1) or
    (l = 2 mod 4 and product -1).
    """
    if l % 2 != 0 or l < 4:
        raise ValueError(f"even length at least 4 required, got {l}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    edges = [(i, i + 1, "1") for i in range(l - 1)]
    edges.append((0, l - 1, "1" if sign == 1 else "-1"))
    g = GainGraph.build(l, edges)
    t = classify_cycle(g, tuple(range(l)))
    is_singular = t is CycleType.EVEN_SINGULAR
    expected = (l % 4 == 0 and sign == 1) or (l % 4 == 2 and sign == -1)
    assert is_singular == expected, f"signed cycle rule broken at l={l}, sign={sign}"
    return is_singular


def pendant_reduction_check(g: GainGraph) -> bool | None:
    """Deleting a pendant vertex with its support drops rank by 2 and m by 1.

    None when the graph has no pendant vertex. The pair removed is the
    smallest pendant and its unique neighbour.
    """
    G = underlying(g)
    pend = pendant_vertices(G)
    if not pend:
        return None
    x = min(pend)
    y = G.neighbors()[x][0]
    sub, _ = g.delete_vertices((x, y))
    rank_drop = graph_rank(g)[0] - graph_rank(sub)[0]
    m_drop = matching_number(G) - matching_number(underlying(sub))
    return rank_drop == 2 and m_drop == 1


def deletion_bounds_check(g: GainGraph, v: int) -> bool:
    """One vertex out: rank moves by at most 2 downward, m by at most 1."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    sub, _ = g.delete_vertices((v,))
    r = graph_rank(g)[0]
    rs = graph_rank(sub)[0]
    G = underlying(g)
    m = matching_number(G)
    ms = matching_number(underlying(sub))
    return r - 2 <= rs <= r and m - 1 <= ms <= m
