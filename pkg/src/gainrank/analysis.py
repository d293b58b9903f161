"""Single-graph analysis bundle: every invariant this package computes,
cross-checked, in one report.

The report is the unit of CLI output. Anything that contradicts a proven
statement lands in `violations`; the caller decides what exit code that is
worth. A report with violations is a bug in this package (or a broken input
claiming to be a unit gain graph), never a property of the mathematics.
"""
from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import (
    cycle_matching_condition,
    cycle_records,
    cycles_pairwise_disjoint,
    cyclomatic_number,
    enumerate_cycles,
    matching_number,
)
from .errors import SizeLimitError, TheoremViolation
from .graphs import GainGraph, underlying
from .spectral import hermitian_adjacency, inertia
from .spectral import rank as spectral_rank
from .theorems import (
    BoundReport,
    OptimalityVerdict,
    StructuralReport,
    check_rank_bounds,
    check_refined_bounds,
    classify_cycle,
    graph_rank,
    verify_equivalence,
)

SCHEMA_VERSION = "1"
DEFAULT_CYCLE_CAP = 1000


@dataclass(frozen=True)
class CycleSummary:
    vertices: tuple[int, ...]
    length: int
    gain: str  # token form of the canonical-orientation product
    real_part: float
    kind: str  # CycleType name


@dataclass(frozen=True)
class AnalysisReport:
    n: int
    edge_count: int
    component_count: int
    m: int
    c: int
    rank: int
    rank_backend: str
    p_plus: int
    n_zero: int
    n_minus: int
    basic: BoundReport
    refined: BoundReport | None  # None when the transversal search is out of reach
    cycles: tuple[CycleSummary, ...] | None  # None when enumeration hit its cap
    disjoint_cycles: bool
    condition_iii: bool | None  # defined only when cycles are disjoint
    verdict: OptimalityVerdict
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def analyze(
    g: GainGraph,
    tol: float | None = None,
    mode: str | None = None,
    max_cycles: int = DEFAULT_CYCLE_CAP,
) -> AnalysisReport:
    """Compute the full report for one gain graph.

    mode None lets the rank backend pick itself (exact where possible);
    an explicit mode forces that backend. With mode="numeric" the reported
    rank is taken from the same eigenvalue cut as the inertia, so the
    rank = p+ + n- identity is consistent by construction at any tol.
    """
    violations: list[str] = []
    G = underlying(g)

    h = hermitian_adjacency(g)
    ine = inertia(h, tol)
    if mode is None:
        r, backend = graph_rank(g)
    elif mode == "numeric":
        r, backend = ine.rank, "numeric"
    else:
        r, backend = spectral_rank(g, mode=mode), mode

    if r != ine.p_plus + ine.n_minus:
        violations.append(
            f"rank {r} ({backend}) disagrees with inertia sum "
            f"{ine.p_plus}+{ine.n_minus} at tol {ine.tol_used:.3g}"
        )

    basic = check_rank_bounds(g)
    if basic.rank != r and backend != "numeric":
        violations.append(f"rank backends disagree: {r} ({backend}) vs {basic.rank}")
    if not basic.holds_basic:
        violations.append(
            f"rank {basic.rank} escapes [{basic.lower_basic}, {basic.upper_basic}]"
        )

    refined: BoundReport | None = None
    try:
        refined = check_refined_bounds(g)
        if not refined.holds_refined:
            violations.append(
                f"rank {refined.rank} escapes refined "
                f"[{refined.lower_refined}, {refined.upper_refined}]"
            )
    except SizeLimitError:
        pass
    except TheoremViolation as exc:
        violations.append(str(exc))

    cycles: tuple[CycleSummary, ...] | None
    try:
        found = enumerate_cycles(G, limit=max_cycles)
        records = cycle_records(g, found)
        cycles = tuple(
            CycleSummary(
                vertices=rec.vertices,
                length=rec.length,
                gain=rec.gain.token(),
                real_part=rec.real_part,
                kind=classify_cycle(g, rec).name,
            )
            for rec in records
        )
    except SizeLimitError:
        cycles = None

    disjoint, _ = cycles_pairwise_disjoint(G)
    cond: bool | None = None
    if disjoint:
        cond = cycle_matching_condition(G)[0]

    verdict = verify_equivalence(g)
    if not verdict.consistent:
        violations.append("spectral and structural optimality verdicts disagree")
    if verdict.rank != basic.rank:
        violations.append(
            f"verdict rank {verdict.rank} differs from bound-report rank {basic.rank}"
        )

    return AnalysisReport(
        n=g.n,
        edge_count=len(g.edges),
        component_count=len(g.components()),
        m=basic.m,
        c=basic.c,
        rank=r,
        rank_backend=backend,
        p_plus=ine.p_plus,
        n_zero=ine.n_zero,
        n_minus=ine.n_minus,
        basic=basic,
        refined=refined,
        cycles=cycles,
        disjoint_cycles=disjoint,
        condition_iii=cond,
        verdict=verdict,
        violations=tuple(violations),
    )


def _bound_dict(rep: BoundReport) -> dict:
    out = {
        "rank": rep.rank,
        "m": rep.m,
        "c": rep.c,
        "lower_basic": rep.lower_basic,
        "upper_basic": rep.upper_basic,
        "holds_basic": rep.holds_basic,
    }
    if rep.b is not None:
        out.update(
            b=rep.b,
            acyclic_deletion_value=rep.acyclic_deletion_value,
            lower_refined=rep.lower_refined,
            upper_refined=rep.upper_refined,
            holds_refined=rep.holds_refined,
        )
    return out


def _structural_dict(rep: StructuralReport) -> dict:
    return {
        "holds": rep.holds,
        "first_failure": rep.first_failure,
        "witness": list(rep.witness) if rep.witness is not None else None,
        "cycles_disjoint": rep.cycles_disjoint,
        "types_ok": rep.types_ok,
        "matching_ok": rep.matching_ok,
    }


def _verdict_dict(v: OptimalityVerdict) -> dict:
    return {
        "spectral_lower": v.spectral_lower,
        "spectral_upper": v.spectral_upper,
        "structural_lower": _structural_dict(v.structural_lower),
        "structural_upper": _structural_dict(v.structural_upper),
        "consistent": v.consistent,
        "rank": v.rank,
        "rank_backend": v.rank_backend,
    }


def report_to_dict(rep: AnalysisReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": rep.n,
        "edge_count": rep.edge_count,
        "component_count": rep.component_count,
        "m": rep.m,
        "c": rep.c,
        "rank": rep.rank,
        "rank_backend": rep.rank_backend,
        "inertia": {"p_plus": rep.p_plus, "n_zero": rep.n_zero, "n_minus": rep.n_minus},
        "basic_bounds": _bound_dict(rep.basic),
        "refined_bounds": _bound_dict(rep.refined) if rep.refined else None,
        "cycles": None
        if rep.cycles is None
        else [
            {
                "vertices": list(cs.vertices),
                "length": cs.length,
                "gain": cs.gain,
                "real_part": cs.real_part,
                "type": cs.kind,
            }
            for cs in rep.cycles
        ],
        "disjoint_cycles": rep.disjoint_cycles,
        "condition_iii": rep.condition_iii,
        "verdict": _verdict_dict(rep.verdict),
        "violations": list(rep.violations),
        "ok": rep.ok,
    }


def render_text(rep: AnalysisReport) -> str:
    lines = [
        f"vertices {rep.n}  edges {rep.edge_count}  components {rep.component_count}",
        f"matching number {rep.m}  cyclomatic number {rep.c}",
        f"rank {rep.rank} ({rep.rank_backend})  "
        f"inertia +{rep.p_plus} / 0:{rep.n_zero} / -{rep.n_minus}",
        f"basic bounds  {rep.basic.lower_basic} <= {rep.rank} <= {rep.basic.upper_basic}"
        f"  [{'ok' if rep.basic.holds_basic else 'VIOLATED'}]",
    ]
    if rep.refined is not None:
        lines.append(
            f"refined bounds  {rep.refined.lower_refined} <= {rep.rank} <= "
            f"{rep.refined.upper_refined}  "
            f"[{'ok' if rep.refined.holds_refined else 'VIOLATED'}]"
            f"  (transversal {rep.refined.b}, acyclic-deletion value "
            f"{rep.refined.acyclic_deletion_value})"
        )
    if rep.cycles is None:
        lines.append("cycles: not enumerated (over cap)")
    else:
        cond = "n/a" if rep.condition_iii is None else ("yes" if rep.condition_iii else "no")
        lines.append(
            f"cycles: {len(rep.cycles)}  "
            f"(pairwise disjoint: {'yes' if rep.disjoint_cycles else 'no'}; "
            f"contraction matching condition: {cond})"
        )
        for cs in rep.cycles:
            verts = "-".join(map(str, cs.vertices))
            lines.append(
                f"  [{verts}]  length {cs.length}  gain {cs.gain}  "
                f"re {cs.real_part:+.6f}  {cs.kind}"
            )
    v = rep.verdict
    lines.append(
        f"lower-optimal  spectral {'yes' if v.spectral_lower else 'no'} / "
        f"structural {'yes' if v.structural_lower.holds else 'no'}"
    )
    lines.append(
        f"upper-optimal  spectral {'yes' if v.spectral_upper else 'no'} / "
        f"structural {'yes' if v.structural_upper.holds else 'no'}"
    )
    lines.append(f"verdict consistent: {'yes' if v.consistent else 'NO'}")
    if rep.violations:
        lines.append("violations:")
        lines.extend(f"  ! {msg}" for msg in rep.violations)
    return "\n".join(lines)
