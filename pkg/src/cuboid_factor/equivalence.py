"""Bounded exhaustive checks that factor solutions coincide with cuboid solutions.

Both systems are homogeneous, so a tuple of rationals solves either system iff
the same tuple scaled by a common denominator does. Boxes of rationals are
therefore scanned on integer images, and reported back as the original
rationals.
"""

from __future__ import annotations

import enum
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import CuboidTuple, residuals
from .exact_arith import DomainError, format_rational
from .rank_analysis import CASE_LABELS, CASE_N1_1_N2_2, CASE_N1_2_N2_1, CASE_N1_2_N2_2, RANK1, classify, rank, build_N

DEFAULT_MAX_TUPLES = 10**8


class SystemKind(enum.Enum):
    EULER = "euler"
    PERFECT = "perfect"

    @property
    def perfect(self) -> bool:
        return self is SystemKind.PERFECT

    @property
    def arity(self) -> int:
        return 7 if self.perfect else 6


def _check_kind(t: CuboidTuple, kind: SystemKind) -> None:
    if kind.perfect:
        t.require_L()


def satisfies_cuboid(t: CuboidTuple, kind: SystemKind) -> bool:
    _check_kind(t, kind)
    r = residuals(t, kind.perfect)
    ok = r.p1 == 0 and r.p2 == 0 and r.p3 == 0
    return ok and (r.p0 == 0 if kind.perfect else True)


def satisfies_factor(t: CuboidTuple, kind: SystemKind) -> bool:
    _check_kind(t, kind)
    r = residuals(t, kind.perfect)
    ok = not any(r.factor_tail)
    return ok and (r.tp1 == 0 if kind.perfect else True)


def max_tuples_from_env() -> int:
    raw = os.environ.get("CUBOID_MAX_TUPLES")
    return int(raw) if raw else DEFAULT_MAX_TUPLES


def box_values(bound: int, denominator_cap: int, positive: bool) -> list[Fraction]:
    """Sorted reduced rationals n/q with |n| <= bound, 1 <= q <= cap."""
    if bound < 0 or denominator_cap < 1:
        raise DomainError("bound must be >= 0 and denominator cap >= 1")
    vals = {Fraction(n, q) for q in range(1, denominator_cap + 1) for n in range(-bound, bound + 1)}
    if positive:
        vals = {v for v in vals if v > 0}
    return sorted(vals)


@dataclass
class _Partial:
    scanned: int = 0
    factor: list = field(default_factory=list)
    cuboid: list = field(default_factory=list)


def _scan_slice(args) -> _Partial:
    """Scan all tuples whose x1 is ``ints[lead]``; tuples are index tuples."""
    ints, lead, perfect = args
    n = len(ints)
    sq = [v * v for v in ints]
    by_square: dict[int, list[int]] = {}
    for i, s in enumerate(sq):
        by_square.setdefault(s, []).append(i)
    out = _Partial(scanned=n**5 * (n if perfect else 1))
    i1 = lead
    x1, s1 = ints[i1], sq[i1]
    for i2 in range(n):
        x2, s2 = ints[i2], sq[i2]
        for i3 in range(n):
            x3, s3 = ints[i3], sq[i3]
            sum_x = s1 + s2 + s3
            for j1 in range(n):
                p1 = s2 + s3 - sq[j1]
                for j2 in range(n):
                    p2 = s3 + s1 - sq[j2]
                    # tp2 = p1 + p2 + p3 vanishes only for d3^2 = s1 + s2 + p1 + p2.
                    for j3 in by_square.get(s1 + s2 + p1 + p2, ()):
                        p3 = s1 + s2 - sq[j3]
                        d1, d2, d3 = ints[j1], ints[j2], ints[j3]
                        is_cuboid = p1 == 0 and p2 == 0 and p3 == 0
                        if not is_cuboid and not _factor_tail_zero(x1, x2, x3, d1, d2, d3, p1, p2, p3):
                            continue
                        base = (i1, i2, i3, j1, j2, j3)
                        if not perfect:
                            out.factor.append(base)
                            if is_cuboid:
                                out.cuboid.append(base)
                            continue
                        for k in by_square.get(sum_x, ()):
                            out.factor.append(base + (k,))
                            if is_cuboid:
                                out.cuboid.append(base + (k,))
    return out


def _factor_tail_zero(x1, x2, x3, d1, d2, d3, p1, p2, p3) -> bool:
    return (
        d1 * p1 + d2 * p2 + d3 * p3 == 0
        and x1 * p1 + x2 * p2 + x3 * p3 == 0
        and x1 * d1 * p1 + x2 * d2 * p2 + x3 * d3 * p3 == 0
        and x1 * x1 * p1 + x2 * x2 * p2 + x3 * x3 * p3 == 0
        and d1 * d1 * p1 + d2 * d2 * p2 + d3 * d3 * p3 == 0
        and x1 * x1 * d1 * d1 * p1 + x2 * x2 * d2 * d2 * p2 + x3 * x3 * d3 * d3 * p3 == 0
    )


def _scan_box(values: Sequence[Fraction], perfect: bool, max_tuples: int, jobs: int):
    """Scan the full product box of ``values``; returns merged partial and completeness."""
    n = len(values)
    scale = math.lcm(*(v.denominator for v in values)) if values else 1
    ints = [int(v * scale) for v in values]
    slice_size = n**5 * (n if perfect else 1)
    n_slices = n
    if slice_size and n_slices * slice_size > max_tuples:
        n_slices = max_tuples // slice_size
    complete = n_slices == n
    tasks = [(ints, lead, perfect) for lead in range(n_slices)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(_scan_slice, tasks))
    else:
        partials = [_scan_slice(t) for t in tasks]
    merged = _Partial()
    for p in partials:
        merged.scanned += p.scanned
        merged.factor.extend(p.factor)
        merged.cuboid.extend(p.cuboid)
    merged.factor.sort()
    merged.cuboid.sort()
    return merged, complete


def _to_tuple(values: Sequence[Fraction], idx: Sequence[int]) -> CuboidTuple:
    return CuboidTuple(*(values[i] for i in idx))


@dataclass
class EquivalenceReport:
    kind: SystemKind
    bound: int
    den_cap: int
    positive: bool
    scanned: int
    factor_solutions: list[CuboidTuple]
    cuboid_solutions: list[CuboidTuple]
    mismatches: list[CuboidTuple]
    case_histogram: dict[str, int]
    complete: bool
    # rank of N at each mismatch; the factor/cuboid gap can only occur at rank <= 2
    mismatch_ranks: list[int] = field(default_factory=list)

    @property
    def domain_description(self) -> str:
        sign = "positive" if self.positive else "signed"
        return f"{sign} rationals n/q, |n| <= {self.bound}, q <= {self.den_cap}"

    @property
    def dichotomy_holds(self) -> bool:
        return all(r <= 2 for r in self.mismatch_ranks)

    @property
    def ok(self) -> bool:
        if self.positive:
            return not self.mismatches
        return not self.mismatches or self.dichotomy_holds

    def to_json(self) -> dict:
        def rows(ts):
            return [t.to_strings() for t in ts]

        return {
            "kind": self.kind.value,
            "bound": self.bound,
            "den_cap": self.den_cap,
            "positive": self.positive,
            "scanned": self.scanned,
            "factor_solutions": rows(self.factor_solutions),
            "cuboid_solutions": rows(self.cuboid_solutions),
            "mismatches": rows(self.mismatches),
            "case_histogram": dict(self.case_histogram),
            "complete": self.complete,
        }


def _histogram(tuples: Sequence[CuboidTuple]) -> dict[str, int]:
    counts = Counter(classify(t)[0].case_label for t in tuples)
    return {label: counts.get(label, 0) for label in CASE_LABELS}


def verify_equivalence_box(
    bound: int,
    denominator_cap: int,
    kind: SystemKind,
    positivity: bool,
    *,
    jobs: int = 1,
    max_tuples: Optional[int] = None,
) -> EquivalenceReport:
    """Compare factor and cuboid solution sets over a box of rationals.

    Every coordinate (L included for the perfect system) ranges over the
    reduced fractions n/q with |n| <= bound and q <= denominator_cap, positive
    only when ``positivity``. Solutions are listed in lexicographic order of
    the coordinates. If the box exceeds ``max_tuples`` a prefix of whole
    x1-slices is scanned and the report is marked incomplete.
    """
    if max_tuples is None:
        max_tuples = max_tuples_from_env()
    values = box_values(bound, denominator_cap, positivity)
    part, complete = _scan_box(values, kind.perfect, max_tuples, jobs)
    factor = [_to_tuple(values, i) for i in part.factor]
    cuboid = [_to_tuple(values, i) for i in part.cuboid]
    cuboid_set = set(part.cuboid)
    mismatches = [_to_tuple(values, i) for i in part.factor if i not in cuboid_set]
    return EquivalenceReport(
        kind=kind,
        bound=bound,
        den_cap=denominator_cap,
        positive=positivity,
        scanned=part.scanned,
        factor_solutions=factor,
        cuboid_solutions=cuboid,
        mismatches=mismatches,
        case_histogram=_histogram(factor),
        complete=complete,
        mismatch_ranks=[rank(build_N(t)) for t in mismatches],
    )


class CaseTheoremViolation(AssertionError):
    def __init__(self, report: "CaseReport"):
        first = report.violations[0] if report.violations else report.sqrt2_counterexamples[0]
        super().__init__(f"case theorem check failed; first counterexample: {first}")
        self.report = report
        self.counterexamples = report.violations


@dataclass
class CaseReport:
    kind: SystemKind
    bound: int
    scanned: int
    factor_solutions: int
    case_histogram: dict[str, int]
    violations: list[dict]
    sqrt2_counterexamples: list[tuple[str, str]]
    complete: bool

    @property
    def ok(self) -> bool:
        return not self.violations and not self.sqrt2_counterexamples

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "bound": self.bound,
            "scanned": self.scanned,
            "factor_solutions": self.factor_solutions,
            "case_histogram": dict(self.case_histogram),
            "violations": self.violations,
            "sqrt2_counterexamples": [list(p) for p in self.sqrt2_counterexamples],
            "complete": self.complete,
        }


def sqrt2_counterexamples(values: Sequence[Fraction]) -> list[tuple[Fraction, Fraction]]:
    """Pairs (s, a) from ``values`` with a != 0 and s^2 = 2 a^2 (there are none)."""
    squares = {v * v: v for v in values}
    return [(squares[2 * a * a], a) for a in values if a != 0 and 2 * a * a in squares]


def verify_case_theorems(
    bound: int,
    kind: SystemKind,
    *,
    jobs: int = 1,
    max_tuples: Optional[int] = None,
    raise_on_violation: bool = True,
) -> CaseReport:
    """Classify every factor solution in the integer box |coordinate| <= bound.

    Checks that no solution falls in Case_N1_2_N2_1 or Case_N1_1_N2_2, that
    every Case_N1_2_N2_2 solution has a zero edge or diagonal, and that every
    Rank1 solution already solves the cuboid system.
    """
    if max_tuples is None:
        max_tuples = max_tuples_from_env()
    values = box_values(bound, 1, False)
    part, complete = _scan_box(values, kind.perfect, max_tuples, jobs)
    cuboid_set = set(part.cuboid)
    violations = []
    labels = Counter()
    for idx in part.factor:
        t = _to_tuple(values, idx)
        profile, _ = classify(t)
        label = profile.case_label
        labels[label] += 1
        reason = None
        if label in (CASE_N1_2_N2_1, CASE_N1_1_N2_2):
            reason = f"factor solution in {label}"
        elif label == CASE_N1_2_N2_2 and all(v != 0 for v in t.xs + t.ds):
            reason = f"{label} factor solution without a zero coordinate"
        elif label == RANK1 and idx not in cuboid_set:
            reason = "Rank1 factor solution is not a cuboid solution"
        if reason:
            violations.append({"tuple": t.to_strings(), "case_label": label, "reason": reason})
    report = CaseReport(
        kind=kind,
        bound=bound,
        scanned=part.scanned,
        factor_solutions=len(part.factor),
        case_histogram={label: labels.get(label, 0) for label in CASE_LABELS},
        violations=violations,
        sqrt2_counterexamples=[
            (format_rational(s), format_rational(a)) for s, a in sqrt2_counterexamples(values)
        ],
        complete=complete,
    )
    if raise_on_violation and not report.ok:
        raise CaseTheoremViolation(report)
    return report
