import itertools
import json
from fractions import Fraction

import pytest

from conftest import EULER_BRICK
from cuboid_factor import equivalence as eq
from cuboid_factor.core import CuboidTuple, residuals
from cuboid_factor.equivalence import (
    CaseTheoremViolation,
    SystemKind,
    box_values,
    satisfies_cuboid,
    satisfies_factor,
    sqrt2_counterexamples,
    verify_case_theorems,
    verify_equivalence_box,
)
from cuboid_factor.exact_arith import DomainError
from cuboid_factor.rank_analysis import CASE_N1_2_N2_1, CASE_N1_2_N2_2, RankProfile, CaseWitness

EULER, PERFECT = SystemKind.EULER, SystemKind.PERFECT


def test_satisfies_cuboid_examples(brick):
    assert satisfies_cuboid(brick, EULER)
    assert 44**2 + 117**2 + 240**2 - 267**2 == 73225 - 71289 == 1936
    assert not satisfies_cuboid(brick.with_L(267), PERFECT)
    assert satisfies_cuboid(CuboidTuple(0, 0, 0, 0, 0, 0, 0), PERFECT)
    with pytest.raises(DomainError):
        satisfies_cuboid(brick, PERFECT)


def test_satisfies_factor_examples(brick):
    assert satisfies_factor(brick, EULER)
    assert not satisfies_factor(CuboidTuple(1, 1, 1, 1, 1, 1), EULER)
    theta = 5
    assert satisfies_factor(CuboidTuple(0, 0, theta, theta, theta, 0), EULER)
    with pytest.raises(DomainError):
        satisfies_factor(brick, PERFECT)


def test_box_values():
    assert box_values(2, 2, True) == [Fraction(1, 2), 1, 2]
    assert box_values(3, 2, True) == [Fraction(1, 2), 1, Fraction(3, 2), 2, 3]
    assert box_values(0, 3, False) == [0]
    assert box_values(0, 1, True) == []
    assert len(box_values(5, 2, True)) == 8
    with pytest.raises(DomainError):
        box_values(1, 0, False)


def brute_force(values, kind):
    """Oracle: Fraction evaluation of every tuple in the product box."""
    factor, cuboid = [], []
    for vals in itertools.product(values, repeat=kind.arity):
        t = CuboidTuple(*vals)
        r = residuals(t, kind.perfect)
        cub = not any(r.p_vector) and (r.p0 == 0 if kind.perfect else True)
        fac = not any(r.factor_tail) and (r.tp1 == 0 if kind.perfect else True)
        if fac:
            factor.append(t)
        if cub:
            cuboid.append(t)
    return factor, cuboid


@pytest.mark.parametrize(
    "bound,cap,kind,positive",
    [
        (2, 1, EULER, False),
        (2, 2, EULER, True),
        (1, 2, EULER, False),
        (1, 1, PERFECT, False),
        (3, 2, PERFECT, True),
    ],
)
def test_scan_matches_brute_force(bound, cap, kind, positive):
    values = box_values(bound, cap, positive)
    factor, cuboid = brute_force(values, kind)
    report = verify_equivalence_box(bound, cap, kind, positive)
    assert report.complete
    assert report.scanned == len(values) ** kind.arity
    assert report.factor_solutions == factor
    assert report.cuboid_solutions == cuboid
    assert report.mismatches == [t for t in factor if t not in cuboid]


def test_positive_euler_box_20_is_empty():
    report = verify_equivalence_box(20, 1, EULER, True)
    assert report.scanned == 20**6
    assert report.factor_solutions == report.cuboid_solutions == []
    assert report.ok


def test_unrestricted_euler_box_5():
    report = verify_equivalence_box(5, 1, EULER, False)
    assert report.mismatches == []
    assert report.factor_solutions == report.cuboid_solutions
    assert CuboidTuple(0, 0, 5, 5, 5, 0) in report.factor_solutions
    assert CuboidTuple(0, 3, 4, 5, 4, 3) in report.factor_solutions
    for t in report.factor_solutions:
        assert 0 in t.xs + t.ds
    assert sum(report.case_histogram.values()) == len(report.factor_solutions)
    assert report.case_histogram[CASE_N1_2_N2_1] == 0


def test_rational_box_contains_scaled_degenerate_solution():
    report = verify_equivalence_box(5, 2, EULER, False)
    t = CuboidTuple(0, Fraction(3, 2), 2, Fraction(5, 2), 2, Fraction(3, 2))
    assert t in report.cuboid_solutions
    assert report.mismatches == []


def test_perfect_positive_box_1():
    report = verify_equivalence_box(1, 1, PERFECT, True)
    assert report.scanned == 1
    assert report.factor_solutions == report.cuboid_solutions == []
    assert residuals(CuboidTuple(1, 1, 1, 1, 1, 1, 1), True).tp2 == 2 * 3 - 3


def test_zero_box():
    report = verify_equivalence_box(0, 1, EULER, False)
    assert report.scanned == 1
    assert report.factor_solutions == [CuboidTuple(0, 0, 0, 0, 0, 0)]


def test_resource_cap_marks_incomplete():
    report = verify_equivalence_box(3, 1, EULER, False, max_tuples=7**5 * 3)
    assert not report.complete
    assert report.scanned == 7**5 * 3
    full = verify_equivalence_box(3, 1, EULER, False)
    assert full.complete and full.scanned == 7**6


def test_resource_cap_from_env(monkeypatch):
    monkeypatch.setenv("CUBOID_MAX_TUPLES", "10")
    report = verify_equivalence_box(2, 1, EULER, True)
    assert not report.complete and report.scanned == 0


def test_report_json_schema():
    data = verify_equivalence_box(2, 1, PERFECT, False).to_json()
    assert list(data) == [
        "kind", "bound", "den_cap", "positive", "scanned", "factor_solutions",
        "cuboid_solutions", "mismatches", "case_histogram", "complete",
    ]
    assert data["kind"] == "perfect"
    assert all(len(row) == 7 and all(isinstance(v, str) for v in row) for row in data["factor_solutions"])
    json.dumps(data)


def test_jobs_do_not_change_report():
    a = verify_equivalence_box(3, 2, EULER, False, jobs=1).to_json()
    b = verify_equivalence_box(3, 2, EULER, False, jobs=3).to_json()
    assert json.dumps(a) == json.dumps(b)


def test_dichotomy_flag():
    report = verify_equivalence_box(2, 1, EULER, False)
    report.mismatches = [CuboidTuple(*EULER_BRICK)]
    report.mismatch_ranks = [3]
    assert not report.dichotomy_holds and not report.ok


def test_case_theorems_bound_5():
    report = verify_case_theorems(5, EULER)
    assert report.ok and report.complete
    assert report.scanned == 11**6
    assert report.case_histogram["Case_N1_2_N2_1"] == report.case_histogram["Case_N1_1_N2_2"] == 0
    assert report.case_histogram[CASE_N1_2_N2_2] > 0


def test_case_theorems_bound_0():
    report = verify_case_theorems(0, EULER)
    assert report.scanned == 1 and report.factor_solutions == 1
    assert report.case_histogram["Rank1"] == 1


def test_case_theorems_perfect_small():
    report = verify_case_theorems(3, PERFECT)
    assert report.ok and report.scanned == 7**7


def test_case_theorem_violation_carries_counterexample(monkeypatch):
    monkeypatch.setattr(eq, "classify", lambda t: (RankProfile(2, 2, 1, CASE_N1_2_N2_1), CaseWitness()))
    with pytest.raises(CaseTheoremViolation) as info:
        verify_case_theorems(1, EULER)
    assert info.value.counterexamples[0]["case_label"] == CASE_N1_2_N2_1
    report = verify_case_theorems(1, EULER, raise_on_violation=False)
    assert not report.ok and len(report.violations) == report.factor_solutions


def test_sqrt2_has_no_rational_witnesses():
    values = box_values(60, 3, False)
    assert sqrt2_counterexamples(values) == []
