import json
import math

import pytest

from cuboid_factor.core import CuboidTuple
from cuboid_factor.equivalence import SystemKind, satisfies_cuboid, satisfies_factor
from cuboid_factor.exact_arith import DomainError
from cuboid_factor.search import (
    Brick,
    check_perfect_absence,
    naive_search,
    pythagorean_pairs,
    search_bricks,
)


def oracle_bricks(max_edge):
    """Independent triple loop with math.isqrt squares."""
    sq = lambda n: math.isqrt(n) ** 2 == n
    out = set()
    for a in range(1, max_edge + 1):
        for b in range(a, max_edge + 1):
            if not sq(a * a + b * b):
                continue
            for c in range(b, max_edge + 1):
                if sq(b * b + c * c) and sq(a * a + c * c):
                    out.add((a, b, c))
    return sorted(out)


def test_search_examples():
    assert search_bricks(40).bricks == []
    r250 = search_bricks(250)
    assert [(b.edges, b.diagonals) for b in r250.bricks] == [((44, 117, 240), (267, 244, 125))]
    r300 = search_bricks(300)
    assert [(b.edges, b.diagonals) for b in r300.bricks] == [
        ((44, 117, 240), (267, 244, 125)),
        ((240, 252, 275), (373, 365, 348)),
    ]
    assert 252**2 + 275**2 == 373**2 and 240**2 + 275**2 == 365**2 and 240**2 + 252**2 == 348**2


@pytest.mark.parametrize("max_edge", [1, 44, 239, 240, 300])
def test_pruned_equals_naive(max_edge):
    expected = oracle_bricks(max_edge) if max_edge <= 240 else None
    pruned = [b.edges for b in search_bricks(max_edge).bricks]
    assert pruned == [b.edges for b in naive_search(max_edge)]
    if expected is not None:
        assert pruned == expected


def test_pruned_equals_naive_larger():
    assert search_bricks(700).bricks == naive_search(700)


def test_pythagorean_pairs_against_brute_force():
    for n in (1, 5, 13, 60, 250):
        brute = sorted((a, b) for b in range(1, n + 1) for a in range(1, b) if math.isqrt(a * a + b * b) ** 2 == a * a + b * b)
        assert pythagorean_pairs(n) == brute


def test_every_brick_solves_both_systems():
    for b in search_bricks(2000).bricks:
        t = CuboidTuple(*b.edges, *b.diagonals)
        assert satisfies_cuboid(t, SystemKind.EULER)
        assert satisfies_factor(t, SystemKind.EULER)


def test_scale_closure():
    bricks = set(search_bricks(1500).bricks)
    for b in bricks:
        for k in range(2, 1500 // b.edges[2] + 1):
            s = b.scaled(k)
            assert s in bricks
            assert s.diagonals == tuple(k * d for d in b.diagonals)
            assert not s.primitive


def test_primitive_only():
    everything = search_bricks(1000).bricks
    primitive = search_bricks(1000, primitive_only=True).bricks
    assert primitive == [b for b in everything if math.gcd(*b.edges) == 1]
    assert (88, 234, 480) in [b.edges for b in everything]
    assert (88, 234, 480) not in [b.edges for b in primitive]


def test_brick_canonicalization():
    b = Brick.from_edges(240, 44, 117)
    assert b.edges == (44, 117, 240) and b.diagonals == (267, 244, 125)
    with pytest.raises(DomainError):
        Brick.from_edges(1, 2, 3)


def test_bounds():
    with pytest.raises(DomainError):
        search_bricks(0)
    with pytest.raises(DomainError, match="bigint"):
        search_bricks(10**6 + 1)
    with pytest.raises(DomainError):
        check_perfect_absence(2 * 10**6)


def test_perfect_absence():
    assert 44**2 + 117**2 + 240**2 == 73225
    assert math.isqrt(73225) ** 2 != 73225
    result = check_perfect_absence(500)
    assert result and result.bricks_checked == 3 and result.witnesses == ()
    assert check_perfect_absence(1)
    assert search_bricks(500).perfect_found == []


def test_perfect_absence_reports_witness():
    from cuboid_factor.search import SearchReport

    # contract case: a fabricated report containing a brick with square edge-sum
    fake = Brick((1, 2, 2), (3, 3, 3), True)  # 1 + 4 + 4 = 9
    report = SearchReport(10, False, [fake], [], 0)
    result = check_perfect_absence(10, report=report)
    assert not result and result.witnesses == (fake,)


def test_jobs_are_deterministic():
    reports = [json.dumps(search_bricks(600, jobs=j).to_json()) for j in (1, 3, 8)]
    assert len(set(reports)) == 1


def test_report_serialization():
    r = search_bricks(300)
    data = r.to_json()
    assert "wall_time" not in data
    assert "wall_time" in r.to_json(include_timing=True)
    assert data["bricks"][1] == {"edges": [240, 252, 275], "diagonals": [373, 365, 348], "primitive": True}
    assert r.to_csv().splitlines() == [
        "x1,x2,x3,d1,d2,d3,primitive",
        "44,117,240,267,244,125,true",
        "240,252,275,373,365,348,true",
    ]
