"""The 3x7 matrix N, its submatrices N1/N2, exact ranks and case witnesses."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Optional, Sequence

from .core import CuboidTuple, Permutation3, eval_p
from .exact_arith import format_rational

RANK1 = "Rank1"
CASE_N1_2_N2_1 = "Case_N1_2_N2_1"
CASE_N1_1_N2_2 = "Case_N1_1_N2_2"
CASE_N1_2_N2_2 = "Case_N1_2_N2_2"
FULL_RANK = "FullRank"
CASE_LABELS = (RANK1, CASE_N1_2_N2_1, CASE_N1_1_N2_2, CASE_N1_2_N2_2, FULL_RANK)


class ClassificationError(ArithmeticError):
    """A rank profile whose implied relations do not hold at the tuple."""

    def __init__(self, message: str, relation: str):
        super().__init__(f"{message}: {relation}")
        self.relation = relation


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [tuple(Fraction(v) for v in r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), ncols, tuple(v for r in rows for v in r))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[tuple[Fraction, ...]]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix.from_rows([[r[j] for j in idx] for r in self.to_rows()])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(list(zip(*self.to_rows())))


def _integer_rows(m: ExactMatrix) -> list[list[int]]:
    out = []
    for r in m.to_rows():
        scale = math.lcm(*(v.denominator for v in r)) if r else 1
        out.append([int(v * scale) for v in r])
    return out


def rank(m: ExactMatrix, reverse: bool = False) -> int:
    """Exact rank by fraction-free (Bareiss) elimination.

    Rows are first cleared of denominators, which does not change the rank.
    ``reverse`` walks rows and columns in the opposite order; the result must
    agree and is used as a cross-check.
    """
    a = _integer_rows(m)
    if reverse:
        a = [list(reversed(r)) for r in reversed(a)]
    nrows, ncols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
    return r


def matrix_row(x: Fraction, d: Fraction) -> tuple[Fraction, ...]:
    return (Fraction(1), d, x, x * d, x * x, d * d, x * x * d * d)


def build_N(t: CuboidTuple) -> ExactMatrix:
    return ExactMatrix.from_rows([matrix_row(x, d) for x, d in zip(t.xs, t.ds)])


def build_N1(t: CuboidTuple) -> ExactMatrix:
    return build_N(t).columns((0, 1))


def build_N2(t: CuboidTuple) -> ExactMatrix:
    return build_N(t).columns((0, 2))


def apply_matrix_equation(t: CuboidTuple) -> tuple[Fraction, ...]:
    """Product of the 7x3 matrix (transpose of N) with (p1, p2, p3)."""
    p = (eval_p(1, t), eval_p(2, t), eval_p(3, t))
    rows = [matrix_row(x, d) for x, d in zip(t.xs, t.ds)]
    return tuple(rows[0][k] * p[0] + rows[1][k] * p[1] + rows[2][k] * p[2] for k in range(7))


@dataclass(frozen=True)
class RankProfile:
    rank_N: int
    rank_N1: int
    rank_N2: int
    case_label: str

    def to_json(self) -> dict:
        return {
            "rank_N": self.rank_N,
            "rank_N1": self.rank_N1,
            "rank_N2": self.rank_N2,
            "case_label": self.case_label,
        }


@dataclass(frozen=True)
class CaseWitness:
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    gamma: Optional[Fraction] = None
    delta: Optional[Fraction] = None
    epsilon: Optional[Fraction] = None
    zeta: Optional[Fraction] = None
    s1: Optional[Fraction] = None
    s2: Optional[Fraction] = None
    r1: Optional[Fraction] = None
    r2: Optional[Fraction] = None
    theta: Optional[Fraction] = None
    # Normalizing permutation: act(permutation, t) has its repeated values at
    # positions 1 and 2. ``subcase`` is 1, 2 or 3 for the odd value at 3, 2, 1.
    permutation: Optional[Permutation3] = None
    subcase: Optional[int] = None

    def to_json(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Fraction):
                v = format_rational(v)
            elif isinstance(v, Permutation3):
                v = list(v.images)
            out[f.name] = v
        return out


def rank_profile(t: CuboidTuple) -> RankProfile:
    n = build_N(t)
    rn, rn1, rn2 = rank(n), rank(n.columns((0, 1))), rank(n.columns((0, 2)))
    return RankProfile(rn, rn1, rn2, _label(rn, rn1, rn2))


def _label(rn: int, rn1: int, rn2: int) -> str:
    if rn == 3:
        return FULL_RANK
    if rn == 1:
        return RANK1
    return {
        (2, 1): CASE_N1_2_N2_1,
        (1, 2): CASE_N1_1_N2_2,
        (2, 2): CASE_N1_2_N2_2,
    }[(rn1, rn2)]


def _odd_position(values: Sequence[Fraction]) -> int:
    """1-based position of the value occurring once among two distinct values."""
    a, b, c = values
    if a == b != c:
        return 3
    if a == c != b:
        return 2
    if b == c != a:
        return 1
    raise ClassificationError(
        "expected exactly two distinct values", f"values {[format_rational(v) for v in values]}"
    )


def _solve_2x2(a: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    (a11, a12), (a21, a22) = a
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise ClassificationError("singular 2x2 system", "determinant 0")
    return ((rhs[0] * a22 - a12 * rhs[1]) / det, (a11 * rhs[1] - a21 * rhs[0]) / det)


def _quadratic(values: Sequence[Fraction], name: str):
    """Coefficients (b, c) with v^2 = b*v + c for all v, plus the roots and subcase."""
    k = _odd_position(values)
    repeated = values[0] if k != 1 else values[1]
    single = values[k - 1]
    b, c = _solve_2x2([[repeated, 1], [single, 1]], [repeated**2, single**2])
    for i, v in enumerate(values, start=1):
        if v * v - b * v - c != 0:
            raise ClassificationError(
                "witness inconsistent", f"{name}{i}^2 - ({b})*{name}{i} - ({c}) != 0"
            )
    sigma = Permutation3.identity() if k == 3 else Permutation3.transposition(k, 3)
    subcase = {3: 1, 2: 2, 1: 3}[k]
    return b, c, repeated, single, sigma, subcase


def classify(t: CuboidTuple) -> tuple[RankProfile, CaseWitness]:
    profile = rank_profile(t)
    label = profile.case_label
    xs, ds = t.xs, t.ds
    if label == FULL_RANK:
        return profile, CaseWitness()
    if label == RANK1:
        if len(set(xs)) != 1 or len(set(ds)) != 1:
            raise ClassificationError("rank N = 1 but columns not constant", str(t))
        return profile, CaseWitness(alpha=xs[0], beta=ds[0])
    if label == CASE_N1_2_N2_1:
        if len(set(ds)) == 3:
            raise ClassificationError("rank N <= 2 with three distinct d-values", str(t))
        beta, gamma, s1, s2, sigma, sub = _quadratic(ds, "d")
        return profile, CaseWitness(
            alpha=xs[0], beta=beta, gamma=gamma, s1=s1, s2=s2, permutation=sigma, subcase=sub
        )
    if label == CASE_N1_1_N2_2:
        if len(set(xs)) == 3:
            raise ClassificationError("rank N <= 2 with three distinct x-values", str(t))
        eps, zeta, r1, r2, sigma, sub = _quadratic(xs, "x")
        return profile, CaseWitness(
            delta=ds[0], epsilon=eps, zeta=zeta, r1=r1, r2=r2, permutation=sigma, subcase=sub
        )
    beta, gamma, s1, s2, sigma_d, sub_d = _quadratic(ds, "d")
    eps, zeta, r1, r2, sigma_x, sub_x = _quadratic(xs, "x")
    if sub_d != sub_x:
        raise ClassificationError(
            "repeated d-values and x-values sit at different positions",
            f"d-subcase {sub_d} vs x-subcase {sub_x}",
        )
    theta = abs(s1) if r1 == 0 and s2 == 0 and abs(r2) == abs(s1) else None
    return profile, CaseWitness(
        beta=beta, gamma=gamma, epsilon=eps, zeta=zeta,
        s1=s1, s2=s2, r1=r1, r2=r2, theta=theta, permutation=sigma_d, subcase=sub_d,
    )


def classification_json(profile: RankProfile, witness: CaseWitness) -> dict:
    out = profile.to_json()
    out["witness"] = witness.to_json()
    return out
