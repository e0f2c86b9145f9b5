from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cuboid_factor.core import CuboidTuple

EULER_BRICK = (44, 117, 240, 267, 244, 125)


def fixed_tuples(n, with_L=True):
    """Deterministic spread of rational tuples (signs, zeros, denominators up to 7)."""
    mults = (3, 7, 11, 13, 17, 19, 23)
    out = []
    for k in range(n):
        vals = []
        for i, m in enumerate(mults):
            num = (k * m + 5 * i * i + k // 7) % 61 - 30
            den = (k * (i + 2) + i) % 7 + 1
            vals.append(Fraction(num, den))
        out.append(CuboidTuple(*vals[:6], vals[6] if with_L else None))
    return out


@pytest.fixture
def brick():
    return CuboidTuple(*EULER_BRICK)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@st.composite
def cuboid_tuples(draw, with_L=True):
    vals = [draw(rationals) for _ in range(6)]
    L = draw(rationals) if with_L else None
    return CuboidTuple(*vals, L)
