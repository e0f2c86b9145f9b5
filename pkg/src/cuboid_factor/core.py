"""Cuboid variables, the S3 action on them and exact numeric evaluation.

Variable order is fixed everywhere as (x1, x2, x3, d1, d2, d3, L).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .exact_arith import DomainError, RationalLike, format_rational, to_rational

VARIABLES = ("x1", "x2", "x3", "d1", "d2", "d3", "L")
FACTOR_INDICES = tuple(range(1, 9))


@dataclass(frozen=True)
class CuboidTuple:
    x1: Fraction
    x2: Fraction
    x3: Fraction
    d1: Fraction
    d2: Fraction
    d3: Fraction
    L: Optional[Fraction] = None

    def __post_init__(self):
        for name in VARIABLES[:6]:
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.L is not None:
            object.__setattr__(self, "L", to_rational(self.L))

    @classmethod
    def of(cls, *values: RationalLike) -> "CuboidTuple":
        """Build from six or seven values in the canonical order."""
        if len(values) not in (6, 7):
            raise DomainError(f"expected 6 or 7 coordinates, got {len(values)}")
        return cls(*values)

    @property
    def xs(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x1, self.x2, self.x3)

    @property
    def ds(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.d1, self.d2, self.d3)

    @property
    def has_L(self) -> bool:
        return self.L is not None

    def require_L(self) -> Fraction:
        if self.L is None:
            raise DomainError("space diagonal L is required for perfect-cuboid evaluation")
        return self.L

    def values(self) -> tuple[Fraction, ...]:
        base = self.xs + self.ds
        return base if self.L is None else base + (self.L,)

    def with_L(self, L: Optional[RationalLike]) -> "CuboidTuple":
        return CuboidTuple(*self.xs, *self.ds, L)

    def to_strings(self) -> list[str]:
        return [format_rational(v) for v in self.values()]

    def __str__(self) -> str:
        return ",".join(self.to_strings())


class Permutation3:
    """An element of S3, stored as the images (s(1), s(2), s(3))."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != [1, 2, 3]:
            raise DomainError(f"not a permutation of (1, 2, 3): {images}")
        self.images = images

    @classmethod
    def identity(cls) -> "Permutation3":
        return cls((1, 2, 3))

    @classmethod
    def transposition(cls, i: int, j: int) -> "Permutation3":
        images = [1, 2, 3]
        images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
        return cls(images)

    @classmethod
    def cycle(cls, *points: int) -> "Permutation3":
        """Cycle notation, e.g. ``cycle(1, 2, 3)`` maps 1->2->3->1."""
        images = [1, 2, 3]
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b
        return cls(images)

    @classmethod
    def all(cls) -> list["Permutation3"]:
        return [cls(p) for p in itertools.permutations((1, 2, 3))]

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "Permutation3") -> "Permutation3":
        """``self o other``: first ``other``, then ``self``."""
        return Permutation3(self(other(i)) for i in (1, 2, 3))

    __matmul__ = compose

    def inverse(self) -> "Permutation3":
        inv = [0, 0, 0]
        for i, s in enumerate(self.images, start=1):
            inv[s - 1] = i
        return Permutation3(inv)

    def permute(self, triple: Sequence) -> tuple:
        """Return (t[s(1)], t[s(2)], t[s(3)]) for a 3-sequence ``t``."""
        return tuple(triple[s - 1] for s in self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation3) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation3({self.images})"


def act(sigma: Permutation3, t: CuboidTuple) -> CuboidTuple:
    """Substitute x_i -> x_{s(i)}, d_i -> d_{s(i)}; L is fixed."""
    return CuboidTuple(*sigma.permute(t.xs), *sigma.permute(t.ds), t.L)


def eval_p(index: int, t: CuboidTuple) -> Fraction:
    x1, x2, x3 = t.xs
    d1, d2, d3 = t.ds
    if index == 0:
        L = t.require_L()
        return x1 * x1 + x2 * x2 + x3 * x3 - L * L
    if index == 1:
        return x2 * x2 + x3 * x3 - d1 * d1
    if index == 2:
        return x3 * x3 + x1 * x1 - d2 * d2
    if index == 3:
        return x1 * x1 + x2 * x2 - d3 * d3
    raise DomainError(f"no cuboid polynomial p{index}")


def eval_factor(index: int, t: CuboidTuple) -> Fraction:
    if index == 1:
        return eval_p(0, t)
    if index not in FACTOR_INDICES:
        raise DomainError(f"no factor polynomial tp{index}")
    x1, x2, x3 = t.xs
    d1, d2, d3 = t.ds
    p1, p2, p3 = eval_p(1, t), eval_p(2, t), eval_p(3, t)
    if index == 2:
        return p1 + p2 + p3
    if index == 3:
        return d1 * p1 + d2 * p2 + d3 * p3
    if index == 4:
        return x1 * p1 + x2 * p2 + x3 * p3
    if index == 5:
        return x1 * d1 * p1 + x2 * d2 * p2 + x3 * d3 * p3
    if index == 6:
        return x1**2 * p1 + x2**2 * p2 + x3**2 * p3
    if index == 7:
        return d1**2 * p1 + d2**2 * p2 + d3**2 * p3
    return x1**2 * d1**2 * p1 + x2**2 * d2**2 * p2 + x3**2 * d3**2 * p3


@dataclass(frozen=True)
class ResidualVector:
    p0: Optional[Fraction]
    p1: Fraction
    p2: Fraction
    p3: Fraction
    tp1: Optional[Fraction]
    tp2: Fraction
    tp3: Fraction
    tp4: Fraction
    tp5: Fraction
    tp6: Fraction
    tp7: Fraction
    tp8: Fraction

    @property
    def p_vector(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.p1, self.p2, self.p3)

    @property
    def factor_tail(self) -> tuple[Fraction, ...]:
        """(tp2, ..., tp8) in order."""
        return (self.tp2, self.tp3, self.tp4, self.tp5, self.tp6, self.tp7, self.tp8)

    def items(self) -> Iterator[tuple[str, Optional[Fraction]]]:
        for name in ("p0", "p1", "p2", "p3", "tp1", "tp2", "tp3", "tp4", "tp5", "tp6", "tp7", "tp8"):
            yield name, getattr(self, name)


def residuals(t: CuboidTuple, perfect: bool) -> ResidualVector:
    """Evaluate every p and tp at ``t``; p0/tp1 only when ``perfect``."""
    x1, x2, x3 = t.xs
    d1, d2, d3 = t.ds
    if perfect:
        L = t.require_L()
        p0 = x1 * x1 + x2 * x2 + x3 * x3 - L * L
    else:
        p0 = None
    sx = (x1 * x1, x2 * x2, x3 * x3)
    sd = (d1 * d1, d2 * d2, d3 * d3)
    p1 = sx[1] + sx[2] - sd[0]
    p2 = sx[2] + sx[0] - sd[1]
    p3 = sx[0] + sx[1] - sd[2]
    return ResidualVector(
        p0=p0,
        p1=p1,
        p2=p2,
        p3=p3,
        tp1=p0,
        tp2=p1 + p2 + p3,
        tp3=d1 * p1 + d2 * p2 + d3 * p3,
        tp4=x1 * p1 + x2 * p2 + x3 * p3,
        tp5=x1 * d1 * p1 + x2 * d2 * p2 + x3 * d3 * p3,
        tp6=sx[0] * p1 + sx[1] * p2 + sx[2] * p3,
        tp7=sd[0] * p1 + sd[1] * p2 + sd[2] * p3,
        tp8=sx[0] * sd[0] * p1 + sx[1] * sd[1] * p2 + sx[2] * sd[2] * p3,
    )
