"""Sparse polynomials over Q in the seven cuboid variables.

Terms live in a dict keyed by 7-tuples of exponents (x1, x2, x3, d1, d2, d3, L)
with nonzero ``Fraction`` coefficients, so two polynomials are equal exactly
when their term dicts are equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Mapping, Optional, Union

from .core import VARIABLES, CuboidTuple, Permutation3
from .exact_arith import DomainError, format_rational, parse_rational

Monomial = tuple[int, int, int, int, int, int, int]
NVARS = len(VARIABLES)
_ONE: Monomial = (0,) * NVARS


def grlex_key(m: Monomial) -> tuple[int, Monomial]:
    return (sum(m), m)


class MultiPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Union[int, Fraction]]] = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != NVARS or min(mono) < 0:
                raise DomainError(f"bad exponent vector {mono}")
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def constant(cls, c: Union[int, Fraction]) -> "MultiPoly":
        return cls({_ONE: c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        try:
            i = VARIABLES.index(name)
        except ValueError:
            raise DomainError(f"unknown variable {name!r}") from None
        mono = [0] * NVARS
        mono[i] = 1
        return cls({tuple(mono): 1})

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def _promote(cls, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return cls.constant(other)
        return NotImplemented

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def involves(self, name: str) -> bool:
        i = VARIABLES.index(name)
        return any(m[i] for m in self._terms)

    def __eq__(self, other) -> bool:
        other = MultiPoly._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "MultiPoly":
        other = MultiPoly._promote(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = MultiPoly._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        other = MultiPoly._promote(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise DomainError("negative polynomial power")
        result = MultiPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def evaluate(self, values: Iterable[Fraction]) -> Fraction:
        values = tuple(values)
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term *= v**e
            total += term
        return total

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [
                name if e == 1 else f"{name}^{e}" for name, e in zip(VARIABLES, m) if e
            ]
            if not factors:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(format_rational(c) + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [
            {"exps": list(m), "num": str(c.numerator), "den": str(c.denominator)}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list) -> "MultiPoly":
        terms: dict[Monomial, Fraction] = {}
        for entry in data:
            exps = tuple(entry["exps"])
            if len(exps) != NVARS:
                raise DomainError(f"monomial needs {NVARS} exponents, got {len(exps)}")
            c = parse_rational(f"{entry['num']}/{entry['den']}")
            terms[exps] = terms.get(exps, 0) + c
        return cls(terms)


X1, X2, X3, D1, D2, D3, L = (MultiPoly.var(v) for v in VARIABLES)
_XS = (X1, X2, X3)
_DS = (D1, D2, D3)


def _cuboid_polys() -> dict[str, MultiPoly]:
    return {
        "p0": X1**2 + X2**2 + X3**2 - L**2,
        "p1": X2**2 + X3**2 - D1**2,
        "p2": X3**2 + X1**2 - D2**2,
        "p3": X1**2 + X2**2 - D3**2,
    }


# Cofactor patterns (c1, c2, c3) for tp2..tp8, each a function of (x_i, d_i).
FACTOR_COFACTORS = {
    "tp2": lambda x, d: MultiPoly.constant(1),
    "tp3": lambda x, d: d,
    "tp4": lambda x, d: x,
    "tp5": lambda x, d: x * d,
    "tp6": lambda x, d: x**2,
    "tp7": lambda x, d: d**2,
    "tp8": lambda x, d: x**2 * d**2,
}

TEMPLATE_NAMES = ("p0", "p1", "p2", "p3") + tuple(f"tp{k}" for k in range(1, 9))
FACTOR_NAMES = tuple(f"tp{k}" for k in range(1, 9))


def _build_templates() -> dict[str, MultiPoly]:
    out = _cuboid_polys()
    out["tp1"] = out["p0"]
    ps = (out["p1"], out["p2"], out["p3"])
    for name, cof in FACTOR_COFACTORS.items():
        out[name] = sum((cof(x, d) * p for x, d, p in zip(_XS, _DS, ps)), MultiPoly.zero())
    return out


_TEMPLATES = _build_templates()


def template(name: str) -> MultiPoly:
    try:
        return _TEMPLATES[name]
    except KeyError:
        raise DomainError(f"unknown polynomial {name!r}") from None


def apply_sigma(sigma: Permutation3, p: MultiPoly) -> MultiPoly:
    """Substitute x_i -> x_{s(i)}, d_i -> d_{s(i)}, L -> L."""
    out = {}
    for m, c in p.terms.items():
        new = list(m)
        for i in range(3):
            new[sigma(i + 1) - 1] = m[i]
            new[3 + sigma(i + 1) - 1] = m[3 + i]
        out[tuple(new)] = c
    return MultiPoly(out)


def is_multisymmetric(p: MultiPoly) -> bool:
    return all(apply_sigma(s, p) == p for s in Permutation3.all())


def eval_poly(p: MultiPoly, t: CuboidTuple) -> Fraction:
    if t.L is None:
        if p.involves("L"):
            raise DomainError("polynomial involves L but the tuple has none")
        return p.evaluate(t.values() + (Fraction(0),))
    return p.evaluate(t.values())


@dataclass(frozen=True)
class CofactorCertificate:
    """Witness that ``target = c0*p0 + c1*p1 + c2*p2 + c3*p3``."""

    target: MultiPoly
    cofactors: tuple[MultiPoly, MultiPoly, MultiPoly]
    c0: Optional[MultiPoly] = None

    @property
    def includes_p0(self) -> bool:
        return self.c0 is not None

    def combination(self) -> MultiPoly:
        total = MultiPoly.zero()
        if self.c0 is not None:
            total = total + self.c0 * template("p0")
        for c, name in zip(self.cofactors, ("p1", "p2", "p3")):
            total = total + c * template(name)
        return total

    def to_json(self) -> dict:
        cofs = ([self.c0] if self.c0 is not None else []) + list(self.cofactors)
        return {
            "target": self.target.to_json(),
            "cofactors": [c.to_json() for c in cofs],
            "includes_p0": self.includes_p0,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CofactorCertificate":
        includes_p0 = bool(data["includes_p0"])
        cofs = [MultiPoly.from_json(c) for c in data["cofactors"]]
        expected = 4 if includes_p0 else 3
        if len(cofs) != expected:
            raise DomainError(f"certificate needs {expected} cofactors, got {len(cofs)}")
        c0 = cofs.pop(0) if includes_p0 else None
        return cls(MultiPoly.from_json(data["target"]), tuple(cofs), c0)


def verify_certificate(c: CofactorCertificate) -> bool:
    return c.combination() == c.target


def default_certificates() -> dict[str, CofactorCertificate]:
    """The membership witnesses for tp1..tp8 read off their defining sums."""
    zero = MultiPoly.zero()
    certs = {"tp1": CofactorCertificate(template("tp1"), (zero, zero, zero), MultiPoly.constant(1))}
    for name, cof in FACTOR_COFACTORS.items():
        certs[name] = CofactorCertificate(
            template(name), tuple(cof(x, d) for x, d in zip(_XS, _DS))
        )
    return certs


def certificates_to_json(certs: Mapping[str, CofactorCertificate]) -> dict:
    return {name: cert.to_json() for name, cert in certs.items()}


def load_certificates(path=None) -> dict[str, CofactorCertificate]:
    """Read a ``{name: certificate}`` JSON file; the bundled set by default."""
    if path is None:
        text = resources.files("cuboid_factor").joinpath("data/certificates.json").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    raw = json.loads(text)
    return {name: CofactorCertificate.from_json(entry) for name, entry in raw.items()}
