"""Pruned exhaustive search for Euler bricks.

Pythagorean pairs up to ``max_edge`` are generated first (Euclid's formula);
a brick is then a pair (x2, x3) plus an x1 that forms a pair with both.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .exact_arith import DomainError, integer_sqrt, is_perfect_square

# With every edge <= 10**6, the largest intermediate is x1^2 + x2^2 + x3^2
# <= 3 * 10**12, far below 2**63.
FAST_PATH_MAX_EDGE = 10**6
INT64_MAX = 2**63 - 1


@dataclass(frozen=True, order=True)
class Brick:
    edges: tuple[int, int, int]
    diagonals: tuple[int, int, int]
    primitive: bool

    @classmethod
    def from_edges(cls, x1: int, x2: int, x3: int) -> "Brick":
        """Canonicalize edges ascending; d_i is the diagonal of the face without x_i."""
        x1, x2, x3 = sorted((x1, x2, x3))
        diags = []
        for a, b in ((x2, x3), (x3, x1), (x1, x2)):
            s = a * a + b * b
            r = integer_sqrt(s)
            if r * r != s:
                raise DomainError(f"({x1}, {x2}, {x3}) is not an Euler brick")
            diags.append(r)
        return cls((x1, x2, x3), tuple(diags), math.gcd(x1, x2, x3) == 1)

    @property
    def space_diagonal_squared(self) -> int:
        return sum(x * x for x in self.edges)

    def scaled(self, k: int) -> "Brick":
        return Brick.from_edges(*(k * x for x in self.edges))

    def to_json(self) -> dict:
        return {"edges": list(self.edges), "diagonals": list(self.diagonals), "primitive": self.primitive}


@dataclass
class SearchReport:
    max_edge: int
    primitive_only: bool
    bricks: list[Brick]
    perfect_found: list[Brick]
    scanned_pairs: int
    wall_time: float = field(default=0.0, compare=False)

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "max_edge": self.max_edge,
            "primitive_only": self.primitive_only,
            "bricks": [b.to_json() for b in self.bricks],
            "perfect_found": [b.to_json() for b in self.perfect_found],
            "scanned_pairs": self.scanned_pairs,
        }
        if include_timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x1", "x2", "x3", "d1", "d2", "d3", "primitive"])
        for b in self.bricks:
            writer.writerow([*b.edges, *b.diagonals, str(b.primitive).lower()])
        return buf.getvalue()


def _check_bound(max_edge: int, bigint: bool) -> None:
    if max_edge < 1:
        raise DomainError("max_edge must be >= 1")
    if max_edge > FAST_PATH_MAX_EDGE and not bigint:
        raise DomainError(
            f"max_edge {max_edge} exceeds the 64-bit safety bound {FAST_PATH_MAX_EDGE}; "
            "pass bigint=True to use unbounded integers"
        )


def pythagorean_pairs(max_edge: int) -> list[tuple[int, int]]:
    """All (a, b) with a < b <= max_edge and a^2 + b^2 a perfect square, sorted."""
    pairs = set()
    # Both legs <= max_edge forces m^2 < 2 * max_edge.
    for m in range(2, math.isqrt(2 * max_edge) + 1):
        for n in range(1, m):
            if (m - n) % 2 == 0 or math.gcd(m, n) != 1:
                continue
            a, b = m * m - n * n, 2 * m * n
            if a > b:
                a, b = b, a
            if b > max_edge:
                continue
            for k in range(1, max_edge // b + 1):
                pairs.add((k * a, k * b))
    return sorted(pairs)


def partner_table(pairs: Iterable[tuple[int, int]]) -> dict[int, frozenset[int]]:
    table: dict[int, set[int]] = {}
    for a, b in pairs:
        table.setdefault(a, set()).add(b)
        table.setdefault(b, set()).add(a)
    return {k: frozenset(v) for k, v in table.items()}


_WORKER_TABLE: Optional[dict[int, frozenset[int]]] = None


def _init_worker(table: dict[int, frozenset[int]]) -> None:
    global _WORKER_TABLE
    _WORKER_TABLE = table


def _scan_pairs(chunk: list[tuple[int, int]], table=None) -> list[tuple[int, int, int]]:
    table = table if table is not None else _WORKER_TABLE
    found = []
    for x2, x3 in chunk:
        common = table[x2] & table[x3]
        for x1 in common:
            if x1 < x2:
                if x1 * x1 + x2 * x2 + x3 * x3 > INT64_MAX:
                    raise OverflowError("64-bit bound violated")
                found.append((x1, x2, x3))
    return found


def _chunks(items: list, n: int) -> list[list]:
    size, extra = divmod(len(items), n)
    out, start = [], 0
    for i in range(n):
        stop = start + size + (1 if i < extra else 0)
        out.append(items[start:stop])
        start = stop
    return out


def search_bricks(
    max_edge: int, primitive_only: bool = False, *, jobs: int = 1, bigint: bool = False
) -> SearchReport:
    _check_bound(max_edge, bigint)
    start = time.perf_counter()
    pairs = pythagorean_pairs(max_edge)
    table = partner_table(pairs)
    jobs = max(1, min(jobs, len(pairs) or 1))
    if jobs > 1:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(table,)) as pool:
            parts = list(pool.map(_scan_pairs, _chunks(pairs, jobs)))
    else:
        parts = [_scan_pairs(pairs, table)]
    bricks = sorted({Brick.from_edges(*e) for part in parts for e in part})
    if primitive_only:
        bricks = [b for b in bricks if b.primitive]
    perfect = [b for b in bricks if is_perfect_square(b.space_diagonal_squared)]
    return SearchReport(
        max_edge=max_edge,
        primitive_only=primitive_only,
        bricks=bricks,
        perfect_found=perfect,
        scanned_pairs=len(pairs),
        wall_time=time.perf_counter() - start,
    )


def naive_search(max_edge: int) -> list[Brick]:
    """Reference O(n^3) triple loop; for cross-checking small boxes only."""
    squares = {k * k for k in range(0, 2 * max_edge + 1)}
    out = []
    for x3 in range(1, max_edge + 1):
        for x2 in range(1, x3 + 1):
            if x2 * x2 + x3 * x3 not in squares:
                continue
            for x1 in range(1, x2 + 1):
                if x1 * x1 + x3 * x3 in squares and x1 * x1 + x2 * x2 in squares:
                    out.append(Brick.from_edges(x1, x2, x3))
    return sorted(out)


@dataclass(frozen=True)
class AbsenceResult:
    max_edge: int
    bricks_checked: int
    witnesses: tuple[Brick, ...]

    def __bool__(self) -> bool:
        return not self.witnesses


def check_perfect_absence(
    max_edge: int, *, report: Optional[SearchReport] = None, jobs: int = 1, bigint: bool = False
) -> AbsenceResult:
    """True-valued iff no brick with largest edge <= max_edge has an integer space diagonal."""
    _check_bound(max_edge, bigint)
    if report is None or report.max_edge != max_edge or report.primitive_only:
        report = search_bricks(max_edge, jobs=jobs, bigint=bigint)
    witnesses = tuple(b for b in report.bricks if is_perfect_square(b.space_diagonal_squared))
    return AbsenceResult(max_edge, len(report.bricks), witnesses)
