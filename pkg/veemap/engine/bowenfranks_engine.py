"""
Bowen-Franks Engine - Integer matrices, Smith normal form, BF(A) = Z^n / (I - A) Z^n.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import sympy

logger = logging.getLogger(__name__)


class BowenFranksError(Exception):
    """Exception raised for malformed or non-square matrices."""
    pass


@dataclass(frozen=True)
class IntMatrix:
    """Row-major matrix of arbitrary-precision integers."""
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if rows and len({len(row) for row in rows}) != 1:
            raise BowenFranksError("All rows must have the same length")

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.n_cols != other.n_rows:
            raise BowenFranksError(
                f"Cannot multiply {self.n_rows}x{self.n_cols} by {other.n_rows}x{other.n_cols}"
            )
        columns = list(zip(*other.rows))
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in columns)
            for row in self.rows
        ))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
        ))

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.n_rows, self.n_cols, [x for row in self.rows for x in row])

    def determinant(self) -> int:
        """Fraction-free (Bareiss) determinant."""
        if not self.is_square:
            raise BowenFranksError("Determinant of a non-square matrix")
        if self.n_rows == 0:
            return 1
        return int(self.to_sympy().det(method="bareiss"))


@dataclass(frozen=True)
class SnfResult:
    """u · A · v = d with u, v unimodular and d diagonal with d_i | d_(i+1)."""
    d: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.d.rows[i][i] for i in range(min(self.d.n_rows, self.d.n_cols))]


# Working state is three lists of lists mutated in place, in the manner of the
# usual row/column elimination: row operations hit A and left, column
# operations hit A and right.

def _swap_rows(m: list[list[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: list[list[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: list[list[int]], target: int, source: int, factor: int) -> None:
    m[target] = [a + factor * b for a, b in zip(m[target], m[source])]


def _add_col(m: list[list[int]], target: int, source: int, factor: int) -> None:
    for row in m:
        row[target] += factor * row[source]


def _move_least_to_start(a, left, right, s: int) -> bool:
    """Bring the smallest non-zero entry of the lower-right block to (s, s); False if the block is zero."""
    best = None
    for i in range(s, len(a)):
        for j in range(s, len(a[0])):
            if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                best = (i, j)
    if best is None:
        return False
    if best[0] != s:
        _swap_rows(a, s, best[0])
        _swap_rows(left, s, best[0])
    if best[1] != s:
        _swap_cols(a, s, best[1])
        _swap_cols(right, s, best[1])
    return True


def _reduce_edging(a, left, right, s: int) -> bool:
    """Subtract multiples of the pivot row/column; True iff the edging is now zero."""
    pivot = a[s][s]
    for i in range(s + 1, len(a)):
        q = a[i][s] // pivot
        if q:
            _add_row(a, i, s, -q)
            _add_row(left, i, s, -q)
    for j in range(s + 1, len(a[0])):
        q = a[s][j] // pivot
        if q:
            _add_col(a, j, s, -q)
            _add_col(right, j, s, -q)
    column_clear = all(a[i][s] == 0 for i in range(s + 1, len(a)))
    row_clear = all(a[s][j] == 0 for j in range(s + 1, len(a[0])))
    return column_clear and row_clear


def _non_divisible_row(a, s: int) -> int | None:
    pivot = a[s][s]
    for i in range(s + 1, len(a)):
        for j in range(s + 1, len(a[0])):
            if a[i][j] % pivot:
                return i
    return None


def smith_normal_form(matrix: IntMatrix) -> SnfResult:
    """
    Smith normal form with transforms.

    Pivot rule: smallest absolute value in the remaining block, ties broken by
    row-major position; pivots are made positive.
    """
    a = [list(row) for row in matrix.rows]
    left = [list(row) for row in IntMatrix.identity(matrix.n_rows).rows]
    right = [list(row) for row in IntMatrix.identity(matrix.n_cols).rows]

    for s in range(min(matrix.n_rows, matrix.n_cols)):
        while True:
            if not _move_least_to_start(a, left, right, s):
                break
            if not _reduce_edging(a, left, right, s):
                continue
            if a[s][s] < 0:
                a[s] = [-x for x in a[s]]
                left[s] = [-x for x in left[s]]
            row = _non_divisible_row(a, s)
            if row is None:
                break
            _add_row(a, s, row, 1)
            _add_row(left, s, row, 1)

    result = SnfResult(IntMatrix(tuple(map(tuple, a))), IntMatrix(tuple(map(tuple, left))),
                       IntMatrix(tuple(map(tuple, right))))
    logger.debug("Smith normal form diagonal: %s", result.diagonal)
    return result


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group by invariant factors; 0 stands for a Z factor."""
    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        factors = tuple(int(x) for x in self.invariant_factors)
        if any(x < 0 or x == 1 for x in factors):
            raise BowenFranksError(f"Invariant factors must be 0 or > 1, got {factors}")
        for a, b in zip(factors, factors[1:]):
            if (a == 0 and b != 0) or (a != 0 and b != 0 and b % a):
                raise BowenFranksError(f"Invariant factors {factors} break the divisibility chain")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_diagonal(cls, diagonal: Sequence[int]) -> AbelianGroup:
        """Drop unit entries; zero entries (Z factors) go last."""
        entries = [abs(x) for x in diagonal if abs(x) != 1]
        finite = sorted(x for x in entries if x)
        return cls(tuple(finite + [0] * entries.count(0)))

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def rank(self) -> int:
        return self.invariant_factors.count(0)

    @property
    def order(self) -> int | None:
        """Cardinality, or None for an infinite group."""
        if self.rank:
            return None
        total = 1
        for x in self.invariant_factors:
            total *= x
        return total

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        return " + ".join("Z" if x == 0 else f"Z/{x}" for x in self.invariant_factors)


def bf_group(a: IntMatrix) -> AbelianGroup:
    """
    Bowen-Franks group coker(I - A).

    Raises:
        BowenFranksError: the matrix is not square.
    """
    if not a.is_square:
        raise BowenFranksError(f"Bowen-Franks group needs a square matrix, got {a.n_rows}x{a.n_cols}")
    snf = smith_normal_form(IntMatrix.identity(a.n_rows) - a)
    return AbelianGroup.from_diagonal(snf.diagonal)


@dataclass(frozen=True)
class BowenFranksEntry:
    matrix: IntMatrix
    group: AbelianGroup
    determinant: int

    @property
    def trivial(self) -> bool:
        return self.group.is_trivial

    @property
    def determinant_consistent(self) -> bool:
        """|det(I - A)| equals the group order (0 exactly when the group is infinite)."""
        order = self.group.order
        return abs(self.determinant) == (0 if order is None else order)


@dataclass(frozen=True)
class BowenFranksReport:
    entries: tuple[BowenFranksEntry, ...] = ()

    @property
    def all_trivial(self) -> bool:
        return all(e.trivial for e in self.entries)


def bf_trivial_report(matrices: Sequence[IntMatrix]) -> BowenFranksReport:
    """BF groups of the given matrices, each with an independent determinant cross-check."""
    entries = []
    for a in matrices:
        group = bf_group(a)
        det = (IntMatrix.identity(a.n_rows) - a).determinant()
        entry = BowenFranksEntry(a, group, det)
        if not entry.determinant_consistent:
            logger.warning("Determinant %d disagrees with group %s", det, group)
        entries.append(entry)
    return BowenFranksReport(tuple(entries))
