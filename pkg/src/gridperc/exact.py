"""Exact rational linear algebra for the lower-bound certificates.

Matrices are sequences of equal-length rows holding int or Fraction entries;
nothing is ever rounded.  Determinants and ranks use fraction-free (Bareiss)
elimination: after clearing row denominators, every intermediate value is a
minor of the integer input, so all divisions are exact integer divisions and
intermediate growth is bounded by the minors themselves.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left
from fractions import Fraction


class GeneralPositionError(ValueError):
    """A matrix expected to be in general position produced a zero minor."""


def _as_rows(matrix) -> list[list]:
    rows = [list(r) for r in matrix]
    if not rows:
        raise ValueError("empty matrix")
    ncols = len(rows[0])
    if ncols == 0 or any(len(r) != ncols for r in rows):
        raise ValueError("matrix rows must be non-empty and of equal length")
    return rows


def _clear_denominators(row) -> tuple[list[int], int]:
    """Integer multiple of the row and the positive scale used."""
    scale = 1
    for x in row:
        if isinstance(x, Fraction):
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    return [int(x * scale) for x in row], scale


def _bareiss_det(a: list[list[int]]) -> int:
    # Mutates a.  Standard two-step fraction-free elimination; every division
    # is by the previous pivot and is exact.
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(matrix):
    """Exact determinant of a square int/Fraction matrix.

    Returns an int when every entry is an integer, otherwise a Fraction.
    """
    rows = _as_rows(matrix)
    if len(rows) != len(rows[0]):
        raise ValueError(f"determinant needs a square matrix, got {len(rows)}x{len(rows[0])}")
    cleared = []
    denom = 1
    for row in rows:
        ints, scale = _clear_denominators(row)
        cleared.append(ints)
        denom *= scale
    value = _bareiss_det(cleared)
    if denom == 1:
        return value
    result = Fraction(value, denom)
    return int(result) if result.denominator == 1 else result


def matrix_rank(matrix) -> int:
    """Exact rank via fraction-free elimination with column pivoting.

    Row scaling by denominator lcms leaves the rank unchanged, so the
    elimination itself runs entirely over the integers.
    """
    rows = _as_rows(matrix)
    a = [_clear_denominators(row)[0] for row in rows]
    m, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, m):
            for j in range(col + 1, ncols):
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
        if rank == m:
            break
    return rank


def build_general_position_matrix(n: int, t: int) -> tuple[tuple[int, ...], ...]:
    """n x (t-1) integer matrix: identity rows first, then power rows.

    Rows 1..t-1 form the identity; row i for i >= t is (1, i, i^2, ..., i^(t-2)).
    Every (t-1)-subset of rows is independent: expanding along the identity
    rows reduces any such minor to a generalized Vandermonde minor with
    distinct nodes >= t and distinct exponents, which is strictly positive.
    verify_general_position re-checks the property exhaustively.
    """
    if not 2 <= t <= n:
        raise ValueError(f"need 2 <= t <= n, got t={t}, n={n}")
    rows = [tuple(1 if j == i else 0 for j in range(1, t)) for i in range(1, t)]
    rows.extend(tuple(i**e for e in range(t - 1)) for i in range(t, n + 1))
    return tuple(rows)


def verify_general_position(matrix, t: int) -> bool:
    """Exhaustively check that every (t-1)-subset of rows is independent."""
    rows = _as_rows(matrix)
    if len(rows[0]) != t - 1:
        raise ValueError(f"expected {t - 1} columns, got {len(rows[0])}")
    if len(rows) < t - 1:
        return False
    for subset in itertools.combinations(rows, t - 1):
        if det(subset) == 0:
            return False
    return True


def dependency_coeffs(matrix, row_indices) -> tuple:
    """Nonzero coefficients combining t chosen rows to the zero row.

    ``row_indices`` are 1-based, strictly increasing, and there must be exactly
    one more of them than the matrix has columns.  The coefficient at (1-based)
    position j is (-1)^j times the minor omitting the j-th chosen row: an exact
    left null vector of the t x (t-1) submatrix, integer-valued for integer
    input, with every entry nonzero when the matrix is in general position.
    No normalization is applied, so the output is a fixed representative of
    the (scale-invariant) dependency.
    """
    rows = _as_rows(matrix)
    idx = tuple(int(i) for i in row_indices)
    if list(idx) != sorted(set(idx)):
        raise ValueError("row indices must be strictly increasing")
    if idx and (idx[0] < 1 or idx[-1] > len(rows)):
        raise ValueError(f"row index outside [1, {len(rows)}]")
    t = len(rows[0]) + 1
    if len(idx) != t:
        raise ValueError(f"need exactly {t} row indices, got {len(idx)}")
    sub = [rows[i - 1] for i in idx]
    coeffs = []
    sign = -1
    for j in range(t):
        minor = sub[:j] + sub[j + 1 :]
        c = sign * det(minor)
        if c == 0:
            raise GeneralPositionError(f"zero dependency coefficient for rows {idx}")
        coeffs.append(c)
        sign = -sign
    return tuple(coeffs)


class EliminationBasis:
    """Incrementally maintained row space over the rationals.

    Stored rows are fully reduced: each has pivot entry 1 and zeros in every
    other pivot column, with pivot columns strictly increasing.  insert()
    reduces a vector against the basis and reports whether it enlarged the
    span; inserting a vector already in the span leaves the state unchanged.
    """

    def __init__(self, ncols: int) -> None:
        if ncols < 0:
            raise ValueError(f"negative column count {ncols}")
        self.ncols = ncols
        self._pivot_cols: list[int] = []
        self._rows: list[list[Fraction]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def insert(self, vector) -> bool:
        v = [Fraction(x) for x in vector]
        if len(v) != self.ncols:
            raise ValueError(f"expected {self.ncols} entries, got {len(v)}")
        for col, row in zip(self._pivot_cols, self._rows):
            c = v[col]
            if c:
                for j in range(col, self.ncols):
                    v[j] -= c * row[j]
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            return False
        inv = v[lead]
        new_row = [x / inv for x in v]
        for row in self._rows:
            c = row[lead]
            if c:
                for j in range(lead, self.ncols):
                    row[j] -= c * new_row[j]
        pos = bisect_left(self._pivot_cols, lead)
        self._pivot_cols.insert(pos, lead)
        self._rows.insert(pos, new_row)
        return True

    def contains(self, vector) -> bool:
        """Membership test without mutating the basis."""
        v = [Fraction(x) for x in vector]
        if len(v) != self.ncols:
            raise ValueError(f"expected {self.ncols} entries, got {len(v)}")
        for col, row in zip(self._pivot_cols, self._rows):
            c = v[col]
            if c:
                for j in range(col, self.ncols):
                    v[j] -= c * row[j]
        return all(x == 0 for x in v)
