"""Exact rank/kernel computations over the rationals and prime fields.

This is the single arithmetic backend for every cohomology computation in the
package.  All arithmetic is exact: rational ranks use fraction-free
(Bareiss-style) elimination on arbitrary-precision integers, prime-field ranks
use word-size modular elimination.  Floating point is never used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field selector: characteristic 0 (exact rationals) or GF(p).

    ``p == 0`` means the rationals; otherwise p must be a prime below 2**16.
    """

    p: int = 0

    def __post_init__(self):
        if self.p != 0:
            if not (2 <= self.p < 1 << 16) or not _is_prime(self.p):
                raise ValueError(f"not a prime below 2^16: {self.p}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse a CLI field selector: ``q``, ``f2``, ``f3`` or ``fp:P``."""
        t = text.strip().lower()
        if t in ("q", "qq", "0"):
            return cls(0)
        if t.startswith("fp:"):
            return cls(int(t[3:]))
        if t.startswith("f") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"unknown field selector: {text!r}")

    def __str__(self):
        return "q" if self.p == 0 else f"f{self.p}"


QQ = FieldSpec.rationals()
GF2 = FieldSpec.gf(2)
GF3 = FieldSpec.gf(3)


class Matrix:
    """Dense exact matrix; entries are ints (or Fractions over the rationals)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("matrix data does not match shape")
            self.data = [list(r) for r in data]

    @classmethod
    def from_rows(cls, rows_list) -> "Matrix":
        rows_list = [list(r) for r in rows_list]
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        return cls(rows, cols, rows_list)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def __setitem__(self, key, value):
        i, j = key
        self.data[i][j] = value

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [list(col) for col in zip(*self.data)] if self.rows and self.cols else None)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = Matrix(self.rows, other.cols)
        for i, row in enumerate(self.data):
            orow = out.data[i]
            for k, a in enumerate(row):
                if a:
                    brow = other.data[k]
                    for j, b in enumerate(brow):
                        if b:
                            orow[j] += a * b
        return out


def _integer_rows(data) -> list[list[int]]:
    """Clear denominators per row (rank-preserving) so Bareiss can run on ints."""
    out = []
    for row in data:
        if all(type(x) is int for x in row):
            out.append(list(row))
        else:
            scale = lcm(*(x.denominator if isinstance(x, Fraction) else 1 for x in row)) if row else 1
            out.append([int(x * scale) for x in row])
    return out


def _rank_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free elimination; entries stay integral (Sylvester identity)."""
    M = [row[:] for row in rows]
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    pr = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(pr, nrows):
            if M[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != pr:
            M[pr], M[piv] = M[piv], M[pr]
        prow = M[pr]
        pivval = prow[col]
        for r in range(pr + 1, nrows):
            row = M[r]
            f = row[col]
            if f:
                M[r] = [(pivval * a - f * b) // prev for a, b in zip(row, prow)]
            elif prev != pivval:
                M[r] = [(pivval * a) // prev for a in row]
        prev = pivval
        pr += 1
        if pr == nrows:
            break
    return pr


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    M = [[x % p for x in row] for row in rows]
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    pr = 0
    for col in range(ncols):
        piv = None
        for r in range(pr, nrows):
            if M[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != pr:
            M[pr], M[piv] = M[piv], M[pr]
        prow = M[pr]
        inv = pow(prow[col], -1, p)
        for r in range(pr + 1, nrows):
            f = M[r][col]
            if f:
                f = f * inv % p
                M[r] = [(a - f * b) % p for a, b in zip(M[r], prow)]
        pr += 1
        if pr == nrows:
            break
    return pr


def _entry_mod_p(x, p: int) -> int:
    if isinstance(x, Fraction):
        den = x.denominator % p
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        return x.numerator * pow(den, -1, p) % p
    return x % p


def rank(M: Matrix, f: FieldSpec) -> int:
    """Exact rank of M over the field f."""
    if f.p == 0:
        return _rank_bareiss(_integer_rows(M.data))
    p = f.p
    rows = [
        row if all(type(x) is int for x in row) else [_entry_mod_p(x, p) for x in row]
        for row in M.data
    ]
    return _rank_mod_p(rows, p)


def rank_naive_rationals(M: Matrix) -> int:
    """Rank over the rationals by plain Fraction-based Gaussian elimination.

    Independent of the fraction-free path; kept as a cross-check oracle.
    """
    rows = [[Fraction(x) for x in row] for row in M.data]
    nrows = len(rows)
    ncols = M.cols
    pr = 0
    for col in range(ncols):
        piv = None
        for r in range(pr, nrows):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        prow = rows[pr]
        pivval = prow[col]
        for r in range(pr + 1, nrows):
            f = rows[r][col]
            if f:
                factor = f / pivval
                rows[r] = [a - factor * b for a, b in zip(rows[r], prow)]
        pr += 1
        if pr == nrows:
            break
    return pr


def kernel_dim(M: Matrix, f: FieldSpec) -> int:
    return M.cols - rank(M, f)


def image_dim(M: Matrix, f: FieldSpec) -> int:
    return rank(M, f)
