"""Exact integer matrices, Smith normal form and integer linear solving.

Entries are Python ints, so nothing overflows. Matrices with zero rows or
zero columns are ordinary values; ``IntMatrix.zeros(0, 3)`` is the unique
0x3 matrix and multiplies like any other.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Immutable integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable[int]] = ()):
        table = tuple(tuple(int(x) for x in row) for row in data)
        if not table and rows and cols:
            raise ValueError("missing matrix data")
        if len(table) != rows and not (rows and not cols and not table):
            raise ValueError(f"expected {rows} rows, got {len(table)}")
        if not table:
            table = tuple(() for _ in range(rows))
        for row in table:
            if len(row) != cols:
                raise ValueError(f"expected rows of length {cols}, got {len(row)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", table)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # construction helpers

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        cols = len(columns)
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length mismatch")
        return cls(rows, cols, ([columns[j][i] for j in range(cols)] for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, ([0] * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, ([int(i == j) for j in range(n)] for i in range(n)))

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag: Sequence[int]) -> "IntMatrix":
        return cls(rows, cols, ([diag[i] if i == j and i < len(diag) else 0 for j in range(cols)]
                                for i in range(rows)))

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, (self.col(j) for j in range(self.cols)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(rows), len(cols), ([self._data[i][j] for j in cols] for i in rows))

    # arithmetic

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        return IntMatrix(self.rows, other.cols,
                         ([sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._data))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self._data)

    def _zip(self, other: "IntMatrix", op) -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntMatrix(self.rows, self.cols,
                         ([op(a, b) for a, b in zip(r, s)] for r, s in zip(self._data, other._data)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, ([-a for a in r] for r in self._data))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, ([k * a for a in r] for r in self._data))

    @staticmethod
    def hstack(*blocks: "IntMatrix") -> "IntMatrix":
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("hstack: row counts differ")
        return IntMatrix(rows, sum(b.cols for b in blocks),
                         (sum((b._data[i] for b in blocks), ()) for i in range(rows)))

    @staticmethod
    def vstack(*blocks: "IntMatrix") -> "IntMatrix":
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("vstack: column counts differ")
        return IntMatrix(sum(b.rows for b in blocks), cols, (r for b in blocks for r in b._data))

    @staticmethod
    def block_diag(*blocks: "IntMatrix") -> "IntMatrix":
        cols = sum(b.cols for b in blocks)
        out = []
        offset = 0
        for b in blocks:
            for r in b._data:
                out.append([0] * offset + list(r) + [0] * (cols - offset - b.cols))
            offset += b.cols
        return IntMatrix(len(out), cols, out)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    # protocol

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.cols, self._data)))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {self.tolist()})"


def _smallest_nonzero(cells):
    best = None
    for value, pos in cells:
        if value and (best is None or abs(value) < best[0]):
            best = (abs(value), pos)
    return best


@lru_cache(maxsize=4096)
def _snf(a: IntMatrix):
    """Return (U, D, V, V^-1) with U @ a @ V == D."""
    m, n = a.shape
    d = a.tolist()
    u = IntMatrix.identity(m).tolist()
    v = IntMatrix.identity(n).tolist()
    vinv = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def add_row(dst, src, q):
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]
        vinv[src] = [x - q * y for x, y in zip(vinv[src], vinv[dst])]

    for t in range(min(m, n)):
        best = _smallest_nonzero((d[i][j], (i, j)) for i in range(t, m) for j in range(t, n))
        if best is None:
            break
        i, j = best[1]
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = d[t][t]
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
            # remainders left in the pivot column, then the pivot row
            rest = _smallest_nonzero([(d[i][t], ("r", i)) for i in range(t + 1, m)]
                                     + [(d[t][j], ("c", j)) for j in range(t + 1, n)])
            if rest is not None:
                kind, k = rest[1]
                if kind == "r":
                    swap_rows(k, t)
                else:
                    swap_cols(k, t)
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return (IntMatrix(m, m, u), IntMatrix(m, n, d), IntMatrix(n, n, v), IntMatrix(n, n, vinv))


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``U @ a @ V == D`` with U, V unimodular.

    D is diagonal with non-negative entries d1 | d2 | ... (zeros last).
    The pivot is always the entry of smallest absolute value, ties going
    to the lowest row-major index, so the output is deterministic.

    >>> U, D, V = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    >>> D.tolist()
    [[2, 0], [0, 4]]
    """
    u, d, v, _ = _snf(a)
    return u, d, v


def snf_with_inverse(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """As :func:`smith_normal_form`, also returning ``V`` inverse."""
    return _snf(a)


def diagonal_of(d: IntMatrix) -> list[int]:
    return [d[i, i] for i in range(min(d.shape))]


def rank_of(a: IntMatrix) -> int:
    """Rank over Q (number of nonzero invariant factors)."""
    return sum(1 for x in diagonal_of(_snf(a)[1]) if x)


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """An integer x with ``a @ x == b``, or None when none exists.

    The solution is read off the Smith form with all free coordinates set
    to zero, so it is a fixed function of (a, b).
    """
    if len(b) != a.rows:
        raise ValueError("right-hand side has wrong length")
    u, d, v, _ = _snf(a)
    c = u.apply(b)
    diag = diagonal_of(d)
    y = [0] * a.cols
    for i, value in enumerate(c):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if value != 0:
                return None
        else:
            if value % di:
                return None
            y[i] = value // di
    return v.apply(y)


def integer_nullspace(a: IntMatrix) -> IntMatrix:
    """Columns form a lattice basis of ``{x in Z^n : a @ x == 0}``."""
    _, d, v, _ = _snf(a)
    r = sum(1 for x in diagonal_of(d) if x)
    return v.submatrix(range(v.rows), range(r, a.cols))
