"""Exact dense linear algebra over the rationals.

Rank, nullspace, and solving all run through fraction-free (Bareiss)
elimination on integer rows: each row is first scaled by the lcm of its
denominators (which changes neither the row space nor the nullspace),
then eliminated with the two-step Bareiss rule so intermediate entries
stay bounded by minors of the input.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

from .rationals import QQ, QQ0, QQ1


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(QQ(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[QQ1 if i == j else QQ0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[QQ0] * ncols for _ in range(nrows)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        cols = [list(c) for c in cols]
        nrows = len(cols[0]) if cols else 0
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(nrows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def matvec(self, v: Sequence) -> tuple:
        v = [QQ(x) for x in v]
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum((row[j] * v[j] for j in range(self.ncols)), QQ0) for row in self.rows)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        return Matrix(
            [[sum((a * b for a, b in zip(row, col)), QQ0) for col in cols] for row in self.rows]
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, c) -> "Matrix":
        c = QQ(c)
        return Matrix([[x * c for x in row] for row in self.rows])

    def is_skew(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all(
            self.rows[i][j] == -self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i, self.ncols)
        )

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix({[list(map(str, row)) for row in self.rows]})"


def _integer_rows(m: Matrix) -> list[list[int]]:
    out = []
    for row in m.rows:
        denom_lcm = 1
        for x in row:
            d = int(x.denominator)
            denom_lcm = denom_lcm // gcd(denom_lcm, d) * d
        out.append([int(x * denom_lcm) for x in row])
    return out


def _bareiss_echelon(rows: list[list[int]], ncols: int):
    """Fraction-free elimination; returns (pivot list [(row, col)], echelon rows)."""
    rows = [row[:] for row in rows]
    nrows = len(rows)
    pivots: list[tuple[int, int]] = []
    prev = 1
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for r in range(pr, nrows):
            if rows[r][pc]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != pr:
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        piv = rows[pr][pc]
        for r in range(pr + 1, nrows):
            # the update must run even when v == 0 to keep divisions exact
            v = rows[r][pc]
            row_r = rows[r]
            row_p = rows[pr]
            for c in range(ncols):
                row_r[c] = (row_r[c] * piv - row_p[c] * v) // prev
        prev = piv
        pivots.append((pr, pc))
        pr += 1
        if pr == nrows:
            break
    return pivots, rows


def rank(m: Matrix) -> int:
    pivots, _ = _bareiss_echelon(_integer_rows(m), m.ncols)
    return len(pivots)


def rank_and_nullspace(m: Matrix):
    """Exact rank and a basis of the right nullspace.

    rank + len(basis) == ncols; every basis vector v satisfies M v = 0.
    """
    ncols = m.ncols
    pivots, ech = _bareiss_echelon(_integer_rows(m), ncols)
    pivot_cols = [pc for _, pc in pivots]
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        x = [QQ0] * ncols
        x[f] = QQ1
        for r in range(len(pivots) - 1, -1, -1):
            pr, pc = pivots[r]
            s = QQ0
            row = ech[pr]
            for c in range(pc + 1, ncols):
                if row[c] and x[c]:
                    s = s + QQ(row[c]) * x[c]
            x[pc] = -s / QQ(row[pc])
        basis.append(tuple(x))
    return len(pivots), basis


def solve(m: Matrix, b: Sequence):
    """One exact solution of M x = b (free variables at 0), or None."""
    sols = solve_many(m, [list(b)])
    return sols[0] if sols is not None else None


def solve_many(m: Matrix, bs: Sequence[Sequence]):
    """Solve M x = b for several right-hand sides at once; None if any is inconsistent."""
    ncols = m.ncols
    k = len(bs)
    aug = Matrix([list(row) + [QQ(bs[t][i]) for t in range(k)] for i, row in enumerate(m.rows)])
    pivots, ech = _bareiss_echelon(_integer_rows(aug), aug.ncols)
    for pr, pc in pivots:
        if pc >= ncols:
            return None
    sols = []
    for t in range(k):
        x = [QQ0] * ncols
        for r in range(len(pivots) - 1, -1, -1):
            pr, pc = pivots[r]
            row = ech[pr]
            s = QQ(row[ncols + t])
            for c in range(pc + 1, ncols):
                if row[c] and x[c]:
                    s = s - QQ(row[c]) * x[c]
            x[pc] = s / QQ(row[pc])
        sols.append(tuple(x))
    return sols


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ValueError("not square")
    cols = solve_many(m, [[QQ1 if i == j else QQ0 for i in range(m.nrows)] for j in range(m.nrows)])
    if cols is None or rank(m) != m.nrows:
        raise ValueError("matrix is singular")
    return Matrix.from_columns(cols)


def stack_rows(matrices: Sequence[Matrix]) -> Matrix:
    rows = []
    for m in matrices:
        rows.extend(list(row) for row in m.rows)
    return Matrix(rows)
