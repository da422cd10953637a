"""Matrices over the rational-function field, with fraction-free kernels.

Determinants and linear solves clear denominators row by row and then run
Bareiss (fraction-free) elimination over the Laurent polynomial ring, so
intermediate entries stay polynomial instead of exploding into nested
rational functions.  Solutions are verified by back-substitution into the
original system.
"""

from __future__ import annotations

from .laurent import LPoly, exact_div
from .ratfunc import RatFunc


class Singular(ArithmeticError):
    """Matrix is singular; carries the pivot column where elimination died."""

    def __init__(self, col: int):
        super().__init__(f"singular matrix: no pivot in column {col}")
        self.col = col


class RFMatrix:
    __slots__ = ("entries",)

    def __init__(self, entries: list[list[RatFunc]]):
        self.entries = entries
        ncols = {len(r) for r in entries}
        if len(ncols) > 1:
            raise ValueError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @staticmethod
    def identity(k: int) -> "RFMatrix":
        return RFMatrix([[RatFunc.const(1 if i == j else 0) for j in range(k)]
                         for i in range(k)])

    @staticmethod
    def from_polys(rows: list[list[LPoly]]) -> "RFMatrix":
        return RFMatrix([[RatFunc.from_poly(p) for p in row] for row in rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RFMatrix):
            return NotImplemented
        if self.nrows != other.nrows or self.ncols != other.ncols:
            return False
        return all(a == b for ra, rb in zip(self.entries, other.entries)
                   for a, b in zip(ra, rb))

    def __hash__(self):
        raise TypeError("RFMatrix is unhashable")

    def __mul__(self, other) -> "RFMatrix":
        if isinstance(other, RatFunc):
            return self.map(lambda e: e * other)
        if not isinstance(other, RFMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = RatFunc(LPoly())
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RFMatrix(out)

    def __add__(self, other) -> "RFMatrix":
        return RFMatrix([[a + b for a, b in zip(ra, rb)]
                         for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other) -> "RFMatrix":
        return RFMatrix([[a - b for a, b in zip(ra, rb)]
                         for ra, rb in zip(self.entries, other.entries)])

    def transpose(self) -> "RFMatrix":
        return RFMatrix([[self.entries[i][j] for i in range(self.nrows)]
                         for j in range(self.ncols)])

    def map(self, fn) -> "RFMatrix":
        return RFMatrix([[fn(e) for e in row] for row in self.entries])

    def is_identity(self) -> bool:
        return all(self.entries[i][j] == (1 if i == j else 0)
                   for i in range(self.nrows) for j in range(self.ncols))

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __repr__(self) -> str:
        return "RFMatrix([\n" + "\n".join(
            "  [" + ", ".join(repr(e) for e in row) + "]"
            for row in self.entries) + "\n])"

    # -- fraction-free kernels -----------------------------------------

    def _cleared_rows(self, extra: "RFMatrix | None" = None):
        """Clear denominators per row; returns (LPoly rows, row multipliers)."""
        rows = []
        mults = []
        for i in range(self.nrows):
            ents = list(self.entries[i]) + (list(extra.entries[i]) if extra else [])
            lcm: dict = {}
            for e in ents:
                for core, m in e.den.items():
                    if lcm.get(core, 0) < m:
                        lcm[core] = m
            mult = RatFunc.const(1)
            for core, m in lcm.items():
                mult = mult.mul_poly(core ** m)
            row = []
            for e in ents:
                p = e.num
                for core, m in lcm.items():
                    p = p * core ** (m - e.den.get(core, 0))
                row.append(p)
            rows.append(row)
            mults.append(mult.num)
        return rows, mults

    def det(self) -> RatFunc:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if self.nrows == 0:
            return RatFunc.const(1)
        rows, mults = self._cleared_rows()
        d = _bareiss_det(rows)
        out = RatFunc.from_poly(d)
        for m in mults:
            out = out / RatFunc.from_poly(m)
        return out

    def solve(self, rhs: "RFMatrix") -> "RFMatrix":
        """Solve self * X = rhs exactly; verifies the result."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("solve needs a square matrix")
        if rhs.nrows != n:
            raise ValueError("dimension mismatch")
        rows, _ = self._cleared_rows(extra=rhs)
        m = rhs.ncols
        sign, rows = _bareiss_forward(rows, n)
        del sign
        sol = [[None] * m for _ in range(n)]
        for j in range(m):
            for i in range(n - 1, -1, -1):
                acc = RatFunc.from_poly(rows[i][n + j])
                for k in range(i + 1, n):
                    acc = acc - RatFunc.from_poly(rows[i][k]) * sol[k][j]
                sol[i][j] = acc / RatFunc.from_poly(rows[i][i])
        x = RFMatrix(sol)
        if not (self * x) == rhs:
            raise ArithmeticError("solve verification failed")
        return x

    def inverse(self) -> "RFMatrix":
        return self.solve(RFMatrix.identity(self.nrows))


def _bareiss_forward(rows: list[list[LPoly]], n: int):
    """Fraction-free elimination to upper-triangular form (first n columns).

    Mutates and returns (sign, rows); raises Singular when a pivot column
    vanishes.
    """
    sign = 1
    prev = LPoly.const(1)
    for r in range(n - 1):
        if rows[r][r].is_zero():
            for i in range(r + 1, n):
                if not rows[i][r].is_zero():
                    rows[r], rows[i] = rows[i], rows[r]
                    sign = -sign
                    break
            else:
                raise Singular(r)
        piv = rows[r][r]
        width = len(rows[r])
        for i in range(r + 1, n):
            fi = rows[i][r]
            for j in range(r + 1, width):
                num = piv * rows[i][j] - fi * rows[r][j]
                rows[i][j] = exact_div(num, prev) if not num.is_zero() else num
            rows[i][r] = LPoly()
        prev = piv
    if rows[n - 1][n - 1].is_zero():
        raise Singular(n - 1)
    return sign, rows


def _bareiss_det(rows: list[list[LPoly]]) -> LPoly:
    n = len(rows)
    try:
        sign, rows = _bareiss_forward([list(r) for r in rows], n)
    except Singular:
        return LPoly()
    d = rows[n - 1][n - 1]
    return d if sign == 1 else -d
