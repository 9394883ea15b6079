"""Dense exact linear algebra over any field of the scalar tower.

Matrices are lists of rows over a domain object that knows its zero, one,
and zero-test.  Everything here is sized for desk-scale inputs (dimensions
in the tens), so plain Gaussian elimination with exact arithmetic is used
throughout.  Elimination is deterministic: columns are processed left to
right and the first usable pivot row is taken, so repeated runs produce
identical bases.  A seeded random mode exists solely to exercise
choice-independence properties.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence

from .errors import NonSquareMatrix, SingularAssembly
from .scalars import FLOAT_ZERO_TOL, LaurentPoly, RatFunc


@dataclass(frozen=True)
class Domain:
    """Coefficient domain: enough structure to run elimination."""

    name: str
    zero: object
    one: object
    from_int: Callable
    is_zero: Callable

    def __repr__(self):
        return f"Domain({self.name})"


RATIONAL = Domain("rational", Fraction(0), Fraction(1),
                  lambda n: Fraction(n), lambda x: x == 0)
RATFUNC = Domain("ratfunc", RatFunc.zero(), RatFunc.one(),
                 lambda n: RatFunc.const(n), lambda x: x.is_zero())
COMPLEX = Domain("complex", 0j, 1 + 0j,
                 lambda n: complex(n), lambda x: abs(x) <= FLOAT_ZERO_TOL)
LAURENT = Domain("laurent", LaurentPoly.zero(), LaurentPoly.const(1),
                 lambda n: LaurentPoly.const(n), lambda x: x.is_zero())

DOMAINS = {d.name: d for d in (RATIONAL, RATFUNC, COMPLEX, LAURENT)}


class Matrix:
    """Dense matrix over a :class:`Domain`."""

    __slots__ = ("rows", "cols", "data", "domain")

    def __init__(self, data: Sequence[Sequence], domain: Domain,
                 rows: int | None = None, cols: int | None = None):
        data = [list(r) for r in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("matrix shape mismatch")
        self.rows, self.cols, self.data, self.domain = rows, cols, data, domain

    # -- constructors --------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, domain: Domain) -> "Matrix":
        return cls([[domain.zero] * cols for _ in range(rows)], domain, rows, cols)

    @classmethod
    def identity(cls, n: int, domain: Domain) -> "Matrix":
        m = cls.zeros(n, n, domain)
        for i in range(n):
            m.data[i][i] = domain.one
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int,
                     domain: Domain) -> "Matrix":
        m = cls.zeros(nrows, len(columns), domain)
        for j, col in enumerate(columns):
            for i in range(nrows):
                m.data[i][j] = col[i]
        return m

    # -- basics ---------------------------------------------------------------

    def copy(self) -> "Matrix":
        return Matrix([row[:] for row in self.data], self.domain,
                      self.rows, self.cols)

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> List[list]:
        return [self.column(j) for j in range(self.cols)]

    def map(self, f: Callable, domain: Domain | None = None) -> "Matrix":
        return Matrix([[f(x) for x in row] for row in self.data],
                      domain or self.domain, self.rows, self.cols)

    def transpose(self) -> "Matrix":
        return Matrix([[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], self.domain,
                      self.cols, self.rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return Matrix([self.data[i] + other.data[i] for i in range(self.rows)],
                      self.domain, self.rows, self.cols + other.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        d = self.domain
        out = Matrix.zeros(self.rows, other.cols, d)
        for i in range(self.rows):
            row = self.data[i]
            for k in range(self.cols):
                a = row[k]
                if d.is_zero(a):
                    continue
                orow = other.data[k]
                out_row = out.data[i]
                for j in range(other.cols):
                    out_row[j] = out_row[j] + a * orow[j]
        return out

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        return Matrix([[self.data[i][j] + other.data[i][j]
                        for j in range(self.cols)] for i in range(self.rows)],
                      self.domain, self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: x * c)

    def is_zero(self) -> bool:
        z = self.domain.is_zero
        return all(z(x) for row in self.data for x in row)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix)
                and (self.rows, self.cols) == (other.rows, other.cols)
                and self.data == other.data)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.domain.name})"


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _pivot_choice(column_entries, used, domain, rng):
    """Index of the pivot row among unused rows, or None.

    Deterministic mode takes the first usable row; over the floating field
    the entry of largest magnitude wins for stability.
    """
    candidates = [i for i in range(len(column_entries))
                  if i not in used and not domain.is_zero(column_entries[i])]
    if not candidates:
        return None
    if rng is not None:
        return rng.choice(candidates)
    if domain is COMPLEX:
        return max(candidates, key=lambda i: abs(column_entries[i]))
    return candidates[0]


def row_reduce(M: Matrix, rng: random.Random | None = None):
    """Gauss-Jordan elimination.

    Returns (R, pivots) where R is the reduced matrix and pivots is a list
    of (row, col) pairs in processing order.
    """
    R = M.copy()
    d = R.domain
    col_order = list(range(R.cols))
    if rng is not None:
        rng.shuffle(col_order)
    used_rows: set = set()
    pivots = []
    for j in col_order:
        col = [R.data[i][j] for i in range(R.rows)]
        p = _pivot_choice(col, used_rows, d, rng)
        if p is None:
            continue
        used_rows.add(p)
        pivots.append((p, j))
        inv = d.one / R.data[p][j]
        R.data[p] = [x * inv for x in R.data[p]]
        for i in range(R.rows):
            if i == p or d.is_zero(R.data[i][j]):
                continue
            f = R.data[i][j]
            R.data[i] = [a - f * b for a, b in zip(R.data[i], R.data[p])]
    return R, pivots


def kernel_image_bases(M: Matrix, rng: random.Random | None = None):
    """Exact kernel basis, image lift, and rank of M.

    Returns (K, L, rank):
      K    cols x k matrix whose columns span ker M exactly,
      L    cols x rank matrix whose columns map under M to a basis of im M
           (a selection of standard basis vectors in deterministic mode).
    """
    R, pivots = row_reduce(M, rng)
    d = M.domain
    rank = len(pivots)
    pivot_cols = sorted(j for _, j in pivots)
    pivot_row_of = {j: i for i, j in pivots}
    free_cols = [j for j in range(M.cols) if j not in pivot_row_of]

    kernel_columns = []
    for f in free_cols:
        v = [d.zero] * M.cols
        v[f] = d.one
        for j in pivot_cols:
            v[j] = -R.data[pivot_row_of[j]][f]
        kernel_columns.append(v)
    K = Matrix.from_columns(kernel_columns, M.cols, d)

    lift_columns = []
    for j in pivot_cols:
        v = [d.zero] * M.cols
        v[j] = d.one
        lift_columns.append(v)
    L = Matrix.from_columns(lift_columns, M.cols, d)
    return K, L, rank


def rank(M: Matrix) -> int:
    return len(row_reduce(M)[1])


def det(M: Matrix):
    """Exact determinant via fraction-producing Gaussian elimination."""
    if M.rows != M.cols:
        raise NonSquareMatrix(f"determinant of {M.rows}x{M.cols} matrix")
    n = M.rows
    d = M.domain
    if n == 0:
        return d.one
    A = [row[:] for row in M.data]
    result = d.one
    sign_flips = 0
    for j in range(n):
        col = [A[i][j] for i in range(n)]
        p = None
        candidates = [i for i in range(j, n) if not d.is_zero(col[i])]
        if not candidates:
            return d.zero
        if d is COMPLEX:
            p = max(candidates, key=lambda i: abs(col[i]))
        else:
            p = candidates[0]
        if p != j:
            A[j], A[p] = A[p], A[j]
            sign_flips ^= 1
        pivot = A[j][j]
        result = result * pivot
        inv = d.one / pivot
        for i in range(j + 1, n):
            if d.is_zero(A[i][j]):
                continue
            f = A[i][j] * inv
            A[i] = [a - f * b for a, b in zip(A[i], A[j])]
    if sign_flips:
        result = result * d.from_int(-1)
    return result


def det_exact(M: Matrix):
    """Alias with the contract name used by consumers of this module."""
    return det(M)


def solve(A: Matrix, b: Sequence):
    """Solve A x = b for square invertible A; raises SingularAssembly."""
    if A.rows != A.cols:
        raise SingularAssembly("solve needs a square matrix")
    n = A.rows
    d = A.domain
    aug = Matrix([A.data[i] + [b[i]] for i in range(n)], d, n, n + 1)
    R, pivots = row_reduce(aug)
    if len(pivots) != n or any(j == n for _, j in pivots):
        raise SingularAssembly("singular system")
    x = [d.zero] * n
    for i, j in pivots:
        x[j] = R.data[i][n]
    return x


def extend_to_basis(base: Matrix, candidates: Matrix,
                    rng: random.Random | None = None):
    """Indices of candidate columns that extend base's columns to a larger
    independent family, chosen greedily (leftmost first when rng is None)."""
    d = base.domain
    chosen: List[int] = []
    current = base
    order = list(range(candidates.cols))
    if rng is not None:
        rng.shuffle(order)
    r = rank(current) if current.cols else 0
    for j in order:
        trial = current.hstack(Matrix.from_columns([candidates.column(j)],
                                                   candidates.rows, d))
        if rank(trial) > r:
            chosen.append(j)
            current = trial
            r += 1
    return sorted(chosen) if rng is None else chosen
