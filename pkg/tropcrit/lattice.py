"""Exact integer and rational linear algebra."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from .errors import DimensionMismatch, RankDeficient

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, arbitrary precision entries."""

    rows: int
    cols: int
    entries: tuple = ()

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("Ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def column(self, j: int) -> tuple:
        return tuple(self[i, j] for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def submatrix_columns(self, columns: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([[self[i, j] for j in columns] for i in range(self.rows)], len(columns))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return IntMatrix.from_rows(
            [
                [sum(self[i, k] * other[k, j] for k in range(self.cols)) for j in range(other.cols)]
                for i in range(self.rows)
            ],
            other.cols,
        )

    def is_zero(self) -> bool:
        return not any(self.entries)

    def rank(self) -> int:
        H, _ = hnf(self)
        return sum(1 for i in range(H.rows) if any(H.row(i)))

    def __str__(self) -> str:
        return "[" + ", ".join(str(r) for r in self.to_rows()) + "]"


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """
    Row Hermite normal form.

    Returns (H, U) with U unimodular and U @ M == H. Pivots are positive,
    entries above a pivot are reduced into [0, pivot), zero rows come last.
    """
    rows = M.to_rows()
    n = M.rows
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    p = 0
    for j in range(M.cols):
        if p == n:
            break
        for i in range(p + 1, n):
            if rows[i][j] == 0:
                continue
            a, b = rows[p][j], rows[i][j]
            x, y, g = xgcd(a, b)
            ag, bg = a // g, b // g
            rows[p], rows[i] = (
                [x * s + y * t for s, t in zip(rows[p], rows[i])],
                [-bg * s + ag * t for s, t in zip(rows[p], rows[i])],
            )
            U[p], U[i] = (
                [x * s + y * t for s, t in zip(U[p], U[i])],
                [-bg * s + ag * t for s, t in zip(U[p], U[i])],
            )
        pivot = rows[p][j]
        if pivot == 0:
            continue
        if pivot < 0:
            rows[p] = [-s for s in rows[p]]
            U[p] = [-s for s in U[p]]
            pivot = -pivot
        for i in range(p):
            q = rows[i][j] // pivot
            if q:
                rows[i] = [s - q * t for s, t in zip(rows[i], rows[p])]
                U[i] = [s - q * t for s, t in zip(U[i], U[p])]
        p += 1
    return IntMatrix.from_rows(rows, M.cols), IntMatrix.from_rows(U, n)


def det(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise DimensionMismatch("det of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.to_rows()
    sign, prev = 1, 1
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


def smith_invariants(M: IntMatrix) -> list[int]:
    """Nonzero elementary divisors of M (Smith normal form diagonal)."""
    if M.rows == 0 or M.cols == 0 or M.is_zero():
        return []
    factors = invariant_factors(Matrix(M.to_rows()), domain=ZZ)
    return [abs(int(f)) for f in factors if int(f) != 0]


def is_saturated(B: IntMatrix) -> bool:
    """True iff the rows of B are independent and span a primitive sublattice."""
    divisors = smith_invariants(B)
    return len(divisors) == B.rows and all(d == 1 for d in divisors)


def annihilator_basis(K: IntMatrix) -> IntMatrix:
    """
    Basis of the saturated lattice {a in Z^n : a^T K = 0}.

    The rows of the transform U with U @ K in Hermite form below the rank of
    K span the full integer left kernel, which is saturated since U is
    unimodular. The basis is returned in Hermite form, so every row starts
    with a positive entry.
    """
    n, r = K.rows, K.cols
    if r == 0:
        return IntMatrix.identity(n)
    H, U = hnf(K)
    rank = sum(1 for i in range(n) if any(H.row(i)))
    if rank < r:
        raise RankDeficient(f"K has rank {rank} < {r} columns")
    kernel = IntMatrix.from_rows([U.row(i) for i in range(rank, n)], n)
    if kernel.rows == 0:
        return kernel
    basis, _ = hnf(kernel)
    logger.debug("Annihilator of %s is %s", K, basis)
    return basis


# Rational helpers for the polyhedral code

def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not a:
        return [], pivots
    ncols = len(a[0])
    p = 0
    for j in range(ncols):
        pivot_row = next((i for i in range(p, len(a)) if a[i][j] != 0), None)
        if pivot_row is None:
            continue
        a[p], a[pivot_row] = a[pivot_row], a[p]
        inv = 1 / a[p][j]
        a[p] = [x * inv for x in a[p]]
        for i in range(len(a)):
            if i != p and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[p])]
        pivots.append(j)
        p += 1
        if p == len(a):
            break
    return a[:p], pivots


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[0])


def solve_rational(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system A x = b over Q, or None when singular."""
    n = len(A)
    if n == 0:
        return []
    augmented = [list(A[i]) + [b[i]] for i in range(n)]
    reduced, pivots = rref(augmented)
    if len(pivots) != n or pivots[-1] >= n:
        return None
    return [reduced[i][n] for i in range(n)]
