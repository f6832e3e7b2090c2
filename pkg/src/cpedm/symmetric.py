"""Dense symmetric matrices over exact scalars, with exact PSD certification.

The certifier runs symmetric Gaussian elimination (LDL^T) with exact zero
tests.  Because arithmetic is exact, a matrix is positive semidefinite if
and only if elimination in natural order never meets a negative diagonal
entry and every zero diagonal entry has an all-zero row at elimination time
(no row exchanges are ever required); failure of either condition yields an
explicit vector v with v^T A v < 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import exact, surd_sign


class DimensionMismatchError(ValueError):
    """Operands have incompatible dimensions."""


class SymMatrix:
    """Immutable dense symmetric matrix; entries are exact scalars."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ValueError("matrix is not square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"not symmetric at ({i}, {j})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("SymMatrix is immutable")

    @classmethod
    def from_function(cls, n, fn):
        return cls([[fn(i, j) for j in range(n)] for i in range(n)])

    @classmethod
    def identity(cls, n, scale=1):
        return cls.from_function(n, lambda i, j: scale if i == j else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def to_lists(self):
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.n == other.n and all(
            self.rows[i][j] == other.rows[i][j]
            for i in range(self.n)
            for j in range(i, self.n)
        )

    def __hash__(self):
        return hash((self.n, self.rows))

    def __add__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatchError(f"{self.n} vs {other.n}")
        return SymMatrix.from_function(
            self.n, lambda i, j: self.rows[i][j] + other.rows[i][j]
        )

    def __sub__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatchError(f"{self.n} vs {other.n}")
        return SymMatrix.from_function(
            self.n, lambda i, j: self.rows[i][j] - other.rows[i][j]
        )

    def scaled(self, c):
        return SymMatrix.from_function(self.n, lambda i, j: c * self.rows[i][j])

    def shifted(self, c):
        """self + c*I."""
        return SymMatrix.from_function(
            self.n, lambda i, j: self.rows[i][j] + c if i == j else self.rows[i][j]
        )

    def matvec(self, v):
        if len(v) != self.n:
            raise DimensionMismatchError(f"{self.n} vs {len(v)}")
        return tuple(sum(self.rows[i][j] * v[j] for j in range(self.n)) for i in range(self.n))

    def submatrix(self, keep):
        keep = list(keep)
        return SymMatrix([[self.rows[i][j] for j in keep] for i in keep])

    def first_negative_entry(self):
        """Position (i, j) of the first entrywise-negative entry, or None."""
        for i in range(self.n):
            for j in range(i, self.n):
                if surd_sign(self.rows[i][j]) < 0:
                    return (i, j)
        return None

    def __repr__(self):
        return f"SymMatrix({[list(r) for r in self.rows]})"


def mat_equal(a: SymMatrix, b: SymMatrix) -> bool:
    """Exact entrywise equality; dimension mismatch is an error."""
    if a.n != b.n:
        raise DimensionMismatchError(f"{a.n} vs {b.n}")
    return a == b


def matmul(a, b):
    """Plain matrix product of row-lists (or SymMatrix operands); returns row-lists."""
    ra = a.rows if isinstance(a, SymMatrix) else a
    rb = b.rows if isinstance(b, SymMatrix) else b
    if len(rb) == 0 or len(ra[0]) != len(rb):
        raise DimensionMismatchError("inner dimensions differ")
    cols = len(rb[0])
    inner = len(rb)
    return [
        [sum(ra[i][k] * rb[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(len(ra))
    ]


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatchError(f"{len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class PsdCertificate:
    """Outcome of exact LDL^T elimination on a symmetric matrix.

    When ``psd`` holds, ``unit_lower * diag(pivots) * unit_lower^T``
    reconstructs the input exactly and ``rank`` counts the positive pivots.
    Otherwise ``witness`` is an exact vector with witness^T A witness < 0.
    """

    psd: bool
    rank: int
    pivots: tuple | None
    unit_lower: tuple | None
    witness: tuple | None

    def reconstruct(self) -> SymMatrix:
        if not self.psd:
            raise ValueError("no factorization: matrix is not PSD")
        n = len(self.pivots)
        ld = [[self.unit_lower[i][k] * self.pivots[k] for k in range(n)] for i in range(n)]
        lt = [[self.unit_lower[j][i] for j in range(n)] for i in range(n)]
        return SymMatrix(matmul(ld, lt))


def _backsolve_unit_upper(lower, rhs):
    # Solve lower^T v = rhs where lower is unit lower triangular.
    n = len(lower)
    v = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = rhs.get(i, Fraction(0))
        for j in range(i + 1, n):
            lj = lower[j][i]
            if lj != 0 and v[j] != 0:
                s = s - lj * v[j]
        v[i] = s
    return tuple(v)


def ldl_certify(a: SymMatrix) -> PsdCertificate:
    """Exact PSD certificate or indefiniteness witness for a symmetric matrix."""
    n = a.n
    s = [[exact(x) for x in row] for row in a.rows]
    lower = [[Fraction(1) if i == k else Fraction(0) for k in range(n)] for i in range(n)]
    pivots = [Fraction(0)] * n
    rank = 0

    def witness_at(rhs):
        v = _backsolve_unit_upper(lower, rhs)
        value = dot(v, a.matvec(v))
        if surd_sign(value) >= 0:
            raise AssertionError("internal error: witness is not negative")
        return v

    for k in range(n):
        d = s[k][k]
        sd = surd_sign(d)
        if sd < 0:
            v = witness_at({k: Fraction(1)})
            return PsdCertificate(False, rank, None, None, v)
        if sd == 0:
            bad = next((j for j in range(k + 1, n) if s[k][j] != 0), None)
            if bad is not None:
                # 2x2 block [[0, c], [c, t]] is indefinite: x = -(t+1)/(2c)
                # gives quadratic form 2cx + t = -1.
                c, t = s[k][bad], s[bad][bad]
                v = witness_at({k: -(t + 1) / (2 * c), bad: Fraction(1)})
                return PsdCertificate(False, rank, None, None, v)
            continue  # zero pivot with zero row: rank-deficient direction
        pivots[k] = d
        rank += 1
        col = [s[i][k] for i in range(k + 1, n)]
        for off, ci in enumerate(col):
            i = k + 1 + off
            li = ci / d
            lower[i][k] = li
            if li == 0:
                continue
            for j in range(i, n):
                cj = col[j - k - 1]
                if cj != 0:
                    s[i][j] = s[i][j] - li * cj
                    if j != i:
                        s[j][i] = s[i][j]
    return PsdCertificate(True, rank, tuple(pivots), tuple(map(tuple, lower)), None)


def kernel_basis(a: SymMatrix):
    """Exact basis of the null space of a PSD matrix, from its LDL certificate."""
    cert = ldl_certify(a)
    if not cert.psd:
        raise ValueError("kernel_basis requires a PSD matrix")
    basis = []
    for k, p in enumerate(cert.pivots):
        if p == 0:
            basis.append(_backsolve_unit_upper(cert.unit_lower, {k: Fraction(1)}))
    return basis
