"""Euclidean distance matrices of arithmetic progressions and their spectra.

``build_an(n)`` is the squared-distance matrix of the points 1..n; its three
nonzero eigenvalues and null basis have closed forms, and the minimal shift
making it positive semidefinite is ``min_psd_shift(n) = n(n^2-1)/6``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import QuadSurd, sqrt_exact, trial_factorize
from .symmetric import SymMatrix


def build_an(n: int) -> SymMatrix:
    """Squared-distance matrix of 1..n: entry (i, j) is (j - i)^2."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return SymMatrix.from_function(n, lambda i, j: (j - i) ** 2)


def build_bn(n: int) -> SymMatrix:
    """build_an(n) translated by the minimal PSD-making shift."""
    return build_an(n).shifted(min_psd_shift(n))


def build_edm(points) -> SymMatrix:
    """Squared-distance matrix of any set of distinct rational points."""
    pts = [Fraction(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    if len(pts) < 2:
        raise ValueError("need at least two points")
    return SymMatrix.from_function(len(pts), lambda i, j: (pts[j] - pts[i]) ** 2)


@dataclass(frozen=True)
class Spectrum:
    """The three nonzero eigenvalues of build_an(n) and the nullity n - 3."""

    lambda1: QuadSurd
    lambda2: QuadSurd
    lambda3: Fraction
    nullity: int


def spectrum(n: int) -> Spectrum:
    """Closed-form spectrum of build_an(n) for n >= 3.

    lambda_{1,2} = n(n^2-1)/12 +- sqrt(n^2(n^2-1)(3n^2-7)/240) and
    lambda_3 = -n(n^2-1)/6; for n = 2 the three-eigenvalue shape degenerates
    (one of them vanishes), so n = 2 is rejected.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    mean = Fraction(n * (n * n - 1), 12)
    root = sqrt_exact(Fraction(n * n * (n * n - 1) * (3 * n * n - 7), 240))
    lam3 = -Fraction(n * (n * n - 1), 6)
    return Spectrum(QuadSurd(mean) + root, QuadSurd(mean) - root, lam3, n - 3)


def min_eigvec(n: int):
    """Eigenvector (n-1, n-3, ..., -(n-1)) for the most negative eigenvalue."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return tuple(n + 1 - 2 * i for i in range(1, n + 1))


def null_basis(n: int):
    """Null vectors of build_an(n): third differences (1, -3, 3, -1) at offsets 0..n-4."""
    if n < 4:
        return []
    out = []
    for j in range(n - 3):
        v = [0] * n
        v[j], v[j + 1], v[j + 2], v[j + 3] = 1, -3, 3, -1
        out.append(tuple(v))
    return out


def reversal(n: int) -> SymMatrix:
    """Permutation matrix with ones on the anti-diagonal."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return SymMatrix.from_function(n, lambda i, j: 1 if i + j == n - 1 else 0)


def min_psd_shift(n: int) -> int:
    """Smallest t with build_an(n) + t*I positive semidefinite: n(n-1)(n+1)/6."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return n * (n - 1) * (n + 1) // 6


def diag_dominant_shift(n: int) -> int:
    """Smallest t making build_an(n) + t*I diagonally dominant: sum of j^2, j < n."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return n * (n - 1) * (2 * n - 1) // 6


def jordan_totient2(k: int) -> int:
    """Second Jordan totient J_2(k) = k^2 * prod_{p | k} (1 - 1/p^2)."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    val = k * k
    for p, _ in trial_factorize(k):
        val = val * (p * p - 1) // (p * p)
    return val


def jordan_shift(n: int) -> int:
    """Sum of J_2(k) for k < n; an integer-certificate-friendly shift."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return sum(jordan_totient2(k) for k in range(1, n))
