"""Exact scalar arithmetic: rationals extended by one quadratic radical.

Every scalar in this package is either a plain ``int``/``fractions.Fraction``
or a :class:`QuadSurd` representing ``a + b*sqrt(s)`` with rational ``a, b``
and a fixed square-free radicand ``s``.  For a fixed ``s`` these values form
a field, so +, -, *, / are closed and every comparison (in particular the
sign of a value) is decided exactly by rational arithmetic.  Nothing in this
module rounds.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


def trial_factorize(k: int) -> list[tuple[int, int]]:
    """Prime factorization of k >= 1 as (prime, exponent) pairs, by trial division."""
    if k < 1:
        raise ValueError(f"cannot factorize {k}")
    out = []
    d = 2
    while d * d <= k:
        e = 0
        while k % d == 0:
            e += 1
            k //= d
        if e:
            out.append((d, e))
        d += 1 if d == 2 else 2
    if k > 1:
        out.append((k, 1))
    return out


def squarefree_split(k: int) -> tuple[int, int]:
    """Write k >= 0 as c*c*s with s square-free; returns (c, s).  (0 -> (0, 1))."""
    if k < 0:
        raise ValueError("negative radicand")
    if k == 0:
        return 0, 1
    c, s = 1, 1
    for p, e in trial_factorize(k):
        c *= p ** (e // 2)
        if e % 2:
            s *= p
    return c, s


class MixedRadicandError(ValueError):
    """Arithmetic attempted between surds over different radicands."""


def _as_fraction_parts(x):
    if isinstance(x, int):
        return Fraction(x), Fraction(0), 0
    if isinstance(x, Fraction):
        return x, Fraction(0), 0
    if isinstance(x, QuadSurd):
        return x.rat, x.coef, x.rad
    return None


@total_ordering
class QuadSurd:
    """Exact value ``rat + coef*sqrt(rad)`` with square-free ``rad``.

    ``rad <= 1`` and ``coef == 0`` are canonicalised to the purely rational
    representation (coef = 0, rad = 0), and square factors of the radicand
    are pulled into ``coef``, so equal values compare equal structurally.
    """

    __slots__ = ("rat", "coef", "rad")

    def __init__(self, rat=0, coef=0, rad=0):
        rat = Fraction(rat)
        coef = Fraction(coef)
        if rad < 0:
            raise ValueError("negative radicand")
        if coef != 0 and rad > 1:
            c, s = squarefree_split(rad)
            coef *= c
            rad = s
        if rad <= 1 or coef == 0:
            # sqrt(0) = 0, sqrt(1) = 1: fold into the rational part
            if rad == 1:
                rat += coef
            coef = Fraction(0)
            rad = 0
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "rad", rad)

    def __setattr__(self, name, value):
        raise AttributeError("QuadSurd is immutable")

    # -- structure ---------------------------------------------------------

    def is_rational(self) -> bool:
        return self.coef == 0

    def sign(self) -> int:
        """Exact sign of rat + coef*sqrt(rad)."""
        a, b = self.rat, self.coef
        if b == 0:
            return -1 if a < 0 else (1 if a > 0 else 0)
        if a == 0:
            return 1 if b > 0 else -1
        sa = 1 if a > 0 else -1
        sb = 1 if b > 0 else -1
        if sa == sb:
            return sa
        # opposite signs: |a| vs |b|sqrt(s) decided by a^2 vs b^2 s
        d = a * a - b * b * self.rad
        if d == 0:
            return 0  # unreachable for square-free rad >= 2
        return sa if d > 0 else sb

    def _unify(self, other):
        parts = _as_fraction_parts(other)
        if parts is None:
            return None
        orat, ocoef, orad = parts
        if self.rad and orad and self.rad != orad:
            raise MixedRadicandError(f"radicands differ: {self.rad} vs {orad}")
        return orat, ocoef, (self.rad or orad)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        u = self._unify(other)
        if u is None:
            return NotImplemented
        orat, ocoef, rad = u
        return QuadSurd(self.rat + orat, self.coef + ocoef, rad)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.rat, -self.coef, self.rad)

    def __sub__(self, other):
        u = self._unify(other)
        if u is None:
            return NotImplemented
        orat, ocoef, rad = u
        return QuadSurd(self.rat - orat, self.coef - ocoef, rad)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        u = self._unify(other)
        if u is None:
            return NotImplemented
        orat, ocoef, rad = u
        return QuadSurd(
            self.rat * orat + self.coef * ocoef * rad,
            self.rat * ocoef + self.coef * orat,
            rad,
        )

    __rmul__ = __mul__

    def _inverse(self):
        if self.coef == 0:
            if self.rat == 0:
                raise ZeroDivisionError("division by zero surd")
            return QuadSurd(1 / self.rat)
        norm = self.rat * self.rat - self.coef * self.coef * self.rad
        # norm = 0 would force sqrt(rad) rational; cannot happen for rad >= 2
        return QuadSurd(self.rat / norm, -self.coef / norm, self.rad)

    def __truediv__(self, other):
        u = self._unify(other)
        if u is None:
            return NotImplemented
        orat, ocoef, rad = u
        return self * QuadSurd(orat, ocoef, rad)._inverse()

    def __rtruediv__(self, other):
        if _as_fraction_parts(other) is None:
            return NotImplemented
        return self._inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QuadSurd(1)
        for _ in range(n):
            out = out * self
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        try:
            u = self._unify(other)
        except MixedRadicandError:
            return False
        if u is None:
            return NotImplemented
        orat, ocoef, _ = u
        return self.rat == orat and self.coef == ocoef

    def __lt__(self, other):
        u = self._unify(other)
        if u is None:
            return NotImplemented
        orat, ocoef, rad = u
        return QuadSurd(self.rat - orat, self.coef - ocoef, rad).sign() < 0

    def __hash__(self):
        if self.coef == 0:
            return hash(self.rat)
        return hash((self.rat, self.coef, self.rad))

    def __bool__(self):
        return self.rat != 0 or self.coef != 0

    def __float__(self):
        return float(self.rat) + float(self.coef) * self.rad ** 0.5

    def __repr__(self):
        if self.coef == 0:
            return f"QuadSurd({self.rat})"
        return f"QuadSurd({self.rat}, {self.coef}, rad={self.rad})"

    def __str__(self):
        if self.coef == 0:
            return str(self.rat)
        return f"{self.rat} + {self.coef}*sqrt({self.rad})"


def surd_sign(x) -> int:
    """Exact sign (-1, 0, +1) of an int, Fraction or QuadSurd."""
    if isinstance(x, QuadSurd):
        return x.sign()
    return -1 if x < 0 else (1 if x > 0 else 0)


def exact(x):
    """Coerce to an exactly-dividable scalar (int becomes Fraction)."""
    if isinstance(x, QuadSurd):
        return x
    return Fraction(x)


def sqrt_exact(x):
    """Exact square root of a nonnegative rational value.

    Returns a Fraction when the root is rational, a QuadSurd otherwise.
    """
    x = as_fraction(x)
    if x < 0:
        raise ValueError("square root of a negative value")
    if x == 0:
        return Fraction(0)
    c, s = squarefree_split(x.numerator * x.denominator)
    if s == 1:
        return Fraction(c, x.denominator)
    return QuadSurd(0, Fraction(c, x.denominator), s)


def is_rational(x) -> bool:
    if isinstance(x, QuadSurd):
        return x.coef == 0
    return isinstance(x, (int, Fraction))


def as_fraction(x) -> Fraction:
    """The value as a Fraction; raises if it has an irrational part."""
    if isinstance(x, QuadSurd):
        if x.coef != 0:
            raise ValueError(f"{x} is irrational")
        return x.rat
    return Fraction(x)


def is_integer(x) -> bool:
    return is_rational(x) and as_fraction(x).denominator == 1


def to_float(x) -> float:
    return float(x)


# -- text/JSON encoding ----------------------------------------------------
# Rationals encode as the string "p/q" (lowest terms, q > 0); surds encode
# as {"rat": "p/q", "coef": "p/q", "rad": s}.


def format_scalar(x):
    """Canonical JSON value for a scalar: "p/q" string or a surd object."""
    if is_rational(x):
        f = as_fraction(x)
        return f"{f.numerator}/{f.denominator}"
    return {
        "rat": format_scalar(x.rat),
        "coef": format_scalar(x.coef),
        "rad": x.rad,
    }


def parse_scalar(obj):
    """Parse the encoding produced by :func:`format_scalar`.

    Accepts bare integers ("35" == "35/1") and surd objects with an omitted
    "rat" key (defaulting to zero).
    """
    if isinstance(obj, str):
        return Fraction(obj.strip())
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, dict):
        extra = set(obj) - {"rat", "coef", "rad"}
        if extra:
            raise ValueError(f"unknown scalar keys: {sorted(extra)}")
        rad = obj.get("rad", 0)
        if not isinstance(rad, int) or rad < 0:
            raise ValueError(f"bad radicand: {rad!r}")
        rat = Fraction(str(obj.get("rat", "0")))
        coef = Fraction(str(obj.get("coef", "0")))
        return QuadSurd(rat, coef, rad)
    raise ValueError(f"cannot parse scalar from {obj!r}")
