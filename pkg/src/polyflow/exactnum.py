"""Exact arithmetic over Q and real quadratic extensions Q(sqrt(D)).

Slopes, crossing coordinates and street lengths in this package are either
rational or quadratic irrational.  ``QuadRat`` stores a number as
``p + q*sqrt(d)`` with ``p, q`` rational and ``d`` a square-free non-negative
integer, so every comparison, floor and sign query is an integer computation
with no rounding anywhere.

Numbers from different quadratic fields (both with nonzero irrational part)
refuse to combine: that is always a modelling bug upstream, never something
to paper over with floats.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Fraction

_NumberLike = Union[int, Fraction, "QuadRat"]


class MixedFieldError(ValueError):
    """Raised when arithmetic would mix sqrt(D1) and sqrt(D2) with D1 != D2."""


def square_free_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s*s*f`` and ``f`` square-free.

    Trial division; fine for the small radicands this package meets.
    """
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1):
        return 1, n
    s, f, p = 1, 1, 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            s *= p ** (k // 2)
            if k % 2:
                f *= p
        p += 1 if p == 2 else 2
    return s, f * n


@total_ordering
class QuadRat:
    """``p + q*sqrt(d)`` with exact rational ``p, q`` and square-free ``d >= 0``.

    The radicand is normalised on construction (``sqrt(8)`` becomes
    ``2*sqrt(2)``), and ``q == 0`` forces ``d == 0`` so rationals have one
    canonical representation.  Instances are immutable and hashable.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p: _NumberLike = 0, q: _NumberLike = 0, d: int = 0):
        if isinstance(p, QuadRat) or isinstance(q, QuadRat):
            raise TypeError("use QuadRat arithmetic, not nested construction")
        p = Fraction(p)
        q = Fraction(q)
        if d < 0:
            raise ValueError("radicand must be non-negative")
        if q:
            s, f = square_free_split(d)
            if f in (0, 1):
                p, q, d = (p + q * s if f else p), Fraction(0), 0
            else:
                q, d = q * s, f
        else:
            d = 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *a):
        raise AttributeError("QuadRat is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, p: Fraction, q: Fraction, d: int) -> "QuadRat":
        # arithmetic-internal: p, q already Fractions and d already
        # square-free, so skip the normalisation pass
        out = object.__new__(cls)
        object.__setattr__(out, "p", p)
        object.__setattr__(out, "q", q)
        object.__setattr__(out, "d", d if q else 0)
        return out

    @staticmethod
    def sqrt(n: int) -> "QuadRat":
        """Exact sqrt of a non-negative integer."""
        return QuadRat(0, 1, n)

    @staticmethod
    def of(x) -> "QuadRat":
        """Coerce an int, Fraction, QuadRat or string to QuadRat."""
        if isinstance(x, QuadRat):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadRat(x)
        if isinstance(x, str):
            return parse_quadrat(x)
        raise TypeError(f"cannot make a QuadRat out of {type(x).__name__}")

    # -- field helpers -----------------------------------------------------

    def _join(self, other) -> tuple["QuadRat", "QuadRat"]:
        other = QuadRat.of(other)
        if self.d and other.d and self.d != other.d:
            raise MixedFieldError(
                f"cannot combine sqrt({self.d}) with sqrt({other.d})"
            )
        return self, other

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def conjugate(self) -> "QuadRat":
        return QuadRat._raw(self.p, -self.q, self.d)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        try:
            a, b = self._join(other)
        except TypeError:
            return NotImplemented
        return QuadRat._raw(a.p + b.p, a.q + b.q, a.d or b.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadRat._raw(-self.p, -self.q, self.d)

    def __sub__(self, other):
        try:
            a, b = self._join(other)
        except TypeError:
            return NotImplemented
        return QuadRat._raw(a.p - b.p, a.q - b.q, a.d or b.d)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        try:
            a, b = self._join(other)
        except TypeError:
            return NotImplemented
        d = a.d or b.d
        return QuadRat._raw(a.p * b.p + a.q * b.q * d, a.p * b.q + a.q * b.p, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadRat":
        norm = self.p * self.p - self.q * self.q * self.d
        if norm == 0:
            if self.p == 0 and self.q == 0:
                raise ZeroDivisionError("division by zero")
            raise ZeroDivisionError("zero field norm")  # impossible for square-free d
        return QuadRat._raw(self.p / norm, -self.q / norm, self.d)

    def __truediv__(self, other):
        try:
            a, b = self._join(other)
        except TypeError:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return QuadRat.of(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = QuadRat._raw(Fraction(1), Fraction(0), base.d)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order -------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}, decided by integer comparisons."""
        if self.q == 0:
            return (self.p > 0) - (self.p < 0)
        if self.p == 0:
            return 1 if self.q > 0 else -1
        if self.p > 0 and self.q > 0:
            return 1
        if self.p < 0 and self.q < 0:
            return -1
        # opposite signs: compare p^2 against q^2 d; the sign of the larger
        # magnitude term wins
        lhs, rhs = self.p * self.p, self.q * self.q * self.d
        if lhs == rhs:
            return 0
        return (1 if self.p > 0 else -1) if lhs > rhs else (1 if self.q > 0 else -1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if isinstance(other, QuadRat):
            return self.p == other.p and self.q == other.q and self.d == other.d
        return NotImplemented

    def __lt__(self, other):
        try:
            a, b = self._join(other)
        except TypeError:
            return NotImplemented
        return (a - b).sign() < 0

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __bool__(self):
        return bool(self.p or self.q)

    # -- floor / fract -----------------------------------------------------

    def floor(self) -> int:
        """Exact floor.  Integer estimate first, then exact correction."""
        if self.q == 0:
            return math.floor(self.p)
        # self = (a + b*sqrt(t))/c with integers a, b>0-or-<0, c>0, t=b^2*d
        c = math.lcm(self.p.denominator, self.q.denominator)
        a = self.p.numerator * (c // self.p.denominator)
        b = self.q.numerator * (c // self.q.denominator)
        t = b * b * self.d
        s = math.isqrt(t)
        n = (a + (s if b > 0 else -(s + 1))) // c
        # exact correction: want n <= self < n+1; each probe is an integer
        # sign test, and the estimate is off by at most one
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def fract(self) -> "QuadRat":
        return self - self.floor()

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        if self.q == 0:
            return _frac_str(self.p)
        if self.p == 0:
            return f"{_frac_str(self.q)}*sqrt({self.d})"
        q = self.q
        op = "+" if q > 0 else "-"
        return f"{_frac_str(self.p)} {op} {_frac_str(abs(q))}*sqrt({self.d})"

    def __repr__(self) -> str:
        return f"QuadRat('{self}')"


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-]?)\s*
        (?:
            (?P<coef>\d+(?:/\d+)?)\s*\*?\s*sqrt\(\s*(?P<d1>\d+)\s*\)
          | sqrt\(\s*(?P<d2>\d+)\s*\)
          | (?P<num>\d+(?:/\d+)?)
        )\s*""",
    re.VERBOSE,
)


def parse_quadrat(text: str) -> QuadRat:
    """Parse the textual form ``p/q + r/s*sqrt(D)`` (any subset of terms)."""
    pos, total, seen = 0, QuadRat(0), False
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or (seen and m.group("sign") == ""):
            raise ValueError(f"cannot parse quadratic number {text!r} at {pos}")
        sgn = -1 if m.group("sign") == "-" else 1
        if m.group("num") is not None:
            total = total + QuadRat(sgn * Fraction(m.group("num")))
        else:
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            d = int(m.group("d1") or m.group("d2"))
            total = total + QuadRat(0, sgn * coef, d)
        seen, pos = True, m.end()
    if not seen:
        raise ValueError(f"empty quadratic number literal {text!r}")
    return total


# module-level conveniences used all over the package
def qr_sign(x: _NumberLike) -> int:
    return QuadRat.of(x).sign()


def qr_floor(x: _NumberLike) -> int:
    return QuadRat.of(x).floor()


def qr_fract(x: _NumberLike) -> QuadRat:
    return QuadRat.of(x).fract()
