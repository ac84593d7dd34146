"""Continued fractions of exact quadratic numbers.

Expansion works directly on ``QuadRat`` states: digit = floor, next state =
reciprocal of the fractional part.  For a quadratic irrational the state
sequence repeats exactly, which the expander detects by hashing states, so a
``ContinuedFraction`` can serve digits, remainders and convergents to any
index from a finite description.  Rational inputs terminate and carry a
marker instead of a period.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import QuadRat

DEFAULT_DEPTH = 200


class ExpansionDepthError(RuntimeError):
    """No period and no termination within the requested depth."""


@dataclass
class ContinuedFraction:
    """Digits ``[a0; a1, a2, ...]`` of an exact number, finitely described.

    ``terminated`` is set for rationals; otherwise ``preperiod``/``period``
    describe the eventually periodic digit string and any index is served by
    folding into the cycle.  ``remainder(i)`` returns the exact tail value
    ``[a_i; a_{i+1}, ...]``.
    """

    value: QuadRat
    terminated: bool
    preperiod: Optional[int] = None
    period: Optional[int] = None
    _digits: list[int] = field(default_factory=list, repr=False)
    _remainders: list[QuadRat] = field(default_factory=list, repr=False)

    def _fold(self, i: int) -> int:
        if self.terminated:
            if i >= len(self._digits):
                raise IndexError(f"expansion terminates after {len(self._digits)} digits")
            return i
        assert self.preperiod is not None and self.period
        if i < len(self._digits):
            return i
        return self.preperiod + (i - self.preperiod) % self.period

    def digit(self, i: int) -> int:
        return self._digits[self._fold(i)]

    def digits(self, n: int) -> list[int]:
        """First ``n`` digits (all of them, for a rational that ends sooner)."""
        if self.terminated:
            return self._digits[:n]
        return [self.digit(i) for i in range(n)]

    def remainder(self, i: int) -> QuadRat:
        """Exact value of the tail ``[a_i; a_{i+1}, ...]``."""
        return self._remainders[self._fold(i)]

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    def convergents(self, n: int) -> "Convergents":
        return Convergents.from_digits(self.digits(n))


@dataclass
class Convergents:
    """Numerators/denominators ``p_k/q_k`` built by the standard recurrence.

    Seeded with ``p_-1 = 1, q_-1 = 0`` and ``p_0 = a_0, q_0 = 1``; for a
    number in (0,1) (``a_0 = 0``) this reduces to ``p_0=0, q_0=1, p_1=1,
    q_1=a_1``.  With this seeding ``p_k q_{k-1} - q_k p_{k-1} = (-1)^{k+1}``.
    """

    digits: list[int]
    p: list[int]
    q: list[int]

    @staticmethod
    def from_digits(digits: Sequence[int]) -> "Convergents":
        p, q = [], []
        pm2, qm2, pm1, qm1 = 0, 1, 1, 0  # k = -2, -1 seeds
        for a in digits:
            pm2, pm1 = pm1, a * pm1 + pm2
            qm2, qm1 = qm1, a * qm1 + qm2
            p.append(pm1)
            q.append(qm1)
        return Convergents(list(digits), p, q)

    def fraction(self, k: int) -> Fraction:
        return Fraction(self.p[k], self.q[k])

    def determinant(self, k: int) -> int:
        """``p_k q_{k-1} - q_k p_{k-1}`` (defined for k >= 1)."""
        return self.p[k] * self.q[k - 1] - self.q[k] * self.p[k - 1]


def cf_expand(x, depth: int = DEFAULT_DEPTH) -> ContinuedFraction:
    """Expand ``x`` until it terminates (rational) or its state repeats."""
    x = QuadRat.of(x)
    digits: list[int] = []
    remainders: list[QuadRat] = []
    seen: dict[QuadRat, int] = {}
    state = x
    for _ in range(depth):
        if state in seen:
            start = seen[state]
            return ContinuedFraction(
                x,
                terminated=False,
                preperiod=start,
                period=len(digits) - start,
                _digits=digits,
                _remainders=remainders,
            )
        seen[state] = len(digits)
        remainders.append(state)
        a = state.floor()
        digits.append(a)
        frac = state - a
        if frac == 0:
            return ContinuedFraction(x, terminated=True, _digits=digits, _remainders=remainders)
        state = frac.inverse()
    raise ExpansionDepthError(f"no period or termination within {depth} digits")


def from_digits(preperiod: Sequence[int], period: Sequence[int] = ()) -> QuadRat:
    """Exact value of ``[preperiod...; period, period, ...]``.

    With an empty period this is the rational with those digits.  Digits
    after the first must be positive.
    """
    for a in list(preperiod[1:]) + list(period):
        if a < 1:
            raise ValueError("continued fraction digits after a0 must be >= 1")
    if period:
        # tail y satisfies y = (A y + B) / (C y + D) with the period's matrix
        A, B, C, D = 1, 0, 0, 1
        for a in period:
            A, B, C, D = A * a + B, A, C * a + D, C
        disc = (A - D) * (A - D) + 4 * B * C
        y = (QuadRat(A - D) + QuadRat.sqrt(disc)) / (2 * C)
        value = y
        tail = list(preperiod)
    else:
        if not preperiod:
            raise ValueError("empty continued fraction")
        value = QuadRat(preperiod[-1])
        tail = list(preperiod[:-1])
    for a in reversed(tail):
        value = QuadRat(a) + value.inverse()
    return value


def make_theorem_slope(base: int, rule=None, self_similar: bool = True) -> QuadRat:
    """Slope whose digits all satisfy a divisibility rule.

    ``rule`` is ``"even"`` or ``("lcm", L)``; the base digit must satisfy it
    (digit strings produced here use only ``base`` and ``2*base``).  The
    self-similar slope is ``(base + sqrt(base^2+4))/2`` with digit string
    ``[base; base, base, ...]``; the alternative has period ``[base, 2*base]``.
    """
    if base < 1:
        raise ValueError("base digit must be positive")
    if rule == "even":
        if base % 2:
            raise ValueError(f"rule 'even' needs an even base, got {base}")
    elif isinstance(rule, tuple) and len(rule) == 2 and rule[0] == "lcm":
        if base % rule[1]:
            raise ValueError(f"base {base} is not divisible by street lcm {rule[1]}")
    elif rule is not None:
        raise ValueError(f"unknown digit rule {rule!r}")
    if self_similar:
        return (QuadRat(base) + QuadRat.sqrt(base * base + 4)) / 2
    return (QuadRat(base) + QuadRat.sqrt(base * base + 2)) / 2


@dataclass
class PropertyAReport:
    """First-hit statistics of ``{j * alpha}`` against the 1/n grid.

    ``first_hit[t]`` is the least j >= 1 with ``{j alpha}`` in
    ``[t/n, (t+1)/n)``; ``c1`` is ``max_first_hit / n``.  If the scan budget
    ran out first, ``complete`` is False and ``c1`` is the lower bound
    ``budget / n`` (some cell was still empty after ``budget`` steps).
    """

    n: int
    first_hit: list[Optional[int]]
    max_first_hit: int
    complete: bool
    scanned: int

    @property
    def c1(self) -> float:
        return self.max_first_hit / self.n


def check_property_A(alpha, n: int, budget: Optional[int] = None) -> PropertyAReport:
    """Scan ``{j alpha}`` until every grid cell of width 1/n has been hit."""
    alpha = QuadRat.of(alpha)
    beta = alpha.fract()
    if beta == 0:
        raise ValueError("slope must be irrational (or at least non-integer)")
    if budget is None:
        budget = max(1000, 400 * n)
    first_hit: list[Optional[int]] = [None] * n
    remaining = n
    f = QuadRat(0)
    one = QuadRat(1)
    for j in range(1, budget + 1):
        f = f + beta
        if (f - one).sign() >= 0:
            f = f - 1
        t = (f * n).floor()
        if first_hit[t] is None:
            first_hit[t] = j
            remaining -= 1
            if remaining == 0:
                return PropertyAReport(n, first_hit, j, True, j)
    return PropertyAReport(n, first_hit, budget, False, budget)
