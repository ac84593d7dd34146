import random
from fractions import Fraction

import mpmath
import pytest

from polyflow.contfrac import (
    Convergents,
    cf_expand,
    check_property_A,
    from_digits,
    make_theorem_slope,
)
from polyflow.exactnum import QuadRat

mpmath.mp.dps = 80


def mp_digits(x: QuadRat, n: int) -> list[int]:
    """Independent digit oracle via high-precision decimals."""
    v = mpmath.mpf(x.p.numerator) / x.p.denominator + (
        mpmath.mpf(x.q.numerator) / x.q.denominator
    ) * mpmath.sqrt(x.d)
    out = []
    for _ in range(n):
        a = int(mpmath.floor(v))
        out.append(a)
        v = 1 / (v - a)
    return out


def test_self_similar_slopes_have_constant_digits():
    for a in (2, 4, 6, 24):
        alpha = make_theorem_slope(a, "even")
        cf = cf_expand(alpha)
        assert cf.digits(50) == [a] * 50
        assert cf.is_periodic and cf.period == 1 and cf.preperiod == 0
        assert cf.digits(20) == mp_digits(alpha, 20)


def test_known_slope_values():
    assert make_theorem_slope(2, "even") == QuadRat(1, 1, 2)
    assert make_theorem_slope(4, ("lcm", 4)) == QuadRat(2, 1, 5)
    with pytest.raises(ValueError):
        make_theorem_slope(3, "even")
    with pytest.raises(ValueError):
        make_theorem_slope(6, ("lcm", 4))


def test_alternating_digit_slope():
    x = make_theorem_slope(2, "even", self_similar=False)  # (2+sqrt6)/2
    cf = cf_expand(x)
    assert cf.digits(9) == [2, 4, 2, 4, 2, 4, 2, 4, 2]
    assert cf.preperiod == 0 and cf.period == 2
    assert cf.digits(15) == mp_digits(x, 15)


def test_rational_terminates_with_marker():
    cf = cf_expand(Fraction(7, 3))
    assert cf.terminated
    assert cf.digits(10) == [2, 3]
    with pytest.raises(IndexError):
        cf.digit(2)


def test_remainders_are_exact_tails():
    alpha = QuadRat(1, 1, 2)
    cf = cf_expand(alpha)
    assert cf.remainder(0) == alpha
    assert cf.remainder(7) == alpha  # period 1
    x = make_theorem_slope(2, "even", self_similar=False)
    cf2 = cf_expand(x)
    r1 = cf2.remainder(1)
    # remainder satisfies alpha = a0 + 1/r1 exactly
    assert QuadRat(2) + r1.inverse() == x
    assert cf2.remainder(3) == r1


def test_golden_ratio_expansion():
    golden = (QuadRat(1) + QuadRat.sqrt(5)) / 2
    cf = cf_expand(golden)
    assert cf.digits(30) == [1] * 30


def test_convergent_recurrence_and_determinant():
    slopes = [
        make_theorem_slope(2, "even"),
        make_theorem_slope(4, "even"),
        make_theorem_slope(6, "even"),
        make_theorem_slope(24, "even"),
        (QuadRat(1) + QuadRat.sqrt(5)) / 2,
    ]
    for alpha in slopes:
        cf = cf_expand(alpha)
        digits = cf.digits(31)
        cv = cf.convergents(31)
        for k in range(2, 31):
            assert cv.p[k] == digits[k] * cv.p[k - 1] + cv.p[k - 2]
            assert cv.q[k] == digits[k] * cv.q[k - 1] + cv.q[k - 2]
        for k in range(1, 31):
            assert cv.determinant(k) == (-1) ** (k + 1)
        # approximation bound |alpha - p_k/q_k| < 1/(q_k q_{k+1}), exactly
        for k in range(30):
            err = alpha - Fraction(cv.p[k], cv.q[k])
            bound = Fraction(1, cv.q[k] * cv.q[k + 1])
            assert (abs(err) - bound).sign() < 0


def test_fractional_part_expansion_matches_stated_seeds():
    # for a number in (0,1): p0=0, q0=1, p1=1, q1=a1
    beta = QuadRat(-1, 1, 2)  # sqrt2 - 1 = [0; 2, 2, ...]
    cv = cf_expand(beta).convergents(10)
    assert (cv.p[0], cv.q[0]) == (0, 1)
    assert (cv.p[1], cv.q[1]) == (1, 2)


def test_from_digits_round_trip():
    assert from_digits([0], [2]) == QuadRat(-1, 1, 2)
    assert from_digits([2], [2]) == QuadRat(1, 1, 2)
    assert from_digits([2, 3]) == Fraction(7, 3)
    rng = random.Random(5)
    for _ in range(30):
        pre = [rng.randint(1, 6) for _ in range(rng.randint(1, 4))]
        per = [rng.randint(1, 6) for _ in range(rng.randint(1, 3))]
        x = from_digits(pre, per)
        cf = cf_expand(x)
        k = len(pre) + 3 * len(per)
        expect = (pre + per * 4)[:k]
        assert cf.digits(k) == expect


def test_property_a_bounded_for_bounded_digit_slopes():
    alpha = QuadRat(1, 1, 2)
    for n in (10, 100):
        rep = check_property_A(alpha, n)
        assert rep.complete
        # empirical C1 stays below the 3(U+1) envelope, U = 3 here
        assert rep.c1 <= 3 * (3 + 1)
        assert all(h is not None for h in rep.first_hit)


def test_property_a_budget_reports_lower_bound():
    alpha = QuadRat(1, 1, 2)
    rep = check_property_A(alpha, 50, budget=3)
    assert not rep.complete
    assert rep.max_first_hit == 3


def test_property_a_rejects_integer_slope():
    with pytest.raises(ValueError):
        check_property_A(QuadRat(3), 10)
