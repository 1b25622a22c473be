import math
import random
from fractions import Fraction

from erlab.logform import LogLinear


def test_log2_of_powers_of_two_is_rational():
    assert LogLinear.log2(8) == LogLinear(3)
    assert LogLinear.log2(1).is_zero()


def test_log2_factors_into_primes():
    form = LogLinear.log2(18)  # 2 * 3^2
    assert form.rational == 1
    assert form.coeffs == {3: Fraction(2)}


def test_arithmetic_and_equality():
    a = LogLinear.log2(3, Fraction(1, 2))
    b = LogLinear.log2(9, Fraction(1, 4))
    assert a == b
    assert (a - b).is_zero()
    assert a + a == LogLinear.log2(3)
    assert a.scaled(2) == LogLinear.log2(3)


def test_equality_needs_no_tolerance():
    # log2(3) != 19/12 even though they differ by ~2e-3
    assert LogLinear.log2(3) != LogLinear(Fraction(19, 12))


def test_float_and_mpf_agree():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 200)
        w = Fraction(rng.randint(-5, 5), rng.randint(1, 9))
        form = LogLinear.log2(n, w)
        assert math.isclose(float(form), float(w) * math.log2(n), abs_tol=1e-12)
        assert abs(float(form.mpf()) - float(form)) < 1e-12


def test_ordering_handles_near_ties():
    # 2^19 vs 3^12: within 1e-3 per unit after scaling down
    a = LogLinear(Fraction(19, 12000))
    b = LogLinear.log2(3, Fraction(1, 1000))
    assert a < b  # 3^12 = 531441 > 524288 = 2^19
    assert b <= b


def test_symbolic_format():
    form = LogLinear(Fraction(1, 4)) + LogLinear.log2(3, Fraction(1, 2))
    assert form.symbolic() == "1/4 + 1/2·log2(3)"
    assert LogLinear().symbolic() == "0"
    assert LogLinear.log2(3).symbolic() == "log2(3)"
