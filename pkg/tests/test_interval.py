import math
from fractions import Fraction

import mpmath
import pytest

import props
from wrightcert.errors import DomainError
from wrightcert.interval import (CONSTANTS, EPS_STAR, MU, PI, PI_HALF, SQRT2, CInterval, Interval,
                                 cabs, cexp_minus_i_omega, cos, exp, hull, iabs, imax, imin, lit,
                                 pi_rational_bounds, sin, sqrt)

mpmath.mp.prec = 200


def ulps(iv):
    return (iv.hi - iv.lo) / math.ulp(max(abs(iv.lo), abs(iv.hi)))


def test_exact_sum():
    r = Interval(1, 2) + Interval(3, 4)
    assert (r.lo, r.hi) == (4.0, 6.0)


def test_symmetric_product():
    r = Interval(-1, 1) * Interval(-1, 1)
    assert (r.lo, r.hi) == (-1.0, 1.0)


def test_third_is_enclosed_tightly():
    r = Interval(1) / Interval(3)
    assert r.contains(Fraction(1, 3))
    assert ulps(r) <= 2


def test_division_by_zero_interval():
    with pytest.raises(DomainError):
        Interval(1) / Interval(-1, 1)
    with pytest.raises(DomainError):
        Interval(1) / Interval(0)


def test_empty_and_nonfinite_rejected():
    with pytest.raises(DomainError):
        Interval(2, 1)
    with pytest.raises(DomainError):
        Interval(0, math.inf)
    with pytest.raises(DomainError):
        Interval(math.nan)


def test_sqrt_examples():
    r = sqrt(Interval(4, 9))
    assert (r.lo, r.hi) == (2.0, 3.0)
    s2 = sqrt(Interval(2))
    assert mpmath.mpf(s2.lo) < mpmath.sqrt(2) < mpmath.mpf(s2.hi)
    assert ulps(s2) <= 2
    with pytest.raises(DomainError):
        sqrt(Interval(-1e-300, 1))


def test_abs_and_cabs():
    assert iabs(Interval(-3, 2)) == Interval(0, 3)
    assert iabs(Interval(-3, -2)) == Interval(2, 3)
    r = cabs(CInterval(Interval(0), Interval(-1)))
    assert (r.lo, r.hi) == (1.0, 1.0)


def test_sin_at_quarter_turn():
    r = sin(PI_HALF)
    assert r.contains(1.0)
    assert r.hi <= 1 + 1e-15


def test_exp_of_zero():
    assert exp(Interval(0)).contains(1.0)


def test_phase_at_quarter_turn():
    z = cexp_minus_i_omega(PI_HALF)
    assert z.re.contains(0.0)
    assert z.im.contains(-1.0)


def test_reduction_range_enforced():
    with pytest.raises(DomainError):
        sin(Interval(2000.0))
    with pytest.raises(DomainError):
        cos(Interval(-1025.0, 0.0))


def test_wide_sin_hits_extrema():
    r = sin(Interval(0, 4))
    assert r.hi >= 1 and r.lo <= math.sin(4)
    assert cos(Interval(-0.1, 0.1)).hi >= 1


@pytest.mark.parametrize("name,reference", [
    ("pi_half", lambda: mpmath.pi / 2),
    ("pi", lambda: mpmath.pi),
    ("sqrt2", lambda: mpmath.sqrt(2)),
    ("sqrt5", lambda: mpmath.sqrt(5)),
    ("sqrt10", lambda: mpmath.sqrt(10)),
    ("mu", lambda: mpmath.exp(mpmath.mpf(1) / 25) - 1),
    ("eps_star", lambda: (mpmath.exp(mpmath.mpf(1) / 25) - 1) / mpmath.sqrt(2)),
])
def test_constants_strictly_enclose(name, reference):
    iv = getattr(CONSTANTS, name)
    v = reference()
    assert mpmath.mpf(iv.lo) < v < mpmath.mpf(iv.hi)
    assert ulps(iv) <= 4


def test_pi_against_stored_rational_bounds():
    lo, hi = pi_rational_bounds()
    assert hi - lo < Fraction(1, 2 ** 60)
    assert Fraction(PI.lo) < lo and hi < Fraction(PI.hi)


def test_named_constants_agree():
    assert MU.overlaps(EPS_STAR * SQRT2)
    assert (2 * PI_HALF).overlaps(PI)


def test_decimal_literal_is_enclosed():
    for text in ("0.0594", "1.78", "6.830e-3", "0.30226", "0.5"):
        iv = lit(text)
        assert iv.contains(Fraction(text))
        assert ulps(iv) <= 1
    assert lit("0.5").width == 0


def test_hull_max_min():
    a, b = Interval(0, 1), Interval(2, 3)
    assert hull(a, b) == Interval(0, 3)
    assert imax(a, b) == b and imin(a, b) == a
    assert imax(Interval(0, 5), b) == Interval(2, 5)


def test_complex_product_encloses():
    z = CInterval(1.0, 2.0) * CInterval(3.0, -1.0)
    assert z.contains(complex(1, 2) * complex(3, -1))


def test_arithmetic_containment_fuzz():
    assert props.arithmetic_containment(20000, seed=11) == 0


def test_transcendental_containment_fuzz():
    assert props.transcendental_containment(2000, seed=12) == 0


def test_inclusion_monotonicity():
    assert props.inclusion_monotonicity(1000, seed=13) == 0
