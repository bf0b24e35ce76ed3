import math
import random

import pytest

from wrightcert.apriori import (apriori_data, b_star, certify_positive, g_k, g_min_lower,
                                gamma_bound, h_k, verify_g1_minimizer, z_gap,
                                z_minus_linear_coeff)
from wrightcert.errors import GapError, Inconclusive
from wrightcert.interval import EPS_STAR, PI_HALF, Interval, lit

WRIGHT_ALPHA = Interval(lit("1.5706").lo, PI_HALF.hi)
WRIGHT_OMEGA = Interval(lit("1.4219").lo, lit("1.6887").hi)


def test_gamma_without_perturbation():
    assert gamma_bound(0.0, Interval(1.3)) == Interval(0.5)


def test_margin_at_bifurcation():
    assert b_star(0.0, PI_HALF, PI_HALF).overlaps(Interval(0.5))


def test_margin_on_wright_box():
    bs = b_star(Interval(0.0, EPS_STAR.hi), WRIGHT_ALPHA, WRIGHT_OMEGA)
    assert bs.lo >= 0.364


def test_gap_at_zero_eps():
    zm, zp = z_gap(0.0, Interval(0.4))
    assert zm == Interval(0.0)
    assert zp.overlaps(Interval(0.8))


def test_gap_bounds_on_boxes():
    bs = b_star(Interval(0.0, EPS_STAR.hi), WRIGHT_ALPHA, WRIGHT_OMEGA)
    assert z_gap(Interval(0.0, EPS_STAR.hi), bs)[1].lo >= 0.72
    alpha = Interval((PI_HALF - lit("0.00553")).lo, (PI_HALF + lit("0.00553")).hi)
    omega = Interval((PI_HALF - lit("0.0924")).lo, (PI_HALF + lit("0.0924")).hi)
    eps = Interval(0.0, lit("0.09").hi)
    assert z_gap(eps, b_star(eps, alpha, omega))[1].lo >= 0.595


def test_gap_condition_enforced():
    with pytest.raises(GapError):
        z_gap(Interval(0.5), Interval(0.6))


def test_root_product():
    rng = random.Random(0)
    for _ in range(200):
        eps = Interval(rng.uniform(0, 0.2))
        bs = Interval(rng.uniform(0.3, 1.0))
        zm, zp = z_gap(eps, bs)
        assert (zm * zp).overlaps(2 * eps.sqr())
        assert zm.hi <= zp.lo


def test_linear_coefficient_on_boxes():
    assert z_minus_linear_coeff(EPS_STAR, WRIGHT_ALPHA, WRIGHT_OMEGA).hi <= 0.0796
    alpha = Interval((PI_HALF - lit("0.00553")).lo, (PI_HALF + lit("0.00553")).hi)
    omega = Interval((PI_HALF - lit("0.0924")).lo, (PI_HALF + lit("0.0924")).hi)
    assert z_minus_linear_coeff(lit("0.09"), alpha, omega).hi <= 0.30226


def test_linear_coefficient_small_eps_limit():
    eps0 = Interval(1e-4)
    c0 = z_minus_linear_coeff(eps0, PI_HALF, PI_HALF)
    bs = b_star(eps0, PI_HALF, PI_HALF)
    assert abs(c0.mid / (eps0 / bs).mid - 1) < 1e-6


def test_linear_coefficient_precondition():
    with pytest.raises(GapError):
        z_minus_linear_coeff(Interval(0.5), PI_HALF, PI_HALF)


def test_small_root_over_eps_increasing():
    prev = 0.0
    for eps in (0.01, 0.02, 0.04, 0.06, 0.08, 0.1):
        e = Interval(eps)
        zm, _ = z_gap(e, b_star(e, WRIGHT_ALPHA, WRIGHT_OMEGA).lo)
        ratio = (zm / e).mid
        assert ratio >= prev
        prev = ratio


def test_apriori_bundle():
    d = apriori_data(Interval(0.01), PI_HALF, PI_HALF)
    assert d.b0.overlaps(1 / d.b_star)
    assert d.z_minus.hi < d.z_plus.lo


def test_first_mode_values():
    assert g_k(1, PI_HALF, PI_HALF).contains(0.0)
    g2 = g_k(2, PI_HALF, PI_HALF)
    assert g2.overlaps(Interval(5.0))
    assert g_min_lower(PI_HALF, PI_HALF) == 0.0


def test_second_auxiliary_function_root():
    assert h_k(2, Interval(1.0714)).hi < 0
    assert h_k(2, Interval(1.0715)).lo > 0
    assert certify_positive(lambda w: h_k(2, w), 1.1, 4.0) > 1


def test_bisection_inconclusive_reports_box():
    with pytest.raises(Inconclusive) as info:
        certify_positive(lambda w: h_k(2, w), 1.0, 1.2, max_depth=30)
    lo, hi = info.value.box
    assert lo <= 1.07146 <= hi or hi - lo < 1e-6


def test_first_mode_minimizes():
    res = verify_g1_minimizer()
    assert res.passed
    assert res.name == "g1_minimizer"


def test_first_mode_minimizes_pointwise():
    rng = random.Random(1)
    for _ in range(300):
        w = rng.uniform(1.1, 4.0)
        a = rng.uniform(0.2, 2.0)
        x = w / a
        g = [(1 - k * x) ** 2 + 2 * k * x * (1 - math.sin(k * w)) for k in range(1, 33)]
        assert all(g[0] < gk for gk in g[1:])
