import math
import random

import numpy as np
import pytest

import props
from wrightcert.errors import CapacityError
from wrightcert.interval import PI_HALF, CInterval, Interval, SQRT5
from wrightcert.seqspace import (K_MAX, FourierVector, apply_K, apply_Kinv, apply_L,
                                 apply_shift_minus, apply_shift_plus, apply_U, apply_Uhat,
                                 convolve, norm)

E2 = FourierVector.basis(2)


def point(z):
    return CInterval.from_complex(z)


def test_basis_norm():
    assert norm(E2) == Interval(2.0)
    assert norm(FourierVector.zero()) == Interval(0.0)


def test_centre_coefficient_norm():
    c = FourierVector({2: CInterval(2.0, -1.0) * (Interval(0.1) / 5)})
    assert norm(c).overlaps(Interval(0.2) / SQRT5)
    assert abs(norm(c).mid - 0.2 / math.sqrt(5)) < 1e-15


def test_square_of_second_mode():
    sq = convolve(E2, E2)
    assert sq.support() == [4]
    assert sq[4].contains(1.0)


def test_convolve_with_zero():
    assert len(convolve(E2, FourierVector.zero())) == 0


def test_second_times_third():
    p = convolve(E2, FourierVector.basis(3))
    assert p.support() == [1, 5]
    assert p[1].contains(1.0) and p[5].contains(1.0)
    assert norm(p).hi <= 4


def test_capacity_guard():
    big = FourierVector.basis(K_MAX // 2 + 1)
    with pytest.raises(CapacityError):
        convolve(big, big)
    with pytest.raises(CapacityError):
        FourierVector.basis(K_MAX + 1)


def test_phase_at_half_pi():
    assert apply_U(PI_HALF, E2)[2].contains(-1.0)


def test_uhat_on_second_mode():
    assert apply_Uhat(E2)[2].contains(complex(4, -2) / 5)


def test_tridiagonal_operator_on_second_mode():
    out = apply_L(PI_HALF, E2)
    assert out.support() == [1, 3]
    assert out[1].contains(complex(-1, 1))
    assert out[3].contains(complex(-1, -1))


def test_diagonal_operators():
    a = FourierVector({2: point(1 + 1j), 5: point(-2j)})
    assert apply_K(a)[5].contains(-0.4j)
    assert apply_Kinv(a)[2].contains(2 + 2j)
    assert apply_K(apply_Kinv(a))[5].contains(-2j)


def test_shifts_drop_mode_zero():
    a = FourierVector({1: point(1.0), 3: point(2.0)})
    assert apply_shift_plus(a).support() == [2, 4]
    assert apply_shift_minus(a).support() == [2]


def test_symmetric_extension_matches_dense():
    rng = random.Random(5)
    for _ in range(50):
        a = props._rand_vector(rng, max_support=4, max_mode=6)
        b = props._rand_vector(rng, max_support=4, max_mode=6)
        n = 6

        def dense(v):
            full = np.zeros(2 * n + 1, dtype=complex)
            for k, z in v.items():
                val = complex(z.re.mid, z.im.mid)
                full[n + k] = val
                full[n - k] = val.conjugate()
            return full

        ref = np.convolve(dense(a), dense(b))
        got = convolve(a, b)
        for k in range(1, 2 * n + 1):
            z = ref[2 * n + k]
            if abs(z) > 1e-15 or k in got.support():
                assert abs(complex(got[k].re.mid, got[k].im.mid) - z) < 1e-14


def test_banach_algebra():
    assert props.banach_algebra(1000, seed=21) == 0


def test_phase_preserves_norm():
    rng = random.Random(6)
    for _ in range(100):
        a = props._rand_vector(rng)
        w = Interval(rng.uniform(0.5, 3.0))
        lhs, rhs = norm(apply_U(w, a)), norm(a)
        assert lhs.overlaps(rhs)
        assert lhs.width < 1e-13 * rhs.hi


def test_K_halves_norm_above_mode_two():
    rng = random.Random(7)
    for _ in range(100):
        a = props._rand_vector(rng, start=2, max_mode=9)
        assert norm(apply_K(a)).hi <= 0.5 * norm(a).hi
