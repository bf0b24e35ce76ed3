import math

import numpy as np
import pytest

from wrightcert import oracle
from wrightcert.errors import ConvergenceError

ALPHA_SHIFT = (3 * math.pi / 2 - 1) / 5
RBAR = (0.0594, 0.0260, 0.4929)


def centre(eps):
    return (math.pi / 2 + ALPHA_SHIFT * eps ** 2, math.pi / 2 - eps ** 2 / 5)


def test_zero_residual_at_bifurcation():
    st = oracle.TruncatedState(math.pi / 2, math.pi / 2, np.zeros(31))
    assert np.max(np.abs(oracle.eval_F(0.0, st))) < 1e-15


def test_jacobian_invertible_at_bifurcation():
    st = oracle.TruncatedState(math.pi / 2, math.pi / 2, np.zeros(31))
    assert np.linalg.cond(oracle.eval_DF(0.0, st)) < 1e3


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_jacobian_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    n = 12
    st = oracle.TruncatedState(1.5 + rng.random() * 0.2, 1.5 + rng.random() * 0.2,
                               (rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)) * 0.05)
    eps = 0.1
    x = st.to_real()
    J = oracle.eval_DF(eps, st)
    h = 1e-6
    for i in range(len(x)):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        col = (oracle.eval_F(eps, oracle.TruncatedState.from_real(xp))
               - oracle.eval_F(eps, oracle.TruncatedState.from_real(xm))) / (2 * h)
        scale = max(np.max(np.abs(col)), 1.0)
        assert np.max(np.abs(J[:, i] - col)) <= 1e-6 * scale


def test_residual_at_centre_is_second_order():
    for eps in (0.02, 0.05, 0.1):
        st = oracle.approximate_state(eps, 32)
        assert np.max(np.abs(oracle.eval_F(eps, st))) / eps ** 2 < 2


def test_newton_lands_in_tight_radii():
    eps = 0.05
    st = oracle.newton_solve(eps, oracle.approximate_state(eps, 32), 32)
    a, w = centre(eps)
    assert abs(st.alpha - a) <= RBAR[0] * eps ** 2
    assert abs(st.omega - w) <= RBAR[1] * eps ** 2


def test_small_eps_limit():
    st = oracle.newton_solve(1e-4, N=16)
    assert abs(st.alpha - math.pi / 2) < 1e-8
    assert abs(st.omega - math.pi / 2) < 1e-8
    assert st.c_norm() < 1e-3


def test_truncation_stability():
    a = oracle.newton_solve(0.1, N=32)
    b = oracle.newton_solve(0.1, a, N=64)
    assert abs(a.alpha - b.alpha) < 1e-10
    assert abs(a.omega - b.omega) < 1e-10


def test_nonconvergence_raises():
    bad = oracle.TruncatedState(5.0, 0.2, np.ones(15) * 3)
    with pytest.raises(ConvergenceError):
        oracle.newton_solve(0.1, bad, N=16, max_iter=3)


def test_truncation_floor():
    with pytest.raises(ValueError):
        oracle.TruncatedState(1.0, 1.0, np.zeros(5))


def test_continuation_derivative():
    pts = oracle.continue_branch([0.04, 0.05, 0.06], 32)
    p = pts[1]
    expected = 2 * ALPHA_SHIFT * 0.05
    assert abs(p.dalpha_deps - expected) <= 0.2 * expected
    with pytest.raises(ValueError):
        oracle.continue_branch([0.05, 0.04])


def test_defect_and_amplitude():
    eps = 0.05
    st = oracle.newton_solve(eps, N=32)
    y, defect = oracle.reconstruct_solution(st, eps)
    assert defect <= 1e-8
    t = np.linspace(0, 2 * math.pi / st.omega, 2048)
    assert abs(np.max(np.abs(y(t))) - 2 * eps) < 5 * eps ** 2
    y0, d0 = oracle.reconstruct_solution(st, 0.0)
    assert d0 == 0.0 and np.all(y0(t) == 0)


def test_branch_points_inside_tight_balls():
    pts = oracle.continue_branch(oracle.default_grid(0.1, 20), 32)
    for p in pts:
        a, w = centre(p.eps)
        e2 = p.eps ** 2
        cbar = np.zeros(31, dtype=complex)
        cbar[0] = (2 - 1j) * p.eps / 5
        assert abs(p.state.alpha - a) <= RBAR[0] * e2 - 1e-8
        assert abs(p.state.omega - w) <= RBAR[1] * e2 - 1e-8
        assert 2 * np.abs(p.state.c - cbar).sum() <= RBAR[2] * e2 - 1e-8
        assert 2 * np.sum(np.abs(p.state.c) * np.arange(2, 33)) <= 0.3191
        assert p.dalpha_deps > 0


def test_csv_columns():
    pts = oracle.continue_branch([0.05, 0.1], 16)
    text = oracle.branch_csv(pts)
    lines = text.splitlines()
    assert lines[0] == "eps,alpha,omega,dalpha_deps,c_norm,defect"
    assert len(lines) == 3
    assert float(lines[2].split(",")[1]) >= math.pi / 2 + 6.830e-3
