"""Radii-polynomial bounds for the Newton-like map around the approximate orbit.

``Y_bound`` majorizes the residual of the map at the approximate solution,
``Z_bound`` majorizes its derivative on a ball, and ``C_rho`` is the smallest
admissible K^{-1}-weighted radius.  ``check_contraction`` turns these into a
list of certified comparisons.
"""

from dataclasses import dataclass
from functools import lru_cache

from .certificate import compare
from .errors import DomainError, InvalidRegime
from .interval import CInterval, Interval, PI, PI_HALF, SQRT2, SQRT5, SQRT10, sqrt
from .operators import _BLOCKS, a0_star_inv_factor, row_norm, spectral_norm_2x2, ub_A0inv_A1
from .seqspace import FourierVector, unit_power_minus_i
from .upper import UBMat, UBVec

_ZERO = Interval(0.0)
ALPHA_SHIFT = (3 * PI_HALF - 1) / 5   # coefficient of eps^2 in the alpha centre
EPS_INJECTIVE = SQRT10 / 4


def _iv(x):
    return x if isinstance(x, Interval) else Interval(x)


@dataclass(frozen=True)
class Deltas:
    da0: Interval
    dw0: Interval
    dc0: Interval
    da: Interval
    dw: Interval
    dc: Interval


def deltas(eps, r=None):
    eps = _iv(eps)
    ra, rw, rc = (r if r is not None else (_ZERO, _ZERO, _ZERO))
    da0 = eps.sqr() * ALPHA_SHIFT
    dw0 = eps.sqr() / 5
    dc0 = 2 * eps / SQRT5
    return Deltas(da0, dw0, dc0, da0 + ra, dw0 + rw, dc0 + rc)


@dataclass(frozen=True)
class BallSpec:
    eps: Interval
    r: UBVec
    rho: Interval

    def radii(self):
        return self.r


def xbar(eps):
    """Centre of the ball: (alpha, omega, c) of the second-order approximation."""
    eps = _iv(eps)
    if eps.lo < 0:
        raise DomainError("eps must be nonnegative")
    alpha = PI_HALF + eps.sqr() * ALPHA_SHIFT
    omega = PI_HALF - eps.sqr() / 5
    c2 = CInterval(2.0, -1.0) * (eps / 5)
    return alpha, omega, FourierVector({2: c2})


def residual_f(eps):
    """Per-mode bounds f1..f4 on |F_k| at the centre, k = 1..4."""
    eps = _iv(eps)
    d = deltas(eps)
    da0, dw0, dc0 = d.da0, d.dw0, d.dc0
    alpha = PI_HALF + da0
    f1 = (PI_HALF * (dw0.sqr() / 2 + (dw0 ** 3) / 6) + da0 * dw0 + da0 * eps * dc0
          + (3 * PI / 4) * dw0 * eps * dc0)
    f2 = alpha * dw0 * (dc0 + eps) + dc0 * (2 * dw0 + da0) / 2 + eps * da0
    f3 = alpha * (SQRT2 + 3 * dw0) * eps * dc0 / 2
    f4 = alpha * (eps ** 3) / 5
    return f1, f2, f3, f4


# -- residual bound -----------------------------------------------------
#
# A complex mode is a real 2-vector, so each block of |A0^{-1}| and
# |A0^{-1} A1 A0^{-1}| is a real 2x2 matrix (mode rows) or a 1x2 row
# (alpha and omega rows).  Entry bounds are the induced 2-norms.

def _cmat(z):
    return ((z.re, -z.im), (z.im, z.re))


def _mat2(a, b):
    return tuple(tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2))
                 for i in range(2))


def _row_times(row, m):
    return (row[0] * m[0][0] + row[1] * m[1][0], row[0] * m[0][1] + row[1] * m[1][1])


def _madd(a, b):
    if a is None:
        return b
    if len(a) == 2 and isinstance(a[0], Interval):
        return (a[0] + b[0], a[1] + b[1])
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _acc(out, key, m):
    out[key] = _madd(out.get(key), m)


_EYE = ((Interval(1.0), _ZERO), (_ZERO, Interval(1.0)))


def _a0inv_blocks(blk):
    """Compose A0^{-1} after a block map {output key: real block}."""
    out = {}
    inv = _BLOCKS.A01_inv
    for key, m in blk.items():
        if key == 1:
            _acc(out, "alpha", _row_times(inv[0], m))
            _acc(out, "omega", _row_times(inv[1], m))
        else:
            _acc(out, key, _mat2(_cmat(a0_star_inv_factor(key)), m))
    return out


def _a1_blocks(blk):
    out = {}
    if "alpha" in blk or "omega" in blk:
        zero_row = (_ZERO, _ZERO)
        aw = (blk.get("alpha", zero_row), blk.get("omega", zero_row))
        _acc(out, 2, _mat2(_BLOCKS.A12, aw))
    for key, m in blk.items():
        if key in ("alpha", "omega"):
            continue
        u = CInterval.from_complex(unit_power_minus_i(key))
        up = (CInterval(0.0, -1.0) + u) * PI_HALF
        _acc(out, key + 1, _mat2(_cmat(up), m))
        if key >= 2:
            dn = (CInterval(0.0, 1.0) + u) * PI_HALF
            _acc(out, key - 1, _mat2(_cmat(dn), m))
    return out


def _block_norm(key, m):
    return row_norm(m) if key in ("alpha", "omega") else spectral_norm_2x2(m)


@lru_cache(maxsize=1)
def residual_matrices():
    """Entry norms of |A0^{-1}| and |A0^{-1} A1 A0^{-1}| on input modes 1..4."""
    first, second = {}, {}
    for j in range(1, 5):
        b = _a0inv_blocks({j: _EYE})
        b2 = _a0inv_blocks(_a1_blocks(b))
        first[j] = {k: _block_norm(k, m) for k, m in b.items()}
        second[j] = {k: _block_norm(k, m) for k, m in b2.items()}
    return first, second


def Y_hat(eps):
    """Per-output bounds: keys 'alpha', 'omega' and modes 2..5."""
    eps = _iv(eps)
    f = residual_f(eps)
    first, second = residual_matrices()
    out = {}
    for j in range(1, 5):
        for k, n in first[j].items():
            out[k] = out.get(k, _ZERO) + n * f[j - 1]
        for k, n in second[j].items():
            out[k] = out.get(k, _ZERO) + eps * n * f[j - 1]
    return out


def Y_bound(eps):
    yh = Y_hat(eps)
    modes = [k for k in yh if k not in ("alpha", "omega")]
    assert max(modes) <= 5, "residual reaches beyond mode 5"
    yc = _ZERO
    for k in sorted(modes):
        yc = yc + yh[k]
    return UBVec(yh["alpha"], yh["omega"], 2 * yc)


# -- derivative bound ---------------------------------------------------

def _m_matrix(eps, r, rho):
    eps, rho = _iv(eps), _iv(rho)
    ra, rw, rc = r
    d = deltas(eps, r)
    da, dw, dc, dc0 = d.da, d.dw, d.dc, d.dc0
    alpha_hi = PI_HALF + da
    inv_pi = 1 / PI
    f1a = dw + eps * dc * (2 + dc) / 2
    f1w = da + PI_HALF * dw + alpha_hi * (eps * dc / 2) * (3 + rho)
    f1c = eps * (da + (3 * PI / 4) * dw + alpha_hi * dc)
    fsa = 2 * inv_pi / SQRT5 * (rc + 2 * dw * (dc0 + eps) + eps * dc * (4 + dc))
    fsw = (5 * inv_pi / 2 * (1 + PI_HALF) * rc
           + 2 / SQRT5 * eps * ((1 + 4 / SQRT5) * dw + 2 * inv_pi * da)
           + 5 * inv_pi / 2 * da * (rc + dc)
           + 2 * inv_pi * eps * alpha_hi * ((dc + rc) / SQRT5 + Interval(5.0) / 4 * (dc + 1.5 * rc)
                                            + rho * dc / SQRT5))
    fsc = ((Interval(5.0) / 2 * (Interval(0.5) + inv_pi) * dw + da / SQRT5)
           + eps * (8 * inv_pi / SQRT5 * da + (2 / SQRT5 + Interval(25.0) / 8) * dw
                    + 4 * alpha_hi * dc * inv_pi / SQRT5))
    mode1_alpha = sqrt(4 * inv_pi.sqr() + 1)
    mode1_omega = 2 * inv_pi
    rows1 = (f1a, f1w, f1c)
    rows_s = (fsa, fsw, fsc)
    return UBMat([[mode1_alpha * x for x in rows1],
                  [mode1_omega * x for x in rows1],
                  list(rows_s)])


def Z_bound(eps, r, rho):
    """Upper bound on DT(x) over the ball B_eps(r, rho)."""
    eps = _iv(eps)
    abar = ub_A0inv_A1()
    m = _m_matrix(eps, r, rho)
    return (abar @ abar).scale(eps.sqr()) + (UBMat.identity() + abar.scale(eps)) @ m


def C_rho(eps, r):
    eps = _iv(eps)
    d = deltas(eps, r)
    da, dw, dc = d.da, d.dw, d.dc
    abar = ub_A0inv_A1()
    row = (Interval(8.0) / 5, 2 * sqrt(16 + 8 * PI + 5 * PI.sqr()) / 5, 5 * PI_HALF)
    col = abar @ UBVec(0.0, 0.0, dc)
    c0 = 2 * eps.sqr() / PI * (row[0] * col[0] + row[1] * col[1] + row[2] * col[2])
    c1 = 5 / (2 * PI) + eps * SQRT10 / PI
    c2 = dw * ((1 + PI_HALF) + eps * PI)
    c3 = (da * (2 + dc) + 2 * dw * (1 + PI_HALF)
          + eps * (PI + 2 * da + 4 * dc * da + PI * dw * dc + (PI_HALF + da) * dc.sqr()))
    denom = 1 - c1 * c2
    if denom.lo <= 0:
        raise InvalidRegime("C1*C2 < 1 cannot be certified")
    return (c0 + c1 * c3) / denom


def radii_polynomials(eps, r, rho):
    """P = Y - (I - Z) r; certified negative when every upper endpoint is < 0."""
    y = Y_bound(eps)
    z = Z_bound(eps, r, rho)
    return y - (r - z @ r)


def kappa(z, r):
    """Contraction rate max_i (Z r)_i / r_i in the r-weighted max norm."""
    if any(x.lo <= 0 for x in r):
        raise DomainError("kappa needs strictly positive radii")
    zr = z @ r
    return Interval(max((zr[i] / r[i]).lo for i in range(3)),
                    max((zr[i] / r[i]).hi for i in range(3)))


@dataclass
class ContractionReport:
    checks: list
    P: UBVec
    C: Interval
    Z: UBMat
    Y: UBVec
    kappa: Interval
    radii: UBVec

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def case_ball(case):
    """BallSpec and scaled flag from one entry of the parameter table."""
    from .interval import lit
    eps = lit(case["eps"])
    r = UBVec(*(lit(x) for x in case["r"]))
    return BallSpec(eps, r, lit(case["rho"])), bool(case.get("scaled", False))


def check_contraction(ball, scaled=False, name="contraction"):
    """Certified contraction on B_eps(r, rho); with ``scaled`` the radii are eps^2 * r."""
    eps, rho = ball.eps, ball.rho
    if any(x.lo <= 0 for x in ball.r):
        raise DomainError("radii must be strictly positive")
    if rho.lo <= 0:
        raise DomainError("rho must be positive")
    r = ball.r.scale(eps.sqr()) if scaled else ball.r
    label = "eps0^2*rbar" if scaled else "r"
    checks = [compare(f"{name}.injective", eps, "<", EPS_INJECTIVE,
                      "eps0 < sqrt(10)/4", "approximate-inverse-injectivity")]
    try:
        c = C_rho(eps, r)
    except InvalidRegime as exc:
        c = None
        from .certificate import flag
        checks.append(flag(f"{name}.C_rho", False, f"C(eps0, {label}) <= rho",
                           "k-inverse-radius", note=str(exc)))
    y = Y_bound(eps)
    z = Z_bound(eps, r, rho)
    p = y - (r - z @ r)
    for comp, val in zip(("alpha", "omega", "c"), p):
        checks.append(compare(f"{name}.P_{comp}", val, "<", 0.0,
                              f"P_{comp}(eps0, {label}, rho) < 0", "radii-polynomials"))
    if c is not None:
        checks.append(compare(f"{name}.C_rho", c, "<=", rho,
                              f"C(eps0, {label}) <= rho", "k-inverse-radius"))
    if scaled:
        checks.append(compare(f"{name}.alpha_above_hopf", ball.r.alpha, "<", ALPHA_SHIFT,
                              "rbar_alpha < (3*pi/2 - 1)/5", "branch-alpha-above-pi/2"))
    k = kappa(z, r)
    return ContractionReport(checks, p, c, z, y, k, r)
