"""A-priori bounds separating nontrivial periodic orbits from zero.

All functions accept intervals, so a single call bounds a quantity over a
whole box of (eps, alpha, omega).
"""

from dataclasses import dataclass

from .certificate import flag
from .errors import GapError, Inconclusive
from .interval import Interval, PI_HALF, SQRT2, iabs, imax, sin, sqrt

MAX_DEPTH = 40
K_SCAN = 64


def _iv(x):
    return x if isinstance(x, Interval) else Interval(x)


@dataclass(frozen=True)
class AprioriData:
    gamma: Interval
    b_star: Interval
    z_minus: Interval
    z_plus: Interval
    b0: Interval


def gamma_bound(eps, omega):
    """Bound on ||(U + eps L) K||, which controls the inverse of the cone operator."""
    eps, omega = _iv(eps), _iv(omega)
    two = Interval(2.0)
    s = two - 2 * sin(omega - PI_HALF)
    s = Interval(max(s.lo, 0.0), s.hi)
    return 0.5 + eps * (Interval(2.0) / 3 + imax(sqrt(s) / 2, Interval(2.0) / 3))


def b_star(eps, alpha, omega):
    """omega/alpha - 1/2 - eps*(2/3 + sqrt(2 + 2|omega - pi/2|)/2)."""
    eps, alpha, omega = _iv(eps), _iv(alpha), _iv(omega)
    dev = iabs(omega - PI_HALF)
    return omega / alpha - 0.5 - eps * (Interval(2.0) / 3 + sqrt(2 + 2 * dev) / 2)


def z_gap(eps, bstar):
    """Roots (z_minus, z_plus) of x^2 - 2 b x + 2 eps^2.

    The small root is computed as 2 eps^2 / z_plus, which avoids the
    cancellation in b - sqrt(b^2 - 2 eps^2).
    """
    eps, bstar = _iv(eps), _iv(bstar)
    if not bstar.lo > (SQRT2 * eps).hi:
        raise GapError(f"b* = {bstar!r} does not exceed sqrt(2)*eps")
    disc = bstar.sqr() - 2 * eps.sqr()
    z_plus = bstar + sqrt(disc)
    z_minus = 2 * eps.sqr() / z_plus
    return z_minus, z_plus


def apriori_data(eps, alpha, omega):
    bs = b_star(eps, alpha, omega)
    zm, zp = z_gap(eps, bs)
    return AprioriData(gamma_bound(eps, omega), bs, zm, zp, 1 / bs)


def z_minus_linear_coeff(eps0, alpha, omega):
    """C0 = z_minus(eps0)/eps0, so that z_minus(eps) <= C0*eps on [0, eps0]."""
    eps0 = _iv(eps0)
    bs = b_star(eps0, alpha, omega)
    if not (SQRT2 * eps0).hi <= bs.lo:
        raise GapError("eps0 <= b*(eps0)/sqrt(2) cannot be certified")
    _, z_plus = z_gap(eps0, bs)
    return 2 * eps0 / z_plus


def g_k(k, omega, alpha):
    """(1 - k x)^2 + 2 k x (1 - sin k omega) with x = omega/alpha."""
    omega, alpha = _iv(omega), _iv(alpha)
    x = omega / alpha
    return (1 - k * x).sqr() + 2 * k * x * (1 - sin(omega * k))


def g_min_lower(omega, alpha, k_scan=K_SCAN):
    """Lower bound on min_k g_k: direct scan up to k_scan, (k x - 1)^2 beyond."""
    omega, alpha = _iv(omega), _iv(alpha)
    x = omega / alpha
    best = min(g_k(k, omega, alpha).lo for k in range(1, k_scan + 1))
    tail = (k_scan + 1) * x - 1
    if tail.lo > 0:
        best = min(best, tail.sqr().lo)
    else:
        best = min(best, 0.0)
    return max(best, 0.0)


def h_k(k, omega):
    """((k^2 - 1)/2) omega + 2 sin omega - 2 k sin(k omega)."""
    omega = _iv(omega)
    return Interval((k * k - 1) / 2) * omega + 2 * sin(omega) - 2 * k * sin(omega * k)


def certify_positive(fn, lo, hi, max_depth=MAX_DEPTH):
    """Bisect [lo, hi] until fn is certified positive on every piece.

    Returns the number of boxes examined; raises Inconclusive with the first
    box that cannot be split further.
    """
    stack = [(Interval(lo, hi), 0)]
    count = 0
    while stack:
        box, depth = stack.pop()
        count += 1
        if fn(box).lo > 0:
            continue
        if depth >= max_depth:
            raise Inconclusive(f"positivity not certified on {box!r}", box=(box.lo, box.hi))
        left, right = box.split()
        stack.append((right, depth + 1))
        stack.append((left, depth + 1))
    return count


def verify_g1_minimizer(omega_lo=1.1, omega_hi=4.0, max_depth=MAX_DEPTH):
    """Certify g_1 < g_k for k >= 2 when omega >= omega_lo and alpha <= 2.

    k = 2, 3, 4 are checked by bisection on [omega_lo, omega_hi]; beyond
    omega_hi the linear term dominates, and for k >= 5 the polynomial floor
    ((k^2 - 1)/2) omega_lo - 2 - 2k is positive and increasing in k.
    """
    boxes = {}
    for k in (2, 3, 4):
        boxes[k] = certify_positive(lambda w, k=k: h_k(k, w), omega_lo, omega_hi, max_depth)
    w_hi = Interval(omega_hi)
    large_omega = all(
        (Interval((k * k - 1) / 2) * w_hi - 2 - 2 * k).lo >= 0 for k in (2, 3, 4))
    w_lo = Interval(omega_lo)
    floor5 = Interval(12.0) * w_lo - 12
    step_positive = (w_lo * 11 / 2 - 2).lo > 0   # increment of the floor from k to k+1 at k=5
    ok = large_omega and floor5.lo > 0 and step_positive
    note = (f"bisection boxes k=2,3,4: {boxes[2]}, {boxes[3]}, {boxes[4]}; "
            f"omega > {omega_hi!r} and k >= 5 by the linear floor")
    return flag("g1_minimizer", ok, "h_k(omega) > 0 for k >= 2, omega >= 1.1",
                "first-mode-minimizes-g", note=note)
