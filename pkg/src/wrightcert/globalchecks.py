"""Inequality batteries behind the global statements.

Each ``check_*`` function returns a list of ``CheckResult`` objects (the
prerequisite contraction checks are included, prefixed by case name), so a
certificate is just their concatenation.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import params as _params
from .apriori import b_star, verify_g1_minimizer, z_gap, z_minus_linear_coeff
from .bounds import ALPHA_SHIFT, UBVec, Z_bound, case_ball, check_contraction, deltas, kappa, xbar
from .certificate import Assumption, compare, flag
from .errors import Inconclusive, InvalidRegime
from .interval import (CInterval, EPS_STAR, Interval, MU, PI, PI_HALF, SQRT2, SQRT3, SQRT5,
                       SQRT10, lit, sin, sqrt)
from .operators import TripleVector, apply_Adagger, ub_A0inv_A1
from .seqspace import FourierVector, norm
from .upper import UBMat

SCAN_DEPTH = 48
NEUMANN_TERMS = 64

ASSUMPTIONS = (
    Assumption("global-bounds",
               "A slowly oscillating periodic solution with alpha <= pi/2 has alpha in "
               "[1.5706, pi/2] and sup-norm at most e^0.04 - 1.",
               "published a-priori bounds for Wright's equation"),
    Assumption("zero-spacing",
               "Lower bounds on the positive and negative excursion times of a slowly "
               "oscillating solution hold for alpha > 1/e.",
               "classical zero-spacing estimates for slowly oscillating solutions"),
    Assumption("no-fold-mid",
               "The Hopf branch has no folds or secondary bifurcations for "
               "alpha in [pi/2 + 7.3165e-4, 2.3].",
               "published validated continuation of the Hopf branch"),
    Assumption("unique-sops-mid",
               "There is a unique slowly oscillating periodic solution for alpha in [1.94, 6.00].",
               "published Floquet-based uniqueness result"),
    Assumption("unique-sops-large",
               "There is a unique slowly oscillating periodic solution for alpha >= 5.67.",
               "published large-alpha uniqueness result"),
)


def _table(table):
    return table if table is not None else _params.canonical()


def _span(lo, hi):
    return Interval(lo.lo, hi.hi)


def fourier_bound_consts(omega):
    """(sqrt(pi/(6 omega)), pi/(omega sqrt 3)): l1 norm against ||y'||_2 and ||y'||_inf."""
    omega = omega if isinstance(omega, Interval) else Interval(omega)
    return sqrt(PI / (6 * omega)), PI / (omega * SQRT3)


# -- frequency window ---------------------------------------------------

def band_margin(alpha, omega):
    """omega*sqrt((omega-alpha)^2 + 2 alpha omega (1 - sin omega)) - (2pi/sqrt3) alpha^2 mu (1+mu).

    A positive value excludes (alpha, omega) as the parameters of a small orbit.
    """
    one_minus_sin = 1 - sin(omega)
    one_minus_sin = Interval(max(one_minus_sin.lo, 0.0), max(one_minus_sin.hi, 0.0))
    inner = (omega - alpha).sqr() + 2 * alpha * omega * one_minus_sin
    lhs = omega * sqrt(inner)
    rhs = 2 * PI / SQRT3 * alpha.sqr() * MU * (1 + MU)
    return lhs - rhs


def scan_band(alpha_box, omega_box, max_depth=SCAN_DEPTH):
    """Certify band_margin > 0 on the box by bisection; returns the box count."""
    queue = deque([(alpha_box, omega_box, 0)])
    alpha_w0 = alpha_box.width or 1.0
    omega_w0 = omega_box.width or 1.0
    count = 0
    while queue:
        a, w, depth = queue.popleft()
        count += 1
        if band_margin(a, w).lo > 0:
            continue
        if depth >= max_depth:
            raise Inconclusive("frequency band not excluded",
                               box={"alpha": (a.lo, a.hi), "omega": (w.lo, w.hi)})
        if w.width / omega_w0 >= a.width / alpha_w0:
            for half in w.split():
                queue.append((a, half, depth + 1))
        else:
            for half in a.split():
                queue.append((half, w, depth + 1))
    return count


def check_omega_window(table=None, max_depth=SCAN_DEPTH):
    t = _table(table)["wright"]
    alpha = _span(lit(t["alpha_lo"]), PI_HALF)
    scan_lo, scan_hi = (lit(x) for x in t["omega_scan"])
    win_lo, win_hi = (lit(x) for x in t["omega_window"])
    per_lo, per_hi = (lit(x) for x in t["period_window"])
    coarse_lo, coarse_hi = (lit(x) for x in t["omega_coarse"])
    checks = []

    # period L = t_plus + t_minus; log(1 + mu) = 0.04 exactly
    ratio = lit("0.04") / MU
    period_lo = 2 + (1 + ratio) / alpha
    period_hi = 5 + 1 / alpha
    checks.append(compare("window.period_lower", period_lo, ">=", per_lo,
                          "2 + (1 + log(1+mu)/mu)/alpha >= 3.26", "period-window"))
    checks.append(compare("window.period_upper", period_hi, "<=", per_hi,
                          "5 + 1/alpha <= 5.64", "period-window"))
    checks.append(compare("window.t_plus_below_3", 2 + 1 / alpha, "<", 3.0,
                          "2 + 1/alpha < 3", "period-window"))
    checks.append(compare("window.omega_coarse_lower", 2 * PI / per_hi, ">=", coarse_lo,
                          "2*pi/5.64 >= 1.11", "period-window"))
    checks.append(compare("window.omega_coarse_upper", 2 * PI / per_lo, "<=", coarse_hi,
                          "2*pi/3.26 <= 1.93", "period-window"))
    # (1 - nu) e^{alpha nu} - 1 >= nu (alpha (1 - nu) - 1) > 0 for nu in (0, mu]
    nu = Interval(0.0, MU.hi)
    checks.append(compare("window.t_minus_sign", alpha * (1 - nu) - 1, ">", 0.0,
                          "alpha*(1 - nu) - 1 > 0 for nu in [0, mu], so (1-nu)e^(alpha nu) > 1",
                          "period-window"))
    checks.append(compare("window.scan_covers_lower", scan_lo, "<=", coarse_lo,
                          "1.1 <= 1.11", "frequency-band"))
    checks.append(compare("window.scan_covers_upper", coarse_hi, "<=", scan_hi,
                          "1.93 <= 2.0", "frequency-band"))
    counts = []
    for w_box in (_span(scan_lo, win_lo), _span(win_hi, scan_hi)):
        counts.append(scan_band(alpha, w_box, max_depth))
    checks.append(flag("window.band_excluded", True,
                       "band inequality violated on [1.5706, pi/2] x ([1.1, 1.4219] u [1.6887, 2.0])",
                       "frequency-band", note=f"boxes: {counts[0]} + {counts[1]}"))
    dev = lit(t["omega_dev"])
    checks.append(compare("window.lower_edge", PI_HALF - win_lo, "<=", dev,
                          "pi/2 - 1.4219 <= 0.1489", "frequency-band"))
    checks.append(compare("window.upper_edge", win_hi - PI_HALF, "<=", dev,
                          "1.6887 - pi/2 <= 0.1489", "frequency-band"))
    return checks


# -- Wright pipeline ----------------------------------------------------

def _contraction_checks(table, case):
    ball, scaled = case_ball(table["cases"][case])
    return check_contraction(ball, scaled, case)


def wright_constants(table=None):
    """Box bounds on b*, z+, C0 and the l1 bound on the unscaled coefficients."""
    t = _table(table)["wright"]
    alpha = _span(lit(t["alpha_lo"]), PI_HALF)
    omega = _span(*(lit(x) for x in t["omega_window"]))
    eps = Interval(0.0, EPS_STAR.hi)
    bs = b_star(eps, alpha, omega)
    _, zp = z_gap(eps, bs)
    c0 = z_minus_linear_coeff(EPS_STAR, alpha, omega)
    _, sup_coeff = fourier_bound_consts(omega)
    a_bound = sup_coeff * alpha * MU * (1 + MU)
    return {"alpha": alpha, "omega": omega, "b_star": bs, "z_plus": zp, "C0": c0,
            "a_bound": a_bound}


def check_wright(table=None, include_scan=True):
    table = _table(table)
    t = table["wright"]
    checks = []
    rep_a = _contraction_checks(table, "bigbox-a")
    rep_t = _contraction_checks(table, "tight")
    checks += rep_a.checks + rep_t.checks
    if include_scan:
        checks += check_omega_window(table)
    checks.append(verify_g1_minimizer())

    k = wright_constants(table)
    alpha, omega = k["alpha"], k["omega"]
    checks.append(compare("wright.eps_star", EPS_STAR, "<=", lit("0.02886"),
                          "mu/sqrt(2) <= 0.02886", "amplitude-bounds"))
    checks.append(compare("wright.alpha_below_2omega", alpha, "<", 2 * omega,
                          "alpha < 2 omega", "amplitude-bounds"))
    checks.append(compare("wright.coeff_bound_admissible", k["a_bound"], "<=",
                          (2 * omega - alpha) / alpha,
                          "(pi/(omega sqrt3)) alpha mu (1+mu) <= (2 omega - alpha)/alpha",
                          "amplitude-bounds"))
    c_tilde = lit(t["c_tilde_max"])
    checks.append(compare("wright.c_tilde", k["a_bound"], "<=", c_tilde,
                          "||c~|| <= (pi/(omega sqrt3)) alpha mu (1+mu) <= 0.09",
                          "amplitude-bounds"))
    checks.append(compare("wright.b_star", k["b_star"], ">=", lit(t["b_star_min"]),
                          "b* >= 0.364", "amplitude-bounds"))
    checks.append(compare("wright.z_plus", k["z_plus"], ">=", lit(t["z_plus_min"]),
                          "z+ >= 0.72", "amplitude-bounds"))
    checks.append(compare("wright.dichotomy", c_tilde, "<", k["z_plus"],
                          "0.09 < z+, so ||c~|| <= z-", "amplitude-bounds"))
    c0_max = lit(t["C0_max"])
    checks.append(compare("wright.C0", k["C0"], "<=", c0_max,
                          "z-(eps)/eps <= 0.0796", "amplitude-bounds"))
    kcoef = lit(t["kinv_coeff"])
    checks.append(compare("wright.kinv_coeff", (2 + c0_max.sqr()) / k["b_star"], "<=", kcoef,
                          "(2 + 0.0796^2)/b* <= 5.52", "amplitude-bounds"))
    kmax = lit(t["kinv_max"])
    checks.append(compare("wright.kinv", kcoef * EPS_STAR, "<=", kmax,
                          "5.52 eps* <= 0.16", "amplitude-bounds"))

    # the a-priori region sits inside S
    checks.append(compare("wright.S_alpha", PI_HALF - lit(t["alpha_lo"]), "<=",
                          lit(t["box_alpha_dev"]), "pi/2 - 1.5706 <= 0.0002", "set-inclusion"))
    checks.append(compare("wright.S_omega", lit(t["omega_dev"]), "<=", lit(t["box_omega_dev"]),
                          "0.1489 <= 0.15", "set-inclusion"))
    checks.append(compare("wright.S_c", c0_max, "<=", lit(t["box_c_max"]),
                          "0.0796 <= 0.08", "set-inclusion"))

    # S sits inside the large ball for every 0 < eps <= eps*
    case = table["cases"]["bigbox-a"]
    ra, rw, rc = (lit(x) for x in case["r"])
    rho = lit(case["rho"])
    d = deltas(EPS_STAR)
    checks.append(compare("wright.incl_alpha", lit(t["box_alpha_dev"]) + d.da0, "<=", ra,
                          "r_alpha = 0.13 >= 0.0002 + |alpha_bar(eps*) - pi/2|", "set-inclusion"))
    checks.append(compare("wright.incl_omega", lit(t["box_omega_dev"]) + d.dw0, "<=", rw,
                          "r_omega = 0.17 >= 0.15 + |omega_bar(eps*) - pi/2|", "set-inclusion"))
    checks.append(compare("wright.incl_c", lit(t["box_c_max"]) + d.dc0, "<=", rc,
                          "r_c = 0.17 >= 0.08 + ||c_bar(eps*)||", "set-inclusion"))
    checks.append(compare("wright.incl_rho", kmax, "<=", rho, "rho = 1.78 >= 0.16",
                          "set-inclusion"))
    checks += _nesting_checks(table, "bigbox-a", EPS_STAR, "wright")
    return checks


def _nesting_checks(table, big, eps_max, prefix):
    """The tight ball at eps <= eps_max lies inside the large ball."""
    tight = table["cases"]["tight"]
    eps0 = lit(tight["eps"])
    rbar = [lit(x) for x in tight["r"]]
    big_r = [lit(x) for x in table["cases"][big]["r"]]
    out = [compare(f"{prefix}.nest_eps", eps_max, "<=", eps0,
                   "eps range <= eps0 of the tight ball", "nested-balls")]
    for name, rb, r in zip(("alpha", "omega", "c"), rbar, big_r):
        out.append(compare(f"{prefix}.nest_{name}", eps0.sqr() * rb, "<=", r,
                           f"eps0^2 rbar_{name} <= r_{name}", "nested-balls"))
    out.append(compare(f"{prefix}.nest_rho", lit(tight["rho"]), "<=",
                       lit(table["cases"][big]["rho"]), "rho_tight <= rho", "nested-balls"))
    return out


# -- no-fold ------------------------------------------------------------

def gamma_eps(eps):
    """Approximation of dF/deps at the centre, accurate to second order."""
    eps = eps if isinstance(eps, Interval) else Interval(eps)
    e1 = CInterval(-1.0, 3.0) * (PI_HALF * eps / 5)
    e2 = CInterval(0.0, -1.0) * PI_HALF
    e3 = CInterval(-3.0, -1.0) * (PI_HALF * eps / 5)
    return TripleVector(modes=FourierVector({1: e1, 2: e2, 3: e3}))


@dataclass
class ImplicitData:
    Gamma_eps: TripleVector
    Q0: UBVec
    Q: UBVec
    Zeps: UBMat
    M_eps: Interval
    Mp_eps: Interval
    fhat1: Interval
    fhatc: Interval
    kappa: Interval


def implicit_fhat(eps, r):
    eps = eps if isinstance(eps, Interval) else Interval(eps)
    d = deltas(eps, r)
    rc = r[2]
    alpha_hi = PI_HALF + d.da
    fh1 = (d.dc0 * (SQRT2 * d.da + 3 * d.dw * alpha_hi) / 2
           + rc * alpha_hi * (1 + d.dc0 + rc / 2))
    fhc = 2 / (PI * SQRT5) * (2 * (d.da + PI_HALF * d.dw)
                              + d.dc0 * (SQRT2 * d.da + 3 * d.dw * alpha_hi)
                              + alpha_hi * (4 * rc + d.dc.sqr()))
    return fh1, fhc


def neumann_apply(z, q, weights, terms=NEUMANN_TERMS):
    """Upper bound on Z (I - Z)^{-1} q for a nonnegative 3x3 Z.

    Sums Z^n q for n = 1..terms and adds the tail bound
    weights * kappa^(terms+1)/(1 - kappa) * max_i q_i/weights_i, where kappa is the
    contraction rate of Z in the weighted max norm.
    """
    k = kappa(z, weights)
    if not k.hi < 1:
        raise InvalidRegime(f"contraction rate {k!r} is not below 1")
    total = UBVec(0.0, 0.0, 0.0)
    term = q
    for _ in range(terms):
        term = z @ term
        total = total + term
    qnorm = max((q[i] / weights[i]).hi for i in range(3))
    tail = Interval(k.hi) ** (terms + 1) / (1 - Interval(k.hi)) * qnorm
    return total + UBVec(*(w * tail for w in weights)), k


def implicit_Q(eps, r, rho, terms=NEUMANN_TERMS):
    """Bounds for the implicit-derivative argument on B_eps(r, rho)."""
    eps = eps if isinstance(eps, Interval) else Interval(eps)
    abar = ub_A0inv_A1()
    fh1, fhc = implicit_fhat(eps, r)
    base = UBVec(sqrt(1 + 4 / PI.sqr()) * fh1, 2 / PI * fh1, fhc)
    corr = (UBMat.identity() + abar.scale(eps)) @ base
    q0 = UBVec(2 * ALPHA_SHIFT * eps, 2 * eps / 5,
               2 / SQRT5 + 2 / SQRT10 * eps + 18 / (5 * sqrt(Interval(50.0))) * eps.sqr())
    q = q0 + corr
    z = Z_bound(eps, r, rho)
    m = corr.alpha / eps.sqr()
    try:
        s, k = neumann_apply(z, q, r, terms)
        mp = s.alpha / eps.sqr()
    except InvalidRegime:
        mp, k = None, kappa(z, r)
    return ImplicitData(gamma_eps(eps), q0, q, z, m, mp, fh1, fhc, k)


def check_nofold(table=None):
    table = _table(table)
    tight = table["cases"]["tight"]
    nf = table["nofold"]
    ball, scaled = case_ball(tight)
    checks = list(check_contraction(ball, scaled, "tight").checks)
    eps0, rbar, rho = ball.eps, ball.r, ball.rho
    r = rbar.scale(eps0.sqr())
    data = implicit_Q(eps0, r, rho, int(nf.get("neumann_terms", NEUMANN_TERMS)))
    checks.append(compare("nofold.kappa", kappa(data.Zeps, rbar), "<", 1.0,
                          "max_i (Z_eps rbar)_i / rbar_i < 1", "implicit-derivative"))
    lin = 2 * ALPHA_SHIFT * eps0
    adg = apply_Adagger(eps0, data.Gamma_eps)
    checks.append(flag("nofold.linear_term", (-adg.alpha).overlaps(lin) and (-adg.alpha).lo > 0,
                       "-pi_alpha A^dagger Gamma_eps = (2/5)(3pi/2 - 1) eps > 0",
                       "implicit-derivative",
                       note=f"enclosure [{(-adg.alpha).lo!r}, {(-adg.alpha).hi!r}]"))
    c_prime = norm(adg.modes)
    checks.append(compare("nofold.Q0_c", c_prime, "<=", data.Q0.c,
                          "||c'|| <= 2/sqrt5 + (2/sqrt10) eps + (18/(5 sqrt50)) eps^2",
                          "implicit-derivative"))
    if data.Mp_eps is None:
        checks.append(flag("nofold.derivative_positive", False,
                           "(2/5)(3pi/2 - 1) eps0 - eps0^2 (M + M') > 0", "implicit-derivative",
                           note="Neumann series unavailable"))
    else:
        margin = lin - eps0.sqr() * (data.M_eps + data.Mp_eps)
        checks.append(compare("nofold.derivative_positive", margin, ">", 0.0,
                              "(2/5)(3pi/2 - 1) eps0 - eps0^2 (M + M') > 0",
                              "implicit-derivative"))
    alpha_bar, _, _ = xbar(eps0)
    reach = lit(nf["reach"])
    checks.append(compare("nofold.reach", alpha_bar - eps0.sqr() * rbar.alpha, ">=",
                          PI_HALF + reach,
                          "alpha_bar(eps0) - eps0^2 rbar_alpha >= pi/2 + 6.830e-3",
                          "implicit-derivative"))
    return checks


# -- uniqueness neighbourhoods ------------------------------------------

def uniqueness_box(table=None):
    u = _table(table)["uniqueness"]
    adev, wdev = lit(u["alpha_dev"]), lit(u["omega_dev"])
    alpha = _span(PI_HALF, PI_HALF + adev)
    omega = _span(PI_HALF - wdev, PI_HALF + wdev)
    return alpha, omega, lit(u["eps_max"])


def check_uniqueness_nbhd(table=None):
    table = _table(table)
    u = table["uniqueness"]
    checks = []
    checks += _contraction_checks(table, "bigbox-b").checks
    checks += _contraction_checks(table, "tight").checks
    alpha, omega, eps_max = uniqueness_box(table)
    eps = Interval(0.0, eps_max.hi)
    adev, wdev = lit(u["alpha_dev"]), lit(u["omega_dev"])
    c_max, kinv_max = lit(u["c_max"]), lit(u["kinv_max"])

    bs = b_star(eps, alpha, omega)
    checks.append(compare("unique.b_star", bs, ">=", lit(u["b_star_min"]),
                          "b* >= 0.31", "uniqueness-neighbourhood"))
    checks.append(compare("unique.kinv", eps_max * (2 + c_max.sqr()) / lit(u["b_star_min"]),
                          "<=", kinv_max, "eps (2 + ||c||^2) / 0.31 <= 0.61",
                          "uniqueness-neighbourhood"))
    big = table["cases"]["bigbox-b"]
    ra, rw, rc = (lit(x) for x in big["r"])
    d = deltas(eps_max)
    checks.append(compare("unique.incl_alpha", adev + d.da0, "<=", ra,
                          "r_alpha >= 0.00553 + |alpha_bar(eps) - pi/2|", "set-inclusion"))
    checks.append(compare("unique.incl_omega", wdev + d.dw0, "<=", rw,
                          "r_omega >= 0.0924 + |omega_bar(eps) - pi/2|", "set-inclusion"))
    checks.append(compare("unique.incl_c", c_max + d.dc0, "<=", rc,
                          "r_c >= 0.30232 + ||c_bar(eps)||", "set-inclusion"))
    checks.append(compare("unique.incl_rho", kinv_max, "<=", lit(big["rho"]),
                          "rho >= 0.61", "set-inclusion"))
    checks += _nesting_checks(table, "bigbox-b", eps_max, "unique")

    tight = table["cases"]["tight"]
    rbar = [lit(x) for x in tight["r"]]
    checks.append(compare("unique.branch_omega", d.dw0 + eps_max.sqr() * rbar[1], "<=", wdev,
                          "|omega_bar - pi/2| + rbar_omega eps^2 <= 0.0924", "branch-bounds"))
    checks.append(compare("unique.branch_c", d.dc0 + eps_max.sqr() * rbar[2], "<=", c_max,
                          "||c_bar|| + rbar_c eps^2 <= 0.30232", "branch-bounds"))
    checks.append(compare("unique.exit", d.da0 - eps_max.sqr() * rbar[0], ">", adev,
                          "alpha_bar(0.09) - pi/2 - rbar_alpha 0.09^2 > 0.00553", "branch-bounds"))
    checks.append(compare("unique.within_nofold", adev, "<", lit(table["nofold"]["reach"]),
                          "0.00553 < 6.830e-3", "branch-bounds"))

    # function-space version
    l2_coeff, _ = fourier_bound_consts(omega)
    a_bound = l2_coeff * lit(u["a_coeff"])
    a_max = lit(u["a_max"])
    checks.append(compare("unique.a_bound", a_bound, "<=", a_max,
                          "sqrt(pi/(6 omega)) 0.302 <= 0.18", "function-space"))
    checks.append(compare("unique.alpha_below_2omega", alpha, "<", 2 * omega,
                          "alpha < 2 omega", "function-space"))
    checks.append(compare("unique.a_admissible", a_max, "<", (2 * omega - alpha) / alpha,
                          "0.18 < (2 omega - alpha)/alpha", "function-space"))
    # an exact decimal identity, decided in rational arithmetic
    checks.append(flag("unique.eps_from_a", Fraction(u["a_max"]) / 2 <= Fraction(u["eps_max"]),
                       "eps <= ||a||/2 <= 0.18/2 = 0.09", "function-space"))
    _, zp = z_gap(eps, bs)
    checks.append(compare("unique.z_plus", zp, ">=", lit(u["z_plus_min"]),
                          "z+ >= 0.595", "function-space"))
    checks.append(compare("unique.dichotomy", a_max, "<", zp,
                          "0.18 < z+, so ||c~|| <= z-", "function-space"))
    c0 = z_minus_linear_coeff(eps_max, alpha, omega)
    c0_max = lit(u["C0_max"])
    checks.append(compare("unique.C0", c0, "<=", c0_max, "z-(eps)/eps <= 0.30226",
                          "function-space"))
    checks.append(compare("unique.c_from_C0", c0_max, "<=", c_max, "0.30226 <= 0.30232",
                          "function-space"))
    return checks
