"""The approximate derivative A = A0 + eps*A1 and its approximate inverse.

Vectors live in R^2 x l1: a pair (alpha, omega) plus Fourier modes k >= 2.
The pair is identified with a complex number x + i*y when it is moved in
or out of mode 1.  Images of A-type maps are plain l1 sequences, stored in
a ``TripleVector`` whose pair is zero and whose modes may include mode 1.
"""

from dataclasses import dataclass, field

from .errors import VerificationError
from .interval import CInterval, Interval, PI, PI_HALF, SQRT2, SQRT5, SQRT10, cabs, sqrt, lit
from .seqspace import FourierVector, unit_power_minus_i
from .upper import UBMat

K_CHECK_DEFAULT = 64

_ZERO = Interval(0.0)


@dataclass(frozen=True)
class TripleVector:
    alpha_omega: tuple = (_ZERO, _ZERO)
    modes: FourierVector = field(default_factory=FourierVector)

    @property
    def alpha(self):
        return self.alpha_omega[0]

    @property
    def omega(self):
        return self.alpha_omega[1]

    def contains(self, other):
        return (self.alpha.contains(other.alpha) and self.omega.contains(other.omega)
                and self.modes.contains(other.modes))

    def overlaps(self, other):
        return (self.alpha.overlaps(other.alpha) and self.omega.overlaps(other.omega)
                and self.modes.overlaps(other.modes))


def triple(alpha=0.0, omega=0.0, modes=None):
    a = alpha if isinstance(alpha, Interval) else Interval(alpha)
    w = omega if isinstance(omega, Interval) else Interval(omega)
    if modes is None:
        modes = FourierVector()
    elif not isinstance(modes, FourierVector):
        modes = FourierVector(modes)
    return TripleVector((a, w), modes)


@dataclass(frozen=True)
class ABlocks:
    A01: tuple
    A12: tuple
    A01_inv: tuple


def blocks():
    """Interval enclosures of the finite 2x2 blocks and the inverse of A01."""
    one, zero = Interval(1.0), _ZERO
    two_over_pi = 2 / PI
    A01 = ((zero, -PI_HALF), (-one, one))
    A12 = ((Interval(-2.0) / 5, (2 - 3 * PI_HALF) / 5),
           (Interval(-4.0) / 5, 2 * (2 + PI) / 5))
    A01_inv = ((-two_over_pi, -one), (-two_over_pi, zero))
    return ABlocks(A01, A12, A01_inv)


_BLOCKS = blocks()


def _matvec2(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def _matmul2(a, b):
    return tuple(tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2))
                 for i in range(2))


def _unit(k):
    return CInterval.from_complex(unit_power_minus_i(k))


def a0_star_factor(k):
    """Diagonal entry (pi/2)(i*k + (-i)**k) of the mode part of A0."""
    return (CInterval(0.0, float(k)) + _unit(k)) * PI_HALF


def a0_star_inv_factor(k):
    return CInterval(1.0) / a0_star_factor(k)


def apply_L0(c):
    """L at omega = pi/2 using exact unit phases; result may touch mode 1."""
    out = {}
    for k, v in c.items():
        u = _unit(k)
        up = (CInterval(0.0, -1.0) + u) * v
        dn = (CInterval(0.0, 1.0) + u) * v
        out[k + 1] = out[k + 1] + up if k + 1 in out else up
        if k >= 2:
            out[k - 1] = out[k - 1] + dn if k - 1 in out else dn
    return FourierVector(out)


def _pair_to_mode(pair):
    return CInterval(pair[0], pair[1])


def _apply_A0(x):
    out = {}
    if x.alpha_omega != (_ZERO, _ZERO):
        out[1] = _pair_to_mode(_matvec2(_BLOCKS.A01, x.alpha_omega))
    for k, v in x.modes.items():
        out[k] = v * a0_star_factor(k)
    return FourierVector(out)


def _apply_A1(x):
    res = apply_L0(x.modes).scale(PI_HALF)
    if x.alpha_omega != (_ZERO, _ZERO):
        res = res + FourierVector({2: _pair_to_mode(_matvec2(_BLOCKS.A12, x.alpha_omega))})
    return res


def _check_modes(x):
    if 1 in x.modes.support():
        raise ValueError("the c-part of a triple must be supported on modes k >= 2")


def apply_A0(x):
    _check_modes(x)
    return TripleVector((_ZERO, _ZERO), _apply_A0(x))


def apply_A1(x):
    _check_modes(x)
    return TripleVector((_ZERO, _ZERO), _apply_A1(x))


def apply_A(eps, x):
    """A x = A0 x + eps * A1 x, returned as an l1 sequence."""
    _check_modes(x)
    eps = eps if isinstance(eps, Interval) else Interval(eps)
    return TripleVector((_ZERO, _ZERO), _apply_A0(x) + _apply_A1(x).scale(eps))


def _modes_of(y):
    return y.modes if isinstance(y, TripleVector) else y


def apply_A0inv(y):
    """Exact block inverse of A0 acting on an l1 sequence."""
    y = _modes_of(y)
    pair = (_ZERO, _ZERO)
    modes = {}
    for k, v in y.items():
        if k == 1:
            pair = _matvec2(_BLOCKS.A01_inv, (v.re, v.im))
        else:
            modes[k] = v * a0_star_inv_factor(k)
    return TripleVector(pair, FourierVector(modes))


def apply_A1A0inv(y):
    return _apply_A1(apply_A0inv(y))


def apply_Adagger(eps, y):
    """A^dagger y = A0^{-1} y - eps * A0^{-1} A1 A0^{-1} y."""
    eps = eps if isinstance(eps, Interval) else Interval(eps)
    first = apply_A0inv(y)
    corr = apply_A0inv(_apply_A1(first))
    alpha = first.alpha - eps * corr.alpha
    omega = first.omega - eps * corr.omega
    return TripleVector((alpha, omega), first.modes - corr.modes.scale(eps))


def is_injective(eps, norm_a1a0inv=None):
    """Certified eps * ||A1 A0^{-1}|| < 1, which makes A^dagger injective."""
    eps = eps if isinstance(eps, Interval) else Interval(eps)
    if norm_a1a0inv is None:
        norm_a1a0inv = 2 * SQRT10 / 5
    return (eps * norm_a1a0inv).hi < 1.0


# -- operator norms -----------------------------------------------------

def spectral_norm_2x2(m):
    """Largest singular value of a real 2x2 interval matrix, closed form."""
    (a, b), (c, d) = m
    t = a.sqr() + b.sqr() + c.sqr() + d.sqr()
    det = a * d - b * c
    disc = t.sqr() - 4 * det.sqr()
    disc = Interval(max(disc.lo, 0.0), max(disc.hi, 0.0))
    return sqrt((t + sqrt(disc)) / 2)


def row_norm(row):
    return sqrt(row[0].sqr() + row[1].sqr())


@dataclass(frozen=True)
class NormScan:
    """Certified sup over modes: finite scan plus a decreasing tail envelope."""
    value: Interval
    argmax: int
    tail_bound: float
    k_check: int


def _scan(per_mode, envelope, k_check, k_start=2):
    best_k, best = None, None
    for k in range(k_start, k_check + 1):
        v = per_mode(k)
        if best is None or v.lo > best.lo:
            best_k, best = k, v
    hi = max(per_mode(k).hi for k in range(k_start, k_check + 1))
    value = Interval(best.lo, max(hi, best.hi))
    tail = envelope(k_check + 1).hi
    if not tail < value.lo:
        raise VerificationError(
            f"tail envelope {tail!r} not below scanned maximum {value.lo!r}; raise k_check")
    return NormScan(value, best_k, tail, k_check)


@dataclass(frozen=True)
class OpNormTable:
    norm_Uhat: Interval
    norm_UhatK: Interval
    norm_A0star_inv: Interval
    norm_A1star: Interval
    norm_Lomega: Interval
    norm_A1A0inv: Interval
    ub_A0invA1: UBMat
    norm_Lomega0: Interval = None
    norm_block_A12A01inv: Interval = None
    norm_KUhatL: Interval = None
    argmax: dict = None


def _uhat_mod(k):
    z = CInterval(1.0) - CInterval.from_complex(1j * unit_power_minus_i(k)) / k
    return 1 / cabs(z)


def _uhatk_mod(k):
    z = CInterval(float(k)) - CInterval.from_complex(1j * unit_power_minus_i(k))
    return 1 / cabs(z)


def _l0_mod(k):
    return cabs(CInterval.from_complex(-1j + unit_power_minus_i(k))) + \
        cabs(CInterval.from_complex(1j + unit_power_minus_i(k)))


def _l0kuhat_mod(k):
    return _l0_mod(k) * _uhatk_mod(k)


def _kuhat_l_mod(k):
    # ||K Uhat pi_{>=2} L0 e_k|| / 2; the e_{k-1} term is dropped when k = 2
    u = unit_power_minus_i(k)
    up = cabs(CInterval.from_complex(-1j + u)) * _uhatk_mod(k + 1)
    if k == 2:
        return up
    return up + cabs(CInterval.from_complex(1j + u)) * _uhatk_mod(k - 1)


def ub_A0inv_A1():
    """Entrywise upper bound for A0^{-1} A1 in closed form."""
    z = _ZERO
    r13 = sqrt(2 + PI.sqr() / 2) / 2
    r23 = 1 / SQRT2
    r31 = 8 / (5 * PI)
    r32 = 2 * sqrt(16 + 8 * PI + 5 * PI.sqr()) / (5 * PI)
    r33 = 2 / SQRT5
    return UBMat([[z, z, r13], [z, z, r23], [r31, r32, r33]])


def _ub_entries_from_blocks():
    """Recompute the nonzero entries of ub_A0inv_A1 from the block maps."""
    A01_inv = _BLOCKS.A01_inv
    # c -> mode 1 of A1: (pi/2)(i + (-1)) c_2, then A01^{-1}; |c_2| <= ||c|| / 2
    mult = CInterval(-1.0, 1.0) * PI_HALF
    as_real = ((mult.re, -mult.im), (mult.im, mult.re))
    m = _matmul2(A01_inv, as_real)
    r13 = row_norm(m[0]) / 2
    r23 = row_norm(m[1]) / 2
    # (alpha, omega) -> mode 2 via A12, then A0*^{-1}; ||e_2|| = 2
    f = a0_star_inv_factor(2)
    cols = []
    for j in range(2):
        v = CInterval(_BLOCKS.A12[0][j], _BLOCKS.A12[1][j]) * f
        cols.append(2 * cabs(v))
    return r13, r23, cols[0], cols[1]


def verify_opnorms(k_check=K_CHECK_DEFAULT):
    """Certify the operator-norm table by finite scans with analytic tails."""
    if k_check < K_CHECK_DEFAULT:
        raise ValueError(f"k_check must be at least {K_CHECK_DEFAULT}")
    uhat = _scan(_uhat_mod, lambda k: 1 / (1 - Interval(1.0) / k), k_check)
    uhatk = _scan(_uhatk_mod, lambda k: 1 / Interval(float(k - 1)), k_check)
    l0 = _scan(_l0_mod, lambda k: Interval(0.0), k_check)
    # every k beyond the scan repeats one of the four residues mod 4 already seen
    l0kuhat = _scan(_l0kuhat_mod, lambda k: 2 * SQRT2 / (k - 1), k_check)
    kuhatl = _scan(_kuhat_l_mod, lambda k: Interval(4.0) / (k - 2), k_check)

    A12_A01inv = _matmul2(_BLOCKS.A12, _BLOCKS.A01_inv)
    block = spectral_norm_2x2(A12_A01inv)
    if not block.hi < l0kuhat.value.lo:
        raise VerificationError("finite block dominates the mode part of A1 A0^{-1}")

    ub = ub_A0inv_A1()
    r13, r23, r31, r32 = _ub_entries_from_blocks()
    checks = ((r13, ub[0, 2]), (r23, ub[1, 2]), (r31, ub[2, 0]), (r32, ub[2, 1]))
    for derived, closed in checks:
        if not derived.overlaps(closed):
            raise VerificationError("block computation disagrees with the closed form")
    if not kuhatl.value.hi <= ub[2, 2].hi:
        raise VerificationError("mode part of A0^{-1} A1 exceeds 2/sqrt(5)")

    return OpNormTable(
        norm_Uhat=uhat.value,
        norm_UhatK=uhatk.value,
        norm_A0star_inv=(2 / PI) * uhatk.value,
        norm_A1star=PI_HALF * l0.value,
        norm_Lomega=Interval(4.0),
        norm_A1A0inv=l0kuhat.value,
        ub_A0invA1=ub,
        norm_Lomega0=l0.value,
        norm_block_A12A01inv=block,
        norm_KUhatL=kuhatl.value,
        argmax={"Uhat": uhat.argmax, "UhatK": uhatk.argmax, "A1A0inv": l0kuhat.argmax,
                "KUhatL": kuhatl.argmax},
    )


def closed_forms():
    """Reference closed forms of the certified norms."""
    return {
        "norm_Uhat": Interval(1.25),
        "norm_UhatK": 1 / SQRT5,
        "norm_A0star_inv": 2 / (PI * SQRT5),
        "norm_A1A0inv": 2 * SQRT10 / 5,
        "norm_block_A12A01inv": sqrt((45 + 5 * sqrt(Interval(17.0))) / 2) / 5,
        "two_pi": 2 * PI,
        "injectivity_limit": SQRT10 / 4,
    }


__all__ = [
    "TripleVector", "ABlocks", "OpNormTable", "blocks", "triple", "apply_A", "apply_A0",
    "apply_A1", "apply_A0inv", "apply_A1A0inv", "apply_Adagger", "apply_L0",
    "verify_opnorms", "ub_A0inv_A1", "spectral_norm_2x2", "closed_forms", "is_injective",
    "a0_star_factor", "a0_star_inv_factor", "lit",
]
