"""Finite-support Fourier sequences with interval coefficients.

A ``FourierVector`` stores the coefficients a_k for k >= 1.  The implicit
symmetric extension is a_0 = 0 and a_{-k} = conj(a_k), which is the
coefficient sequence of a real periodic function.  The norm is
``2 * sum_k |a_k|``; with this weight the space is a Banach algebra under
the discrete convolution.
"""

from .errors import CapacityError
from .interval import CInterval, Interval, cabs, cexp_minus_i_omega, cexp_i

K_MAX = 2 ** 16

_CZERO = CInterval(0.0, 0.0)


def _as_cinterval(v):
    if isinstance(v, CInterval):
        return v
    if isinstance(v, Interval):
        return CInterval(v, 0.0)
    return CInterval.from_complex(v)


class FourierVector:
    """Immutable map from mode index k >= 1 to a complex interval."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        items = {}
        for k, v in (coeffs or {}).items():
            k = int(k)
            if k < 1:
                raise ValueError(f"mode index must be >= 1, got {k}")
            if k > K_MAX:
                raise CapacityError(f"mode {k} exceeds the cap {K_MAX}")
            items[k] = _as_cinterval(v)
        self._coeffs = dict(sorted(items.items()))

    @classmethod
    def basis(cls, j):
        return cls({j: CInterval(1.0, 0.0)})

    @classmethod
    def zero(cls):
        return cls()

    @property
    def coeffs(self):
        return dict(self._coeffs)

    def support(self):
        return list(self._coeffs)

    def max_mode(self):
        return max(self._coeffs, default=0)

    def __getitem__(self, k):
        if k == 0:
            return _CZERO
        if k < 0:
            return self._coeffs.get(-k, _CZERO).conj()
        return self._coeffs.get(k, _CZERO)

    def items(self):
        return self._coeffs.items()

    def __len__(self):
        return len(self._coeffs)

    def __add__(self, other):
        out = dict(self._coeffs)
        for k, v in other.items():
            out[k] = out[k] + v if k in out else v
        return FourierVector(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FourierVector({k: -v for k, v in self.items()})

    def scale(self, s):
        """Multiply every coefficient by a real or complex interval scalar."""
        return FourierVector({k: v * s for k, v in self.items()})

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def contains(self, other):
        """True if every coefficient of ``other`` lies in ours (point or interval)."""
        if isinstance(other, FourierVector):
            keys = set(self._coeffs) | set(other._coeffs)
            return all(self[k].contains(other[k]) for k in keys)
        keys = set(self._coeffs) | {int(k) for k in other}
        return all(self[k].contains(complex(other.get(k, 0.0))) for k in keys)

    def overlaps(self, other):
        keys = set(self._coeffs) | set(other._coeffs)
        return all(self[k].overlaps(other[k]) for k in keys)

    def __repr__(self):
        body = ", ".join(f"{k}: {v!r}" for k, v in self.items())
        return f"FourierVector({{{body}}})"


def norm(a):
    """Enclosure of 2 * sum_k |a_k|."""
    total = Interval(0.0)
    for _, v in a.items():
        total = total + cabs(v)
    return 2 * total


def convolve(a, b):
    """Discrete convolution of the symmetric extensions, kept for k >= 1."""
    if a.max_mode() + b.max_mode() > K_MAX:
        raise CapacityError("convolution support exceeds the mode cap")
    full_a = {k: v for k, v in a.items()}
    full_a.update({-k: v.conj() for k, v in a.items()})
    full_b = {k: v for k, v in b.items()}
    full_b.update({-k: v.conj() for k, v in b.items()})
    out = {}
    for k1, v1 in full_a.items():
        for k2, v2 in full_b.items():
            k = k1 + k2
            if k >= 1:
                term = v1 * v2
                out[k] = out[k] + term if k in out else term
    return FourierVector(out)


def apply_K(a):
    return FourierVector({k: v / k for k, v in a.items()})


def apply_Kinv(a):
    return FourierVector({k: v * k for k, v in a.items()})


def _phase(k, omega):
    """exp(-i*k*omega) with k*omega enclosed as an interval."""
    return cexp_minus_i_omega(omega * k)


def apply_U(omega, a):
    return FourierVector({k: v * _phase(k, omega) for k, v in a.items()})


def apply_shift_plus(a):
    """[sigma^+ a]_k = a_{k-1} with a_0 = 0."""
    return FourierVector({k + 1: v for k, v in a.items()})


def apply_shift_minus(a):
    """[sigma^- a]_k = a_{k+1}; the mode-1 coefficient is dropped."""
    return FourierVector({k - 1: v for k, v in a.items() if k >= 2})


def apply_L(omega, a):
    """sigma^+ (e^{-i w} + U_w) a + sigma^- (e^{i w} + U_w) a."""
    e_minus = cexp_minus_i_omega(omega)
    e_plus = cexp_i(omega)
    ua = apply_U(omega, a)
    up = {k: a[k] * e_minus + ua[k] for k in a.support()}
    dn = {k: a[k] * e_plus + ua[k] for k in a.support()}
    return apply_shift_plus(FourierVector(up)) + apply_shift_minus(FourierVector(dn))


def unit_power_minus_i(k):
    """(-i)**k = exp(-i*k*pi/2) as an exact complex number."""
    return (1, -1j, -1, 1j)[k % 4]


def uhat_factor(k):
    """(1 - i * k**-1 * (-i)**k)**-1 evaluated in intervals."""
    z = complex(1j * unit_power_minus_i(k))  # exactly one of 1, -1, i, -i
    den = CInterval(1.0) - CInterval.from_complex(z) / k
    return CInterval(1.0) / den


def apply_Uhat(a):
    return FourierVector({k: v * uhat_factor(k) for k, v in a.items()})

