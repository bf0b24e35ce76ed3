"""Outward-rounded real and complex interval arithmetic.

Every primitive first computes the round-to-nearest result and then uses an
error-free transformation to find out on which side the exact value lies.
Only that side is moved by one ulp, so exactly representable results stay
exact (``[1,2] + [3,4]`` is ``[4,6]``) and everything else is enclosed with
a width of at most one ulp per operation.  No global rounding mode is
touched, which keeps the module thread-safe.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

_INF = math.inf
_TINY = 2.0 ** -960
_HUGE = 2.0 ** 995
_SPLITTER = 134217729.0  # 2**27 + 1
REDUCTION_LIMIT = 1024.0


def _down(x):
    return math.nextafter(x, -_INF)


def _up(x):
    return math.nextafter(x, _INF)


def _check_finite(x):
    if not math.isfinite(x):
        raise DomainError(f"non-finite intermediate result {x!r}")


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _prod_err(a, b, p):
    """Exact error a*b - p (Dekker), valid away from overflow/underflow."""
    ah, al = _split(a)
    bh, bl = _split(b)
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _bracket(r, err):
    # exact value is r + err, with |err| below half an ulp of r
    if err > 0:
        return r, _up(r)
    if err < 0:
        return _down(r), r
    return r, r


def _add_pair(a, b):
    s = a + b
    _check_finite(s)
    bb = s - a
    return _bracket(s, (a - (s - bb)) + (b - bb))


def _mul_pair(a, b):
    p = a * b
    _check_finite(p)
    if a == 0.0 or b == 0.0:
        return 0.0, 0.0
    ap, bp = abs(a), abs(b)
    if abs(p) < _TINY or ap > _HUGE or bp > _HUGE or ap < _TINY or bp < _TINY:
        return _down(p), _up(p)
    return _bracket(p, _prod_err(a, b, p))


def _div_pair(a, b):
    q = a / b
    _check_finite(q)
    if a == 0.0:
        return 0.0, 0.0
    aa, ab = abs(a), abs(b)
    if abs(q) < _TINY or aa < _TINY or ab < _TINY or aa > _HUGE or ab > _HUGE \
            or abs(q) > _HUGE:
        return _down(q), _up(q)
    p = q * b
    # q*b = p + e exactly; a - p is exact by Sterbenz since p is close to a
    rem = (a - p) - _prod_err(q, b, p)
    return _bracket(q, rem if b > 0 else -rem)


def _sqrt_pair(x):
    if x == 0.0:
        return 0.0, 0.0
    s = math.sqrt(x)
    if x < _TINY or x > _HUGE:
        return max(0.0, _down(s)), _up(s)
    p = s * s
    rem = (x - p) - _prod_err(s, s, p)
    return _bracket(s, rem)


def _frac_down(q):
    f = float(q)
    if Fraction(f) > q:
        f = _down(f)
    return f


def _frac_up(q):
    f = float(q)
    if Fraction(f) < q:
        f = _up(f)
    return f


def _exact_float(v):
    if isinstance(v, float):
        if math.isnan(v):
            raise DomainError("NaN is not a valid interval endpoint")
        return v
    if isinstance(v, int):
        f = float(v)
        if f != v:
            raise DomainError(f"integer {v} is not exactly representable")
        return f
    raise TypeError(f"cannot use {type(v).__name__} as an exact endpoint; "
                    "use Interval.from_fraction or Interval.from_decimal")


def _mk(lo, hi):
    obj = object.__new__(Interval)
    obj.lo = lo
    obj.hi = hi
    return obj


class Interval:
    """Closed real interval ``[lo, hi]`` with binary64 endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = _exact_float(lo)
        hi = lo if hi is None else _exact_float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError("interval endpoints must be finite")
        if lo > hi:
            raise DomainError(f"empty interval [{lo!r}, {hi!r}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def from_fraction(cls, q, q_hi=None):
        """Tightest binary64 enclosure of a rational number (or pair)."""
        q = Fraction(q)
        q_hi = q if q_hi is None else Fraction(q_hi)
        return cls(_frac_down(q), _frac_up(q_hi))

    @classmethod
    def from_decimal(cls, text):
        """Enclose a decimal literal such as ``"0.0594"`` exactly."""
        return cls.from_fraction(Fraction(str(text)))

    # -- inspection -------------------------------------------------------
    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return 0.5 * self.lo + 0.5 * self.hi

    def mag(self):
        """Largest absolute value in the interval."""
        return max(-self.lo, self.hi)

    def mig(self):
        """Smallest absolute value in the interval."""
        if self.lo > 0:
            return self.lo
        if self.hi < 0:
            return -self.hi
        return 0.0

    def contains(self, x):
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, Fraction):
            return Fraction(self.lo) <= x <= Fraction(self.hi)
        return self.lo <= x <= self.hi

    def __contains__(self, x):
        return self.contains(x)

    def overlaps(self, other):
        other = _coerce(other)
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other):
        other = _coerce(other)
        return _mk(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other):
        other = _coerce(other)
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise DomainError("intervals do not intersect")
        return _mk(lo, hi)

    def split(self):
        m = self.mid
        return _mk(self.lo, m), _mk(m, self.hi)

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return _mk(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return _mk(_add_pair(self.lo, other.lo)[0], _add_pair(self.hi, other.hi)[1])

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return _mk(_add_pair(self.lo, -other.hi)[0], _add_pair(self.hi, -other.lo)[1])

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if a >= 0 and c >= 0:
            return _mk(_mul_pair(a, c)[0], _mul_pair(b, d)[1])
        pairs = (_mul_pair(a, c), _mul_pair(a, d), _mul_pair(b, c), _mul_pair(b, d))
        return _mk(min(p[0] for p in pairs), max(p[1] for p in pairs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        c, d = other.lo, other.hi
        if c <= 0.0 <= d:
            raise DomainError(f"division by an interval containing zero {other!r}")
        a, b = self.lo, self.hi
        pairs = (_div_pair(a, c), _div_pair(a, d), _div_pair(b, c), _div_pair(b, d))
        return _mk(min(p[0] for p in pairs), max(p[1] for p in pairs))

    def __rtruediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def sqr(self):
        a, b = self.lo, self.hi
        if a >= 0:
            return _mk(_mul_pair(a, a)[0], _mul_pair(b, b)[1])
        if b <= 0:
            return _mk(_mul_pair(b, b)[0], _mul_pair(a, a)[1])
        m = max(-a, b)
        return _mk(0.0, _mul_pair(m, m)[1])

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        if n == 0:
            return _mk(1.0, 1.0)
        if n % 2 == 0:
            return self.sqr() ** (n // 2)
        return self * (self ** (n - 1))

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return _mk(0.0, max(-self.lo, self.hi))

    def sqrt(self):
        return sqrt(self)

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Interval):
            return self.lo == other.lo and self.hi == other.hi
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"


def _coerce_or_none(x):
    if isinstance(x, Interval):
        return x
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        f = _exact_float(x)
        return _mk(f, f)
    return None


def _coerce(x):
    y = _coerce_or_none(x)
    if y is None:
        raise TypeError(f"cannot interpret {x!r} as an interval")
    return y


def lit(text):
    """Interval enclosing a decimal literal given as a string."""
    return Interval.from_decimal(text)


def hull(*xs):
    out = _coerce(xs[0])
    for x in xs[1:]:
        out = out.hull(x)
    return out


def imax(*xs):
    xs = [_coerce(x) for x in xs]
    return _mk(max(x.lo for x in xs), max(x.hi for x in xs))


def imin(*xs):
    xs = [_coerce(x) for x in xs]
    return _mk(min(x.lo for x in xs), min(x.hi for x in xs))


def sqrt(a):
    a = _coerce(a)
    if a.lo < 0:
        raise DomainError(f"sqrt of interval with negative part {a!r}")
    return _mk(_sqrt_pair(a.lo)[0], _sqrt_pair(a.hi)[1])


def iabs(a):
    return abs(_coerce(a))


# -- rational enclosures of constants ------------------------------------

# pi to 37 decimals; both bounds are exact rationals (about 123 bits)
_PI_Q_LO = Fraction(31415926535897932384626433832795028841, 10 ** 37)
_PI_Q_HI = _PI_Q_LO + Fraction(1, 10 ** 37)
_SQRT_BITS = 96


def _sqrt_fraction_bounds(n):
    s = math.isqrt(n * 4 ** _SQRT_BITS)
    den = 2 ** _SQRT_BITS
    lo = Fraction(s, den)
    hi = lo if s * s == n * 4 ** _SQRT_BITS else Fraction(s + 1, den)
    return lo, hi


def _expm1_fraction_bounds(x, terms=30):
    """Bounds on e**x - 1 for a small rational x > 0."""
    total, term = Fraction(0), Fraction(1)
    for j in range(1, terms + 1):
        term = term * x / j
        total += term
    tail = 2 * term * x / (terms + 1)  # crude but rigorous for x < 1
    return total, total + tail


def pi_rational_bounds():
    return _PI_Q_LO, _PI_Q_HI


PI = Interval.from_fraction(_PI_Q_LO, _PI_Q_HI)
PI_HALF = Interval.from_fraction(_PI_Q_LO / 2, _PI_Q_HI / 2)
TWO_PI = Interval.from_fraction(2 * _PI_Q_LO, 2 * _PI_Q_HI)
_S2 = _sqrt_fraction_bounds(2)
_S5 = _sqrt_fraction_bounds(5)
SQRT2 = Interval.from_fraction(*_S2)
SQRT3 = Interval.from_fraction(*_sqrt_fraction_bounds(3))
SQRT5 = Interval.from_fraction(*_S5)
SQRT10 = Interval.from_fraction(*_sqrt_fraction_bounds(10))
_MU_Q = _expm1_fraction_bounds(Fraction(1, 25))
MU = Interval.from_fraction(*_MU_Q)
EPS_STAR = Interval.from_fraction(_MU_Q[0] / _S2[1], _MU_Q[1] / _S2[0])


@dataclass(frozen=True)
class Constants:
    pi_half: Interval
    pi: Interval
    sqrt2: Interval
    sqrt5: Interval
    sqrt10: Interval
    mu: Interval
    eps_star: Interval


CONSTANTS = Constants(PI_HALF, PI, SQRT2, SQRT5, SQRT10, MU, EPS_STAR)


# -- transcendental functions ---------------------------------------------

_INV_FACT = [Interval.from_fraction(Fraction(1, math.factorial(j))) for j in range(40)]
_EXP_DEGREE = 16
_SIN_TERMS = 12
_SIN_COEF = [(-1) ** j * _INV_FACT[2 * j + 1] for j in range(_SIN_TERMS)]
_COS_COEF = [(-1) ** j * _INV_FACT[2 * j] for j in range(_SIN_TERMS)]
_UNIT = _mk(-1.0, 1.0)


def _check_range(a):
    if a.lo < -REDUCTION_LIMIT or a.hi > REDUCTION_LIMIT:
        raise DomainError(f"argument {a!r} outside the reduction range |x| <= 2**10")


def _exp_point(x):
    r, s = x, 0
    while abs(r) > 0.0625:
        r *= 0.5
        s += 1
    rr = _mk(r, r)
    p = _INV_FACT[_EXP_DEGREE]
    for j in range(_EXP_DEGREE - 1, -1, -1):
        p = p * rr + _INV_FACT[j]
    # Lagrange remainder with e**xi <= 1.1 for |xi| <= 1/16
    bound = (_mk(abs(r), abs(r)) ** (_EXP_DEGREE + 1) * _INV_FACT[_EXP_DEGREE + 1] * 1.1).hi
    p = p + _mk(-bound, bound)
    for _ in range(s):
        p = p.sqr()
    return p


def exp(a):
    a = _coerce(a)
    _check_range(a)
    lo = _exp_point(a.lo).lo
    hi = _exp_point(a.hi).hi
    return _mk(max(lo, 0.0), hi)


def _horner(coefs, u):
    p = coefs[-1]
    for c in reversed(coefs[:-1]):
        p = p * u + c
    return p


def _sin_small(r):
    """sin on a thin interval inside [-pi/4 - tiny, pi/4 + tiny]."""
    m = r.mag()
    bound = (_mk(m, m) ** (2 * _SIN_TERMS + 1) * _INV_FACT[2 * _SIN_TERMS + 1]).hi
    return r * _horner(_SIN_COEF, r.sqr()) + _mk(-bound, bound)


def _cos_small(r):
    m = r.mag()
    bound = (_mk(m, m) ** (2 * _SIN_TERMS) * _INV_FACT[2 * _SIN_TERMS]).hi
    return _horner(_COS_COEF, r.sqr()) + _mk(-bound, bound)


def _reduce(x):
    k = round(x / PI_HALF.mid)
    r = _mk(x, x) - PI_HALF * k
    return k % 4, r


def _sin_point(x):
    q, r = _reduce(x)
    if q == 0:
        v = _sin_small(r)
    elif q == 1:
        v = _cos_small(r)
    elif q == 2:
        v = -_sin_small(r)
    else:
        v = -_cos_small(r)
    return _mk(max(v.lo, -1.0), min(v.hi, 1.0))


def _cos_point(x):
    q, r = _reduce(x)
    if q == 0:
        v = _cos_small(r)
    elif q == 1:
        v = -_sin_small(r)
    elif q == 2:
        v = -_cos_small(r)
    else:
        v = _sin_small(r)
    return _mk(max(v.lo, -1.0), min(v.hi, 1.0))


def _may_hit(a, offset):
    """Could ``a`` contain a point offset + 2*pi*n for some integer n?"""
    n_lo = ((_mk(a.lo, a.lo) - offset) / TWO_PI).lo
    n_hi = ((_mk(a.hi, a.hi) - offset) / TWO_PI).hi
    return math.floor(n_hi) >= math.ceil(n_lo)


def _periodic(a, point_fn, peak, trough):
    a = _coerce(a)
    _check_range(a)
    if a.hi - a.lo >= 6.25:
        return _UNIT
    u = point_fn(a.lo)
    if a.lo == a.hi:
        return u
    v = point_fn(a.hi)
    lo, hi = min(u.lo, v.lo), max(u.hi, v.hi)
    if _may_hit(a, peak):
        hi = 1.0
    if _may_hit(a, trough):
        lo = -1.0
    return _mk(lo, hi)


_ZERO = _mk(0.0, 0.0)


def sin(a):
    return _periodic(a, _sin_point, PI_HALF, -PI_HALF)


def cos(a):
    return _periodic(a, _cos_point, _ZERO, PI)


# -- complex intervals ----------------------------------------------------

class CInterval:
    """Rectangular complex interval ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0.0):
        self.re = _coerce(re)
        self.im = _coerce(im)

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        return cls(z.real, z.imag)

    def __add__(self, other):
        other = _ccoerce(other)
        if other is None:
            return NotImplemented
        return CInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _ccoerce(other)
        if other is None:
            return NotImplemented
        return CInterval(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _ccoerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CInterval(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (Interval, int, float)) and not isinstance(other, bool):
            return CInterval(self.re * other, self.im * other)
        other = _ccoerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return CInterval(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Interval, int, float)) and not isinstance(other, bool):
            return CInterval(self.re / other, self.im / other)
        other = _ccoerce(other)
        if other is None:
            return NotImplemented
        den = other.re.sqr() + other.im.sqr()
        return (self * other.conj()) / den

    def __rtruediv__(self, other):
        other = _ccoerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def conj(self):
        return CInterval(self.re, -self.im)

    def times_i(self):
        return CInterval(-self.im, self.re)

    def abs(self):
        return cabs(self)

    def contains(self, z):
        if isinstance(z, CInterval):
            return self.re.contains(z.re) and self.im.contains(z.im)
        z = complex(z)
        return self.re.contains(z.real) and self.im.contains(z.imag)

    def __contains__(self, z):
        return self.contains(z)

    def overlaps(self, other):
        other = _ccoerce(other)
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def __eq__(self, other):
        if isinstance(other, CInterval):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"CInterval({self.re!r}, {self.im!r})"


def _ccoerce(x):
    if isinstance(x, CInterval):
        return x
    if isinstance(x, Interval):
        return CInterval(x, 0.0)
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return CInterval(x, 0.0)
    if isinstance(x, complex):
        return CInterval.from_complex(x)
    return None


def cabs(z):
    """Enclosure of the modulus of a complex interval."""
    return sqrt(z.re.sqr() + z.im.sqr())


def cexp_minus_i_omega(omega):
    """Enclosure of exp(-i*omega) as (cos omega, -sin omega)."""
    omega = _coerce(omega)
    return CInterval(cos(omega), -sin(omega))


def cexp_i(theta):
    theta = _coerce(theta)
    return CInterval(cos(theta), sin(theta))


I_UNIT = CInterval(0.0, 1.0)
