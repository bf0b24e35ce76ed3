"""Floating-point companion: truncated Fourier system, Newton, continuation.

Nothing here is rigorous.  The oracle produces reference numbers that the
certified bounds are compared against in tests.

Unknowns are (alpha, omega, c_2..c_N) with c_1 fixed by the phase condition;
with a = e_1 + c the equations are

    F_k = (i k omega + alpha e^{-i k omega}) a_k + alpha eps [(U a) * a]_k,  k = 1..N.
"""

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError

MAX_ITER = 50
RESIDUAL_TOL = 1e-12
STEP_TOL = 1e-10
FD_STEP = 1e-5
CSV_COLUMNS = ("eps", "alpha", "omega", "dalpha_deps", "c_norm", "defect")


@dataclass
class TruncatedState:
    alpha: float
    omega: float
    c: np.ndarray = field(repr=False)   # complex, modes 2..N

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=complex)
        if self.N < 8:
            raise ValueError("truncation order N must be at least 8")

    @property
    def N(self):
        return len(self.c) + 1

    def modes(self):
        """a = e_1 + c as an array indexed 0..N (index 0 unused)."""
        a = np.zeros(self.N + 1, dtype=complex)
        a[1] = 1.0
        a[2:] = self.c
        return a

    def to_real(self):
        return np.concatenate(([self.alpha, self.omega], self.c.real, self.c.imag))

    @classmethod
    def from_real(cls, x):
        m = (len(x) - 2) // 2
        return cls(float(x[0]), float(x[1]), x[2:2 + m] + 1j * x[2 + m:])

    def c_norm(self):
        return 2.0 * float(np.abs(self.c).sum())

    def copy(self):
        return TruncatedState(self.alpha, self.omega, self.c.copy())


@dataclass
class BranchPoint:
    eps: float
    state: TruncatedState
    dalpha_deps: float
    defect: float = math.nan


def approximate_state(eps, N=32):
    """Second-order approximation used as the Newton seed."""
    c = np.zeros(N - 1, dtype=complex)
    c[0] = (2 - 1j) * eps / 5
    return TruncatedState(math.pi / 2 + eps ** 2 / 5 * (3 * math.pi / 2 - 1),
                          math.pi / 2 - eps ** 2 / 5, c)


def _conv(u, a):
    """[(u) * (a)]_k for k = 1..N using the symmetric extensions of both."""
    N = len(a) - 1
    fu = np.concatenate((np.conj(u[:0:-1]), [0.0], u[1:]))
    fa = np.concatenate((np.conj(a[:0:-1]), [0.0], a[1:]))
    full = np.convolve(fu, fa)           # index 2N corresponds to mode 0
    return np.concatenate(([0.0], full[2 * N + 1:3 * N + 1]))


def _phases(omega, N):
    return np.exp(-1j * omega * np.arange(N + 1))


def _eval_complex(eps, alpha, omega, a):
    N = len(a) - 1
    k = np.arange(N + 1)
    ph = _phases(omega, N)
    F = (1j * k * omega + alpha * ph) * a + alpha * eps * _conv(ph * a, a)
    return F[1:]


def eval_F(eps, state):
    """Residual as a real vector (Re F_1..F_N, Im F_1..F_N)."""
    F = _eval_complex(eps, state.alpha, state.omega, state.modes())
    return np.concatenate((F.real, F.imag))


def eval_DF(eps, state):
    """Jacobian of eval_F with respect to (alpha, omega, Re c, Im c)."""
    alpha, omega, a = state.alpha, state.omega, state.modes()
    N = state.N
    k = np.arange(N + 1)
    ph = _phases(omega, N)
    diag = 1j * k * omega + alpha * ph
    ua = ph * a
    cols = []
    cols.append(ph * a + eps * _conv(ua, a))
    dph = -1j * k * ph
    cols.append(1j * k * a + alpha * dph * a + alpha * eps * _conv(dph * a, a))
    for direction in (1.0, 1j):
        for j in range(2, N + 1):
            h = np.zeros(N + 1, dtype=complex)
            h[j] = direction
            cols.append(diag * h + alpha * eps * (_conv(ph * h, a) + _conv(ua, h)))
    J = np.array([col[1:] for col in cols]).T
    return np.vstack((J.real, J.imag))


def newton_solve(eps, guess=None, N=32, max_iter=MAX_ITER):
    state = approximate_state(eps, N) if guess is None else _resize(guess, N)
    x = state.to_real()
    for _ in range(max_iter):
        st = TruncatedState.from_real(x)
        step = np.linalg.solve(eval_DF(eps, st), -eval_F(eps, st))
        x = x + step
        res = np.max(np.abs(eval_F(eps, TruncatedState.from_real(x))))
        if res < RESIDUAL_TOL and np.max(np.abs(step)) < STEP_TOL:
            return TruncatedState.from_real(x)
    raise ConvergenceError(f"Newton did not converge at eps={eps!r}")


def _resize(state, N):
    c = np.zeros(N - 1, dtype=complex)
    m = min(N - 1, len(state.c))
    c[:m] = state.c[:m]
    return TruncatedState(state.alpha, state.omega, c)


def default_grid(eps_max=0.1, points=100):
    return [eps_max * (i + 1) / points for i in range(points)]


def continue_branch(eps_grid, N=32, fd_step=FD_STEP, seed=None):
    """Follow the branch along an increasing eps grid, seeding each solve.

    ``seed`` optionally replaces the default approximation as the first guess.
    """
    grid = list(eps_grid)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("eps grid must be strictly increasing")
    out = []
    prev = seed
    for eps in grid:
        st = newton_solve(eps, prev, N)
        plus = newton_solve(eps + fd_step, st, N)
        minus = newton_solve(eps - fd_step, st, N)
        deriv = (plus.alpha - minus.alpha) / (2 * fd_step)
        _, defect = reconstruct_solution(st, eps)
        out.append(BranchPoint(eps, st, deriv, defect))
        prev = st
    return out


def reconstruct_solution(state, eps, samples=4096):
    """Return (y, defect): a sampler for y(t) and sup |y' + alpha y(t-1)(1 + y)|."""
    a = state.modes()
    k = np.arange(len(a))
    omega, alpha = state.omega, state.alpha

    def y(t):
        t = np.asarray(t, dtype=float)
        phase = np.exp(1j * omega * np.multiply.outer(t, k))
        return 2 * eps * (phase @ a).real

    def dy(t):
        phase = np.exp(1j * omega * np.multiply.outer(t, k))
        return 2 * eps * (phase @ (1j * omega * k * a)).real

    if eps == 0:
        return y, 0.0
    t = np.linspace(0.0, 2 * math.pi / omega, samples, endpoint=False)
    yt = y(t)
    defect = np.max(np.abs(dy(t) + alpha * y(t - 1.0) * (1 + yt)))
    return y, float(defect)


def branch_csv(points):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for p in points:
        w.writerow([repr(float(p.eps)), repr(p.state.alpha), repr(p.state.omega),
                    repr(float(p.dalpha_deps)), repr(p.state.c_norm()), repr(p.defect)])
    return buf.getvalue()
