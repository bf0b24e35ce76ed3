"""Three-component upper-bound vectors and 3x3 upper-bound matrices.

Components are indexed (alpha, omega, c).  A vector bounds an element of
R^2 x l1 by (|alpha|, |omega|, ||c||); a matrix bounds a linear operator
entrywise in the same sense.
"""

from .interval import Interval

NAMES = ("alpha", "omega", "c")


def _iv(x):
    return x if isinstance(x, Interval) else Interval(x)


class UBVec:
    __slots__ = ("alpha", "omega", "c")

    def __init__(self, alpha, omega, c):
        self.alpha = _iv(alpha)
        self.omega = _iv(omega)
        self.c = _iv(c)

    def __iter__(self):
        return iter((self.alpha, self.omega, self.c))

    def __getitem__(self, i):
        return (self.alpha, self.omega, self.c)[i]

    def __add__(self, other):
        return UBVec(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return UBVec(*(a - b for a, b in zip(self, other)))

    def scale(self, s):
        return UBVec(*(a * s for a in self))

    def is_nonnegative(self):
        return all(a.lo >= 0 for a in self)

    def certainly_negative(self):
        return all(a.hi < 0 for a in self)

    def __repr__(self):
        return f"UBVec({self.alpha!r}, {self.omega!r}, {self.c!r})"


class UBMat:
    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_iv(x) for x in row) for row in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("UBMat needs a 3x3 array")
        self.rows = rows

    @classmethod
    def identity(cls):
        return cls([[1.0 if i == j else 0.0 for j in range(3)] for i in range(3)])

    @classmethod
    def zeros(cls):
        return cls([[0.0] * 3 for _ in range(3)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        return UBMat([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def scale(self, s):
        return UBMat([[a * s for a in row] for row in self.rows])

    def __matmul__(self, other):
        if isinstance(other, UBVec):
            return UBVec(*(row[0] * other[0] + row[1] * other[1] + row[2] * other[2]
                           for row in self.rows))
        cols = list(zip(*other.rows))
        return UBMat([[r[0] * c[0] + r[1] * c[1] + r[2] * c[2] for c in cols]
                      for r in self.rows])

    def is_nonnegative(self):
        return all(x.lo >= 0 for row in self.rows for x in row)

    def __repr__(self):
        return f"UBMat({self.rows!r})"
