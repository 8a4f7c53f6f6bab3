"""Numerical K-group of the plane: classes (r, c1, chi), Euler pairings,
twists and conversion to quiver dimension vectors of the heart A(j).

The heart A(j) is generated by O(j-1)[2], O(j)[1] and O(j+1), so a
dimension vector (n_m1, n_0, n_p1) has class
n_m1 [O(j-1)] - n_0 [O(j)] + n_p1 [O(j+1)].
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class NumClass:
    r: int
    c1: int
    chi: int

    def __add__(self, o):
        return NumClass(self.r + o.r, self.c1 + o.c1, self.chi + o.chi)

    def __sub__(self, o):
        return NumClass(self.r - o.r, self.c1 - o.c1, self.chi - o.chi)

    def __neg__(self):
        return NumClass(-self.r, -self.c1, -self.chi)

    def __mul__(self, k: int):
        return NumClass(k * self.r, k * self.c1, k * self.chi)

    __rmul__ = __mul__

    def astuple(self):
        return (self.r, self.c1, self.chi)


@dataclass(frozen=True)
class DimVector:
    n_m1: int
    n_0: int
    n_p1: int
    region: int = 0

    def astuple(self):
        return (self.n_m1, self.n_0, self.n_p1)

    @property
    def is_nonnegative(self) -> bool:
        return min(self.astuple()) >= 0

    @property
    def total(self) -> int:
        return self.n_m1 + self.n_0 + self.n_p1

    def __add__(self, o):
        _same_region(self, o)
        return DimVector(self.n_m1 + o.n_m1, self.n_0 + o.n_0, self.n_p1 + o.n_p1, self.region)

    def __sub__(self, o):
        _same_region(self, o)
        return DimVector(self.n_m1 - o.n_m1, self.n_0 - o.n_0, self.n_p1 - o.n_p1, self.region)

    def dot(self, v) -> Fraction | int:
        a, b, c = v
        return self.n_m1 * a + self.n_0 * b + self.n_p1 * c


class NotIntegralError(ValueError):
    """The class has no integral dimension vector in the requested region."""


def _same_region(m: DimVector, n: DimVector):
    if m.region != n.region:
        raise ValueError(f"region mismatch: {m.region} vs {n.region}")


def chi_line(m: int) -> int:
    return (m + 1) * (m + 2) // 2


def line_bundle(m: int) -> NumClass:
    """Class of O(m)."""
    return NumClass(1, m, chi_line(m))


def hilbert_class(n: int) -> NumClass:
    """Class (1, 0, 1-n) of an ideal sheaf of n points."""
    return NumClass(1, 0, 1 - n)


def hilbert_type(n: int, k: int) -> DimVector:
    """Dimension vector of F[1] (F an ideal sheaf of n points) in A(-k)."""
    return DimVector(n - k * (k - 1) // 2, 2 * n - k * k + 1, n - k * (k + 1) // 2, -k)


def euler_form_quiver(m: DimVector, n: DimVector) -> int:
    _same_region(m, n)
    a, b, c = m.astuple()
    x, y, z = n.astuple()
    return a * x + b * y + c * z - 3 * (a * y + b * z) + 6 * a * z


def euler_form_class(v: NumClass, w: NumClass) -> int:
    # Pulled back from the quiver form at j = 0 and simplified.
    r, c, x = v.r, v.c1, v.chi
    s, d, y = w.r, w.c1, w.chi
    return r * y + s * x - r * s - 3 * s * c - c * d


def to_num_class(d: DimVector, j: int | None = None) -> NumClass:
    if j is None:
        j = d.region
    return (d.n_m1 * line_bundle(j - 1) - d.n_0 * line_bundle(j)
            + d.n_p1 * line_bundle(j + 1))


def to_dim_vector(v: NumClass, j: int) -> DimVector:
    """Solve for the dimension vector of v in A(j).

    Negative entries are allowed as virtual data; check
    ``is_nonnegative``.
    """
    for x in v.astuple():
        if not isinstance(x, int):
            raise NotIntegralError(f"non-integral class {v}")
    # Untwist to region 0, where the generators have classes
    # (1,-1,0), (1,0,1), (1,1,3). The system is unimodular, so integral
    # classes always have integral solutions.
    u = twist(v, -j)
    n_p1 = u.chi - u.r - u.c1
    n_m1 = n_p1 - u.c1
    n_0 = 3 * n_p1 - u.chi
    return DimVector(n_m1, n_0, n_p1, j)


def twist(v: NumClass, m: int) -> NumClass:
    return NumClass(v.r, v.c1 + m * v.r, v.chi + m * v.c1 + v.r * m * (m + 3) // 2)
