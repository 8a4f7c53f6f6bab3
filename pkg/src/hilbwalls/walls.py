"""Potential walls for the Hilbert class (1, 0, 1-n), candidate enumeration
in the left quadrant, nesting and the splitting bound for the exceptional
locus.

All comparisons that involve a radius are done on squares, so nothing in
this module touches floating point.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .ktheory import (DimVector, NumClass, euler_form_quiver, hilbert_class,
                      hilbert_type, to_num_class)

# --------------------------------------------------------------------------
# Wall geometry


@dataclass(frozen=True)
class Wall:
    center: Fraction
    radius_sq: Fraction
    n: int | None = None
    witnesses: tuple = ()
    status: str = "candidate"

    def cmp_right(self, x) -> int:
        """Sign of (right endpoint - x)."""
        d = Fraction(x) - self.center
        if d < 0:
            return 1
        return (self.radius_sq > d * d) - (self.radius_sq < d * d)

    def cmp_left(self, x) -> int:
        """Sign of (left endpoint - x)."""
        d = self.center - Fraction(x)
        if d <= 0:
            return -1
        return (d * d > self.radius_sq) - (d * d < self.radius_sq)

    def contains(self, other: "Wall") -> bool:
        """True iff other's closed interval lies inside this one's."""
        d = other.center - self.center
        x = self.radius_sq - other.radius_sq - d * d
        return x >= 0 and x * x >= 4 * d * d * other.radius_sq

    def right_endpoint(self) -> float:
        """Float approximation, for display only."""
        return float(self.center) + math.sqrt(self.radius_sq)

    def left_endpoint(self) -> float:
        return float(self.center) - math.sqrt(self.radius_sq)

    def on_wall(self, s, t) -> bool:
        return (Fraction(s) - self.center) ** 2 + Fraction(t) ** 2 == self.radius_sq


@dataclass(frozen=True)
class VerticalWall:
    s: Fraction


@dataclass(frozen=True)
class EmptyWall:
    pass


@dataclass(frozen=True)
class DegenerateWall:
    pass


EMPTY = EmptyWall()
DEGENERATE = DegenerateWall()


def wall_coefficients(v: NumClass, w: NumClass):
    """(A, B, C) with the wall being A(s^2+t^2) + B s + C = 0."""
    r, c, x = v.astuple()
    r2, c2, x2 = w.astuple()
    A = Fraction(c * r2 - c2 * r, 2)
    B = Fraction(x2 * r - x * r2) + Fraction(3, 2) * (r2 * c - r * c2)
    C = Fraction(c * r2 - c2 * r + x * c2 - x2 * c)
    return A, B, C


def potential_wall(v: NumClass, w: NumClass, n: int | None = None, witnesses=()):
    """Locus where v and w have equal slope."""
    A, B, C = wall_coefficients(v, w)
    if A == 0:
        if B != 0:
            return VerticalWall(-C / B)
        return DEGENERATE if C == 0 else EMPTY
    center = -B / (2 * A)
    rsq = center * center - C / A
    if rsq <= 0:
        return EMPTY
    if n is None and v.r == 1 and v.c1 == 0:
        n = 1 - v.chi
    return Wall(center, rsq, n, tuple(witnesses))


# --------------------------------------------------------------------------
# Special walls


def collapse_k(n: int) -> int:
    k = 1
    while (k + 1) * (k + 2) <= 2 * n:
        k += 1
    return k


def collapsing_wall(n: int) -> Wall:
    if n < 1:
        raise ValueError("n must be positive")
    k = collapse_k(n)
    center = Fraction(-(2 * n + k * k), 2 * k)
    return Wall(center, center * center - 2 * n, n,
                ((-k, DimVector(0, 1, 0, -k)),), "confirmed")


def line_bundle_wall(n: int, k: int) -> Wall:
    """Wall of O(-k)[1], the type (0,1,0) in A(-k); right endpoint -k."""
    center = Fraction(-(2 * n + k * k), 2 * k)
    return Wall(center, center * center - 2 * n, n, ((-k, DimVector(0, 1, 0, -k)),))


# --------------------------------------------------------------------------
# Candidate enumeration


@dataclass(frozen=True)
class WallCandidate:
    a: int
    r: int
    l: int
    k: int
    n: int

    @property
    def sub(self) -> DimVector:
        return DimVector(self.a + self.l, 2 * self.a + self.r + self.l, self.a, -self.k)

    @property
    def quotient(self) -> DimVector:
        return hilbert_type(self.n, self.k) - self.sub


BOUNDARY_TYPE = (0, 1, 0)
EXCEPTIONAL_TYPES = ((0, 3, 1),)


def max_r(n: int, k: int) -> int:
    """Largest r >= 1 with r (k+1)^2 > (r-1)(2n+r-1)."""
    r = 1
    while (r + 1) * (k + 1) ** 2 > r * (2 * n + r):
        r += 1
    return r


def _ratio_signs(sub, total):
    """Signs of sub against the t -> 0 characters at s = -k-1 and s = -k."""
    m1, z, p1 = total
    x, y, w = sub
    left = y * p1 - w * z  # sub . (0, n_1, -n_0)
    right = x * p1 - w * m1  # sub . (n_1, 0, -n_{-1})
    return left, right


def candidate_passes(n: int, k: int, a: int, r: int, l: int,
                     exceptions: bool = True) -> bool:
    total = hilbert_type(n, k).astuple()
    sub = (a + l, 2 * a + r + l, a)
    if any(x < 0 or x > t for x, t in zip(sub, total)) or sub == total or not any(sub):
        return False
    # (1)
    if a + l < 0:
        return False
    # (2) 1 - chi(quotient, quotient) >= 0 in the lemma's coordinates
    L = (k - l) ** 2 - (r - 1) * (2 * n - k * k + 1 - 2 * a - l - r) - 2 * (r - 1) ** 2 + 1
    if L < 0:
        return False
    left, right = _ratio_signs(sub, total)
    if (a, r, l) == BOUNDARY_TYPE:
        # O(-k)[1]: its wall ends exactly at -k, so the right sign is 0
        # and the left one may degenerate to 0 when n_1 = 0.
        return left >= 0 and right == 0
    # (3)
    if not (left > 0 and right <= 0):
        return False
    # (4)
    if l + r > a:
        return False
    if r >= 2 and 2 * a < 3 * (r + l):
        if not (exceptions and sub in EXCEPTIONAL_TYPES):
            return False
    # (5)
    if r >= 2 and not r * (k + 1) ** 2 > (r - 1) * (2 * n + r - 1):
        return False
    return True


def enumerate_candidates(n: int, k: int, exceptions: bool = True,
                         factor: int = 1) -> list[WallCandidate]:
    total = hilbert_type(n, k)
    if not total.is_nonnegative or n < 1:
        return []
    m1, n0, p1 = total.astuple()
    a_max = factor * p1
    r_max = factor * max_r(n, k)
    l_span = factor * (m1 + n0 + 1)
    out = []
    for a in range(0, a_max + 1):
        for r in range(-r_max, r_max + 1):
            for l in range(-a - l_span, a + l_span + 1):
                if candidate_passes(n, k, a, r, l, exceptions):
                    out.append(WallCandidate(a, r, l, k, n))
    return out


def candidate_wall(c: WallCandidate):
    return potential_wall(hilbert_class(c.n), to_num_class(c.sub), c.n,
                          ((-c.k, c.sub),))


def _walls_for_k(args):
    n, k, exceptions, factor = args
    out = []
    for c in enumerate_candidates(n, k, exceptions, factor):
        w = candidate_wall(c)
        if isinstance(w, Wall) and w.cmp_right(-k - 1) > 0 and w.cmp_right(-k) <= 0:
            out.append(w)
    return out


def valid_regions(n: int, factor: int = 1) -> list[int]:
    """k >= 1 with nonnegative Hilbert type in A(-k)."""
    ks = []
    k = 1
    while hilbert_type(n, k).is_nonnegative and k <= factor * (n + 1):
        ks.append(k)
        k += 1
    return ks


def merge_walls(walls: Iterable[Wall]) -> list[Wall]:
    by_center: dict[Fraction, Wall] = {}
    for w in walls:
        old = by_center.get(w.center)
        if old is None:
            by_center[w.center] = w
            continue
        if old.radius_sq != w.radius_sq:
            raise AssertionError("equal centers with different radii")
        wit = tuple(sorted(set(old.witnesses) | set(w.witnesses),
                           key=lambda x: (-x[0], x[1].astuple())))
        status = "confirmed" if "confirmed" in (old.status, w.status) else "candidate"
        by_center[w.center] = Wall(w.center, w.radius_sq, w.n, wit, status)
    return [by_center[c] for c in sorted(by_center)]


def candidate_walls(n: int, exceptions: bool = True, factor: int = 1,
                    jobs: int = 1) -> list[Wall]:
    """Candidate walls of Hilb^n P^2, sorted by center ascending.

    Only walls nested around the collapsing wall are kept: anything
    inside it cannot destabilize, since no object of this class is
    semistable there.
    """
    collapse = collapsing_wall(n)
    if n < 2:
        return [collapse]
    tasks = [(n, k, exceptions, factor) for k in valid_regions(n, factor)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            found = [w for ws in ex.map(_walls_for_k, tasks) for w in ws]
    else:
        found = [w for t in tasks for w in _walls_for_k(t)]
    found = [w for w in found if w.contains(collapse)]
    outer = line_bundle_wall(n, 1)
    walls = merge_walls(found + [collapse])
    return [Wall(w.center, w.radius_sq, w.n, w.witnesses, "confirmed")
            if w.center == outer.center else w for w in walls]


def nesting_check(walls: list[Wall]) -> bool:
    for i, u in enumerate(walls):
        for v in walls[i + 1:]:
            if not (u.contains(v) or v.contains(u)):
                return False
    return True


# --------------------------------------------------------------------------
# Splittings at a wall


def splitting_filter(n_plus: DimVector, total: DimVector) -> bool:
    p = n_plus.astuple()
    t = total.astuple()
    if any(x < 0 or x > y for x, y in zip(p, t)):
        raise ValueError("need 0 <= n_plus <= total componentwise")
    m1, z, p1 = t
    return (p[0] * z - p[1] * m1 > 0) and (p[1] * p1 - p[2] * z > 0)


def exceptional_locus_bound(n_plus: DimVector, n_minus: DimVector) -> int:
    total = n_plus + n_minus
    k = -total.region
    n = total.n_m1 + k * (k - 1) // 2
    if total != hilbert_type(n, k):
        raise ValueError("n_plus + n_minus is not a Hilbert type")
    if not splitting_filter(n_plus, total):
        raise ValueError("splitting filter fails")
    return 2 * n + euler_form_quiver(n_plus, n_minus)
