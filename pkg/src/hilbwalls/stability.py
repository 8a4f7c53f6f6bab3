"""Central charge Z_{s,t} = -d + i r on the (s,t) upper half-plane, slopes,
quiver regions and the King character attached to a stability parameter."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ktheory import DimVector, NumClass, line_bundle

VERTICAL = math.inf
"""Returned by :func:`slope` when the imaginary part vanishes."""


@dataclass(frozen=True)
class StabilityParam:
    s: Fraction
    t: Fraction

    def __init__(self, s, t):
        object.__setattr__(self, "s", Fraction(s))
        object.__setattr__(self, "t", Fraction(t))
        if self.t <= 0:
            raise ValueError("t must be positive")


def _param(p) -> StabilityParam:
    """Accept a StabilityParam or an (s, t) pair."""
    if isinstance(p, StabilityParam):
        return p
    return StabilityParam(*p)


@dataclass(frozen=True)
class Character:
    rho: tuple
    total: DimVector

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(Fraction(x) for x in self.rho))

    def __iter__(self):
        return iter(self.rho)

    def __getitem__(self, i):
        return self.rho[i]

    def dot(self, d) -> Fraction:
        v = d.astuple() if isinstance(d, DimVector) else d
        return sum((a * b for a, b in zip(self.rho, v)), Fraction(0))

    def integral(self) -> tuple:
        """Smallest positive integral multiple."""
        return integral_rep(self.rho)

    def same_direction(self, other) -> bool:
        return same_ray(self.rho, tuple(other))


def integral_rep(v: Sequence) -> tuple:
    v = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints) or 1
    return tuple(x // g for x in ints)


def same_ray(u: Sequence, v: Sequence) -> bool:
    """True iff u = lambda v for some lambda > 0 (exact)."""
    u = [Fraction(x) for x in u]
    v = [Fraction(x) for x in v]
    if not any(u) or not any(v):
        return not any(u) and not any(v)
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return sum(a * b for a, b in zip(u, v)) > 0


def central_charge(v: NumClass, p) -> tuple[Fraction, Fraction]:
    p = _param(p)
    s, t = p.s, p.t
    r_st = (v.c1 - v.r * s) * t
    d_st = -v.r * t * t / 2 + (s * s / 2 - 1) * v.r - (Fraction(3, 2) + s) * v.c1 + v.chi
    return (-d_st, r_st)


def slope(v: NumClass, p):
    re, im = central_charge(v, p)
    if im == 0:
        return VERTICAL
    return -re / im


def quiver_regions(p) -> list[int]:
    p = _param(p)
    lo = math.floor(p.s) - 1
    return [j for j in range(lo, lo + 4) if (p.s - j) ** 2 + p.t ** 2 < 1]


def generator_charges(p, j: int) -> list[tuple[Fraction, Fraction]]:
    """Charges of O(j-1)[2], O(j)[1], O(j+1)."""
    p = _param(p)
    signs = (1, -1, 1)
    out = []
    for sign, m in zip(signs, (j - 1, j, j + 1)):
        re, im = central_charge(line_bundle(m), p)
        out.append((sign * re, sign * im))
    return out


def character_from_charges(total: DimVector, charges) -> Character:
    """rho = -a + b (n.a / n.b), oriented so that n.b > 0.

    The raw formula changes sign with Z -> -Z, so the orientation is
    fixed by rotating the charge of the total object into the upper
    half-plane. This makes the result depend only on Z up to rotation.
    """
    a = [Fraction(c[0]) for c in charges]
    b = [Fraction(c[1]) for c in charges]
    na = total.dot(a)
    nb = total.dot(b)
    if nb == 0:
        raise ValueError("degenerate direction: n.b = 0")
    raw = [-ai + bi * na / nb for ai, bi in zip(a, b)]
    if nb < 0:
        raw = [-x for x in raw]
    return Character(tuple(raw), total)


def character_rho(total: DimVector, p, j: int | None = None,
                  check_region: bool = True) -> Character:
    p = _param(p)
    if j is None:
        j = total.region
    if check_region and j not in quiver_regions(p):
        raise ValueError(f"region {j} does not contain ({p.s}, {p.t})")
    return character_from_charges(total, generator_charges(p, j))


def _f(n, s, k):
    return k * (2 * n + s * s) + s * (2 * n + k * k)


def character_rho_limit(n: int, s, k: int) -> Character:
    """Direction of rho as t -> 0 in A(-k) for the Hilbert type."""
    from .ktheory import hilbert_type
    s = Fraction(s)
    if not (-k - 1 <= s <= -k + 1):
        raise ValueError("s outside [-k-1, -k+1]")
    return Character((_f(n, s, k + 1), -_f(n, s, k), _f(n, s, k - 1)), hilbert_type(n, k))


def hilbert_chamber_character(n: int, m: int) -> Character:
    if m < 2:
        raise ValueError("m must be at least 2")
    return Character(((2 * n + 1) * (m - 1), n, -(2 * n + 1) * m),
                     DimVector(n, 2 * n + 1, n, 0))
