"""Divisor classes alpha H + beta Delta on Hilb^n and the map from
Bridgeland walls to stable base locus walls (center -m-3/2 -> mH - Delta/2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .walls import Wall, candidate_walls, collapse_k, line_bundle_wall


@dataclass(frozen=True)
class DivisorClass:
    h: Fraction
    delta: Fraction

    def __init__(self, h, delta):
        object.__setattr__(self, "h", Fraction(h))
        object.__setattr__(self, "delta", Fraction(delta))

    def __add__(self, o):
        return DivisorClass(self.h + o.h, self.delta + o.delta)

    def __rmul__(self, c):
        return DivisorClass(c * self.h, c * self.delta)

    def cross(self, o) -> Fraction:
        return self.h * o.delta - o.h * self.delta

    def equivalent(self, o) -> bool:
        """Same ray: proportional by a positive scalar."""
        if self.cross(o) != 0:
            return False
        return self.h * o.h + self.delta * o.delta > 0

    def normalized(self) -> "DivisorClass":
        """H + (beta/alpha) Delta when alpha > 0, otherwise unchanged."""
        if self.h > 0:
            return DivisorClass(1, self.delta / self.h)
        return self

    def scaled_to_delta(self, beta=Fraction(-1, 2)) -> "DivisorClass":
        if self.delta == 0:
            raise ValueError("Delta coefficient is zero")
        return (Fraction(beta) / self.delta) * self

    def __str__(self):
        return fmt_divisor(self.h, self.delta)


def _q(x: Fraction) -> str:
    return str(x) if x.denominator == 1 else f"({x})"


def fmt_divisor(h, delta) -> str:
    h, delta = Fraction(h), Fraction(delta)
    parts = []
    if h:
        parts.append("H" if h == 1 else f"{_q(h)}H")
    if delta:
        mag = abs(delta)
        if mag.numerator == 1:
            d = "Δ" if mag == 1 else f"Δ/{mag.denominator}"
        elif mag.denominator == 1:
            d = f"{mag}Δ"
        else:
            d = f"{mag.numerator}Δ/{mag.denominator}"
        sign = "-" if delta < 0 else "+"
        parts.append(("-" + d) if not parts and delta < 0 else (d if not parts else f"{sign} {d}"))
    return " ".join(parts) if parts else "0"


H = DivisorClass(1, 0)
DELTA = DivisorClass(0, 1)


def A_k(n: int, k: int) -> DivisorClass:
    return DivisorClass(2 * n + (k - 1) * (k - 4), -(k - 1))


def B_k(n: int, k: int) -> DivisorClass:
    return DivisorClass(2 * n + (k - 2) * (k + 1), -(k + 1))


def gluing_matrix(n: int, k: int):
    return ((2 * n - k * (k + 1), 2 * n - k * (k - 1)),
            (-2 * n + (k + 1) * (k + 2), 3 * (2 * n - (k - 1) * (k + 2))))


def gluing_matrix_check(n: int, k: int) -> bool:
    """c_k (A_{k+1}, B_{k+1}) = M_k (A_k, B_k), coordinate-wise."""
    c = 2 * (2 * n - (k - 1) * (k + 1))
    M = gluing_matrix(n, k)
    Ak, Bk = A_k(n, k), B_k(n, k)
    lhs = (c * A_k(n, k + 1), c * B_k(n, k + 1))
    rhs = (M[0][0] * Ak + M[0][1] * Bk, M[1][0] * Ak + M[1][1] * Bk)
    return lhs == rhs


def f(n, s, k):
    return k * (2 * n + s * s) + s * (2 * n + k * k)


def divisor_at_raw(n: int, s, k: int) -> DivisorClass:
    """-f(n,s,k-1) B_k + f(n,s,k+1) A_k, unnormalized."""
    s = Fraction(s)
    return (-f(n, s, k - 1)) * B_k(n, k) + f(n, s, k + 1) * A_k(n, k)


def divisor_at(n: int, s, k: int) -> DivisorClass:
    """Divisor attached to (s, 0+) in A(-k), scaled so beta = -1/2."""
    s = Fraction(s)
    if s == 0:
        raise ValueError("s = 0")
    if not (-k - 1 < s < -k + 1):
        raise ValueError(f"s = {s} outside (-k-1, -k+1) for k = {k}")
    raw = divisor_at_raw(n, s, k)
    if raw.delta == 0:
        raise ValueError("degenerate combination (zero Delta coefficient)")
    return raw.scaled_to_delta()


def divisor_closed_form(n: int, s) -> DivisorClass:
    s = Fraction(s)
    return DivisorClass(-(2 * n + s * s) / (2 * s) - Fraction(3, 2), Fraction(-1, 2))


def wall_to_divisor(n: int, wall: Wall) -> DivisorClass:
    """Center -m-3/2 maps to mH - Delta/2."""
    m = -wall.center - Fraction(3, 2)
    return DivisorClass(m, Fraction(-1, 2))


@dataclass(frozen=True)
class Ray:
    label: str
    role: str
    divisor: DivisorClass | None = None
    side: str = "left"
    center: Fraction | None = None

    def as_dict(self) -> dict:
        d = {"label": self.label, "role": self.role, "side": self.side}
        if self.divisor is not None:
            d["divisor"] = {"h": str(self.divisor.h), "delta": str(self.divisor.delta)}
        if self.center is not None:
            d["center"] = str(self.center)
        return d


@dataclass
class ConeReport:
    n: int
    space: str
    rays: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def boundary(self, role: str) -> list:
        return [r for r in self.rays if r.role == role]

    def as_dict(self) -> dict:
        return {"n": self.n, "space": self.space,
                "rays": [r.as_dict() for r in self.rays],
                "warnings": list(self.warnings)}

    def text(self) -> str:
        lines = [f"Cone of Hilb^{self.n} ({'P2' if self.space == 'p2' else 'Sklyanin'})"]
        for r in self.rays:
            extra = f"  [wall center {r.center}]" if r.center is not None else ""
            lines.append(f"  {r.side:<5} {r.role:<22} {r.label}{extra}")
        lines += [f"  warning: {w}" for w in self.warnings]
        return "\n".join(lines)


def _ray_label(d: DivisorClass) -> str:
    return str(d.normalized() if d.h > 0 else d)


def cone_report(n: int, space: str = "p2", walls=None) -> ConeReport:
    if n < 2:
        raise ValueError("n must be at least 2")
    if space not in ("p2", "sklyanin"):
        raise ValueError(f"unknown space {space!r}")
    if walls is None:
        walls = candidate_walls(n)
    rep = ConeReport(n, space)
    outer = line_bundle_wall(n, 1).center
    # innermost semicircle <-> divisor furthest from H
    inner = max(w.center for w in walls)
    left = []
    for w in walls:
        d = wall_to_divisor(n, w)
        if w.center == outer:
            role = "Nef boundary"
        elif w.center == inner:
            role = "candidate Eff boundary"
        else:
            role = "wall"
        left.append(Ray(_ray_label(d), role, d, "left", w.center))
    if space == "p2":
        rep.rays.append(Ray("H", "Nef boundary", H, "left"))
        rep.rays += left
        rep.rays.append(Ray("Δ", "Eff boundary", DELTA, "right"))
        return rep
    if n < 3:
        rep.warnings.append("the symmetry of the positivity cone is only established for n >= 3")
    for r in left:
        role = "Eff boundary" if r.role == "candidate Eff boundary" else r.role
        rep.rays.append(Ray(r.label, role, r.divisor, "left", r.center))
    for r in reversed(left):
        role = "Eff boundary" if r.role == "candidate Eff boundary" else r.role
        m = r.divisor.h
        rep.rays.append(Ray(f"T({fmt_divisor(m, Fraction(-1, 2))})", role, None, "right", r.center))
    return rep
