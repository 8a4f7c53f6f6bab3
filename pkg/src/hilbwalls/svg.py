"""SVG rendering of the nested wall diagram and of the divisor fan.

Only this module converts exact values to floats.
"""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET

from .divisors import ConeReport
from .walls import Wall

SVG_NS = "http://www.w3.org/2000/svg"
ET.register_namespace("", SVG_NS)


def _el(parent, tag, **attrs):
    return ET.SubElement(parent, tag, {k.replace("_", "-"): str(v) for k, v in attrs.items()})


def _num(x: float) -> str:
    return f"{x:.3f}"


def walls_group(parent, walls: list[Wall], origin=(20.0, 280.0), width=360.0):
    """One <path> per wall: the upper semicircle over [left, right]."""
    g = _el(parent, "g", id="walls")
    lo = min((w.left_endpoint() for w in walls), default=-1.0)
    lo = min(lo, -1.0)
    scale = width / (-lo * 1.05)
    ox, oy = origin[0] + width, origin[1]
    X = lambda s: ox + s * scale
    _el(g, "line", x1=_num(origin[0]), y1=_num(oy), x2=_num(ox + 10), y2=_num(oy),
        stroke="black", stroke_width="1")
    _el(g, "line", x1=_num(ox), y1=_num(oy), x2=_num(ox), y2=_num(oy - width * 0.7),
        stroke="black", stroke_width="1")
    for w in walls:
        r = math.sqrt(w.radius_sq) * scale
        x0, x1 = X(w.left_endpoint()), X(w.right_endpoint())
        d = f"M {_num(x0)} {_num(oy)} A {_num(r)} {_num(r)} 0 0 1 {_num(x1)} {_num(oy)}"
        _el(g, "path", d=d, fill="none", stroke="steelblue", stroke_width="1.5",
            data_center=str(w.center), data_status=w.status)
    return g


def _direction(h, delta, side):
    """Plot direction of alpha H + beta Delta: H points up, -Delta sideways."""
    x, y = float(-delta), float(h)
    if side == "right" and x < 0:
        x = -x
    if side == "left" and x > 0:
        x = -x
    n = math.hypot(x, y) or 1.0
    return x / n, y / n


def cone_group(parent, rep: ConeReport, origin=(220.0, 560.0), length=200.0):
    g = _el(parent, "g", id="cone", data_space=rep.space)
    ox, oy = origin
    for ray in rep.rays:
        if ray.divisor is not None:
            h, delta = ray.divisor.h, ray.divisor.delta
            if rep.space == "p2":
                dx, dy = float(-delta), float(h)
                nrm = math.hypot(dx, dy)
                dx, dy = dx / nrm, dy / nrm
            else:
                dx, dy = _direction(h, delta, ray.side)
        else:
            m = _mirror_h(ray)
            dx, dy = _direction(m, -0.5, "right")
        x1, y1 = ox + dx * length, oy - dy * length
        colour = {"Eff boundary": "darkred", "candidate Eff boundary": "darkred",
                  "Nef boundary": "darkgreen"}.get(ray.role, "gray")
        _el(g, "line", x1=_num(ox), y1=_num(oy), x2=_num(x1), y2=_num(y1),
            stroke=colour, stroke_width="1.2", data_role=ray.role, data_side=ray.side)
        t = _el(g, "text", x=_num(x1), y=_num(y1 - 4), font_size="9")
        t.text = ray.label
    return g


def _mirror_h(ray) -> float:
    # "T(mH - Δ/2)": recover m from the center, -m - 3/2.
    return float(-ray.center) - 1.5


def render(walls: list[Wall] | None = None, cone: ConeReport | None = None) -> str:
    root = ET.Element(f"{{{SVG_NS}}}svg", {"width": "440", "height": "600",
                                           "viewBox": "0 0 440 600"})
    if walls:
        walls_group(root, walls)
    if cone is not None:
        cone_group(root, cone)
    return ET.tostring(root, encoding="unicode")
