"""SVG drawing of Euclidean (level 0) integral packings.

Each circle carries its curvature k and the complex number k*z, z its
center.  The generators act on the k*z coordinates by the same linear rule
as on curvatures, so placing the four root circles once places everything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .core_forms import Quadruple, descartes_form

TOLERANCE = 1e-9


@dataclass(frozen=True)
class CirclePlacement:
    curvature: int
    center: complex

    @property
    def radius(self) -> float:
        return 1.0 / abs(self.curvature)


def tangent(p: CirclePlacement, q: CirclePlacement, tol: float = TOLERANCE) -> bool:
    """Signed radii 1/k make internal and external tangency one condition."""
    gap = abs(1.0 / p.curvature + 1.0 / q.curvature)
    dist = abs(p.center - q.center)
    return abs(dist - gap) <= tol * max(1.0, gap)


def _check_root(root: Quadruple) -> Quadruple:
    from .reduction import Kind, classify_reduced, is_reduced

    q = tuple(sorted(root))
    if descartes_form(q) != 0:  # type: ignore[arg-type]
        raise ValueError(f"{q} has level {descartes_form(q)}; only level 0 packings are drawn")  # type: ignore[arg-type]
    if not is_reduced(q) or classify_reduced(q) is not Kind.ROOT:  # type: ignore[arg-type]
        raise ValueError(f"{q} is not a root quadruple")
    if q[0] >= 0:
        raise ValueError(f"{q} has no bounding circle (smallest curvature must be negative)")
    return q  # type: ignore[return-value]


def _intersect(z1: complex, r1: float, z2: complex, r2: float) -> Tuple[complex, complex]:
    """The two points at distance r1 from z1 and r2 from z2."""
    base = abs(z2 - z1)
    u = (z2 - z1) / base
    x = (r1 * r1 - r2 * r2 + base * base) / (2 * base)
    h = r1 * r1 - x * x
    # Rounding residue near a tangent (single-point) intersection.
    y = math.sqrt(h) if h > 1e-12 * r1 * r1 else 0.0
    return z1 + u * complex(x, y), z1 + u * complex(x, -y)


def initial_placement(root: Sequence[int]) -> Tuple[CirclePlacement, ...]:
    """The root circles: bounding circle at the origin, the next on the real axis."""
    a, b, c, d = _check_root(tuple(root))  # type: ignore[arg-type]
    R = -1.0 / a
    rb, rc, rd = 1.0 / b, 1.0 / c, 1.0 / d
    za, zb = 0j, complex(R - rb, 0.0)
    zc = _intersect(za, R - rc, zb, rb + rc)[0]
    circles = [CirclePlacement(a, za), CirclePlacement(b, zb), CirclePlacement(c, zc)]
    # Of the two spots touching a and b, d takes the one that also touches c.
    cands = [CirclePlacement(d, z) for z in _intersect(za, R - rd, zb, rb + rd)]
    best = min(cands, key=lambda p: abs(abs(p.center - zc) - (rc + rd)))
    if not tangent(best, circles[2], 1e-9):
        raise AssertionError(f"could not place the fourth circle of {root}")
    return tuple(circles + [best])


def packing_circles(root: Sequence[int], depth: int) -> List[CirclePlacement]:
    """Circles reached by group words of length <= depth, tangency-checked."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    start = initial_placement(root)
    ks = tuple(p.curvature for p in start)
    ws = tuple(p.curvature * p.center for p in start)
    found = {}

    def add(p: CirclePlacement) -> None:
        key = (p.curvature, round(p.center.real, 9), round(p.center.imag, 9))
        found.setdefault(key, p)

    def check(k, w) -> None:
        ps = [CirclePlacement(k[i], w[i] / k[i]) for i in range(4)]
        for i in range(4):
            for j in range(i + 1, 4):
                if not tangent(ps[i], ps[j]):
                    raise AssertionError(f"circles {ps[i]} and {ps[j]} are not tangent")

    for p in start:
        add(p)
    check(ks, ws)
    stack = [(ks, ws, 0, 0)]
    while stack:
        k, w, level, last = stack.pop()
        if level == depth:
            continue
        for i in range(4):
            if i + 1 == last:
                continue
            nk = 2 * (sum(k) - k[i]) - k[i]
            if nk == k[i] and level == 0 and _same(w, i):
                continue
            nw = 2 * (sum(w) - w[i]) - w[i]
            k2 = k[:i] + (nk,) + k[i + 1:]
            w2 = w[:i] + (nw,) + w[i + 1:]
            check(k2, w2)
            add(CirclePlacement(nk, nw / nk))
            stack.append((k2, w2, level + 1, i + 1))
    return sorted(found.values(), key=lambda p: (p.curvature, p.center.real, p.center.imag))


def _same(w, i) -> bool:
    nw = 2 * (sum(w) - w[i]) - w[i]
    return abs(nw - w[i]) <= TOLERANCE * max(1.0, abs(w[i]))


def render_svg(root: Sequence[int], depth: int, size: int = 512) -> str:
    """SVG text for the packing of a Euclidean root quadruple."""
    circles = packing_circles(root, depth)
    outer = min(circles, key=lambda p: p.curvature)
    scale = size / (2 * outer.radius)
    half = size / 2

    def fmt(v: float) -> str:
        s = f"{v:.6f}"
        return "0.000000" if s == "-0.000000" else s

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<!-- root {",".join(str(v) for v in sorted(root))} depth {depth} circles {len(circles)} -->',
    ]
    for p in circles:
        cx = half + (p.center.real - outer.center.real) * scale
        cy = half - (p.center.imag - outer.center.imag) * scale
        r = p.radius * scale
        fill = "none" if p.curvature < 0 else "#dde6f2"
        lines.append(
            f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(r)}" data-k="{p.curvature}" '
            f'fill="{fill}" stroke="black" stroke-width="0.5"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
