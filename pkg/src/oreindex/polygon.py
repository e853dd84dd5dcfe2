"""phi-adic Newton polygons and their residual polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .ffield import GF, FqPoly, prime_field
from .zx import INFINITY, IntPoly, _vp, check_prime, vp_poly

Point = tuple[int, int]


@dataclass(frozen=True)
class PhiExpansion:
    """F = sum(terms[i] * phi^i) with deg terms[i] < deg phi."""

    phi: IntPoly
    terms: tuple[IntPoly, ...]
    p: int

    @cached_property
    def valuations(self) -> tuple[int | float, ...]:
        return tuple(vp_poly(t, self.p) for t in self.terms)

    def reconstruct(self) -> IntPoly:
        acc = IntPoly()
        for t in reversed(self.terms):
            acc = acc * self.phi + t
        return acc


def phi_expand(F: IntPoly, phi: IntPoly, p: int) -> PhiExpansion:
    check_prime(p)
    if not phi.is_monic() or phi.degree < 1:
        raise ValueError("phi must be monic of positive degree")
    if phi.degree > F.degree:
        raise ValueError("deg phi exceeds deg F")
    if phi.degree == 1:
        # Taylor shift is much faster than repeated division for x - s
        shifted = F.shift(-phi[0])
        terms = tuple(IntPoly((c,)) for c in shifted.coeffs)
        return PhiExpansion(phi, terms, p)
    terms = []
    g = F
    while not g.is_zero():
        g, r = divmod(g, phi)
        terms.append(r)
    return PhiExpansion(phi, tuple(terms), p)


@dataclass(frozen=True)
class Side:
    start: Point
    end: Point

    @property
    def length(self) -> int:
        return self.end[0] - self.start[0]

    @property
    def height(self) -> int:
        return self.start[1] - self.end[1]

    @property
    def degree(self) -> int:
        return math.gcd(self.length, abs(self.height))

    @property
    def e(self) -> int:
        return self.length // self.degree

    @property
    def h(self) -> int:
        return self.height // self.degree

    @property
    def slope(self) -> Fraction:
        return Fraction(-self.height, self.length)

    def slope_str(self) -> str:
        s = self.slope
        return str(s.numerator) if s.denominator == 1 else f"{s.numerator}/{s.denominator}"

    def height_at(self, x) -> Fraction:
        return self.start[1] + self.slope * (x - self.start[0])

    def to_dict(self) -> dict:
        return {
            "start": list(self.start),
            "end": list(self.end),
            "slope": self.slope_str(),
            "length": self.length,
            "height": self.height,
            "degree": self.degree,
        }

    def __str__(self) -> str:
        return f"{self.start}-{self.end}"


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[Point]) -> list[Point]:
    """Vertices of the lower convex hull, collinear points dropped."""
    pts = sorted(set(points))
    hull: list[Point] = []
    for pt in pts:
        # equal abscissae: only the lowest point can be on the lower hull
        if hull and hull[-1][0] == pt[0]:
            continue
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[Point, ...]
    vertices: tuple[Point, ...]
    sides: tuple[Side, ...]

    @classmethod
    def from_points(cls, points: Sequence[Point]) -> NewtonPolygon:
        if not points:
            raise ValueError("Newton polygon of the zero polynomial")
        pts = tuple(sorted(points))
        verts = tuple(lower_hull(pts))
        sides = tuple(Side(a, b) for a, b in zip(verts, verts[1:]))
        return cls(pts, verts, sides)

    @classmethod
    def from_ordinates(cls, ordinates: Sequence[int | float]) -> NewtonPolygon:
        return cls.from_points([(i, u) for i, u in enumerate(ordinates) if u != INFINITY])

    @property
    def principal_sides(self) -> tuple[Side, ...]:
        return tuple(s for s in self.sides if s.height > 0)

    @property
    def principal_vertices(self) -> tuple[Point, ...]:
        sides = self.principal_sides
        if not sides:
            return ()
        return (sides[0].start,) + tuple(s.end for s in sides)

    def height_at(self, x) -> Fraction | None:
        """Exact height of the principal part at abscissa x (None outside)."""
        for s in self.principal_sides:
            if s.start[0] <= x <= s.end[0]:
                return Fraction(s.start[1]) + s.slope * (x - s.start[0])
        return None

    def lattice_count(self) -> int:
        """Points (x, y), x >= 1, y >= 1, on or under the principal part."""
        total = 0
        for s in self.principal_sides:
            x0 = max(s.start[0], 1)
            # the shared vertex belongs to the left side only
            for x in range(x0, s.end[0]):
                y = s.height_at(x)
                total += math.floor(y)
            # skip x == end; counted by the next side or at height 0
        return total

    def to_dict(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "vertices": [list(v) for v in self.vertices],
            "sides": [s.to_dict() for s in self.sides],
            "principal_vertices": [list(v) for v in self.principal_vertices],
            "principal_sides": [s.to_dict() for s in self.principal_sides],
            "lattice_count": self.lattice_count(),
        }


def newton_polygon(exp: PhiExpansion) -> NewtonPolygon:
    return NewtonPolygon.from_ordinates(exp.valuations)


def residue_field(phi: IntPoly, p: int) -> GF:
    """F_phi = F_p[x]/(phi mod p)."""
    if phi.degree == 1:
        return prime_field(p)
    return GF(p, phi.coeffs)


@dataclass(frozen=True)
class ResidualPoly:
    side: Side
    poly: FqPoly
    attach: Point = field(default=(0, 0))

    @property
    def degree(self) -> int:
        return self.poly.degree


def residual_poly_from_expansion(exp: PhiExpansion, side: Side, F_phi: GF | None = None) -> ResidualPoly:
    if side.height <= 0:
        raise ValueError(f"side {side} is not principal")
    p = exp.p
    F_phi = F_phi or residue_field(exp.phi, p)
    s, us = side.start
    e, h, d = side.e, side.h, side.degree
    vals = exp.valuations
    coeffs = []
    for i in range(d + 1):
        j = s + i * e
        u = us - i * h
        if j < len(vals) and vals[j] == u:
            pw = p**u
            t = exp.terms[j]
            coeffs.append(F_phi.elem([c // pw for c in t.coeffs]))
        else:
            coeffs.append(F_phi.zero)
    poly = FqPoly(F_phi, coeffs)
    if poly.degree != d or poly.coeffs[0] == F_phi.zero:
        raise ValueError(f"side {side} is not a side of this polygon")
    return ResidualPoly(side, poly, (s, us))


def residual_poly(F: IntPoly, phi: IntPoly, p: int, side: Side) -> ResidualPoly:
    exp = phi_expand(F, phi, p)
    poly = newton_polygon(exp)
    if side not in poly.principal_sides:
        raise ValueError(f"{side} is not a principal side of the polygon")
    return residual_poly_from_expansion(exp, side)


def phi_index(F: IntPoly, phi: IntPoly, p: int) -> int:
    """deg(phi) times the lattice count under the principal polygon."""
    exp = phi_expand(F, phi, p)
    if exp.valuations[0] == INFINITY:
        raise ValueError("phi divides F exactly; the phi-index is unbounded")
    return phi.degree * newton_polygon(exp).lattice_count()


def render_svg(polygon: NewtonPolygon, scale: int = 40, margin: int = 30) -> str:
    """SVG of the point cloud, the polygon and the counted lattice points."""
    pts = polygon.points
    xmax = max(x for x, _ in pts)
    ymax = max(y for _, y in pts)
    width = xmax * scale + 2 * margin
    height = ymax * scale + 2 * margin

    def X(x):
        return margin + x * scale

    def Y(y):
        return height - margin - y * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{X(0)}" y1="{Y(0)}" x2="{X(xmax)}" y2="{Y(0)}" stroke="black"/>',
        f'<line x1="{X(0)}" y1="{Y(0)}" x2="{X(0)}" y2="{Y(ymax)}" stroke="black"/>',
    ]
    verts = polygon.vertices
    line = " ".join(f"{X(x)},{Y(y)}" for x, y in verts)
    out.append(f'<polyline points="{line}" fill="none" stroke="gray" stroke-dasharray="4"/>')
    pverts = polygon.principal_vertices
    if pverts:
        line = " ".join(f"{X(x)},{Y(y)}" for x, y in pverts)
        out.append(f'<polyline points="{line}" fill="none" stroke="blue" stroke-width="2"/>')
    for x, y in pts:
        out.append(f'<circle cx="{X(x)}" cy="{Y(y)}" r="3" fill="black"/>')
    for s in polygon.principal_sides:
        for x in range(max(s.start[0], 1), s.end[0]):
            for y in range(1, math.floor(s.height_at(x)) + 1):
                cx, cy = X(x), Y(y)
                out.append(
                    f'<path d="M{cx - 3},{cy - 3} L{cx + 3},{cy + 3} M{cx - 3},{cy + 3} '
                    f'L{cx + 3},{cy - 3}" stroke="red"/>'
                )
    out.append("</svg>")
    return "\n".join(out) + "\n"
