"""Bounded cells of planar tropical polytopes and their SVG rendering.

A point of TP^2 is drawn at (x_2 - x_1, x_3 - x_1).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ProjectivePoint, TropicalHalfSpace
from .errors import DimensionError, InternalInconsistency
from .polytope import TropicalPolytope, cell_dimension, enumerate_pseudovertices, type_of


@dataclass(frozen=True)
class CellComplex:
    """Bounded cells: pseudovertices, edges as index pairs, faces as index cycles."""

    vertices: tuple
    edges: tuple
    faces: tuple

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def isolated_edges(self) -> list:
        """Edges that bound no 2-cell (lower-dimensional parts of the polytope)."""
        used = set()
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                used.add((min(a, b), max(a, b)))
        return [e for e in self.edges if e not in used]


def _contains_type(big, small) -> bool:
    return all(s <= b for s, b in zip(small, big))


def _xy(a: ProjectivePoint):
    return a[1], a[2]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _ccw_order(points: Sequence) -> list[int]:
    """Indices of planar points sorted counter-clockwise around their centroid."""
    k = len(points)
    cx = sum(p[0] for p in points) / k
    cy = sum(p[1] for p in points) / k
    c = (cx, cy)

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(i, j):
        hi, hj = half(points[i]), half(points[j])
        if hi != hj:
            return hi - hj
        cr = _cross(c, points[i], points[j])
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    return sorted(range(k), key=functools.cmp_to_key(cmp))


def _require_plane(P: TropicalPolytope):
    if P.n != 3:
        raise DimensionError("planar cell decomposition needs n = 3, got n = %d" % P.n)


def cell_complex(P: TropicalPolytope) -> CellComplex:
    """Bounded cells of the decomposition induced by the generators of a planar P."""
    _require_plane(P)
    verts = enumerate_pseudovertices(P)
    types = [type_of(P, a) for a in verts]

    edges = set()
    for x, y in itertools.combinations(range(len(verts)), 2):
        S = tuple(s & t for s, t in zip(types[x], types[y]))
        if not all(S) or cell_dimension(S) != 1:
            continue
        inside = [z for z in range(len(verts)) if _contains_type(types[z], S)]
        if inside == [x, y]:
            edges.add((x, y))

    faces = []
    for labels in itertools.product(range(3), repeat=P.p):
        S = tuple(frozenset(r for r in range(P.p) if labels[r] == i) for i in range(3))
        if not all(S):
            continue
        inside = [z for z in range(len(verts)) if _contains_type(types[z], S)]
        pts = [_xy(verts[z]) for z in inside]
        if len(pts) < 3 or all(_cross(pts[0], pts[1], q) == 0 for q in pts[2:]):
            continue
        order = _ccw_order(pts)
        cycle = tuple(inside[k] for k in order)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if (min(a, b), max(a, b)) not in edges:
                raise InternalInconsistency("face boundary %s is not an edge" % ((a, b),))
        faces.append(cycle)

    cx = CellComplex(tuple(verts), tuple(sorted(edges)), tuple(sorted(faces)))
    if cx.euler_characteristic() != 1:
        raise InternalInconsistency("bounded complex has Euler characteristic %d"
                                    % cx.euler_characteristic())
    return cx


# -- SVG --------------------------------------------------------------------------

# Plane directions of the three rays of a tropical line, keyed by the pair of
# sectors sharing the ray.
_RAYS = {
    frozenset({0, 1}): (0, -1),
    frozenset({0, 2}): (-1, 0),
    frozenset({1, 2}): (1, 1),
}


def _num(q) -> str:
    text = "%.4f" % float(q)
    return text.rstrip("0").rstrip(".") if "." in text else text


def render_svg(P: TropicalPolytope, halfspaces: Sequence[TropicalHalfSpace] = (),
               complex_: CellComplex | None = None, size: int = 480) -> str:
    """SVG 1.1 drawing of the bounded cells, pseudovertices and generators.

    Boundaries of the given half-spaces are drawn as dashed rays.
    """
    _require_plane(P)
    cx = complex_ or cell_complex(P)
    pts = [_xy(v) for v in cx.vertices] + [_xy(H.apex) for H in halfspaces]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    margin = span / 4
    x0, y1 = min(xs) - margin, max(ys) + margin
    scale = Fraction(size) / (span + 2 * margin)
    reach = 2 * (span + 2 * margin)

    def sx(x):
        return _num((x - x0) * scale)

    def sy(y):
        return _num((y1 - y) * scale)

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%d" height="%d" '
           'viewBox="0 0 %d %d">' % (size, size, size, size),
           '<rect width="100%" height="100%" fill="white"/>',
           '<g id="faces" fill="#cfe3f5" stroke="none">']
    for f in cx.faces:
        coords = " ".join("%s,%s" % (sx(cx.vertices[k][1]), sy(cx.vertices[k][2])) for k in f)
        out.append('<polygon points="%s"/>' % coords)
    out.append('</g>')
    out.append('<g id="edges" stroke="#1f4e79" stroke-width="2">')
    for a, b in cx.edges:
        (ax, ay), (bx, by) = _xy(cx.vertices[a]), _xy(cx.vertices[b])
        out.append('<line x1="%s" y1="%s" x2="%s" y2="%s"/>' % (sx(ax), sy(ay), sx(bx), sy(by)))
    out.append('</g>')
    if halfspaces:
        out.append('<g id="halfspaces" stroke="#2e7d32" stroke-dasharray="6,4" fill="none">')
        for H in halfspaces:
            ax, ay = _xy(H.apex)
            for pair, (dx, dy) in sorted(_RAYS.items(), key=lambda kv: sorted(kv[0])):
                if len(pair & H.indices) == 1:
                    out.append('<line x1="%s" y1="%s" x2="%s" y2="%s"/>'
                               % (sx(ax), sy(ay), sx(ax + reach * dx), sy(ay + reach * dy)))
        out.append('</g>')
    out.append('<g id="pseudovertices" fill="#1f4e79">')
    for v in cx.vertices:
        out.append('<circle cx="%s" cy="%s" r="3"/>' % (sx(v[1]), sy(v[2])))
    out.append('</g>')
    out.append('<g id="generators" fill="#c62828" font-family="sans-serif" font-size="12">')
    for r, v in enumerate(P):
        out.append('<circle cx="%s" cy="%s" r="5"/>' % (sx(v[1]), sy(v[2])))
        out.append('<text x="%s" y="%s">v%d</text>' % (sx(v[1] + span / 40), sy(v[2] + span / 40),
                                                    r + 1))
    out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
