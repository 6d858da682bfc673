"""Exact convex-hull measures in ambient dimension 1, 2 and 3.

Volumes are computed over exact rationals (float inputs are embedded
exactly), so the results feed directly into exact comparisons.  Alongside
the measure, each call reports the number of maximal cells of the
triangulation it used: a fan from one hull vertex over the hull faces not
containing it, which triangulates a segment into 1 cell, a convex h-gon
into h - 2 triangles, and a tetrahedron into a single cell.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from .core import as_rational
from .errors import DimensionError, DomainError

Point = tuple[Fraction, ...]


class HullMeasure(NamedTuple):
    volume: Fraction
    cells: int  # maximal cells of the triangulation used


def _coerce_points(points: Sequence[Sequence]) -> list[Point]:
    pts = [tuple(as_rational(c) for c in p) for p in points]
    if not pts:
        raise DimensionError("need at least one point")
    k = len(pts[0])
    if any(len(p) != k for p in pts):
        raise DimensionError("points have mixed dimensions")
    if k not in (1, 2, 3):
        raise DomainError(f"hull volume implemented for dimension <= 3, got {k}")
    return pts


def _affine_rank(pts: list[Point]) -> int:
    base = pts[0]
    vecs = [[c - b for c, b in zip(p, base)] for p in pts[1:]]
    rank = 0
    cols = len(base)
    for col in range(cols):
        piv = next((r for r in range(rank, len(vecs)) if vecs[r][col] != 0), None)
        if piv is None:
            continue
        vecs[rank], vecs[piv] = vecs[piv], vecs[rank]
        pv = vecs[rank][col]
        vecs[rank] = [x / pv for x in vecs[rank]]
        for r in range(len(vecs)):
            if r != rank and vecs[r][col] != 0:
                f = vecs[r][col]
                vecs[r] = [a - f * b for a, b in zip(vecs[r], vecs[rank])]
        rank += 1
        if rank == cols:
            break
    return rank


def _cross2(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Sequence[Sequence]) -> list[Point]:
    """Strict convex hull in counterclockwise order (monotone chain)."""
    pts = sorted(set(tuple(as_rational(c) for c in p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _cross3(u: tuple[Fraction, ...], v: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u, v) -> Fraction:
    return sum(a * b for a, b in zip(u, v))


def _hull_facet_planes(pts: list[Point]) -> dict:
    """Outward-oriented supporting planes spanned by point triples.

    Returns {normalized (n, c): [points on the plane]} with n . p <= c for
    every input point.
    """
    planes: dict[tuple, list[Point]] = {}
    for a, b, c in combinations(range(len(pts)), 3):
        n = _cross3(
            tuple(x - y for x, y in zip(pts[b], pts[a])),
            tuple(x - y for x, y in zip(pts[c], pts[a])),
        )
        if n == (0, 0, 0):
            continue
        off = _dot(n, pts[a])
        sides = [_dot(n, p) - off for p in pts]
        if all(s <= 0 for s in sides):
            pass
        elif all(s >= 0 for s in sides):
            n = tuple(-x for x in n)
            off = -off
        else:
            continue
        lead = next(x for x in n if x != 0)
        f = abs(lead)
        key = tuple(x / f for x in n) + (off / f,)
        if key not in planes:
            planes[key] = [p for p in pts if _dot(key[:3], p) == key[3]]
    return planes


def _volume_3d(pts: list[Point]) -> HullMeasure:
    planes = _hull_facet_planes(pts)
    apex = min(pts)
    vol = Fraction(0)
    cells = 0
    for key, facet_pts in planes.items():
        normal, off = key[:3], key[3]
        if _dot(normal, apex) == off:
            continue  # facet contains the apex of the fan
        axis = max(range(3), key=lambda t: abs(normal[t]))
        keep = [t for t in range(3) if t != axis]
        proj = {(p[keep[0]], p[keep[1]]): p for p in facet_pts}
        ring = convex_hull_2d(list(proj))
        poly = [proj[q] for q in ring]
        for t in range(1, len(poly) - 1):
            u = tuple(x - y for x, y in zip(poly[0], apex))
            v = tuple(x - y for x, y in zip(poly[t], apex))
            w = tuple(x - y for x, y in zip(poly[t + 1], apex))
            det = _dot(u, _cross3(v, w))
            vol += abs(det)
            cells += 1
    return HullMeasure(vol / 6, cells)


def hull_volume(points: Sequence[Sequence]) -> HullMeasure:
    """Exact measure of the convex hull of points in R^k, k in {1, 2, 3}.

    Returns (volume, cells) where cells counts the maximal simplices of the
    fan triangulation used.  Configurations of affine dimension below the
    ambient dimension yield (0, 0).
    """
    pts = sorted(set(_coerce_points(points)))
    k = len(pts[0])
    if len(pts) <= k or _affine_rank(pts) < k:
        return HullMeasure(Fraction(0), 0)
    if k == 1:
        return HullMeasure(pts[-1][0] - pts[0][0], 1)
    if k == 2:
        hull = convex_hull_2d(pts)
        area = Fraction(0)
        for t in range(1, len(hull) - 1):
            area += _cross2(hull[0], hull[t], hull[t + 1])
        return HullMeasure(abs(area) / 2, len(hull) - 2)
    return _volume_3d(pts)
