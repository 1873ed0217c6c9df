"""Exact polytope volumes for the polytopal regions.

Vertex enumeration is brute force over all triples of boundary planes
with every coordinate a :class:`fractions.Fraction`, so vertices,
facets, and volumes carry no rounding at all.  The systems involved
are tiny (at most a couple dozen half-spaces), which keeps the cubic
enumeration instant and removes any need for pivoting machinery.

Volumes are reported in the Hilbert-Schmidt normalization, which gives
the positivity cube max_a |lambda_a| <= 1 unit volume: one eighth of
the Euclidean volume in eigenvalue space.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .regions import HalfSpace, RegionExpr, halfspace_description

__all__ = [
    "UnboundedPolytopeError",
    "Polytope",
    "enumerate_vertices",
    "build_polytope",
    "region_volume",
    "mesh_document",
    "HS_SCALE",
]

# Hilbert-Schmidt measure of a Euclidean unit of eigenvalue space.
HS_SCALE = Fraction(1, 8)


class UnboundedPolytopeError(ValueError):
    """Raised when a half-space system has a recession direction.

    The check assumes the system is feasible; every region conjunction
    produced by :func:`paulivol.regions.halfspace_description` is.
    """


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _det3(r0, r1, r2) -> Fraction:
    return _dot(r0, _cross(r1, r2))


def _rank(rows) -> int:
    """Rank of a list of rational 3-vectors by Gaussian elimination."""
    work = [list(r) for r in rows]
    rank = 0
    for col in range(3):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(rank + 1, len(work)):
            if work[i][col] != 0:
                f = work[i][col] / work[rank][col]
                for c in range(col, 3):
                    work[i][c] -= f * work[rank][c]
        rank += 1
    return rank


def _dedupe(halfspaces) -> list:
    seen = set()
    out = []
    for hs in halfspaces:
        key = hs.canonical()
        if key not in seen:
            seen.add(key)
            out.append(hs)
    return out


def _check_bounded(halfspaces) -> None:
    normals = [hs.normal for hs in halfspaces]
    if _rank(normals) < 3:
        raise UnboundedPolytopeError(
            "normals span fewer than three dimensions; the system is unbounded"
        )
    # With full-rank normals the recession cone is pointed, so it is
    # nonzero exactly when it has an extreme ray, and every extreme ray
    # lies on two of the cone's boundary planes: d ~ +-(a_i x a_j).
    for ai, aj in itertools.combinations(normals, 2):
        d = _cross(ai, aj)
        if d == (0, 0, 0):
            continue
        for cand in (d, tuple(-x for x in d)):
            if all(_dot(a, cand) <= 0 for a in normals):
                raise UnboundedPolytopeError(
                    f"recession direction ({cand[0]}, {cand[1]}, {cand[2]});"
                    " the system is unbounded"
                )


def _solve_triple(h0: HalfSpace, h1: HalfSpace, h2: HalfSpace):
    det = _det3(h0.normal, h1.normal, h2.normal)
    if det == 0:
        return None
    b = (h0.b, h1.b, h2.b)
    cols = list(zip(h0.normal, h1.normal, h2.normal))
    x = _det3(b, cols[1], cols[2]) / det
    y = _det3(cols[0], b, cols[2]) / det
    z = _det3(cols[0], cols[1], b) / det
    return (x, y, z)


def enumerate_vertices(halfspaces) -> list:
    """All vertices of a bounded half-space system, exactly.

    Raises :class:`UnboundedPolytopeError` when the system admits a
    recession direction.  An empty list means the system is infeasible.
    """
    halfspaces = _dedupe(halfspaces)
    _check_bounded(halfspaces)
    vertices = set()
    for h0, h1, h2 in itertools.combinations(halfspaces, 3):
        v = _solve_triple(h0, h1, h2)
        if v is not None and all(hs.contains(v) for hs in halfspaces):
            vertices.add(v)
    return sorted(vertices)


def _collinear(points) -> bool:
    base = points[0]
    u = next((_sub(p, base) for p in points[1:] if _sub(p, base) != (0, 0, 0)), None)
    if u is None:
        return True
    return all(_cross(u, _sub(p, base)) == (0, 0, 0) for p in points[1:])


def _cycle_order(indices, vertices, normal) -> tuple:
    """Sort facet vertices counterclockwise around the outward normal."""
    k = len(indices)
    cx = sum(vertices[i][0] for i in indices) / k
    cy = sum(vertices[i][1] for i in indices) / k
    cz = sum(vertices[i][2] for i in indices) / k
    dirs = {i: _sub(vertices[i], (cx, cy, cz)) for i in indices}
    ref = dirs[indices[0]]

    def half(u) -> int:
        s = _dot(normal, _cross(ref, u))
        if s != 0:
            return 0 if s > 0 else 1
        return 0 if _dot(ref, u) > 0 else 1

    def cmp(i, j) -> int:
        hi, hj = half(dirs[i]), half(dirs[j])
        if hi != hj:
            return -1 if hi < hj else 1
        s = _dot(normal, _cross(dirs[i], dirs[j]))
        if s == 0:
            return 0
        return -1 if s > 0 else 1

    return tuple(sorted(indices, key=functools.cmp_to_key(cmp)))


@dataclass(frozen=True)
class Polytope:
    """Bounded intersection of half-spaces with its exact geometry.

    ``facets`` pairs the index of the supporting half-space with the
    vertex cycle, counterclockwise as seen from outside.
    """

    halfspaces: tuple
    vertices: tuple
    facets: tuple

    def euclidean_volume(self) -> Fraction:
        if len(self.vertices) < 4:
            return Fraction(0)
        if _rank([_sub(v, self.vertices[0]) for v in self.vertices[1:]]) < 3:
            return Fraction(0)
        k = len(self.vertices)
        o = (
            sum(v[0] for v in self.vertices) / k,
            sum(v[1] for v in self.vertices) / k,
            sum(v[2] for v in self.vertices) / k,
        )
        total = Fraction(0)
        for _hs_index, cycle in self.facets:
            anchor = _sub(self.vertices[cycle[0]], o)
            for i in range(1, len(cycle) - 1):
                total += _det3(
                    anchor,
                    _sub(self.vertices[cycle[i]], o),
                    _sub(self.vertices[cycle[i + 1]], o),
                )
        return abs(total) / 6

    def hs_volume(self) -> Fraction:
        return self.euclidean_volume() * HS_SCALE


def build_polytope(halfspaces) -> Polytope:
    """Enumerate vertices and assemble facets for a bounded system."""
    halfspaces = _dedupe(halfspaces)
    vertices = enumerate_vertices(halfspaces)
    facets = []
    for hs_index, hs in enumerate(halfspaces):
        tight = [i for i, v in enumerate(vertices) if hs.is_tight(v)]
        if len(tight) < 3 or _collinear([vertices[i] for i in tight]):
            continue
        facets.append((hs_index, _cycle_order(tight, vertices, hs.normal)))
    return Polytope(tuple(halfspaces), tuple(vertices), tuple(facets))


def region_volume(expr: RegionExpr) -> Fraction:
    """Exact Hilbert-Schmidt volume of a polytopal region conjunction."""
    total = Fraction(0)
    for system in halfspace_description(expr):
        total += build_polytope(system).euclidean_volume()
    return total * HS_SCALE


def mesh_document(expr: RegionExpr) -> dict:
    """JSON-ready exact mesh of a region: one entry per convex piece.

    Vertex coordinates are [numerator, denominator] pairs and half-space
    coefficients are primitive integers, so the document round-trips
    with no precision loss.
    """
    pieces = []
    for system in halfspace_description(expr):
        poly = build_polytope(system)
        vertices = [
            [[c.numerator, c.denominator] for c in v] for v in poly.vertices
        ]
        halfspaces = []
        for hs in poly.halfspaces:
            a1, a2, a3, b = hs.canonical()
            halfspaces.append({"a": [a1, a2, a3], "b": b})
        pieces.append({
            "vertices": vertices,
            "facets": [list(cycle) for _i, cycle in poly.facets],
            "halfspaces": halfspaces,
        })
    return {"region": str(expr), "pieces": pieces}
