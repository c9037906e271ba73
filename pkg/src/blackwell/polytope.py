"""Exact convex polytopes in dimension at most 3, and the binary lattice operations.

A :class:`Polytope` carries both representations.  Halfspaces use the
convention ``normal . x <= offset`` with the normal scaled to a primitive
integer vector.  Polytopes of lower affine dimension also carry the
equations of their affine hull, each as a pair of opposite halfspaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .channel import Channel
from .exact_linear import (
    ZERO,
    DimensionError,
    Vector,
    dot,
    extreme_points,
    nullspace,
    rank,
    solve_linear,
    vector,
)
from .zonotope import polygon_to_channel, vertices, zonotope_of

MAX_DIM = 3

Halfspace = tuple[Vector, Fraction]


class DimensionTooLarge(ValueError):
    pass


class WrongInputDimension(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    """Vertices of a 2-dimensional face in cyclic order."""

    vertices: tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Polytope:
    dim: int
    vertices: tuple[Vector, ...]
    halfspaces: tuple[Halfspace, ...]
    affine_dim: int  # -1 for the empty polytope

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, x: Sequence[Fraction]) -> bool:
        return bool(self.vertices) and all(dot(n, x) <= o for n, o in self.halfspaces)

    def vertex_set(self) -> frozenset[Vector]:
        return frozenset(self.vertices)


def empty_polytope(dim: int) -> Polytope:
    return Polytope(dim, (), (), -1)


def _canonical(normal: Sequence[Fraction], offset: Fraction) -> Halfspace:
    """Scale by a positive factor so the normal is a primitive integer vector."""
    den = math.lcm(*(v.denominator for v in normal), offset.denominator)
    ints = [int(v * den) for v in normal]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("zero normal")
    return tuple(Fraction(v, g) for v in ints), offset * den / g


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _ccw_order(points2d: Sequence[tuple[Fraction, Fraction]]) -> list[int]:
    """Indices of the strict convex hull of 2D points, counterclockwise (monotone chain)."""
    idx = sorted(range(len(points2d)), key=lambda i: points2d[i])
    if len(idx) <= 2:
        return idx

    def cross(o, a, b):
        po, pa, pb = points2d[o], points2d[a], points2d[b]
        return (pa[0] - po[0]) * (pb[1] - po[1]) - (pa[1] - po[1]) * (pb[0] - po[0])

    lower: list[int] = []
    for i in idx:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(idx):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def _hull_facets_3d(pts: list[Vector]) -> list[Halfspace]:
    """Facet halfspaces of a full-dimensional point set whose points are all extreme.

    Incremental hull over triangles; coplanar triangles are merged by their
    canonical plane at the end.  With only extreme points no new triangle
    can be degenerate.
    """
    base = [0]
    for i in range(1, len(pts)):
        cand = base + [i]
        diffs = [_sub(pts[j], pts[cand[0]]) for j in cand[1:]]
        if rank(diffs) == len(cand) - 1:
            base = cand
            if len(base) == 4:
                break
    inner = tuple(sum((pts[i][k] for i in base), ZERO) / 4 for k in range(3))

    def make(a, b, c):
        n = _cross3(_sub(pts[b], pts[a]), _sub(pts[c], pts[a]))
        off = dot(n, pts[a])
        if dot(n, inner) > off:
            return (a, c, b), tuple(-v for v in n), -off
        return (a, b, c), n, off

    faces = {}
    key = 0
    for tri in combinations(base, 3):
        faces[key] = make(*tri)
        key += 1
    for p in range(len(pts)):
        if p in base:
            continue
        x = pts[p]
        visible = [k for k, (_, n, o) in faces.items() if dot(n, x) > o]
        if not visible:
            continue
        edges = set()
        for k in visible:
            a, b, c = faces[k][0]
            edges.update(((a, b), (b, c), (c, a)))
        horizon = [(a, b) for a, b in edges if (b, a) not in edges]
        for k in visible:
            del faces[k]
        for a, b in horizon:
            faces[key] = make(a, b, p)
            key += 1
    return sorted({_canonical(n, o) for _, n, o in faces.values()})


def _affine_frame(pts: Sequence[Vector], dim: int) -> tuple[int, list[int], list[Vector]]:
    """Affine dimension, coordinates projecting injectively, and normals of the affine hull."""
    diffs = [_sub(q, pts[0]) for q in pts[1:]]
    r = rank(diffs) if diffs else 0
    coords: list[int] = []
    if r:
        for cs in combinations(range(dim), r):
            if rank([[d[c] for c in cs] for d in diffs]) == r:
                coords = list(cs)
                break
    equations = nullspace(diffs, dim) if diffs else nullspace((), dim)
    return r, coords, equations


def convex_hull(points: Sequence[Sequence[Fraction]], dim: Optional[int] = None) -> Polytope:
    pts = [vector(p) for p in points]
    if not pts:
        raise ValueError("convex hull of no points")
    dim = len(pts[0]) if dim is None else dim
    if dim > MAX_DIM:
        raise DimensionTooLarge(f"dimension {dim} exceeds {MAX_DIM}")
    if any(len(p) != dim for p in pts):
        raise DimensionError("points of mixed dimension")
    verts = extreme_points(pts)
    r, coords, equations = _affine_frame(verts, dim)

    halfspaces: set[Halfspace] = set()
    for e in equations:
        o = dot(e, verts[0])
        halfspaces.add(_canonical(e, o))
        halfspaces.add(_canonical(tuple(-v for v in e), -o))

    def lift(m: Sequence[Fraction]) -> Vector:
        n = [ZERO] * dim
        for c, v in zip(coords, m):
            n[c] = v
        return tuple(n)

    proj = [tuple(v[c] for c in coords) for v in verts]
    if r == 1:
        lo, hi = min(proj), max(proj)
        halfspaces.add(_canonical(lift((Fraction(-1),)), -lo[0]))
        halfspaces.add(_canonical(lift((Fraction(1),)), hi[0]))
    elif r == 2:
        order = _ccw_order(proj)
        for i, j in zip(order, order[1:] + order[:1]):
            a, b = proj[i], proj[j]
            m = (b[1] - a[1], a[0] - b[0])
            halfspaces.add(_canonical(lift(m), dot(m, a)))
    elif r == 3:
        for n, o in _hull_facets_3d(proj):
            halfspaces.add(_canonical(lift(n), o))
    return Polytope(dim, tuple(verts), tuple(sorted(halfspaces)), r)


def intersect(p: Polytope, q: Polytope) -> Polytope:
    if p.dim != q.dim:
        raise DimensionError("polytopes live in different dimensions")
    if p.dim > MAX_DIM:
        raise DimensionTooLarge(f"dimension {p.dim} exceeds {MAX_DIM}")
    if p.is_empty or q.is_empty:
        return empty_polytope(p.dim)
    hs = sorted(set(p.halfspaces) | set(q.halfspaces))
    candidates = set()
    for sub in combinations(hs, p.dim):
        normals = [n for n, _ in sub]
        if rank(normals) < p.dim:
            continue
        x = solve_linear(normals, [o for _, o in sub])
        if all(dot(n, x) <= o for n, o in hs):
            candidates.add(x)
    if not candidates:
        return empty_polytope(p.dim)
    return convex_hull(sorted(candidates), p.dim)


def _order_face(verts: Sequence[Vector], normal: Sequence[Fraction]) -> Face:
    drop = next(i for i in reversed(range(len(normal))) if normal[i] != 0)
    keep = [i for i in range(len(normal)) if i != drop]
    proj = [tuple(v[i] for i in keep) for v in verts]
    order = _ccw_order(proj)
    return Face(tuple(verts[i] for i in order))


def _is_equation(h: Halfspace, hs: set[Halfspace]) -> bool:
    n, o = h
    return (tuple(-v for v in n), -o) in hs


def faces_2d(p: Polytope) -> list[Face]:
    if p.dim > MAX_DIM:
        raise DimensionTooLarge(f"dimension {p.dim} exceeds {MAX_DIM}")
    if p.affine_dim < 2:
        return []
    if p.affine_dim == 2:
        if p.dim == 2:
            order = _ccw_order(list(p.vertices))
            return [Face(tuple(p.vertices[i] for i in order))]
        r, coords, _ = _affine_frame(p.vertices, p.dim)
        proj = [tuple(v[c] for c in coords) for v in p.vertices]
        return [Face(tuple(p.vertices[i] for i in _ccw_order(proj)))]
    hs = set(p.halfspaces)
    faces = []
    for n, o in p.halfspaces:
        if _is_equation((n, o), hs):
            continue
        tight = [v for v in p.vertices if dot(n, v) == o]
        faces.append(_order_face(tight, n))
    return faces


def centrally_symmetric(face: Face) -> bool:
    vs = face.vertices
    k = len(vs)
    if k % 2:
        return False
    half = k // 2
    s = tuple(a + b for a, b in zip(vs[0], vs[half]))
    return all(tuple(a + b for a, b in zip(vs[i], vs[i + half])) == s for i in range(half))


def is_zonotope(p: Polytope) -> tuple[bool, Optional[Face]]:
    """A polytope of dimension at most 3 is a zonotope iff all its 2-faces are centrally symmetric."""
    for face in faces_2d(p):
        if not centrally_symmetric(face):
            return False, face
    return True, None


def _check_binary(*channels: Channel) -> None:
    for c in channels:
        if c.n_inputs != 2:
            raise WrongInputDimension(
                "meet and join exist only for two-state inputs; for three or more states the "
                "channel order has neither greatest lower bounds nor least upper bounds in general")


def zonotope_polytope(kappa: Channel) -> Polytope:
    return convex_hull(vertices(zonotope_of(kappa)), kappa.n_inputs)


def binary_meet(kappa: Channel, mu: Channel) -> Channel:
    """Greatest common garbling of two channels on a two-state input."""
    _check_binary(kappa, mu)
    z = intersect(zonotope_polytope(kappa), zonotope_polytope(mu))
    return polygon_to_channel(z.vertices)


def binary_join(kappa: Channel, mu: Channel) -> Channel:
    """Least channel that garbles to both (two-state input)."""
    _check_binary(kappa, mu)
    pts = vertices(zonotope_of(kappa)) + vertices(zonotope_of(mu))
    return polygon_to_channel(convex_hull(pts, 2).vertices)
