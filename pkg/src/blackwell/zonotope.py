"""Zonotopes of channels: the image of the unit cube under the channel matrix."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .channel import Channel, ChannelError, channel_from_columns, compose, make_channel
from .exact_linear import (
    ONE,
    ZERO,
    DimensionError,
    LpOutcome,
    LpProblem,
    Vector,
    extreme_points,
    lp_solve,
    nullspace,
    vector,
)

DEFAULT_GENERATOR_CAP = 20


class TooManyGenerators(ValueError):
    pass


class PolygonError(ValueError):
    pass


class NotSymmetric(PolygonError):
    pass


class NotConvex(PolygonError):
    pass


class MissingCorner(PolygonError):
    pass


@dataclass(frozen=True)
class Zonotope:
    dim: int
    generators: tuple[Vector, ...]
    cap: int = field(default=DEFAULT_GENERATOR_CAP, compare=False)

    @cached_property
    def vertex_list(self) -> tuple[Vector, ...]:
        return tuple(_enumerate_vertices(self.dim, self.generators, self.cap))


def zonotope_of(kappa: Channel) -> Zonotope:
    return Zonotope(kappa.n_inputs, kappa.columns)


def _is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    """Cross-ratio test: ``u`` and ``v`` span the same line."""
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(i + 1, len(u)))


def _parallel_classes(gens: Sequence[Vector]) -> list[list[int]]:
    """Indices of nonzero generators grouped by direction, in order of first appearance."""
    classes: list[list[int]] = []
    for y, g in enumerate(gens):
        if _is_zero(g):
            continue
        for cls in classes:
            if proportional(gens[cls[0]], g):
                cls.append(y)
                break
        else:
            classes.append([y])
    return classes


def _reduced(dim: int, gens: Sequence[Vector]) -> list[Vector]:
    out = []
    for cls in _parallel_classes(gens):
        out.append(tuple(sum((gens[y][i] for y in cls), ZERO) for i in range(dim)))
    return out


def corner_images(dim: int, gens: Sequence[Vector]) -> set[Vector]:
    pts = set()
    for bits in itertools.product((0, 1), repeat=len(gens)):
        pts.add(tuple(sum((g[i] for b, g in zip(bits, gens) if b), ZERO) for i in range(dim)))
    return pts


def _enumerate_vertices(dim: int, gens: Sequence[Vector], cap: int) -> list[Vector]:
    if len(gens) > cap:
        raise TooManyGenerators(f"{len(gens)} generators exceeds the enumeration cap of {cap}")
    # merging parallel generators and dropping zero ones leaves the set unchanged
    reduced = _reduced(dim, gens)
    if dim <= 3:
        return _region_vertices(dim, reduced)
    return extreme_points(sorted(corner_images(dim, reduced)))


def _half(v) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


class _Angle:
    """Sort key by polar angle in [0, 2 pi) for nonzero 2D vectors."""

    __slots__ = ("v", "h")

    def __init__(self, v):
        self.v = v
        self.h = _half(v)

    def __lt__(self, other: "_Angle") -> bool:
        if self.h != other.h:
            return self.h < other.h
        a, b = self.v, other.v
        return a[0] * b[1] - a[1] * b[0] > 0


def _sector_directions(normals: Sequence[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """One interior direction for every sector cut out by the lines ``h . v = 0``."""
    if len(normals) == 1:
        h = normals[0]
        return [h, (-h[0], -h[1])]
    bounds = []
    for h in normals:
        bounds.append((-h[1], h[0]))
        bounds.append((h[1], -h[0]))
    bounds.sort(key=_Angle)
    out = []
    for a, b in zip(bounds, bounds[1:] + bounds[:1]):
        if a[0] * b[1] - a[1] * b[0] == 0:  # same boundary line listed twice
            continue
        out.append((a[0] + b[0], a[1] + b[1]))
    return out


def _region_vertices(dim: int, gens: Sequence[Vector]) -> list[Vector]:
    """Vertices from the cells of the arrangement of hyperplanes orthogonal to the generators.

    Each vertex is ``sum of g with c . g > 0`` for ``c`` inside a cell.  In
    dimension 3 every cell touches a ray ``+-(g_i x g_j)``; around such a
    ray the cells are sectors of the plane it is normal to.  ``gens`` must
    be nonzero and pairwise non-parallel.
    """
    zero = tuple(ZERO for _ in range(dim))
    if not gens:
        return [zero]
    if len(gens) == 1:
        return sorted([zero, gens[0]])

    def total(sel) -> Vector:
        return tuple(sum((g[i] for g in sel), ZERO) for i in range(dim))

    found = set()
    if dim == 2:
        for v in _sector_directions([tuple(g) for g in gens]):
            found.add(total([g for g in gens if g[0] * v[0] + g[1] * v[1] > 0]))
        return sorted(found)

    rays = set()
    for gi, gj in itertools.combinations(gens, 2):
        w = (gi[1] * gj[2] - gi[2] * gj[1], gi[2] * gj[0] - gi[0] * gj[2], gi[0] * gj[1] - gi[1] * gj[0])
        rays.add(w)
        rays.add(tuple(-x for x in w))
    for w in rays:
        on = [g for g in gens if sum((a * b for a, b in zip(g, w)), ZERO) == 0]
        base = [g for g in gens if sum((a * b for a, b in zip(g, w)), ZERO) > 0]
        e1, e2 = nullspace((w,), 3)
        hs = [(sum((a * b for a, b in zip(g, e1)), ZERO), sum((a * b for a, b in zip(g, e2)), ZERO)) for g in on]
        for v in _sector_directions(hs):
            chosen = [g for g, h in zip(on, hs) if h[0] * v[0] + h[1] * v[1] > 0]
            found.add(total(base + chosen))
    return sorted(found)


def vertices(z: Zonotope) -> list[Vector]:
    """Exact vertex list, sorted lexicographically."""
    return list(z.vertex_list)


def contains_point(z: Zonotope, v: Sequence[Fraction]) -> LpOutcome:
    """Coefficients ``a`` in ``[0,1]^Y`` with ``sum a_y g_y = v``, or a refutation.

    The result is truthy exactly when ``v`` lies in the zonotope; the
    coefficients are in ``result.x``.
    """
    v = vector(v)
    if len(v) != z.dim:
        raise DimensionError(f"point has dimension {len(v)}, zonotope has {z.dim}")
    return lp_solve(membership_problem(z, v))


def membership_problem(z: Zonotope, v: Sequence[Fraction]) -> LpProblem:
    m = len(z.generators)
    A = [[z.generators[y][i] for y in range(m)] for i in range(z.dim)]
    return LpProblem.build(A, vector(v), [ZERO] * m, [ONE] * m)


def inclusion_report(outer: Zonotope, inner: Zonotope) -> list[tuple[Vector, LpOutcome]]:
    """Membership outcome in ``outer`` for every vertex of ``inner``."""
    if outer.dim != inner.dim:
        raise DimensionError("zonotopes live in different dimensions")
    return [(v, contains_point(outer, v)) for v in vertices(inner)]


def includes(outer: Zonotope, inner: Zonotope) -> bool:
    if outer.dim != inner.dim:
        raise DimensionError("zonotopes live in different dimensions")
    return all(contains_point(outer, v) for v in vertices(inner))


def minimal_generators(kappa: Channel) -> tuple[Channel, Channel, Channel]:
    """Merge proportional columns and drop zero ones.

    Returns ``(nu, lambda1, lambda2)`` with ``nu = kappa lambda1`` and
    ``kappa = nu lambda2``; both identities are checked exactly.
    """
    cols = kappa.columns
    classes = _parallel_classes(cols)
    nu_cols = [tuple(sum((cols[y][x] for y in cls), ZERO) for x in range(kappa.n_inputs)) for cls in classes]
    nu = channel_from_columns(nu_cols)
    r = len(classes)
    owner = {y: i for i, cls in enumerate(classes) for y in cls}
    lam1 = make_channel([[ONE if owner.get(y, 0) == i else ZERO for i in range(r)]
                         for y in range(kappa.n_outputs)])
    lam2_rows = []
    for i, cls in enumerate(classes):
        row = [ZERO] * kappa.n_outputs
        # pivot coordinate where the class sum is nonzero gives the scale a_y
        x0 = next(x for x in range(kappa.n_inputs) if nu_cols[i][x] != 0)
        for y in cls:
            row[y] = cols[y][x0] / nu_cols[i][x0]
        lam2_rows.append(row)
    lam2 = make_channel(lam2_rows)
    if compose(kappa, lam1) != nu or compose(nu, lam2) != kappa:
        raise AssertionError("internal error: minimal generator witnesses do not recompose")
    return nu, lam1, lam2


def _cross(o: Sequence[Fraction], a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def polygon_to_channel(points: Sequence[Sequence[Fraction]]) -> Channel:
    """Binary channel whose zonotope is the given centrally symmetric polygon.

    The vertices are walked counterclockwise from the origin to ``(1, 1)``;
    the edge vectors along the way become the columns.
    """
    pts = {vector(p) for p in points}
    if any(len(p) != 2 for p in pts):
        raise DimensionError("polygon vertices must be 2-dimensional")
    origin, top = (ZERO, ZERO), (ONE, ONE)
    if origin not in pts or top not in pts:
        raise MissingCorner("polygon must contain (0,0) and (1,1) as vertices")
    if {(ONE - p[0], ONE - p[1]) for p in pts} != pts:
        raise NotSymmetric("polygon is not symmetric about (1/2, 1/2)")
    if any(not (0 <= c <= 1) for p in pts for c in p):
        raise NotConvex("polygon leaves the unit square")
    lower = [p for p in pts if p[0] > p[1]]
    if any(p[0] == p[1] for p in pts if p not in (origin, top)):
        raise NotConvex("a point on the diagonal cannot be a vertex")
    # ccw from the origin the lower chain appears in increasing polar angle
    lower.sort(key=_AngleKey)
    chain = [origin] + lower + [top]
    edges = [(b[0] - a[0], b[1] - a[1]) for a, b in zip(chain, chain[1:])]
    for a, b, c in zip(chain, chain[1:], chain[2:]):
        if _cross(a, b, c) <= 0:
            raise NotConvex("vertices are not in convex position")
    try:
        return channel_from_columns(edges)
    except ChannelError as exc:
        raise NotConvex(str(exc)) from exc


class _AngleKey:
    """Sort key by polar angle for nonzero points in the closed first quadrant."""

    __slots__ = ("p",)

    def __init__(self, p):
        self.p = p

    def __lt__(self, other: "_AngleKey") -> bool:
        a, b = self.p, other.p
        return a[0] * b[1] - a[1] * b[0] > 0
