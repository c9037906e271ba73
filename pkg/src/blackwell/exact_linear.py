"""Exact rational linear algebra and a two-phase simplex solver.

Scalars are :class:`fractions.Fraction`, which is already kept in lowest
terms with a positive denominator, so equality is structural.  Matrices are
tuples of row tuples.

The solver handles problems of the form ``A x = b`` with per-variable
bounds (either side may be ``None`` for unbounded) and an optional linear
objective to maximize.  Infeasible problems come back with a Farkas-type
certificate ``y`` that can be checked by :func:`check_certificate` using
nothing but exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Rat = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class UnboundedObjective(Exception):
    """Raised when the objective is unbounded above on the feasible set."""


class DimensionError(ValueError):
    pass


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass int, str or Fraction")
    return Fraction(value)


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise DimensionError("ragged matrix")
    return out


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != len(b):
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def mat_vec(a: Matrix, x: Sequence[Fraction]) -> Vector:
    if a and len(a[0]) != len(x):
        raise DimensionError("matrix/vector size mismatch")
    return tuple(sum((c * v for c, v in zip(row, x)), ZERO) for row in a)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), ZERO)


def _rref(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form over the first
    ``ncols`` columns; return the pivot column of each nonzero row."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            rows[r] = pr = [v * inv for v in pr]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


def rank(a: Matrix) -> int:
    rows = [list(r) for r in a]
    return len(_rref(rows, shape(a)[1]))


def solve_linear(a: Matrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """One exact solution of ``a x = b`` (free variables set to 0), or None."""
    m, n = shape(a)
    if len(b) != m:
        raise DimensionError("right-hand side length does not match row count")
    rows = [list(r) + [to_fraction(v)] for r, v in zip(a, b)]
    pivots = _rref(rows, n)
    for i in range(len(pivots), m):
        if rows[i][n] != 0:
            return None
    x = [ZERO] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return tuple(x)


def nullspace(a: Matrix, ncols: Optional[int] = None) -> list[Vector]:
    """Basis of ``{x : a x = 0}``."""
    n = shape(a)[1] if a else (ncols or 0)
    rows = [list(r) for r in a]
    pivots = _rref(rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for i, c in enumerate(pivots):
            x[c] = -rows[i][f]
        basis.append(tuple(x))
    return basis


# --------------------------------------------------------------------------
# Linear programming


@dataclass(frozen=True)
class LpProblem:
    """``A x = b`` with ``lower[j] <= x[j] <= upper[j]``; maximize ``objective``.

    ``None`` in ``lower``/``upper`` means unbounded on that side.  Bounds
    default to ``0 <= x`` when omitted.
    """

    A: Matrix
    b: Vector
    lower: tuple[Optional[Fraction], ...]
    upper: tuple[Optional[Fraction], ...]
    objective: Optional[Vector] = None

    @classmethod
    def build(cls, A, b, lower=None, upper=None, objective=None) -> "LpProblem":
        A = matrix(A)
        b = vector(b)
        n = len(A[0]) if A else (len(lower) if lower is not None else 0)
        lo = tuple(ZERO for _ in range(n)) if lower is None else tuple(
            None if v is None else to_fraction(v) for v in lower)
        up = tuple(None for _ in range(n)) if upper is None else tuple(
            None if v is None else to_fraction(v) for v in upper)
        obj = None if objective is None else vector(objective)
        problem = cls(A, b, lo, up, obj)
        problem.validate()
        return problem

    @property
    def n_vars(self) -> int:
        return len(self.lower)

    def validate(self) -> None:
        m, n = len(self.A), self.n_vars
        if len(self.b) != m:
            raise DimensionError("b must have one entry per constraint row")
        if any(len(row) != n for row in self.A):
            raise DimensionError("every constraint row needs one coefficient per variable")
        if len(self.upper) != n:
            raise DimensionError("lower and upper bounds differ in length")
        if self.objective is not None and len(self.objective) != n:
            raise DimensionError("objective length does not match variable count")


@dataclass(frozen=True)
class Feasible:
    x: Vector
    value: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Infeasible:
    """``certificate`` is a row multiplier ``y`` with ``sup_{box} (yA)x < y b``."""

    certificate: Vector

    def __bool__(self) -> bool:
        return False


LpOutcome = Union[Feasible, Infeasible]


def check_solution(p: LpProblem, x: Sequence[Fraction]) -> bool:
    if len(x) != p.n_vars:
        return False
    for j, v in enumerate(x):
        if p.lower[j] is not None and v < p.lower[j]:
            return False
        if p.upper[j] is not None and v > p.upper[j]:
            return False
    return all(dot(row, x) == bi for row, bi in zip(p.A, p.b))


def check_certificate(p: LpProblem, y: Sequence[Fraction]) -> bool:
    """True iff ``y`` proves ``{A x = b, lower <= x <= upper}`` is empty.

    Every feasible x satisfies ``(yA) x = y b``; the certificate is valid
    when the largest value ``(yA) x`` can take over the bound box is finite
    and strictly below ``y b``.
    """
    if len(y) != len(p.A):
        return False
    g = [sum((yi * row[j] for yi, row in zip(y, p.A)), ZERO) for j in range(p.n_vars)]
    sup = ZERO
    for j, gj in enumerate(g):
        if gj > 0:
            if p.upper[j] is None:
                return False
            sup += gj * p.upper[j]
        elif gj < 0:
            if p.lower[j] is None:
                return False
            sup += gj * p.lower[j]
    return sup < dot(y, p.b)


# consecutive degenerate pivots tolerated before falling back to Bland's rule
_DANTZIG_STALL_LIMIT = 50


class _Tableau:
    """Dense simplex tableau: largest-coefficient entering rule, Bland's rule once stalled.

    ``rows[i]`` holds constraint coefficients followed by the right-hand
    side; ``cost`` is the reduced-cost row (same layout, last entry is the
    current objective value) for maximization.
    """

    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.cost: list[Fraction] = []

    def set_objective(self, c: Sequence[Fraction]) -> None:
        width = len(self.rows[0]) if self.rows else len(c) + 1
        red = [-cj for cj in c] + [ZERO]
        red += [ZERO] * (width - len(red))
        for i, bv in enumerate(self.basis):
            cb = c[bv] if bv < len(c) else ZERO
            if cb:
                red = [r + cb * v for r, v in zip(red, self.rows[i])]
        self.cost = red

    def pivot(self, r: int, c: int) -> None:
        pr = self.rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = [v * inv for v in pr]
            self.rows[r] = pr
        nz = [j for j, v in enumerate(pr) if v != 0]
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                f = row[c]
                for j in nz:
                    row[j] -= f * pr[j]
        if self.cost[c] != 0:
            f = self.cost[c]
            for j in nz:
                self.cost[j] -= f * pr[j]
        self.basis[r] = c

    def run(self, allowed: int) -> bool:
        """Optimize over columns ``< allowed``; False if unbounded."""
        stalled = 0
        while True:
            if stalled < _DANTZIG_STALL_LIMIT:
                enter = min(range(allowed), key=self.cost.__getitem__)
                if self.cost[enter] >= 0:
                    return True
            else:
                enter = next((j for j in range(allowed) if self.cost[j] < 0), None)
                if enter is None:
                    return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            stalled = stalled + 1 if best[0][0] == 0 else 0
            self.pivot(best[1], enter)


def lp_solve(p: LpProblem) -> LpOutcome:
    """Solve ``p`` exactly with a two-phase simplex.

    Returns :class:`Feasible` (with the optimum when an objective is given)
    or :class:`Infeasible` carrying a certificate accepted by
    :func:`check_certificate`.  Raises :class:`UnboundedObjective`.
    """
    p.validate()
    m, n = len(p.A), p.n_vars

    # x_j = offset_j + sum(sign * x'_col) with x' >= 0
    columns: list[tuple[int, int]] = []  # (original var, sign)
    offsets = [ZERO] * n
    bound_rows: list[tuple[int, Fraction]] = []  # (std column, width)
    for j in range(n):
        lo, up = p.lower[j], p.upper[j]
        if lo is not None:
            offsets[j] = lo
            columns.append((j, 1))
            if up is not None:
                bound_rows.append((len(columns) - 1, up - lo))
        elif up is not None:
            offsets[j] = up
            columns.append((j, -1))
        else:
            columns.append((j, 1))
            columns.append((j, -1))

    n_struct = len(columns)
    n_slack = len(bound_rows)
    n_std = n_struct + n_slack
    n_rows = m + n_slack

    std_rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(m):
        row = [p.A[i][j] * s for j, s in columns] + [ZERO] * n_slack
        std_rows.append(row)
        rhs.append(p.b[i] - dot(p.A[i], offsets))
    for k, (col, width) in enumerate(bound_rows):
        row = [ZERO] * n_std
        row[col] = ONE
        row[n_struct + k] = ONE
        std_rows.append(row)
        rhs.append(width)

    signs = [ONE if r >= 0 else -ONE for r in rhs]
    rows = []
    for i in range(n_rows):
        s = signs[i]
        art = [ZERO] * n_rows
        art[i] = ONE
        body = std_rows[i] if s > 0 else [-v for v in std_rows[i]]
        rows.append(body + art + [rhs[i] * s])

    tab = _Tableau(rows, [n_std + i for i in range(n_rows)])
    tab.set_objective([ZERO] * n_std + [-ONE] * n_rows)
    tab.run(n_std + n_rows)

    if tab.cost[-1] < 0:
        # dual of phase one: y_i = reduced cost of artificial i minus its cost
        y_phase = [tab.cost[n_std + i] - ONE for i in range(n_rows)]
        cert = tuple(-y_phase[i] * signs[i] for i in range(m))
        if not check_certificate(p, cert):
            raise AssertionError("internal error: infeasibility certificate failed to verify")
        return Infeasible(cert)

    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n_std:
            j = next((j for j in range(n_std) if tab.rows[i][j] != 0), None)
            if j is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1
    tab.rows = [row[:n_std] + [row[-1]] for row in tab.rows]

    value = None
    if p.objective is not None:
        c_std = [p.objective[j] * s for j, s in columns] + [ZERO] * n_slack
        tab.set_objective(c_std)
        if not tab.run(n_std):
            raise UnboundedObjective("objective is unbounded above")

    xs = [ZERO] * n_std
    for i, bv in enumerate(tab.basis):
        xs[bv] = tab.rows[i][-1]
    x = list(offsets)
    for k, (j, s) in enumerate(columns):
        if xs[k]:
            x[j] += s * xs[k]
    x = tuple(x)
    if not check_solution(p, x):
        raise AssertionError("internal error: simplex solution failed to verify")
    if p.objective is not None:
        value = dot(p.objective, x)
    return Feasible(x, value)


def convex_combination(point: Sequence[Fraction], points: Sequence[Sequence[Fraction]]) -> LpOutcome:
    """Weights ``t >= 0`` with ``sum t = 1`` and ``sum t_i points[i] = point``."""
    if not points:
        raise ValueError("need at least one point to combine")
    d = len(point)
    A = [[q[r] for q in points] for r in range(d)] + [[ONE] * len(points)]
    return lp_solve(LpProblem.build(A, list(point) + [ONE]))


def extreme_points(points: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Deduplicate and keep the points that are not convex combinations of the others."""
    uniq = sorted(set(tuple(to_fraction(v) for v in q) for q in points))
    if len(uniq) < 2:
        return uniq
    # a point found redundant is dropped at once; the hull of the rest is unchanged
    live = list(uniq)
    for q in uniq:
        others = [r for r in live if r != q]
        if convex_combination(q, others):
            live = others
    return live
