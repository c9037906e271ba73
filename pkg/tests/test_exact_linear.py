from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blackwell import reference
from blackwell.exact_linear import (
    DimensionError,
    Feasible,
    Infeasible,
    LpProblem,
    UnboundedObjective,
    check_certificate,
    check_solution,
    convex_combination,
    extreme_points,
    identity,
    lp_solve,
    mat_vec,
    nullspace,
    rank,
    solve_linear,
    to_fraction,
    transpose,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def test_forced_solution():
    res = lp_solve(LpProblem.build([[1]], [1], [0], [2]))
    assert isinstance(res, Feasible) and res.x == (1,)


def test_free_variable_zero_row_is_infeasible():
    p = LpProblem.build([[0]], [1], [None], [None])
    res = lp_solve(p)
    assert isinstance(res, Infeasible)
    assert res.certificate == (1,)
    assert check_certificate(p, res.certificate)


def test_nested_garbling_system_with_unit_box_is_infeasible():
    kappa = reference.nested_kappa()
    mu = reference.nested_mu()
    ny, nz = len(kappa[0]), len(mu[0])
    rows, rhs = [], []
    # lam[y][z] at index y*nz + z
    for x in range(len(kappa)):
        for z in range(nz):
            row = [F(0)] * (ny * nz)
            for y in range(ny):
                row[y * nz + z] = kappa[x][y]
            rows.append(row)
            rhs.append(mu[x][z])
    for y in range(ny):
        row = [F(0)] * (ny * nz)
        for z in range(nz):
            row[y * nz + z] = F(1)
        rows.append(row)
        rhs.append(F(1))
    p = LpProblem.build(rows, rhs, [0] * (ny * nz), [1] * (ny * nz))
    res = lp_solve(p)
    assert not res
    assert check_certificate(p, res.certificate)


def test_optimum_and_unbounded():
    p = LpProblem.build([[1, 1]], [4], objective=[1, 2])
    res = lp_solve(p)
    assert res.x == (0, 4) and res.value == 8
    with pytest.raises(UnboundedObjective):
        lp_solve(LpProblem.build([[1, -1]], [0], objective=[1, 1]))


def test_reflected_and_shifted_bounds():
    # x0 <= -1 only, x1 in [2, 3]
    p = LpProblem.build([[1, 1]], [1], [None, 2], [-1, 3], objective=[1, 0])
    res = lp_solve(p)
    assert res.x == (-1, 2) and res.value == -1


def test_no_constraint_rows():
    res = lp_solve(LpProblem.build([], [], [0, 1], [2, 3], objective=[1, -1]))
    assert res.x == (2, 1)


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_dimension_checks():
    with pytest.raises(DimensionError):
        LpProblem.build([[1, 2]], [1, 2])
    with pytest.raises(DimensionError):
        LpProblem.build([[1, 2]], [1], objective=[1])


def test_solve_linear_examples():
    assert solve_linear(identity(2), [F(1, 2), F(1, 3)]) == (F(1, 2), F(1, 3))
    assert solve_linear([[1, 1], [1, 1]], [1, 2]) is None
    mu1 = tuple(row[0] for row in reference.nested_mu())
    assert solve_linear(reference.nested_kappa(), mu1) is not None
    # the nested channel has a one-dimensional kernel, so pick the non-negative solution by LP
    res = lp_solve(LpProblem.build(reference.nested_kappa(), mu1))
    assert res.x == (1, 1, 0, 0)


def test_rank_examples():
    assert rank(identity(3)) == 3
    assert rank(reference.nested_mu()) == 3
    assert rank(((0, 0), (0, 0))) == 0


def test_nullspace():
    basis = nullspace(reference.nested_kappa())
    assert len(basis) == 1
    assert mat_vec(reference.nested_kappa(), basis[0]) == (0, 0, 0)


def test_extreme_points_triangle_with_junk():
    pts = [(0, 0), (1, 0), (0, 1), (0, 0), (F(1, 4), F(1, 4)), (F(1, 2), 0)]
    assert extreme_points(pts) == [(0, 0), (0, 1), (1, 0)]


def test_convex_combination_needs_points():
    with pytest.raises(ValueError):
        convex_combination((0,), [])


@st.composite
def lp_instances(draw):
    m = draw(st.integers(1, 3))
    n = draw(st.integers(1, 4))
    A = [[draw(small) for _ in range(n)] for _ in range(m)]
    b = [draw(small) for _ in range(m)]
    lower, upper = [], []
    for _ in range(n):
        kind = draw(st.sampled_from(["box", "low", "high", "free"]))
        lo = draw(small)
        hi = lo + draw(st.fractions(min_value=0, max_value=3, max_denominator=4))
        lower.append(lo if kind in ("box", "low") else None)
        upper.append(hi if kind in ("box", "high") else None)
    return LpProblem.build(A, b, lower, upper)


@settings(max_examples=300, deadline=None)
@given(lp_instances())
def test_outcomes_verify_by_substitution(p):
    res = lp_solve(p)
    if res:
        assert check_solution(p, res.x)
    else:
        assert check_certificate(p, res.certificate)
    assert lp_solve(p) == res


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_solve_linear_reproduces_b(m, n, data):
    A = [[data.draw(small) for _ in range(n)] for _ in range(m)]
    b = [data.draw(small) for _ in range(m)]
    x = solve_linear(A, b)
    if x is not None:
        assert mat_vec(A, x) == tuple(b)
    else:
        assert rank(A) < rank([list(r) + [v] for r, v in zip(A, b)])
    assert rank(A) == rank(transpose(A))
