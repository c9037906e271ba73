"""End-to-end reproduction of the published counterexamples.

Part A: a three-state pair with nested zonotopes that is not related by
garbling, separated by a three-action decision problem.
Part B: two channels whose zonotope intersection is not a zonotope, so the
channel order has no meet or join.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import reference
from .channel import Channel, DecisionProblem, Prior, binary_split, brute_force_reward, make_channel, optimal_reward
from .exact_linear import ZERO, LpProblem, Matrix, UnboundedObjective, lp_solve
from .orders import falsify_by_decision_problem, garbling_order, k_decision_order
from .polytope import intersect, is_zonotope, zonotope_polytope
from .zonotope import contains_point, inclusion_report, zonotope_of


@dataclass
class Check:
    name: str
    passed: bool = False
    lines: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def note(self, text: str) -> None:
        self.lines.append(text)


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _fmt_mat(m) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in m) + "]"


def unique_nonnegative_solution(kappa: Channel, target: Channel) -> Optional[Matrix]:
    """The matrix ``lam >= 0`` with ``kappa lam = target`` when exactly one exists.

    Uniqueness is decided per column by maximizing and minimizing every
    coordinate over the solution set.
    """
    ny = kappa.n_outputs
    cols = []
    for z in range(target.n_outputs):
        rhs = target.column(z)
        if not lp_solve(LpProblem.build(kappa.matrix, rhs)):
            return None
        col = []
        for y in range(ny):
            e = [ZERO] * ny
            e[y] = Fraction(1)
            try:
                hi = lp_solve(LpProblem.build(kappa.matrix, rhs, objective=e)).value
                lo = -lp_solve(LpProblem.build(kappa.matrix, rhs, objective=[-v for v in e])).value
            except UnboundedObjective:
                return None
            if hi != lo:
                return None
            col.append(hi)
        cols.append(col)
    return tuple(zip(*cols))


def _run(checks: list[Check], name: str, body: Callable[[Check], bool]) -> None:
    c = Check(name)
    t = time.perf_counter()
    c.passed = bool(body(c))
    c.seconds = time.perf_counter() - t
    checks.append(c)


def _nested_checks(checks: list[Check]) -> None:
    kappa = make_channel(reference.nested_kappa())
    mu = make_channel(reference.nested_mu())
    u = reference.penalty_reward()
    prior = Prior.uniform(kappa.n_inputs)
    dp = DecisionProblem(prior, u)

    def garbling_fails(c: Check) -> bool:
        res = garbling_order(kappa, mu)
        if res:
            c.note(f"unexpected witness {_fmt_mat(res.lam.matrix)}")
            return False
        c.note(f"Farkas certificate y = {_fmt_vec(res.certificate)}")
        c.note(f"certificate verifies: {res.verify()}")
        return res.verify()

    def unique_lambda(c: Check) -> bool:
        lam = unique_nonnegative_solution(kappa, mu)
        if lam is None:
            c.note("non-negative solution is missing or not unique")
            return False
        sums = [sum(row, ZERO) for row in lam]
        c.note(f"lambda = {_fmt_mat(lam)}")
        c.note(f"row sums = {_fmt_vec(sums)}")
        return lam == reference.nested_lambda() and any(s != 1 for s in sums)

    def zonotopes_nested(c: Check) -> bool:
        zk, zm = zonotope_of(kappa), zonotope_of(mu)
        fwd = inclusion_report(zk, zm)
        for v, out in fwd:
            c.note(f"{_fmt_vec(v)} in Z_kappa: " + (f"a = {_fmt_vec(out.x)}" if out else "no"))
        back = inclusion_report(zm, zk)
        missing = [(v, out) for v, out in back if not out]
        if missing:
            v, out = missing[0]
            c.note(f"{_fmt_vec(v)} not in Z_mu, certificate {_fmt_vec(out.certificate)}")
        return len(fwd) == 8 and all(out for _, out in fwd) and bool(missing)

    def reward_gap(c: Check) -> bool:
        r_mu, s_mu = optimal_reward(mu, dp)
        r_k, s_k = optimal_reward(kappa, dp)
        b_mu, b_k = brute_force_reward(mu, dp), brute_force_reward(kappa, dp)
        c.note(f"R(mu) = {r_mu} (strategy {s_mu.actions}), brute force {b_mu}")
        c.note(f"R(kappa) = {r_k} (strategy {s_k.actions}), brute force {b_k}; stated value {reference.STATED_KAPPA_REWARD}")
        return r_mu == 1 and b_mu == r_mu and b_k == r_k and r_k < r_mu

    def k_orders(c: Check) -> bool:
        two, three = k_decision_order(kappa, mu, 2), k_decision_order(kappa, mu, 3)
        hit = falsify_by_decision_problem(kappa, mu, 3, trials=1, seed=0, first=u, prior=prior)
        c.note(f"2-decision order holds: {two}; 3-decision order holds: {three}")
        c.note(f"falsifier with the penalty rewards as trial 0 found a counterexample: {hit is not None}")
        return two and not three and hit is not None

    _run(checks, "nested: garbling LP infeasible", garbling_fails)
    _run(checks, "nested: unique non-negative lambda is not stochastic", unique_lambda)
    _run(checks, "nested: Z_mu inside Z_kappa, not conversely", zonotopes_nested)
    _run(checks, "nested: mu earns strictly more than kappa", reward_gap)
    _run(checks, "nested: 2-decision order holds, 3-decision order fails", k_orders)


def _cross_checks(checks: list[Check], kappa1_rows) -> None:
    k1 = make_channel(kappa1_rows)
    k2 = make_channel(reference.cross_kappa2())
    state: dict = {}

    def vertex_set(c: Check) -> bool:
        poly = intersect(zonotope_polytope(k1), zonotope_polytope(k2))
        state["poly"] = poly
        got = sorted(poly.vertices)
        want = reference.cross_intersection_vertices()
        for v in got:
            c.note(_fmt_vec(v))
        if got != want:
            c.note("vertex set mismatch against the published matrix")
        return got == want

    def not_zonotope(c: Check) -> bool:
        ok, face = is_zonotope(state["poly"])
        if face is not None:
            c.note(f"offending face with {len(face)} vertices: " + ", ".join(_fmt_vec(v) for v in face.vertices))
        return not ok and face is not None and len(face) == 3

    def lower_bounds(c: Check) -> bool:
        good = True
        for v in state["poly"].vertices:
            a = contains_point(zonotope_of(k1), v)
            if not a:
                c.note(f"{_fmt_vec(v)} not in Z_kappa1")
                return False
            mu_v, _ = binary_split(k1, a.x)
            both = bool(garbling_order(k1, mu_v)) and bool(garbling_order(k2, mu_v))
            c.note(f"mu_(v) for v = {_fmt_vec(v)}: common garbling {both}")
            good &= both
        return good

    _run(checks, "cross: intersection vertices match", vertex_set)
    if not checks[-1].passed:
        return
    _run(checks, "cross: intersection has a triangular face", not_zonotope)
    _run(checks, "cross: every mu_(v) is a common lower bound", lower_bounds)


def run_paper_checks(corrupt: bool = False) -> list[Check]:
    checks: list[Check] = []
    _nested_checks(checks)
    _cross_checks(checks, reference.corrupted_kappa1() if corrupt else reference.cross_kappa1())
    return checks
