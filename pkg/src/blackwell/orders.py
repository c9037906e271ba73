"""Order relations between channels on a common input alphabet.

* garbling order: ``mu = kappa lam`` for some stochastic ``lam``;
* zonotope order: ``Z_kappa`` contains ``Z_mu``;
* k-decision order: ``kappa`` earns at least as much as ``mu`` in every
  decision problem with at most ``k`` actions.

The garbling order coincides with reward dominance over all decision
problems, so :func:`blackwell_compare` summarizes it in both directions.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .channel import (
    Channel,
    DecisionProblem,
    JointDistribution,
    Prior,
    channels_from_joint,
    compose,
    make_channel,
    optimal_reward,
)
from .exact_linear import (
    ONE,
    ZERO,
    DimensionError,
    LpProblem,
    Vector,
    check_certificate,
    extreme_points,
    lp_solve,
)
from .zonotope import includes, vertices, zonotope_of

DEFAULT_ASSIGNMENT_CAP = 2 ** 20


class AlphabetMismatch(DimensionError):
    pass


class TooManyAssignments(ValueError):
    pass


def _same_inputs(kappa: Channel, mu: Channel) -> None:
    if kappa.n_inputs != mu.n_inputs:
        raise AlphabetMismatch(f"input sizes differ: {kappa.n_inputs} vs {mu.n_inputs}")


@dataclass(frozen=True)
class GarblingWitness:
    lam: Channel

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NoGarbling:
    """Refutation of ``mu = kappa lam``: a certificate for the LP in ``problem``."""

    problem: LpProblem
    certificate: Vector

    def __bool__(self) -> bool:
        return False

    def verify(self) -> bool:
        return check_certificate(self.problem, self.certificate)


GarblingResult = Union[GarblingWitness, NoGarbling]


def realization_problem(kappa: Channel, targets: Sequence[Sequence[Fraction]]) -> LpProblem:
    """LP for a stochastic ``lam`` (outputs of kappa -> len(targets)) with ``kappa lam_i = targets[i]``.

    Variable ``lam[y][i]`` sits at index ``y * k + i``.  Upper bounds of 1
    are implied by the row sums and left out.
    """
    ny, k, nx = kappa.n_outputs, len(targets), kappa.n_inputs
    n = ny * k
    A, b = [], []
    for x in range(nx):
        for i in range(k):
            row = [ZERO] * n
            for y in range(ny):
                row[y * k + i] = kappa.matrix[x][y]
            A.append(row)
            b.append(targets[i][x])
    for y in range(ny):
        row = [ZERO] * n
        for i in range(k):
            row[y * k + i] = ONE
        A.append(row)
        b.append(ONE)
    return LpProblem.build(A, b)


def garbling_problem(kappa: Channel, mu: Channel) -> LpProblem:
    return realization_problem(kappa, mu.columns)


def _solve_realization(kappa: Channel, targets: Sequence[Sequence[Fraction]]) -> GarblingResult:
    problem = realization_problem(kappa, targets)
    out = lp_solve(problem)
    if not out:
        return NoGarbling(problem, out.certificate)
    k = len(targets)
    lam = make_channel([out.x[y * k:(y + 1) * k] for y in range(kappa.n_outputs)])
    return GarblingWitness(lam)


def garbling_order(kappa: Channel, mu: Channel) -> GarblingResult:
    """Witness ``lam`` with ``compose(kappa, lam) == mu``, or a certified refutation."""
    _same_inputs(kappa, mu)
    res = _solve_realization(kappa, mu.columns)
    if res and compose(kappa, res.lam) != mu:
        raise AssertionError("internal error: garbling witness does not recompose")
    return res


def zonotope_order(kappa: Channel, mu: Channel) -> bool:
    _same_inputs(kappa, mu)
    return includes(zonotope_of(kappa), zonotope_of(mu))


# --------------------------------------------------------------------------
# k-decision order


@dataclass(frozen=True)
class StandardPolytopeVertex:
    """Column sums ``parts[i] = sum_{f(y) = i} kappa_y`` for an assignment ``f``."""

    parts: tuple[Vector, ...]
    assignment: tuple[int, ...]

    def flat(self) -> Vector:
        return tuple(v for part in self.parts for v in part)


def _parts(kappa: Channel, f: Sequence[int], k: int) -> tuple[Vector, ...]:
    cols = kappa.columns
    out = []
    for i in range(k):
        out.append(tuple(sum((cols[y][x] for y in range(kappa.n_outputs) if f[y] == i), ZERO)
                         for x in range(kappa.n_inputs)))
    return tuple(out)


def standard_polytope_vertices(kappa: Channel, k: int,
                               cap: int = DEFAULT_ASSIGNMENT_CAP) -> list[StandardPolytopeVertex]:
    """Extreme points among the column-sum tuples of all assignments outputs -> {0..k-1}."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k ** kappa.n_outputs > cap:
        raise TooManyAssignments(f"{k}^{kappa.n_outputs} assignments exceed the cap of {cap}")
    seen: dict[Vector, StandardPolytopeVertex] = {}
    for f in itertools.product(range(k), repeat=kappa.n_outputs):
        v = StandardPolytopeVertex(_parts(kappa, f, k), f)
        seen.setdefault(v.flat(), v)
    keep = set(extreme_points(list(seen)))
    return [seen[p] for p in sorted(keep)]


def realizable(kappa: Channel, parts: Sequence[Sequence[Fraction]]) -> bool:
    """Is there a stochastic ``lam`` with ``kappa lam`` having columns ``parts``?"""
    return bool(_solve_realization(kappa, parts))


def set_partitions(n: int, blocks: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings: each partition of range(n) into exactly ``blocks`` blocks once."""
    def rec(prefix: list[int], used: int) -> Iterator[tuple[int, ...]]:
        i = len(prefix)
        if i == n:
            if used == blocks:
                yield tuple(prefix)
            return
        if blocks - used > n - i:
            return
        for b in range(min(used + 1, blocks)):
            prefix.append(b)
            yield from rec(prefix, max(used, b + 1))
            prefix.pop()
    yield from rec([], 0)


def k_decision_order(kappa: Channel, mu: Channel, k: int,
                     cap: int = DEFAULT_ASSIGNMENT_CAP) -> bool:
    """Does ``kappa`` do at least as well as ``mu`` in every problem with at most ``k`` actions?

    Equivalent to realizing every extreme column-sum tuple of ``mu`` through
    ``kappa``.  Realizability of a tuple depends only on the partition of
    ``mu``'s outputs it induces, is invariant under relabelling actions, and
    passes from a partition to any coarsening.  So it suffices to check the
    partitions into exactly ``min(k, |Z|)`` blocks, each of which is a
    garbling test against the merged channel.
    """
    _same_inputs(kappa, mu)
    if k < 1:
        raise ValueError("k must be at least 1")
    m = min(k, mu.n_outputs)
    if m ** mu.n_outputs > cap:
        raise TooManyAssignments(f"{m}^{mu.n_outputs} assignments exceed the cap of {cap}")
    for f in set_partitions(mu.n_outputs, m):
        if not realizable(kappa, _parts(mu, f, m)):
            return False
    return True


def k_decision_counterexample(kappa: Channel, mu: Channel, k: int) -> Optional[StandardPolytopeVertex]:
    """A column-sum tuple of ``mu`` that ``kappa`` cannot realize, if any."""
    _same_inputs(kappa, mu)
    m = min(k, mu.n_outputs)
    for f in set_partitions(mu.n_outputs, m):
        parts = _parts(mu, f, m)
        if not realizable(kappa, parts):
            return StandardPolytopeVertex(parts, f)
    return None


# --------------------------------------------------------------------------
# summaries


class Verdict(enum.Enum):
    STRICTLY_MORE = "strictly more informative"
    STRICTLY_LESS = "strictly less informative"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class OrderResult:
    verdict: Verdict
    forward: GarblingResult   # kappa garbles to mu?
    backward: GarblingResult  # mu garbles to kappa?


def blackwell_compare(kappa: Channel, mu: Channel) -> OrderResult:
    fwd = garbling_order(kappa, mu)
    bwd = garbling_order(mu, kappa)
    verdict = {
        (True, True): Verdict.EQUIVALENT,
        (True, False): Verdict.STRICTLY_MORE,
        (False, True): Verdict.STRICTLY_LESS,
        (False, False): Verdict.INCOMPARABLE,
    }[bool(fwd), bool(bwd)]
    return OrderResult(verdict, fwd, bwd)


def equivalent(kappa: Channel, mu: Channel) -> bool:
    """Equal zonotopes (which is the same as mutual garbling)."""
    _same_inputs(kappa, mu)
    return vertices(zonotope_of(kappa)) == vertices(zonotope_of(mu))


def random_variable_order(xy: JointDistribution, xz: JointDistribution) -> OrderResult:
    """Compare Y and Z as sources of information about X from their joints with X.

    A forward witness ``lam`` is the conditional law of a variable Z' given
    Y such that X -> Y -> Z' is a Markov chain and (X, Z') has the law of (X, Z).
    """
    _, kappa, mu = channels_from_joint(xy, xz)
    return blackwell_compare(kappa, mu)


def random_rewards(rng: random.Random, n_states: int, n_actions: int, bound: int = 10) -> tuple:
    return tuple(tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) for _ in range(n_actions))
                 for _ in range(n_states))


def falsify_by_decision_problem(kappa: Channel, mu: Channel, k: int, trials: int, seed: int,
                                first=None, prior: Optional[Prior] = None) -> Optional[DecisionProblem]:
    """Search for a decision problem with ``k`` actions where ``mu`` beats ``kappa``.

    The prior is fixed (uniform unless given); only rewards are sampled.
    ``first`` is an optional reward matrix tried before any random one.
    """
    _same_inputs(kappa, mu)
    prior = prior or Prior.uniform(kappa.n_inputs)
    rng = random.Random(seed)
    for t in range(trials):
        if t == 0 and first is not None:
            dp = DecisionProblem.of(prior, first)
        else:
            dp = DecisionProblem(prior, random_rewards(rng, kappa.n_inputs, k))
        if optimal_reward(mu, dp)[0] > optimal_reward(kappa, dp)[0]:
            return dp
    return None
