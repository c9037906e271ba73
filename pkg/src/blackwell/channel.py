"""Channels, decision problems and exact optimal rewards."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact_linear import ONE, ZERO, DimensionError, Matrix, Vector, identity, mat_mul, matrix, vector


class ChannelError(ValueError):
    pass


class NotStochastic(ChannelError):
    def __init__(self, row: int, total: Fraction):
        super().__init__(f"row {row} sums to {total}, not 1")
        self.row = row
        self.total = total


class NegativeEntry(ChannelError):
    def __init__(self, row: int, col: int):
        super().__init__(f"entry ({row}, {col}) is negative")
        self.row = row
        self.col = col


class ZeroProbabilityOutput(ChannelError):
    pass


class MarginalMismatch(ChannelError):
    pass


class ZeroMarginal(ChannelError):
    def __init__(self, x: int):
        super().__init__(f"input {x} has zero probability")
        self.x = x


class CoefficientOutOfRange(ChannelError):
    pass


@dataclass(frozen=True)
class Channel:
    """Row-stochastic matrix; ``matrix[x][y]`` is P(Y=y | X=x).

    Build with :func:`make_channel` (or :meth:`from_rows`) so the
    stochasticity check runs.
    """

    matrix: Matrix

    @classmethod
    def from_rows(cls, rows) -> "Channel":
        return make_channel(matrix(rows))

    @property
    def n_inputs(self) -> int:
        return len(self.matrix)

    @property
    def n_outputs(self) -> int:
        return len(self.matrix[0])

    @property
    def columns(self) -> tuple[Vector, ...]:
        return tuple(zip(*self.matrix))

    def column(self, y: int) -> Vector:
        return tuple(row[y] for row in self.matrix)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.matrix)


def make_channel(m) -> Channel:
    m = matrix(m)
    if not m or not m[0]:
        raise ChannelError("a channel needs at least one input and one output")
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            if v < 0:
                raise NegativeEntry(i, j)
        total = sum(row, ZERO)
        if total != 1:
            raise NotStochastic(i, total)
    return Channel(m)


def identity_channel(n: int) -> Channel:
    return Channel(identity(n))


def constant_channel(n: int) -> Channel:
    return Channel(tuple((ONE,) for _ in range(n)))


def channel_from_columns(columns: Sequence[Sequence[Fraction]]) -> Channel:
    return make_channel(list(zip(*columns)))


def compose(kappa: Channel, lam: Channel) -> Channel:
    """The channel ``kappa`` followed by ``lam`` (matrix product)."""
    if not isinstance(lam, Channel):
        lam = make_channel(lam)
    if kappa.n_outputs != lam.n_inputs:
        raise DimensionError(f"kappa has {kappa.n_outputs} outputs but lambda has {lam.n_inputs} inputs")
    return Channel(mat_mul(kappa.matrix, lam.matrix))


@dataclass(frozen=True)
class Prior:
    probs: Vector

    def __post_init__(self):
        if any(v < 0 for v in self.probs):
            raise ChannelError("prior has a negative entry")
        if sum(self.probs, ZERO) != 1:
            raise ChannelError(f"prior sums to {sum(self.probs, ZERO)}, not 1")

    @classmethod
    def of(cls, values) -> "Prior":
        return cls(vector(values))

    @classmethod
    def uniform(cls, n: int) -> "Prior":
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    def __len__(self) -> int:
        return len(self.probs)


@dataclass(frozen=True)
class DecisionProblem:
    prior: Prior
    rewards: Matrix  # rewards[x][a]

    def __post_init__(self):
        if len(self.rewards) != len(self.prior):
            raise DimensionError("reward matrix needs one row per state")
        if len({len(r) for r in self.rewards}) != 1 or not self.rewards[0]:
            raise DimensionError("reward matrix must be rectangular with at least one action")

    @classmethod
    def of(cls, prior, rewards) -> "DecisionProblem":
        if not isinstance(prior, Prior):
            prior = Prior.of(prior)
        return cls(prior, matrix(rewards))

    @property
    def n_actions(self) -> int:
        return len(self.rewards[0])


@dataclass(frozen=True)
class Strategy:
    """Either a deterministic map ``actions[y]`` or a stochastic kernel."""

    actions: Optional[tuple[int, ...]] = None
    kernel: Optional[Channel] = None

    def as_kernel(self, n_actions: int) -> Channel:
        if self.kernel is not None:
            return self.kernel
        return Channel(tuple(tuple(ONE if a == act else ZERO for a in range(n_actions)) for act in self.actions))


def _weighted(kappa: Channel, p: Prior, rewards: Matrix) -> list[list[Fraction]]:
    """``w[y][a] = sum_x p(x) kappa(x;y) u(x,a)``."""
    if kappa.n_inputs != len(p):
        raise DimensionError("prior length does not match the channel's input size")
    if len(rewards) != kappa.n_inputs:
        raise DimensionError("reward rows do not match the channel's input size")
    n_actions = len(rewards[0])
    out = []
    for y in range(kappa.n_outputs):
        out.append([sum((p.probs[x] * kappa.matrix[x][y] * rewards[x][a] for x in range(kappa.n_inputs)), ZERO)
                    for a in range(n_actions)])
    return out


def output_distribution(kappa: Channel, p: Prior) -> Vector:
    return tuple(sum((p.probs[x] * kappa.matrix[x][y] for x in range(kappa.n_inputs)), ZERO)
                 for y in range(kappa.n_outputs))


def posterior(kappa: Channel, p: Prior, y: int) -> Vector:
    """P(X = . | Y = y)."""
    if kappa.n_inputs != len(p):
        raise DimensionError("prior length does not match the channel's input size")
    joint = [p.probs[x] * kappa.matrix[x][y] for x in range(kappa.n_inputs)]
    total = sum(joint, ZERO)
    if total == 0:
        raise ZeroProbabilityOutput(f"output {y} has probability zero")
    return tuple(v / total for v in joint)


def optimal_reward(kappa: Channel, dp: DecisionProblem) -> tuple[Fraction, Strategy]:
    """Maximal expected reward and a deterministic strategy attaining it.

    Computed as ``sum_y max_a sum_x p(x) kappa(x;y) u(x,a)``, which equals
    the posterior-weighted form without dividing by P(Y=y); outputs of
    probability zero contribute 0.  Ties go to the smallest action index.
    """
    w = _weighted(kappa, dp.prior, dp.rewards)
    value = ZERO
    actions = []
    for row in w:
        best = max(range(len(row)), key=lambda a: (row[a], -a))
        actions.append(best)
        value += row[best]
    return value, Strategy(actions=tuple(actions))


def strategy_reward(kappa: Channel, dp: DecisionProblem, s: Strategy) -> Fraction:
    w = _weighted(kappa, dp.prior, dp.rewards)
    if s.kernel is None:
        if len(s.actions) != kappa.n_outputs:
            raise DimensionError("strategy must assign an action to every output")
        if any(not 0 <= a < dp.n_actions for a in s.actions):
            raise DimensionError("strategy uses an action outside the decision problem")
        return sum((w[y][a] for y, a in enumerate(s.actions)), ZERO)
    k = s.kernel
    if k.n_inputs != kappa.n_outputs or k.n_outputs != dp.n_actions:
        raise DimensionError("stochastic strategy has the wrong shape")
    return sum((k.matrix[y][a] * w[y][a] for y in range(kappa.n_outputs) for a in range(dp.n_actions)), ZERO)


def brute_force_reward(kappa: Channel, dp: DecisionProblem) -> Fraction:
    """Best reward over all ``|A|^|Y|`` deterministic strategies."""
    return max(strategy_reward(kappa, dp, Strategy(actions=acts))
               for acts in itertools.product(range(dp.n_actions), repeat=kappa.n_outputs))


def binary_split(kappa: Channel, a: Sequence[Fraction]) -> tuple[Channel, Channel]:
    """Binary channel ``(v, 1 - v)`` with ``v = kappa a`` and its garbling witness ``(a, 1 - a)``."""
    a = vector(a)
    if len(a) != kappa.n_outputs:
        raise DimensionError("need one coefficient per output")
    if any(not 0 <= v <= 1 for v in a):
        raise CoefficientOutOfRange("coefficients must lie in [0, 1]")
    witness = Channel(tuple((v, ONE - v) for v in a))
    mu_v = compose(kappa, witness)
    return mu_v, witness


@dataclass(frozen=True)
class JointDistribution:
    table: Matrix  # table[x][y]

    def __post_init__(self):
        if any(v < 0 for row in self.table for v in row):
            raise ChannelError("joint distribution has a negative entry")
        total = sum((v for row in self.table for v in row), ZERO)
        if total != 1:
            raise ChannelError(f"joint distribution sums to {total}, not 1")

    @classmethod
    def of(cls, rows) -> "JointDistribution":
        return cls(matrix(rows))

    @classmethod
    def from_channel(cls, p: Prior, kappa: Channel) -> "JointDistribution":
        return cls(tuple(tuple(p.probs[x] * v for v in row) for x, row in enumerate(kappa.matrix)))

    def marginal(self) -> Vector:
        return tuple(sum(row, ZERO) for row in self.table)


def channels_from_joint(xy: JointDistribution, xz: JointDistribution) -> tuple[Prior, Channel, Channel]:
    px, qx = xy.marginal(), xz.marginal()
    if px != qx:
        raise MarginalMismatch("the two joints have different X-marginals")
    for x, v in enumerate(px):
        if v == 0:
            raise ZeroMarginal(x)
    kappa = make_channel([[v / px[x] for v in row] for x, row in enumerate(xy.table)])
    mu = make_channel([[v / px[x] for v in row] for x, row in enumerate(xz.table)])
    return Prior(px), kappa, mu


def reweight_reward(p: Prior, q: Prior, u: Matrix) -> Matrix:
    """Rewards ``u'(x,a) = q(x)/p(x) u(x,a)``, so that ``R(kappa,q,u) = R(kappa,p,u')``."""
    if len(p) != len(q) or len(u) != len(p):
        raise DimensionError("prior and reward sizes disagree")
    for x, v in enumerate(p.probs):
        if v == 0:
            raise ZeroMarginal(x)
    return tuple(tuple(q.probs[x] / p.probs[x] * v for v in row) for x, row in enumerate(matrix(u)))
