"""Published example matrices reproduced by ``blackwell verify-paper``.

Kept as text in the same format the CLI reads, so the data and the file
parser are exercised together.
"""

from __future__ import annotations

from .fileformat import parse_matrix

# Three-state pair whose zonotopes are nested although no garbling exists.
NESTED_KAPPA_TEXT = """\
# channel with four outputs
1/2 0   0   1/2
0   1/2 0   1/2
0   0   1/2 1/2
"""

NESTED_MU_TEXT = """\
# channel with three outputs
1/2 1/2 0
1/2 0   1/2
0   1/2 1/2
"""

# Unique non-negative solution of mu = kappa lam for the pair above.
NESTED_LAMBDA_TEXT = """\
1 1 0
1 0 1
0 1 1
0 0 0
"""

# Action i pays -5 when the state is i and +1 otherwise.
PENALTY_REWARD_TEXT = """\
-5  1  1
 1 -5  1
 1  1 -5
"""

# Reward for kappa under the uniform prior as printed in the source; the
# exact value is 0 (see README).
STATED_KAPPA_REWARD = -2

# Pair of three-state channels whose zonotope intersection is not a zonotope.
CROSS_KAPPA1_TEXT = """\
1/3 2/3 0
0   1/3 2/3
2/3 0   1/3
"""

CROSS_KAPPA2_TEXT = """\
2/3 1/3 0
0   2/3 1/3
1/3 0   2/3
"""

# Columns are the vertices of the intersection of the two zonotopes.
CROSS_INTERSECTION_TEXT = """\
0 5/6 2/6 2/6 1/6 4/6 4/6 1
0 2/6 5/6 2/6 4/6 1/6 4/6 1
0 2/6 2/6 5/6 4/6 4/6 1/6 1
"""

# Negative control: a different first channel for the cross example.
CORRUPTED_KAPPA1_TEXT = """\
1/3 2/3 0
0   1/3 2/3
1/3 1/3 1/3
"""


def nested_kappa():
    return parse_matrix(NESTED_KAPPA_TEXT)


def nested_mu():
    return parse_matrix(NESTED_MU_TEXT)


def nested_lambda():
    return parse_matrix(NESTED_LAMBDA_TEXT)


def penalty_reward():
    return parse_matrix(PENALTY_REWARD_TEXT)


def cross_kappa1():
    return parse_matrix(CROSS_KAPPA1_TEXT)


def cross_kappa2():
    return parse_matrix(CROSS_KAPPA2_TEXT)


def cross_intersection_vertices():
    m = parse_matrix(CROSS_INTERSECTION_TEXT)
    return sorted(tuple(col) for col in zip(*m))


def corrupted_kappa1():
    return parse_matrix(CORRUPTED_KAPPA1_TEXT)
