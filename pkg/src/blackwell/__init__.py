"""Exact comparison of finite information channels.

Garbling, zonotope and k-decision orders with certificates, optimal
decision-problem rewards, and meet/join for two-state inputs.
"""

from .channel import (
    Channel,
    DecisionProblem,
    JointDistribution,
    Prior,
    Strategy,
    binary_split,
    channels_from_joint,
    compose,
    make_channel,
    optimal_reward,
    posterior,
    reweight_reward,
    strategy_reward,
)
from .orders import (
    OrderResult,
    Verdict,
    blackwell_compare,
    equivalent,
    falsify_by_decision_problem,
    garbling_order,
    k_decision_order,
    random_variable_order,
    standard_polytope_vertices,
    zonotope_order,
)
from .polytope import Polytope, binary_join, binary_meet, convex_hull, faces_2d, intersect, is_zonotope
from .zonotope import Zonotope, contains_point, includes, minimal_generators, polygon_to_channel, vertices, zonotope_of

__version__ = "0.1.0"
