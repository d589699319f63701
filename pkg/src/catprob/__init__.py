"""Conditional probability as a triangle fill-in.

Classical conditioning runs in the Kleisli category of the finite
distribution monad with exact rationals (:mod:`catprob.classical`); quantum
conditioning runs on finite-dimensional C*-algebras with positive unital maps
(:mod:`catprob.quantum`).  :mod:`catprob.bomb` rebuilds the Elitzur–Vaidman
bomb tester on top of the quantum engine.
"""

__version__ = "0.1.0"

from .classical import ConditioningResult, condition, condition_ntest, joint_map, verify_triangle
from .dist import (
    ONE,
    FiniteDistribution,
    FiniteSet,
    Kappa,
    KleisliMap,
    coproduct,
    dirac,
    graph,
    kleisli_compose,
    tensor,
)
from .predicates import Predicate, char_map, omega, ovee, perp, scale, subst
from .quantum import (
    QConditioningResult,
    bub_oracle,
    condition_param,
    condition_state,
    joint_q,
    verify_triangle_q,
)

__all__ = [
    "ONE", "ConditioningResult", "FiniteDistribution", "FiniteSet", "Kappa", "KleisliMap",
    "Predicate", "QConditioningResult", "bub_oracle", "char_map", "condition",
    "condition_ntest", "condition_param", "condition_state", "coproduct", "dirac", "graph",
    "joint_map", "joint_q", "kleisli_compose", "omega", "ovee", "perp", "scale", "subst",
    "tensor", "verify_triangle", "verify_triangle_q",
]
