"""Classical conditional probability as a triangle fill-in in Kℓ(D).

Given ``f: X → Y`` and a predicate ``φ`` on ``X ⊗ Y`` we build

* the joint ``(π₂+π₂) ⊙ char_φ ⊙ gr(f): X → Y + Y``,
* the marginal predicate ``gr(f)*(φ)`` on ``X``,
* conditionals ``f|φ, f|φ⊥: X → Y`` with
  ``(f|φ + f|φ⊥) ⊙ char_{gr(f)*(φ)} = joint``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .dist import (
    FiniteDistribution,
    FiniteSet,
    Kappa,
    KleisliMap,
    coproduct_map,
    graph,
    kleisli_compose,
    projection,
    tensor,
    uniform,
)
from .errors import NotATest, SetMismatch, UndefinedSum
from .predicates import Predicate, char_map, char_map_ntest, ovee, subst


@dataclass(frozen=True)
class ConditioningResult:
    cond_true: KleisliMap
    cond_false: KleisliMap
    marginal: Predicate
    joint: KleisliMap
    degenerate_points: frozenset = frozenset()


def _check_carrier(f: KleisliMap, phi: Predicate) -> FiniteSet:
    xy = tensor(f.source, f.target)
    if phi.carrier != xy:
        raise SetMismatch(f"predicate must live on {xy!r}, got {phi.carrier!r}")
    return xy


def ntest_joint(f: KleisliMap, phis: Sequence[Predicate]) -> KleisliMap:
    """``(π₂ + … + π₂) ⊙ char_{φ₁…φₙ} ⊙ gr(f): X → Y + … + Y``."""
    xy = _check_carrier(f, phis[0])
    pi2 = projection(xy, 2)
    ch = char_map_ntest(phis)
    return kleisli_compose(coproduct_map(*([pi2] * len(phis))),
                           kleisli_compose(ch, graph(f)))


def joint_map(f: KleisliMap, phi: Predicate) -> KleisliMap:
    xy = _check_carrier(f, phi)
    pi2 = projection(xy, 2)
    return kleisli_compose(coproduct_map(pi2, pi2),
                           kleisli_compose(char_map(phi), graph(f)))


def _ratio_row(j: FiniteDistribution, i: int, denom: Fraction,
               target: FiniteSet) -> FiniteDistribution:
    return FiniteDistribution({y: j.weight(Kappa(i, y)) / denom for y in target})


def condition(f: KleisliMap, phi: Predicate) -> ConditioningResult:
    """Conditional maps ``f|φ`` and ``f|φ⊥`` for ``f: X → Y`` and ``φ`` on ``X ⊗ Y``.

    At points where the marginal is 0 (resp. 1) the conditional ``f|φ``
    (resp. ``f|φ⊥``) is not determined; the uniform distribution on ``Y`` is
    used there and the point is listed in ``degenerate_points``.
    """
    marg = subst(graph(f), phi)
    joint = joint_map(f, phi)
    Y = f.target
    true_rows, false_rows, degenerate = {}, {}, set()
    for x in f.source:
        m = marg(x)
        if m in (0, 1):
            degenerate.add(x)
        true_rows[x] = _ratio_row(joint(x), 1, m, Y) if m else uniform(Y)
        false_rows[x] = _ratio_row(joint(x), 2, 1 - m, Y) if m != 1 else uniform(Y)
    return ConditioningResult(
        cond_true=KleisliMap(f.source, Y, true_rows),
        cond_false=KleisliMap(f.source, Y, false_rows),
        marginal=marg,
        joint=joint,
        degenerate_points=frozenset(degenerate),
    )


def check_test(phis: Sequence[Predicate]) -> None:
    """Raise :class:`NotATest` unless ``φ₁ ⊎ … ⊎ φₙ = 1`` exactly."""
    if not phis:
        raise NotATest("an n-test needs at least one predicate")
    total = phis[0]
    try:
        for q in phis[1:]:
            total = ovee(total, q)
    except UndefinedSum as exc:
        raise NotATest(f"predicates overflow: {exc}") from None
    short = {x: v for x, v in total.values.items() if v != 1}
    if short:
        x, v = next(iter(short.items()))
        raise NotATest(f"predicates sum to {v} (not 1) at {x!r}")


def condition_ntest(f: KleisliMap, phis: Sequence[Predicate]) -> list[KleisliMap]:
    """The ``n`` conditional maps ``f|φᵢ`` of an n-test ``φ₁, …, φₙ``.

    Coproduct summands are tagged ``κ₁ … κₙ`` directly.  Degenerate points
    (zero marginal for ``φᵢ``) get the uniform distribution, as in
    :func:`condition`.
    """
    check_test(phis)
    _check_carrier(f, phis[0])
    joint = ntest_joint(f, phis)
    gr = graph(f)
    out = []
    for i, phi in enumerate(phis, 1):
        marg = subst(gr, phi)
        rows = {
            x: _ratio_row(joint(x), i, marg(x), f.target) if marg(x) else uniform(f.target)
            for x in f.source
        }
        out.append(KleisliMap(f.source, f.target, rows))
    return out


def triangle_composite(result: ConditioningResult) -> KleisliMap:
    """``(f|φ + f|φ⊥) ⊙ char_{marginal}``, the left leg of the triangle."""
    return kleisli_compose(coproduct_map(result.cond_true, result.cond_false),
                           char_map(result.marginal))


def verify_triangle(result: ConditioningResult) -> bool:
    """Exact check that the triangle closes at every non-degenerate point."""
    try:
        composite = triangle_composite(result)
    except (SetMismatch, ValueError):
        return False
    if composite.target != result.joint.target:
        return False
    return all(composite(x) == result.joint(x)
               for x in result.joint.source if x not in result.degenerate_points)
