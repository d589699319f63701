"""Quantum conditional probability for maps ``f: B → Z(A)`` and effects on ``A ⊗ B``.

Everything is phrased in C*PU (Heisenberg picture): the joint is the PU map
``B × B → A``, ``(b₁, b₂) ↦ gr(f)(char_e(1 ⊗ b₁, 1 ⊗ b₂))``, and the
conditionals satisfy ``char_m ∘ (f|e × f|e⊥) = joint`` with ``m = gr(f)(e)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cstar
from .cstar import (
    INV_TOL,
    TOL_POS,
    AlgebraElement,
    AlgebraShape,
    Effect,
    PUMap,
    State,
    as_element,
    basis,
    char_effect,
    coproj_tensor,
    graph_cstar,
    inv_sqrt_pos,
    pair,
    pu_compose,
    pu_product,
    sqrt_pos,
    tensor,
    unit,
    zero,
)
from .dist import FiniteSet, KleisliMap
from .errors import DegenerateEffect, MarginalNotInvertible, NotInvertible, ShapeMismatch
from .predicates import Predicate

TOL_TRIANGLE = 1e-8


@dataclass(frozen=True)
class QConditioningResult:
    cond_true: PUMap
    cond_false: PUMap
    marginal_effect: Effect
    joint: PUMap
    residual: float


def _shapes(a, f: PUMap, e) -> tuple[AlgebraShape, AlgebraShape, AlgebraElement]:
    a = cstar._as_shape(a)
    b = f.source
    e = as_element(e)
    if e.shape != tensor(a, b):
        raise ShapeMismatch(f"effect lives on {e.shape!r}, expected A ⊗ B = {tensor(a, b)!r}")
    return a, b, e


def joint_q(a, f: PUMap, e) -> PUMap:
    """``f∧e = gr(f) ∘ char_e ∘ (κ₂ × κ₂): B × B → A``."""
    a, b, e = _shapes(a, f, e)
    k2 = coproj_tensor(2, a, b)
    return pu_compose(graph_cstar(a, f),
                      pu_compose(char_effect(Effect(e)), pu_product(k2, k2)))


def _sandwich(s: AlgebraElement, joint: PUMap, a: AlgebraShape, b: AlgebraShape,
              side: int) -> PUMap:
    zb = zero(b)

    def fn(x: AlgebraElement) -> AlgebraElement:
        arg = pair(x, zb) if side == 1 else pair(zb, x)
        return s @ joint(arg) @ s

    return PUMap.from_function(b, a, fn)


def condition_param(a, f: PUMap, e, tol: float = TOL_POS, inv_tol: float = INV_TOL,
                    probes: int = 0, rng: np.random.Generator | None = None
                    ) -> QConditioningResult:
    """Conditional maps ``f|e, f|e⊥: B → A`` for ``f: B → Z(A)`` and an effect on ``A ⊗ B``.

    ``f|e(b) = m^{-1/2} · (f∧e)(b, 0) · m^{-1/2}`` with ``m = gr(f)(e)``, and the
    same with ``1 − m`` and ``(0, b)`` for ``f|e⊥``.  Raises
    :class:`MarginalNotInvertible` when either marginal has spectrum too close
    to 0.
    """
    a, b, e = _shapes(a, f, e)
    Effect(e, tol)
    gr = graph_cstar(a, f)
    m = gr(e)
    m_perp = gr(unit(tensor(a, b)) - e)
    inv_roots = []
    for name, x in (("e", m), ("e⊥", m_perp)):
        try:
            inv_roots.append(inv_sqrt_pos(x, tol, inv_tol))
        except NotInvertible:
            low = min(float(ev[0]) for ev in x.eigenvalues())
            raise MarginalNotInvertible(name, low) from None
    joint = joint_q(a, f, e)
    result = QConditioningResult(
        cond_true=_sandwich(inv_roots[0], joint, a, b, 1),
        cond_false=_sandwich(inv_roots[1], joint, a, b, 2),
        marginal_effect=Effect(m.hermitian_part(), tol),
        joint=joint,
        residual=0.0,
    )
    residual = verify_triangle_q(result, probes, rng)
    return QConditioningResult(result.cond_true, result.cond_false,
                               result.marginal_effect, joint, residual)


def triangle_composite(result: QConditioningResult) -> PUMap:
    return pu_compose(char_effect(result.marginal_effect),
                      pu_product(result.cond_true, result.cond_false))


def verify_triangle_q(result: QConditioningResult, probes: int = 0,
                      rng: np.random.Generator | None = None) -> float:
    """Max operator-norm gap between ``char_m ∘ (f|e × f|e⊥)`` and the joint.

    Probed on every matrix unit of ``B × B`` (which spans, so this certifies the
    diagram up to round-off) plus ``probes`` random Hermitian pairs.
    """
    composite = triangle_composite(result)
    joint = result.joint
    if composite.source != joint.source or composite.target != joint.target:
        return float("inf")
    bb = joint.source
    inputs = list(basis(bb))
    if probes:
        rng = np.random.default_rng(0) if rng is None else rng
        for _ in range(probes):
            inputs.append(cstar.random_element(bb, rng).hermitian_part())
    return max((composite(x) - joint(x)).norm() for x in inputs)


def _real_scalar(z: complex, what: str) -> float:
    if abs(z.imag) > 1e-9:
        raise DegenerateEffect(f"{what} has imaginary part {z.imag:.3g}")
    return z.real


def condition_state(f: State, e, inv_tol: float = INV_TOL) -> tuple[State, State]:
    """Conditional states ``b ↦ f(√e b √e)/f(e)`` and ``b ↦ f(√(1−e) b √(1−e))/f(1−e)``."""
    e = as_element(e)
    if e.shape != f.source:
        raise ShapeMismatch(f"effect on {e.shape!r}, state on {f.source!r}")
    Effect(e)
    p = _real_scalar(f(e), "f(e)")
    if p <= inv_tol or p >= 1 - inv_tol:
        raise DegenerateEffect(f"f(e) = {p:.12g} is (numerically) 0 or 1")
    s = sqrt_pos(e)
    t = sqrt_pos(unit(e.shape) - e)
    given = State.from_function(f.source, lambda b: f(s @ b @ s) / p)
    given_not = State.from_function(f.source, lambda b: f(t @ b @ t) / (1 - p))
    return given, given_not


def bub_oracle(rho, a, b, tol: float = 1e-9) -> complex:
    """``tr(ρ·a·b·a) / tr(ρ·a)`` for a projection ``a`` on a single matrix block."""
    rho = np.asarray(rho, dtype=complex)
    a = np.asarray(as_element(a).blocks[0] if isinstance(a, (AlgebraElement, Effect)) else a,
                   dtype=complex)
    b = np.asarray(b.blocks[0] if isinstance(b, AlgebraElement) else b, dtype=complex)
    if np.max(np.abs(a @ a - a)) > tol or np.max(np.abs(a - a.conj().T)) > tol:
        raise ValueError("a is not a projection")
    p = np.trace(rho @ a).real
    if p <= tol or p >= 1 - tol:
        raise DegenerateEffect(f"tr(ρa) = {p:.12g} is (numerically) 0 or 1")
    return complex(np.trace(rho @ a @ b @ a) / p)


def reconstruct_conditionals(result: QConditioningResult) -> tuple[PUMap, PUMap]:
    """Solve ``√m·g(b)·√m = joint(b, 0)`` (and the ⊥ analogue) for ``g``.

    Uses the uniqueness argument directly: sandwich by the inverse of the
    square root rather than reusing the stored conditional maps.
    """
    a = result.cond_true.target
    b = result.cond_true.source
    m = result.marginal_effect.element
    out = []
    for side, x in ((1, m), (2, unit(a) - m)):
        r = sqrt_pos(x)
        r_inv = AlgebraElement(a, [np.linalg.inv(blk) for blk in r.blocks])
        out.append(_sandwich(r_inv, result.joint, a, b, side))
    return out[0], out[1]


# --- bridge to the classical engine ------------------------------------------

def classical_to_quantum(f: KleisliMap, phi: Predicate
                         ) -> tuple[AlgebraShape, PUMap, Effect]:
    """Encode ``f: X → Y`` and ``φ`` on ``X ⊗ Y`` on commutative algebras.

    ``A = ℂ^X``, ``B = ℂ^Y``; ``f`` becomes ``b ↦ (Σ_y f(x)(y)·b_y)_x`` and
    ``φ`` the diagonal effect on ``A ⊗ B = ℂ^{X×Y}`` in the same pair order.
    """
    xs, ys = f.source.elements, f.target.elements
    a = AlgebraShape((1,) * len(xs))
    b = AlgebraShape((1,) * len(ys))
    mat = np.array([[float(f(x).weight(y)) for y in ys] for x in xs])
    fq = PUMap(b, a, mat)
    e = cstar.diagonal(tensor(a, b), [float(phi((x, y))) for x in xs for y in ys])
    return a, fq, Effect(e)


def quantum_to_kleisli(m: PUMap, source: FiniteSet, target: FiniteSet) -> dict:
    """Read a commutative PU map ``ℂ^Y → ℂ^X`` back as float rows ``x ↦ {y: p}``."""
    if not (m.source.is_commutative and m.target.is_commutative):
        raise ShapeMismatch("only commutative maps correspond to stochastic matrices")
    return {x: {y: float(m.matrix[i, j].real) for j, y in enumerate(target)}
            for i, x in enumerate(source)}

