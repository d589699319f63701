"""The Elitzur–Vaidman bomb tester on ``C({L, D}) ⊗ M₃ ⊗ M₂`` (72-dimensional).

Basis conventions: environment blocks ordered ``(L, D)``; photon basis
``(↑, →, ∅)``; bomb basis ``(0, 1)`` with 1 meaning exploded.  Inside each
environment block the photon–bomb space is ``ℂ³ ⊗ ℂ²`` with index
``2·photon + bomb``.

The stages are Heisenberg-picture PU maps ``Φ`` on the full algebra; states
evolve in the Schrödinger picture as ``f ↦ f ∘ Φ``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cstar import (
    AlgebraElement,
    AlgebraShape,
    Effect,
    PUMap,
    State,
    conjugation,
    diagonal,
    pu_compose,
    state_density,
    tensor,
    tensor_elem,
    unit,
    vector_state,
)
from .quantum import condition_state

ENV = AlgebraShape.of(1, 1)
PHOTON = AlgebraShape.of(3)
BOMB = AlgebraShape.of(2)
ALGEBRA = tensor(tensor(ENV, PHOTON), BOMB)

ENV_LABELS = ("L", "D")
PHOTON_LABELS = ("↑", "→", "∅")
BOMB_LABELS = ("0", "1")
UP, RIGHT, NONE = 0, 1, 2
BASIS_LABELS = tuple(p + b for p in PHOTON_LABELS for b in BOMB_LABELS)

STAGE_NAMES = ("first mirror", "light hits bomb", "opaque mirrors", "last mirror")

_R = 1 / np.sqrt(2)


def ket(photon: int, bomb: int) -> np.ndarray:
    v = np.zeros(6, dtype=complex)
    v[2 * photon + bomb] = 1
    return v


def semi_silvered() -> np.ndarray:
    """``U_S``: ``|→⟩ ↦ (|→⟩ + |↑⟩)/√2``, ``|↑⟩ ↦ (|→⟩ − |↑⟩)/√2``, ``|∅⟩ ↦ |∅⟩``."""
    u = np.zeros((3, 3), dtype=complex)
    u[RIGHT, RIGHT], u[UP, RIGHT] = _R, _R
    u[RIGHT, UP], u[UP, UP] = _R, -_R
    u[NONE, NONE] = 1
    return u


def fully_silvered() -> np.ndarray:
    """``U_F`` swaps ``|→⟩`` and ``|↑⟩``."""
    u = np.zeros((3, 3), dtype=complex)
    u[UP, RIGHT] = u[RIGHT, UP] = u[NONE, NONE] = 1
    return u


def bomb_unitary() -> np.ndarray:
    """``U_B`` on photon ⊗ bomb.

    ``|→0⟩ ↦ |∅1⟩`` is the explosion; ``|∅1⟩ ↦ |→0⟩`` only completes the
    permutation and is never reached from the initial state.
    """
    moves = {
        (UP, 0): (UP, 0), (UP, 1): (UP, 1),
        (RIGHT, 0): (NONE, 1), (RIGHT, 1): (RIGHT, 1),
        (NONE, 0): (NONE, 0), (NONE, 1): (RIGHT, 0),
    }
    u = np.zeros((6, 6), dtype=complex)
    for (p, b), (q, c) in moves.items():
        u[2 * q + c, 2 * p + b] = 1
    return u


def photon_stage(u: np.ndarray) -> PUMap:
    """``a ↦ (U ⊗ 1)* a (U ⊗ 1)`` on both environment branches."""
    w = np.kron(u, np.eye(2))
    return conjugation(ALGEBRA, [w, w])


def bomb_stage() -> PUMap:
    """Classically controlled: conjugate by ``U_B`` on the L branch only."""
    return conjugation(ALGEBRA, [bomb_unitary(), np.eye(6)])


def initial_state() -> State:
    """``(½δ_D + ½δ_L) ⊗ ⟨→0| − |→0⟩``."""
    v = ket(RIGHT, 0)
    return vector_state(ALGEBRA, [v, v], [0.5, 0.5])


def detector_effect() -> Effect:
    """``1 ⊗ |↑0⟩⟨↑0|``: photon seen going up, bomb unexploded."""
    return Effect(_env_uniform(np.outer(ket(UP, 0), ket(UP, 0))))


def dud_indicator() -> AlgebraElement:
    """``χ_D ⊗ 1``."""
    return tensor_elem(tensor_elem(diagonal(ENV, [0, 1]), unit(PHOTON)), unit(BOMB))


def _env_uniform(block: np.ndarray) -> AlgebraElement:
    return AlgebraElement(ALGEBRA, [block, block])


@dataclass(frozen=True)
class BombScenario:
    algebra: AlgebraShape
    stages: tuple[PUMap, ...]
    stage_names: tuple[str, ...]
    photon_unitaries: tuple[np.ndarray, ...] = field(repr=False)
    bomb_unitary: np.ndarray = field(repr=False)
    initial_state: State = field(repr=False)
    detector_effect: Effect = field(repr=False)


def build_scenario() -> BombScenario:
    us, uf = semi_silvered(), fully_silvered()
    stages = (photon_stage(us), bomb_stage(), photon_stage(uf), photon_stage(us))
    return BombScenario(
        algebra=ALGEBRA,
        stages=stages,
        stage_names=STAGE_NAMES,
        photon_unitaries=(us, uf, us),
        bomb_unitary=bomb_unitary(),
        initial_state=initial_state(),
        detector_effect=detector_effect(),
    )


def evolve(s: BombScenario) -> list[State]:
    """States after each stage; the last entry is the final state ``f``."""
    states = []
    f = s.initial_state
    for stage in s.stages:
        f = pu_compose(f, stage)
        states.append(f)
    return states


@dataclass(frozen=True)
class Branch:
    label: str
    weight: float
    vector: np.ndarray | None   # None when the branch state is mixed


def branches(f: State, tol: float = 1e-10) -> list[Branch]:
    """Split a state into its L/D parts; pure parts are given as state vectors.

    Vectors are normalized with their first nonzero amplitude real positive.
    """
    out = []
    for label, rho in zip(ENV_LABELS, state_density(f).blocks):
        w = float(np.trace(rho).real)
        vec = None
        if w > tol:
            vals, vecs = np.linalg.eigh(rho / w)
            if vals[-1] > 1 - tol:
                vec = vecs[:, -1]
                k = int(np.argmax(np.abs(vec) > tol))
                vec = vec * (abs(vec[k]) / vec[k])
                vec = np.where(np.abs(vec) < tol, 0, vec)
        out.append(Branch(label, w, vec))
    return out


def outcome_effects() -> dict[str, AlgebraElement]:
    """A four-outcome measurement that sums to the unit."""
    def proj(p, b):
        return np.outer(ket(p, b), ket(p, b))

    exploded = np.kron(np.eye(3), np.diag([0, 1]))
    return {
        "detect ↑, unexploded": _env_uniform(proj(UP, 0)),
        "detect →, unexploded": _env_uniform(proj(RIGHT, 0)),
        "exploded": _env_uniform(exploded),
        "other": _env_uniform(proj(NONE, 0)),
    }


@dataclass(frozen=True)
class BombReport:
    p_detect: float
    p_dud_given_detect: float
    p_dud_given_not_detect: float
    outcome_probabilities: dict
    states: list = field(repr=False)
    conditional_states: tuple = field(repr=False)


def run_bomb_tester() -> BombReport:
    s = build_scenario()
    states = evolve(s)
    f = states[-1]
    e = s.detector_effect
    given, given_not = condition_state(f, e)
    return BombReport(
        p_detect=f(e.element).real,
        p_dud_given_detect=given(dud_indicator()).real,
        p_dud_given_not_detect=given_not(dud_indicator()).real,
        outcome_probabilities={k: f(x).real for k, x in outcome_effects().items()},
        states=states,
        conditional_states=(given, given_not),
    )
