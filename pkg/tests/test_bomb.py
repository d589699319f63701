import numpy as np
import pytest

from catprob import bomb
from catprob.bomb import NONE, RIGHT, UP, ket
from catprob.cstar import Effect, pu_validate, state_density
from catprob.quantum import condition_state

R = 1 / np.sqrt(2)

# expected pure branch vectors after each stage, as {basis label: amplitude}
STAGES = [
    {"L": {"↑0": R, "→0": R}, "D": {"↑0": R, "→0": R}},
    {"L": {"↑0": R, "∅1": R}, "D": {"↑0": R, "→0": R}},
    {"L": {"→0": R, "∅1": R}, "D": {"↑0": R, "→0": R}},
    {"L": {"↑0": 0.5, "→0": 0.5, "∅1": R}, "D": {"→0": 1.0}},
]


def vec(amps: dict) -> np.ndarray:
    return np.array([amps.get(lab, 0) for lab in bomb.BASIS_LABELS], dtype=complex)


@pytest.fixture(scope="module")
def scenario():
    return bomb.build_scenario()


@pytest.fixture(scope="module")
def states(scenario):
    return bomb.evolve(scenario)


def test_unitaries_are_unitary():
    for u in (bomb.semi_silvered(), bomb.fully_silvered(), bomb.bomb_unitary()):
        assert np.allclose(u.conj().T @ u, np.eye(len(u)), atol=1e-14)


def test_mirrors_recombine():
    us, uf = bomb.semi_silvered(), bomb.fully_silvered()
    right = np.eye(3)[RIGHT]
    assert np.max(np.abs(us @ uf @ us @ right - right)) < 1e-12


def test_bomb_unitary_moves():
    ub = bomb.bomb_unitary()
    assert np.array_equal(ub @ ket(RIGHT, 0), ket(NONE, 1))
    assert np.array_equal(ub @ ket(NONE, 1), ket(RIGHT, 0))
    assert np.array_equal(ub @ ket(UP, 0), ket(UP, 0))


def test_algebra_dimension():
    assert bomb.ALGEBRA.block_dims == (6, 6)
    assert bomb.ALGEBRA.dim == 72


@pytest.mark.parametrize("k", range(4))
def test_stage_vectors(states, k):
    for br in bomb.branches(states[k]):
        assert br.weight == pytest.approx(0.5, abs=1e-12)
        assert br.vector is not None
        assert np.max(np.abs(br.vector - vec(STAGES[k][br.label]))) < 1e-12


def test_stages_are_pu(scenario):
    rng = np.random.default_rng(0)
    for stage in scenario.stages:
        assert pu_validate(stage, samples=10, rng=rng).passed


def test_unexplode_transition_never_reached(states):
    # the pre-bomb state puts no weight on |∅1⟩, so U_B's |∅1⟩ ↦ |→0⟩ row is idle
    idx = bomb.BASIS_LABELS.index("∅1")
    for rho in state_density(states[0]).blocks:
        assert abs(rho[idx, idx]) < 1e-14


def test_headline_probabilities():
    rep = bomb.run_bomb_tester()
    assert abs(rep.p_detect - 1 / 8) < 1e-12
    assert abs(rep.p_dud_given_detect) < 1e-12


def test_outcomes_partition_unit():
    rep = bomb.run_bomb_tester()
    assert sum(rep.outcome_probabilities.values()) == pytest.approx(1, abs=1e-12)
    assert rep.outcome_probabilities["detect ↑, unexploded"] == pytest.approx(1 / 8, abs=1e-12)
    assert rep.outcome_probabilities["exploded"] == pytest.approx(1 / 4, abs=1e-12)


def test_not_detected_conditional_is_a_state(states, scenario):
    _, given_not = condition_state(states[-1], scenario.detector_effect)
    assert pu_validate(given_not, samples=20).passed
    # detection excludes a dud; not detecting shifts weight towards one
    dud = bomb.dud_indicator()
    assert given_not(dud).real == pytest.approx(4 / 7, abs=1e-12)


def test_detector_is_effect():
    e = bomb.detector_effect()
    assert isinstance(e, Effect)
    assert e.shape == bomb.ALGEBRA


def test_deterministic():
    a, b = bomb.run_bomb_tester(), bomb.run_bomb_tester()
    assert a.p_detect == b.p_detect
    assert a.outcome_probabilities == b.outcome_probabilities
