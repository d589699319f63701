import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from catprob.dist import FiniteSet, Kappa, coproduct, identity, kleisli_compose
from catprob.errors import UndefinedSum
from catprob.models import long_hair
from catprob.predicates import (
    Predicate,
    char_map,
    falsity,
    omega,
    ovee,
    ovee_defined,
    perp,
    scale,
    subst,
    truth,
)
from strategies import finite_sets, fractions01, kleisli_maps, predicates

X = FiniteSet.of("a", "b", "c")


def test_floats_rejected():
    with pytest.raises(ValueError):
        Predicate(X, {"a": 0.5, "b": 0, "c": 0})


def test_long_hair_ovee_self_undefined():
    ell = long_hair()
    with pytest.raises(UndefinedSum):
        ovee(ell, ell)
    assert not ovee_defined(ell, ell)


@given(finite_sets(), st.data())
def test_ovee_commutative(space, data):
    p = data.draw(predicates(space))
    q = data.draw(predicates(space))
    assume(ovee_defined(p, q))
    assert ovee(p, q) == ovee(q, p)


@given(finite_sets(), st.data(), fractions01(), fractions01())
def test_ovee_associative(space, data, s, t):
    # q fits under p⊥ and r under (p ⊎ q)⊥, so every sum below is defined
    p = data.draw(predicates(space))
    q = scale(s, perp(p))
    r = scale(t, perp(ovee(p, q)))
    assert ovee_defined(q, r)
    assert ovee(ovee(p, q), r) == ovee(p, ovee(q, r))


@given(finite_sets(), st.data())
def test_orthocomplement_unique(space, data):
    p = data.draw(predicates(space))
    assert ovee(p, perp(p)) == truth(space)
    assert ovee(p, falsity(space)) == p
    assert perp(perp(p)) == p
    q = data.draw(predicates(space))
    if ovee_defined(p, q) and ovee(p, q) == truth(space):
        assert q == perp(p)


@given(finite_sets(), st.data())
def test_zero_one_law(space, data):
    p = data.draw(predicates(space))
    assert ovee_defined(p, truth(space)) == (p == falsity(space))


@given(finite_sets(), st.data(), fractions01(), fractions01())
def test_scalar_action(space, data, r, s):
    p = data.draw(predicates(space))
    assert scale(1, p) == p
    assert scale(r, scale(s, p)) == scale(r * s, p)
    if r + s <= 1:
        assert scale(r + s, p) == ovee(scale(r, p), scale(s, p))
    q = data.draw(predicates(space))
    if ovee_defined(p, q):
        assert scale(r, ovee(p, q)) == ovee(scale(r, p), scale(r, q))


def test_scale_outside_unit_interval():
    with pytest.raises(ValueError):
        scale(Fraction(3, 2), truth(X))


@given(finite_sets(3, "x"), finite_sets(3, "y"), finite_sets(3, "z"), st.data())
def test_subst_functorial(xs, ys, zs, data):
    f = data.draw(kleisli_maps(xs, ys))
    g = data.draw(kleisli_maps(ys, zs))
    q = data.draw(predicates(zs))
    assert subst(identity(zs), q) == q
    assert subst(kleisli_compose(g, f), q) == subst(f, subst(g, q))


@given(finite_sets(3, "x"), finite_sets(3, "y"), st.data())
def test_subst_preserves_structure(xs, ys, data):
    f = data.draw(kleisli_maps(xs, ys))
    p, q = data.draw(predicates(ys)), data.draw(predicates(ys))
    assert subst(f, truth(ys)) == truth(xs)
    assert subst(f, perp(p)) == perp(subst(f, p))
    if ovee_defined(p, q):
        assert subst(f, ovee(p, q)) == ovee(subst(f, p), subst(f, q))


def test_char_pulls_back_omega_on_many_predicates():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(1, 5)
        space = FiniteSet(tuple(f"p{i}" for i in range(n)))
        p = Predicate(space, {x: Fraction(rng.randint(0, 9), 9) for x in space})
        assert subst(char_map(p), omega(space)) == p


def test_char_rows():
    p = Predicate(X, {"a": Fraction(1, 3), "b": 0, "c": 1})
    ch = char_map(p)
    assert ch.target == coproduct(X, X)
    assert ch("a").weight(Kappa(1, "a")) == Fraction(1, 3)
    assert ch("a").weight(Kappa(2, "a")) == Fraction(2, 3)
    assert ch("b").support == {Kappa(2, "b")}
