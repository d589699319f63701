"""Fuzzy predicates ``[0,1]^X`` and their effect-module structure over Kℓ(D)."""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction

from .dist import (
    FiniteDistribution,
    FiniteSet,
    Kappa,
    KleisliMap,
    Rational,
    coproduct,
    label_key,
)
from .errors import SetMismatch, UndefinedSum


class Predicate:
    """A total function from a finite set to exact rationals in ``[0, 1]``."""

    __slots__ = ("carrier", "values")

    def __init__(self, carrier: FiniteSet, values: Mapping):
        vals = {}
        for x in carrier:
            if x not in values:
                raise SetMismatch(f"predicate has no value at {x!r}")
            v = values[x]
            if isinstance(v, float):
                raise ValueError(f"refusing float value {v!r}; use Fraction or 'p/q'")
            v = Fraction(v)
            if v < 0 or v > 1:
                raise ValueError(f"predicate value {v} at {x!r} outside [0,1]")
            vals[x] = v
        extra = [x for x in values if x not in carrier]
        if extra:
            raise SetMismatch(f"values given outside the carrier: {extra!r}")
        self.carrier = carrier
        self.values = vals

    @classmethod
    def constant(cls, carrier: FiniteSet, r: Rational) -> Predicate:
        return cls(carrier, {x: r for x in carrier})

    def __call__(self, x) -> Fraction:
        return self.values[x]

    def __eq__(self, other):
        if not isinstance(other, Predicate):
            return NotImplemented
        return self.carrier == other.carrier and self.values == other.values

    def __hash__(self):
        return hash((self.carrier, frozenset(self.values.items())))

    def __repr__(self):
        body = ", ".join(f"{label_key(x)}: {v}" for x, v in self.values.items())
        return f"Predicate({{{body}}})"

    # Operator sugar for the effect-module operations.
    def __or__(self, other):
        return ovee(self, other)

    def __invert__(self):
        return perp(self)

    def __rmul__(self, r):
        return scale(r, self)


def truth(carrier: FiniteSet) -> Predicate:
    return Predicate.constant(carrier, 1)


def falsity(carrier: FiniteSet) -> Predicate:
    return Predicate.constant(carrier, 0)


def _same_carrier(p: Predicate, q: Predicate) -> None:
    if p.carrier != q.carrier:
        raise SetMismatch(f"carriers differ: {p.carrier!r} vs {q.carrier!r}")


def ovee(p: Predicate, q: Predicate) -> Predicate:
    """Partial sum ``p ⊎ q``; raises :class:`UndefinedSum` if it leaves ``[0, 1]``."""
    _same_carrier(p, q)
    out = {}
    for x in p.carrier:
        s = p.values[x] + q.values[x]
        if s > 1:
            raise UndefinedSum(f"p ⊎ q undefined: {p.values[x]} + {q.values[x]} > 1 at {x!r}")
        out[x] = s
    return Predicate(p.carrier, out)


def ovee_defined(p: Predicate, q: Predicate) -> bool:
    _same_carrier(p, q)
    return all(p.values[x] + q.values[x] <= 1 for x in p.carrier)


def perp(p: Predicate) -> Predicate:
    return Predicate(p.carrier, {x: 1 - v for x, v in p.values.items()})


def scale(r: Rational, p: Predicate) -> Predicate:
    r = Fraction(r)
    if r < 0 or r > 1:
        raise ValueError(f"scalar {r} outside [0,1]")
    return Predicate(p.carrier, {x: r * v for x, v in p.values.items()})


def subst(f: KleisliMap, q: Predicate) -> Predicate:
    """Substitution ``f*(q)(x) = Σ rᵢ·q(yᵢ)``, i.e. the expectation of ``q`` under ``f(x)``."""
    if f.target != q.carrier:
        raise SetMismatch(f"map lands in {f.target!r} but predicate lives on {q.carrier!r}")
    return Predicate(
        f.source,
        {x: sum((r * q.values[y] for y, r in f(x).items()), Fraction(0)) for x in f.source},
    )


def omega(space: FiniteSet, n: int = 2) -> Predicate:
    """``Ω`` on ``X + X``: true on the left copy, false on the right.

    For ``n > 2`` this is the indicator of the first of ``n`` copies.
    """
    xx = coproduct(*([space] * n))
    return Predicate(xx, {t: int(t.index == 1) for t in xx})


def char_map(p: Predicate) -> KleisliMap:
    """``char_p(x) = p(x)|κ₁x⟩ + (1 − p(x))|κ₂x⟩``."""
    return char_map_ntest([p, perp(p)])


def char_map_ntest(preds: Sequence[Predicate]) -> KleisliMap:
    """``x ↦ Σᵢ φᵢ(x)|κᵢx⟩`` for an n-test ``φ₁ ⊎ … ⊎ φₙ = 1``.

    The summands must add up to exactly 1 pointwise, otherwise the rows are
    not distributions and construction fails.
    """
    carrier = preds[0].carrier
    for q in preds[1:]:
        _same_carrier(preds[0], q)
    target = coproduct(*([carrier] * len(preds)))
    table = {
        x: FiniteDistribution([(Kappa(i, x), q.values[x]) for i, q in enumerate(preds, 1)])
        for x in carrier
    }
    return KleisliMap(carrier, target, table)
