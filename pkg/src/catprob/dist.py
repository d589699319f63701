"""The finite distribution monad and its Kleisli category.

Distributions carry exact :class:`fractions.Fraction` weights, so every law
(monad, Kleisli, graph) holds with ``==`` rather than up to a tolerance.

Labels are opaque hashables.  Structured sets use two label shapes:

* tensor ``X ⊗ Y`` has ordered pairs ``(x, y)`` as elements;
* coproduct ``X₁ + … + Xₙ`` has :class:`Kappa` tags ``Kappa(i, x)``.
"""
from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Any, Union

from .errors import InvalidDistribution, SetMismatch

Label = Hashable
Rational = Union[Fraction, int, str]


@dataclass(frozen=True, order=True)
class Kappa:
    """Coprojection tag: the element ``x`` sitting in summand ``index`` (1-based)."""

    index: int
    value: Any

    def __repr__(self) -> str:
        return f"κ{self.index}{label_key(self.value)}"


def label_key(label: Label) -> str:
    """Canonical string for a label, used for ordering and as JSON object key."""
    if isinstance(label, Kappa):
        return f"k{label.index}:{label_key(label.value)}"
    if isinstance(label, tuple):
        return "(" + ",".join(label_key(x) for x in label) + ")"
    return str(label)


@dataclass(frozen=True)
class FiniteSet:
    """Ordered finite set of distinct labels, remembering how it was built.

    ``kind`` is ``"plain"``, ``"tensor"`` or ``"coproduct"``; ``parts`` holds the
    factors or summands for the structured kinds.
    """

    elements: tuple
    kind: str = "plain"
    parts: tuple = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {}
        keys = set()
        for i, x in enumerate(self.elements):
            if x in index:
                raise SetMismatch(f"duplicate label {x!r}")
            key = label_key(x)
            if key in keys:
                raise SetMismatch(f"labels render to the same key {key!r}")
            keys.add(key)
            index[x] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, *labels: Label) -> FiniteSet:
        return cls(tuple(labels))

    def __contains__(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, x: Label) -> int:
        return self._index[x]

    def __repr__(self) -> str:
        if self.kind == "tensor":
            return " ⊗ ".join(map(repr, self.parts))
        if self.kind == "coproduct":
            return "(" + " + ".join(map(repr, self.parts)) + ")"
        return "{" + ", ".join(label_key(x) for x in self.elements) + "}"


ONE = FiniteSet.of("*")
"""The singleton set, final in the Kleisli category."""


@lru_cache(maxsize=256)
def tensor(x: FiniteSet, y: FiniteSet) -> FiniteSet:
    return FiniteSet(tuple(product(x.elements, y.elements)), "tensor", (x, y))


@lru_cache(maxsize=256)
def coproduct(*summands: FiniteSet) -> FiniteSet:
    if not summands:
        raise SetMismatch("coproduct needs at least one summand")
    elems = tuple(Kappa(i, x) for i, s in enumerate(summands, 1) for x in s)
    return FiniteSet(elems, "coproduct", tuple(summands))


def _as_fraction(r: Rational) -> Fraction:
    if isinstance(r, float):
        raise InvalidDistribution(f"refusing float weight {r!r}; use Fraction or 'p/q'")
    return Fraction(r)


class FiniteDistribution(Mapping):
    """A formal convex sum ``Σ rᵢ|xᵢ⟩`` with exact rational weights.

    Zero weights are dropped on construction, so two distributions are equal
    iff they have the same support and weights.
    """

    __slots__ = ("_w", "_hash")

    def __init__(self, weights: Mapping | Iterable[tuple[Label, Rational]]):
        items = weights.items() if isinstance(weights, Mapping) else weights
        w: dict = {}
        for x, r in items:
            r = _as_fraction(r)
            if r < 0 or r > 1:
                raise InvalidDistribution(f"weight {r} for {x!r} outside [0,1]")
            if x in w:
                raise InvalidDistribution(f"label {x!r} given twice")
            if r:
                w[x] = r
        total = sum(w.values(), Fraction(0))
        if total != 1:
            raise InvalidDistribution(f"weights sum to {total}, not 1")
        self._w = w
        self._hash = None

    @classmethod
    def _unchecked(cls, w: dict) -> FiniteDistribution:
        # for results of monad operations on valid inputs, which are valid by construction
        d = cls.__new__(cls)
        d._w = {x: r for x, r in w.items() if r}
        d._hash = None
        return d

    def __getitem__(self, x):
        return self._w[x]

    def __iter__(self):
        return iter(self._w)

    def __len__(self):
        return len(self._w)

    def weight(self, x: Label) -> Fraction:
        """Probability of ``x``, zero outside the support."""
        return self._w.get(x, Fraction(0))

    @property
    def support(self) -> frozenset:
        return frozenset(self._w)

    def __eq__(self, other):
        if isinstance(other, FiniteDistribution):
            return self._w == other._w
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._w.items()))
        return self._hash

    def __repr__(self):
        terms = sorted(self._w.items(), key=lambda kv: label_key(kv[0]))
        return " + ".join(f"{r}|{label_key(x)}⟩" for x, r in terms)


def _merge(pairs: Iterable[tuple[Label, Fraction]]) -> FiniteDistribution:
    acc: dict = {}
    for x, r in pairs:
        acc[x] = acc[x] + r if x in acc else r
    return FiniteDistribution._unchecked(acc)


def dirac(x: Label, space: FiniteSet) -> FiniteDistribution:
    if x not in space:
        raise SetMismatch(f"{x!r} is not an element of {space!r}")
    return FiniteDistribution._unchecked({x: Fraction(1)})


def uniform(space: FiniteSet) -> FiniteDistribution:
    n = len(space)
    return FiniteDistribution({x: Fraction(1, n) for x in space})


def pushforward(fn: Callable[[Label], Label], d: FiniteDistribution,
                target: FiniteSet | None = None) -> FiniteDistribution:
    """``D(fn)``: relabel along ``fn``, adding up weights of labels that collide."""
    pairs = []
    for x, r in d.items():
        y = fn(x)
        if target is not None and y not in target:
            raise SetMismatch(f"{x!r} is sent to {y!r}, outside {target!r}")
        pairs.append((y, r))
    return _merge(pairs)


def flatten(dd: FiniteDistribution) -> FiniteDistribution:
    """Monad multiplication: ``μ(Σ rᵢ|φᵢ⟩) = Σᵢⱼ rᵢ·sᵢⱼ|xᵢⱼ⟩``."""
    return _merge((x, r * s) for phi, r in dd.items() for x, s in phi.items())


class KleisliMap:
    """A stochastic map ``source → D(target)`` stored as one row per source label."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: FiniteSet, target: FiniteSet, table: Mapping):
        rows = {}
        for x in source:
            if x not in table:
                raise SetMismatch(f"no row for {x!r}")
            row = table[x]
            if not isinstance(row, FiniteDistribution):
                row = FiniteDistribution(row)
            for y in row:
                if y not in target:
                    raise SetMismatch(f"row {x!r} puts weight on {y!r}, outside {target!r}")
            rows[x] = row
        extra = [x for x in table if x not in source]
        if extra:
            raise SetMismatch(f"rows for labels outside the source: {extra!r}")
        self.source = source
        self.target = target
        self.table = rows

    @classmethod
    def from_function(cls, source: FiniteSet, target: FiniteSet,
                      fn: Callable[[Label], FiniteDistribution]) -> KleisliMap:
        return cls(source, target, {x: fn(x) for x in source})

    def __call__(self, x: Label) -> FiniteDistribution:
        return self.table[x]

    def __eq__(self, other):
        if not isinstance(other, KleisliMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.table == other.table)

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.table.items())))

    def __repr__(self):
        rows = "; ".join(f"{label_key(x)} ↦ {self.table[x]!r}" for x in self.source)
        return f"KleisliMap({rows})"


def identity(space: FiniteSet) -> KleisliMap:
    return KleisliMap.from_function(space, space, lambda x: dirac(x, space))


def lift(fn: Callable[[Label], Label], source: FiniteSet, target: FiniteSet) -> KleisliMap:
    """The deterministic Kleisli map ``η ∘ fn``."""
    return KleisliMap.from_function(source, target, lambda x: dirac(fn(x), target))


def kleisli_compose(g: KleisliMap, f: KleisliMap) -> KleisliMap:
    """``g ⊙ f = μ ∘ D(g) ∘ f``."""
    if f.target != g.source:
        raise SetMismatch(f"cannot compose: {f.target!r} is not {g.source!r}")
    return KleisliMap.from_function(
        f.source, g.target, lambda x: flatten(pushforward(g, f(x))))


def graph(f: KleisliMap) -> KleisliMap:
    """``gr(f)(x) = Σ rᵢ|(x, yᵢ)⟩``: the map ``X → X ⊗ Y`` keeping the input."""
    xy = tensor(f.source, f.target)
    return KleisliMap.from_function(
        f.source, xy, lambda x: pushforward(lambda y: (x, y), f(x)))


def ungraph(g: KleisliMap) -> KleisliMap:
    """Inverse of :func:`graph` on maps ``g: X → X ⊗ Y`` with ``π₁ ⊙ g = id``."""
    if g.target.kind != "tensor" or g.target.parts[0] != g.source:
        raise SetMismatch("ungraph needs a map X → X ⊗ Y")
    for x in g.source:
        if any(xy[0] != x for xy in g(x)):
            raise SetMismatch(f"row {x!r} moves the first coordinate; π₁ ⊙ g ≠ id")
    return marginal(g, 2)


def projection(space: FiniteSet, i: int) -> KleisliMap:
    """The Kleisli projection ``πᵢ: X₁ ⊗ X₂ → Xᵢ``."""
    if space.kind != "tensor":
        raise SetMismatch(f"{space!r} is not a tensor")
    return lift(lambda xy: xy[i - 1], space, space.parts[i - 1])


def marginal(f: KleisliMap, i: int) -> KleisliMap:
    """``πᵢ ⊙ f``, computed as ``D(πᵢ) ∘ f``."""
    if f.target.kind != "tensor":
        raise SetMismatch(f"target {f.target!r} is not a tensor")
    if i not in (1, 2):
        raise ValueError("marginal index must be 1 or 2")
    out = f.target.parts[i - 1]
    return KleisliMap.from_function(
        f.source, out, lambda x: pushforward(lambda yy: yy[i - 1], f(x)))


def coprojection(space: FiniteSet, i: int) -> KleisliMap:
    """``η ∘ κᵢ`` from summand ``i`` into the coproduct ``space``."""
    if space.kind != "coproduct":
        raise SetMismatch(f"{space!r} is not a coproduct")
    return lift(lambda x: Kappa(i, x), space.parts[i - 1], space)


def coproduct_map(*maps: KleisliMap) -> KleisliMap:
    """``f₁ + … + fₙ``: act by ``fᵢ`` on the ``i``-th summand, retagging outputs."""
    source = coproduct(*(m.source for m in maps))
    target = coproduct(*(m.target for m in maps))

    def row(tagged: Kappa) -> FiniteDistribution:
        i = tagged.index
        return pushforward(lambda y: Kappa(i, y), maps[i - 1](tagged.value))

    return KleisliMap.from_function(source, target, row)


def cotuple(*maps: KleisliMap) -> KleisliMap:
    """``[f₁, …, fₙ]: X₁ + … + Xₙ → Y`` for maps sharing a target."""
    target = maps[0].target
    if any(m.target != target for m in maps):
        raise SetMismatch("cotuple needs a common target")
    source = coproduct(*(m.source for m in maps))
    return KleisliMap.from_function(
        source, target, lambda t: maps[t.index - 1](t.value))
