"""The two worked classical models: gender/long hair, and the two-country variant."""
from __future__ import annotations

from fractions import Fraction as F

from .dist import ONE, FiniteSet, KleisliMap, tensor
from .predicates import Predicate

GENDERS = FiniteSet.of("M", "W")
COUNTRIES = FiniteSet.of("A", "B")


def hair_model() -> tuple[KleisliMap, Predicate]:
    """``f = 2/3|M⟩ + 1/3|W⟩`` as a map ``1 → G``, and long hair ``ℓ`` lifted to ``1 ⊗ G``."""
    f = KleisliMap(ONE, GENDERS, {"*": {"M": F(2, 3), "W": F(1, 3)}})
    return f, Predicate(tensor(ONE, GENDERS), {("*", g): v for g, v in long_hair().values.items()})


def long_hair() -> Predicate:
    return Predicate(GENDERS, {"M": F(3, 10), "W": F(8, 10)})


def country_model() -> tuple[KleisliMap, Predicate]:
    f = KleisliMap(COUNTRIES, GENDERS, {
        "A": {"M": F(9, 20), "W": F(11, 20)},
        "B": {"M": F(1, 2), "W": F(1, 2)},
    })
    long = Predicate(tensor(COUNTRIES, GENDERS), {
        ("A", "M"): F(1, 10), ("B", "M"): F(2, 10),
        ("A", "W"): F(8, 10), ("B", "W"): F(9, 10),
    })
    return f, long
