"""JSON encodings for sets, distributions, predicates, algebra data and results.

Classical data
    label        ``"M"`` | ``[label, label]`` (tensor pair) | ``{"k": i, "of": label}``
    set          ``{"elements": [label, ...]}`` | ``{"tensor": [set, set]}``
                 | ``{"coproduct": [set, ...]}``
    distribution ``{label_key: "p/q", ...}``, keys resolved against a known set
    kleisli map  ``{"source": set, "target": set, "table": {key: distribution}}``
    predicate    ``{"carrier": set, "values": {key: "p/q"}}``

Keys are the canonical strings of :func:`catprob.dist.label_key`: ``"M"``,
``"(A,M)"``, ``"k1:M"``.

Quantum data (vectorization ``VEC_CONVENTION``)
    complex      ``[re, im]``
    shape        ``[n₁, …, n_k]``
    element      ``{"shape": shape, "blocks": [[[complex, ...], ...], ...]}``
    map          ``{"source": shape, "target": shape, "convention": str,
                   "matrix": [[complex, ...], ...]}``
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Any

import numpy as np

from . import __version__
from .classical import ConditioningResult
from .cstar import VEC_CONVENTION, AlgebraElement, AlgebraShape, Effect, PUMap
from .dist import (
    FiniteDistribution,
    FiniteSet,
    Kappa,
    KleisliMap,
    coproduct,
    label_key,
    tensor,
)
from .predicates import Predicate
from .quantum import QConditioningResult


class SchemaError(ValueError):
    """Input JSON does not follow the documented layout."""


def fraction_str(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}" if r.denominator != 1 else str(r.numerator)


def parse_fraction(s: Any) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise SchemaError(f"rational must be an integer or a 'p/q' string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}") from exc


def round_float(x: float) -> float:
    """12 significant digits, with ``-0.0`` folded to ``0.0``."""
    x = float(f"{float(x):.12g}")
    return x + 0.0 if math.isfinite(x) else x


# --- classical --------------------------------------------------------------------

def label_to_json(x):
    if isinstance(x, Kappa):
        return {"k": x.index, "of": label_to_json(x.value)}
    if isinstance(x, tuple):
        return [label_to_json(y) for y in x]
    return x


def set_to_json(s: FiniteSet) -> dict:
    if s.kind == "tensor":
        return {"tensor": [set_to_json(p) for p in s.parts]}
    if s.kind == "coproduct":
        return {"coproduct": [set_to_json(p) for p in s.parts]}
    return {"elements": [label_to_json(x) for x in s.elements]}


def set_from_json(obj) -> FiniteSet:
    if not isinstance(obj, dict):
        raise SchemaError(f"set must be an object, got {obj!r}")
    if "tensor" in obj:
        x, y = (set_from_json(p) for p in obj["tensor"])
        return tensor(x, y)
    if "coproduct" in obj:
        return coproduct(*(set_from_json(p) for p in obj["coproduct"]))
    if "elements" in obj:
        elems = obj["elements"]
        if not all(isinstance(e, str) for e in elems):
            raise SchemaError("plain set elements must be strings")
        return FiniteSet(tuple(elems))
    raise SchemaError(f"unrecognized set {obj!r}")


def _resolver(space: FiniteSet) -> dict:
    return {label_key(x): x for x in space}


def dist_to_json(d: FiniteDistribution, space: FiniteSet | None = None) -> dict:
    order = space.elements if space is not None else sorted(d, key=label_key)
    return {label_key(x): fraction_str(d[x]) for x in order if x in d}


def dist_from_json(obj, space: FiniteSet) -> FiniteDistribution:
    lookup = _resolver(space)
    try:
        return FiniteDistribution({lookup[k]: parse_fraction(v) for k, v in obj.items()})
    except KeyError as exc:
        raise SchemaError(f"label {exc.args[0]!r} not in {space!r}") from None


def kleisli_to_json(f: KleisliMap) -> dict:
    return {
        "source": set_to_json(f.source),
        "target": set_to_json(f.target),
        "table": {label_key(x): dist_to_json(f(x), f.target) for x in f.source},
    }


def kleisli_from_json(obj) -> KleisliMap:
    try:
        source = set_from_json(obj["source"])
        target = set_from_json(obj["target"])
        lookup = _resolver(source)
        table = {lookup[k]: dist_from_json(v, target) for k, v in obj["table"].items()}
    except KeyError as exc:
        raise SchemaError(f"missing or unknown key {exc.args[0]!r}") from None
    return KleisliMap(source, target, table)


def predicate_to_json(p: Predicate) -> dict:
    return {
        "carrier": set_to_json(p.carrier),
        "values": {label_key(x): fraction_str(v) for x, v in p.values.items()},
    }


def predicate_from_json(obj, carrier: FiniteSet | None = None) -> Predicate:
    if "carrier" in obj:
        carrier = set_from_json(obj["carrier"])
    if carrier is None:
        raise SchemaError("predicate needs a carrier")
    lookup = _resolver(carrier)
    try:
        values = {lookup[k]: parse_fraction(v) for k, v in obj["values"].items()}
    except KeyError as exc:
        raise SchemaError(f"missing or unknown key {exc.args[0]!r}") from None
    return Predicate(carrier, values)


def conditioning_to_json(r: ConditioningResult) -> dict:
    return {
        "kind": "classical",
        "cond_true": kleisli_to_json(r.cond_true),
        "cond_false": kleisli_to_json(r.cond_false),
        "marginal": predicate_to_json(r.marginal),
        "joint": kleisli_to_json(r.joint),
        "degenerate_points": sorted(label_key(x) for x in r.degenerate_points),
    }


def conditioning_from_json(obj) -> ConditioningResult:
    marginal = predicate_from_json(obj["marginal"])
    lookup = _resolver(marginal.carrier)
    return ConditioningResult(
        cond_true=kleisli_from_json(obj["cond_true"]),
        cond_false=kleisli_from_json(obj["cond_false"]),
        marginal=marginal,
        joint=kleisli_from_json(obj["joint"]),
        degenerate_points=frozenset(lookup[k] for k in obj.get("degenerate_points", [])),
    )


# --- quantum ----------------------------------------------------------------------

def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [round_float(z.real), round_float(z.imag)]


def complex_from_json(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, list) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise SchemaError(f"complex number must be [re, im], got {v!r}")


def matrix_to_json(m) -> list:
    return [[complex_to_json(z) for z in row] for row in np.asarray(m)]


def matrix_from_json(rows) -> np.ndarray:
    try:
        return np.array([[complex_from_json(z) for z in row] for row in rows], dtype=complex)
    except TypeError as exc:
        raise SchemaError(f"bad matrix: {exc}") from None


def shape_from_json(obj) -> AlgebraShape:
    if not isinstance(obj, list) or not all(isinstance(n, int) for n in obj):
        raise SchemaError(f"shape must be a list of integers, got {obj!r}")
    return AlgebraShape(tuple(obj))


def element_to_json(a) -> dict:
    a = a.element if isinstance(a, Effect) else a
    return {"shape": list(a.shape.block_dims), "blocks": [matrix_to_json(b) for b in a.blocks]}


def element_from_json(obj, shape: AlgebraShape | None = None) -> AlgebraElement:
    if isinstance(obj, dict):
        shape = shape_from_json(obj["shape"]) if "shape" in obj else shape
        blocks = obj["blocks"]
    else:
        blocks = obj
    if shape is None:
        raise SchemaError("element needs a shape")
    return AlgebraElement(shape, [matrix_from_json(b) for b in blocks])


def pumap_to_json(m: PUMap) -> dict:
    return {
        "source": list(m.source.block_dims),
        "target": list(m.target.block_dims),
        "convention": VEC_CONVENTION,
        "matrix": matrix_to_json(m.matrix),
    }


def pumap_from_json(obj, check: bool = True) -> PUMap:
    conv = obj.get("convention", VEC_CONVENTION)
    if conv != VEC_CONVENTION:
        raise SchemaError(f"unsupported vectorization convention {conv!r}")
    return PUMap(shape_from_json(obj["source"]), shape_from_json(obj["target"]),
                 matrix_from_json(obj["matrix"]), check=check)


def spectrum(a: AlgebraElement) -> list[list[float]]:
    return [[round_float(x) for x in ev] for ev in a.eigenvalues()]


def qconditioning_to_json(r: QConditioningResult) -> dict:
    return {
        "kind": "quantum",
        "convention": VEC_CONVENTION,
        "marginal_effect": element_to_json(r.marginal_effect),
        "marginal_spectrum": spectrum(r.marginal_effect.element),
        "cond_true": pumap_to_json(r.cond_true),
        "cond_false": pumap_to_json(r.cond_false),
        "joint": pumap_to_json(r.joint),
        "residual": float(f"{r.residual:.3e}"),
    }


def qconditioning_from_json(obj) -> QConditioningResult:
    return QConditioningResult(
        cond_true=pumap_from_json(obj["cond_true"], check=False),
        cond_false=pumap_from_json(obj["cond_false"], check=False),
        marginal_effect=Effect(element_from_json(obj["marginal_effect"])),
        joint=pumap_from_json(obj["joint"], check=False),
        residual=float(obj.get("residual", 0.0)),
    )


def envelope(command: str, body: dict) -> dict:
    """Top-level report with the version stamps every CLI output carries."""
    return {
        "command": command,
        "version": __version__,
        "vectorization": VEC_CONVENTION,
        **body,
    }
