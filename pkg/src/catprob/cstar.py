"""Finite-dimensional C*-algebras as direct sums of full matrix blocks.

An algebra of shape ``[n₁, …, n_k]`` is ``M_{n₁} ⊕ … ⊕ M_{n_k}``.  Linear maps
between algebras act on *vectorized* elements: blocks in shape order, each
block flattened column-major.  That convention is named by
:data:`VEC_CONVENTION` and is what every :class:`PUMap` matrix uses.

Tensor products order their blocks lexicographically: block ``(i, j)`` of
``A ⊗ B`` is ``M_{nᵢ} ⊗ M_{mⱼ}`` at position ``i·len(B) + j``, and elements are
formed blockwise with :func:`numpy.kron`.
"""
from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InvalidEffect, NotInvertible, NotPositive, NotUnital, ShapeMismatch

VEC_CONVENTION = "blocks-in-order/column-major/v1"

TOL_HERM = 1e-9
TOL_POS = 1e-9
TOL_FC = 1e-10
INV_TOL = 1e-9
TOL_UNITAL = 1e-9


@dataclass(frozen=True)
class AlgebraShape:
    block_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if not dims or any(n <= 0 for n in dims):
            raise ShapeMismatch(f"invalid block dimensions {self.block_dims!r}")
        object.__setattr__(self, "block_dims", dims)

    @classmethod
    def of(cls, *dims: int) -> AlgebraShape:
        return cls(tuple(dims))

    @property
    def dim(self) -> int:
        """Complex dimension ``Σ nᵢ²``."""
        return sum(n * n for n in self.block_dims)

    @property
    def nblocks(self) -> int:
        return len(self.block_dims)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for n in self.block_dims:
            out.append(acc)
            acc += n * n
        return tuple(out)

    @property
    def is_commutative(self) -> bool:
        return all(n == 1 for n in self.block_dims)

    def __repr__(self) -> str:
        return "⊕".join("ℂ" if n == 1 else f"M{n}" for n in self.block_dims)


SCALARS = AlgebraShape.of(1)


def _as_shape(s) -> AlgebraShape:
    return s if isinstance(s, AlgebraShape) else AlgebraShape(tuple(s))


class AlgebraElement:
    """An element of a block algebra; blocks are read-only complex arrays.

    ``a @ b`` is the algebra product, ``a * z`` scalar multiplication.
    """

    __slots__ = ("shape", "blocks")

    def __init__(self, shape, blocks: Sequence):
        shape = _as_shape(shape)
        if len(blocks) != shape.nblocks:
            raise ShapeMismatch(f"{len(blocks)} blocks for shape {shape!r}")
        out = []
        for n, b in zip(shape.block_dims, blocks):
            arr = np.array(b, dtype=complex)
            if arr.ndim == 0:
                arr = arr.reshape(1, 1)
            if arr.shape != (n, n):
                raise ShapeMismatch(f"block of shape {arr.shape}, expected {(n, n)}")
            arr.setflags(write=False)
            out.append(arr)
        self.shape = shape
        self.blocks = tuple(out)

    @classmethod
    def from_vec(cls, shape, v) -> AlgebraElement:
        shape = _as_shape(shape)
        v = np.asarray(v, dtype=complex).reshape(-1)
        if v.size != shape.dim:
            raise ShapeMismatch(f"vector of length {v.size} for {shape!r}")
        blocks = [v[o:o + n * n].reshape((n, n), order="F")
                  for o, n in zip(shape.offsets, shape.block_dims)]
        return cls(shape, blocks)

    def vec(self) -> np.ndarray:
        return np.concatenate([b.reshape(-1, order="F") for b in self.blocks])

    def _check(self, other: AlgebraElement) -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape!r} vs {other.shape!r}")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.shape, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.shape, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return AlgebraElement(self.shape, [-a for a in self.blocks])

    def __mul__(self, z):
        if isinstance(z, AlgebraElement):
            return NotImplemented
        return AlgebraElement(self.shape, [z * a for a in self.blocks])

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other)
        return AlgebraElement(self.shape, [a @ b for a, b in zip(self.blocks, other.blocks)])

    def adjoint(self) -> AlgebraElement:
        return AlgebraElement(self.shape, [a.conj().T for a in self.blocks])

    @property
    def H(self) -> AlgebraElement:
        return self.adjoint()

    def norm(self) -> float:
        """C*-norm: the largest block operator norm."""
        return max(float(np.linalg.norm(b, 2)) for b in self.blocks)

    def hermitian_part(self) -> AlgebraElement:
        return AlgebraElement(self.shape, [(b + b.conj().T) / 2 for b in self.blocks])

    def eigenvalues(self) -> list[np.ndarray]:
        """Per-block spectra of the Hermitian part, ascending."""
        return [np.linalg.eigvalsh((b + b.conj().T) / 2) for b in self.blocks]

    def allclose(self, other: AlgebraElement, atol: float = 1e-10) -> bool:
        self._check(other)
        return (self - other).norm() <= atol

    def __repr__(self):
        return f"AlgebraElement({self.shape!r}, {[b.tolist() for b in self.blocks]!r})"


def unit(shape) -> AlgebraElement:
    shape = _as_shape(shape)
    return AlgebraElement(shape, [np.eye(n) for n in shape.block_dims])


def zero(shape) -> AlgebraElement:
    shape = _as_shape(shape)
    return AlgebraElement(shape, [np.zeros((n, n)) for n in shape.block_dims])


def diagonal(shape, values: Sequence[complex]) -> AlgebraElement:
    """Element of a commutative shape ``[1, …, 1]`` from its coordinates."""
    shape = _as_shape(shape)
    if not shape.is_commutative:
        raise ShapeMismatch(f"{shape!r} is not commutative")
    return AlgebraElement(shape, [np.array([[v]]) for v in values])


def basis(shape) -> Iterator[AlgebraElement]:
    """Matrix units in vectorization order."""
    shape = _as_shape(shape)
    for k in range(shape.dim):
        v = np.zeros(shape.dim, dtype=complex)
        v[k] = 1
        yield AlgebraElement.from_vec(shape, v)


def add(a, b):
    return a + b


def mul(a, b):
    return a @ b


def adjoint(a):
    return a.adjoint()


def scalar_mul(z, a):
    return z * a


# --- positivity and functional calculus -------------------------------------

def is_hermitian(a: AlgebraElement, tol: float = TOL_HERM) -> bool:
    return all(float(np.max(np.abs(b - b.conj().T), initial=0.0)) <= tol for b in a.blocks)


def is_positive(a: AlgebraElement, tol: float = TOL_POS) -> bool:
    """``a = b*b`` for some ``b``: Hermitian and spectrum ``≥ −tol`` in every block."""
    if not is_hermitian(a, tol):
        return False
    return min(float(ev[0]) for ev in a.eigenvalues()) >= -tol


def _eigh_blocks(a: AlgebraElement):
    for b in a.blocks:
        yield np.linalg.eigh((b + b.conj().T) / 2)


def apply_function(a: AlgebraElement, fn: Callable[[np.ndarray], np.ndarray]) -> AlgebraElement:
    """Functional calculus ``fn(a)`` for Hermitian ``a``, blockwise via ``eigh``."""
    blocks = []
    for w, v in _eigh_blocks(a):
        blocks.append((v * fn(w)) @ v.conj().T)
    return AlgebraElement(a.shape, blocks)


def _clamped_spectrum(a: AlgebraElement, tol: float) -> None:
    if not is_hermitian(a, tol):
        raise NotPositive("element is not Hermitian")
    low = min(float(ev[0]) for ev in a.eigenvalues())
    if low < -tol:
        raise NotPositive(f"element has eigenvalue {low:.3g} < 0")


# eigenvalues below this multiple of eps·‖a‖ are round-off and count as 0;
# otherwise a projection's kernel would leak ~1e-8 into its square root
_EIG_FLOOR = 64 * np.finfo(float).eps


def sqrt_pos(a: AlgebraElement, tol: float = TOL_POS) -> AlgebraElement:
    """Positive square root; eigenvalues in ``(−tol, 0)`` are clamped to 0 first."""
    _clamped_spectrum(a, tol)
    floor = _EIG_FLOOR * max(a.norm(), 1.0)
    return apply_function(a, lambda w: np.sqrt(np.where(w > floor, w, 0.0)))


def inv_sqrt_pos(a: AlgebraElement, tol: float = TOL_POS,
                 inv_tol: float = INV_TOL) -> AlgebraElement:
    _clamped_spectrum(a, tol)
    low = min(float(ev[0]) for ev in a.eigenvalues())
    if low <= inv_tol:
        raise NotInvertible(f"min eigenvalue {low:.3g} ≤ {inv_tol:g}")
    return apply_function(a, lambda w: 1.0 / np.sqrt(w))


class Effect:
    """An element ``e`` with ``0 ≤ e ≤ 1``."""

    __slots__ = ("element",)

    def __init__(self, element: AlgebraElement, tol: float = TOL_POS):
        if not is_hermitian(element, TOL_HERM):
            raise InvalidEffect("effect is not Hermitian")
        evs = element.eigenvalues()
        low = min(float(ev[0]) for ev in evs)
        high = max(float(ev[-1]) for ev in evs)
        if low < -tol or high > 1 + tol:
            raise InvalidEffect(f"effect spectrum [{low:.3g}, {high:.3g}] leaves [0, 1]")
        self.element = element

    @property
    def shape(self) -> AlgebraShape:
        return self.element.shape

    def perp(self) -> Effect:
        return Effect(unit(self.shape) - self.element)

    def __repr__(self):
        return f"Effect({self.element!r})"


def as_element(x) -> AlgebraElement:
    return x.element if isinstance(x, Effect) else x


# --- tensor and direct sum ---------------------------------------------------

def tensor(a: AlgebraShape, b: AlgebraShape) -> AlgebraShape:
    a, b = _as_shape(a), _as_shape(b)
    return AlgebraShape(tuple(n * m for n in a.block_dims for m in b.block_dims))


def tensor_elem(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(tensor(a.shape, b.shape),
                          [np.kron(x, y) for x in a.blocks for y in b.blocks])


def direct_sum(a: AlgebraShape, b: AlgebraShape) -> AlgebraShape:
    a, b = _as_shape(a), _as_shape(b)
    return AlgebraShape(a.block_dims + b.block_dims)


def pair(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """The element ``(a, b)`` of ``A × B``."""
    return AlgebraElement(direct_sum(a.shape, b.shape), a.blocks + b.blocks)


def project(x: AlgebraElement, first: AlgebraShape, i: int) -> AlgebraElement:
    """Component ``i`` (1 or 2) of ``x ∈ first × second``."""
    first = _as_shape(first)
    k = first.nblocks
    if x.shape.block_dims[:k] != first.block_dims:
        raise ShapeMismatch(f"{x.shape!r} does not start with {first!r}")
    if i == 1:
        return AlgebraElement(first, x.blocks[:k])
    second = AlgebraShape(x.shape.block_dims[k:])
    return AlgebraElement(second, x.blocks[k:])


def omega(shape) -> Effect:
    """``Ω = (1, 0)`` in ``A × A``."""
    return Effect(pair(unit(shape), zero(shape)))


# --- linear maps ---------------------------------------------------------------

class PUMap:
    """A linear map ``source → target`` stored as a matrix on vectorized elements.

    Unitality is checked on construction (pass ``check=False`` to skip);
    positivity is only ever sampled, see :func:`pu_validate`.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix, check: bool = True,
                 tol: float = TOL_UNITAL):
        source, target = _as_shape(source), _as_shape(target)
        m = np.array(matrix, dtype=complex)
        if m.shape != (target.dim, source.dim):
            raise ShapeMismatch(f"matrix {m.shape} for {source!r} → {target!r}")
        m.setflags(write=False)
        self.source = source
        self.target = target
        self.matrix = m
        if check:
            err = self.unital_residual()
            if err > tol:
                raise NotUnital(f"map sends 1 to something {err:.3g} away from 1")

    @classmethod
    def from_function(cls, source, target, fn: Callable[[AlgebraElement], AlgebraElement],
                      check: bool = True) -> PUMap:
        """Tabulate a linear ``fn`` on the matrix-unit basis of ``source``."""
        source, target = _as_shape(source), _as_shape(target)
        cols = []
        for e in basis(source):
            out = fn(e)
            if out.shape != target:
                raise ShapeMismatch(f"function returned {out.shape!r}, expected {target!r}")
            cols.append(out.vec())
        m = np.stack(cols, axis=1) if cols else np.zeros((target.dim, 0))
        return cls(source, target, m, check=check)

    def apply(self, a) -> AlgebraElement:
        """Image of ``a`` as an element of ``target`` (also for states)."""
        a = as_element(a)
        if a.shape != self.source:
            raise ShapeMismatch(f"argument in {a.shape!r}, map expects {self.source!r}")
        return AlgebraElement.from_vec(self.target, self.matrix @ a.vec())

    __call__ = apply

    def unital_residual(self) -> float:
        return (self.apply(unit(self.source)) - unit(self.target)).norm()

    def __repr__(self):
        return f"{type(self).__name__}({self.source!r} → {self.target!r})"


class State(PUMap):
    """A PU map into ℂ; calling it returns a complex number."""

    __slots__ = ()

    def __init__(self, source, matrix, check: bool = True, tol: float = TOL_UNITAL):
        super().__init__(source, SCALARS, matrix, check=check, tol=tol)

    @classmethod
    def from_map(cls, m: PUMap) -> State:
        if m.target != SCALARS:
            raise ShapeMismatch(f"a state must land in ℂ, not {m.target!r}")
        return cls(m.source, m.matrix, check=False)

    @classmethod
    def from_function(cls, source, fn, check: bool = True) -> State:
        def lifted(a):
            return AlgebraElement(SCALARS, [np.array([[fn(a)]])])
        return cls.from_map(PUMap.from_function(source, SCALARS, lifted, check=check))

    def __call__(self, a) -> complex:
        return complex(self.apply(a).blocks[0][0, 0])


def density_state(shape, rhos: Sequence) -> State:
    """``a ↦ Σᵢ tr(ρᵢ aᵢ)`` for density blocks ``ρᵢ`` with total trace 1."""
    rho = AlgebraElement(shape, rhos)
    if not is_positive(rho):
        raise NotPositive("density blocks must be positive")
    return State.from_function(
        rho.shape, lambda a: sum(np.trace(r @ x) for r, x in zip(rho.blocks, a.blocks)))


def state_density(f: State) -> AlgebraElement:
    """Inverse of :func:`density_state`: the blocks ``ρᵢ`` representing ``f``."""
    row = f.matrix[0]
    blocks = [row[o:o + n * n].reshape((n, n), order="F").T
              for o, n in zip(f.source.offsets, f.source.block_dims)]
    return AlgebraElement(f.source, blocks)


def vector_state(shape, vectors: Sequence, weights: Sequence[float] | None = None) -> State:
    """Convex combination over blocks of vector states ``⟨ψᵢ| − |ψᵢ⟩``."""
    shape = _as_shape(shape)
    if weights is None:
        weights = [1.0] * len(vectors)
    rhos = []
    for w, psi in zip(weights, vectors):
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        rhos.append(w * np.outer(psi, psi.conj()))
    return density_state(shape, rhos)


def identity_map(shape) -> PUMap:
    shape = _as_shape(shape)
    return PUMap(shape, shape, np.eye(shape.dim))


def pu_compose(g: PUMap, f: PUMap) -> PUMap:
    """``g ∘ f`` (apply ``f`` first)."""
    if f.target != g.source:
        raise ShapeMismatch(f"cannot compose: {f.target!r} is not {g.source!r}")
    m = PUMap(f.source, g.target, g.matrix @ f.matrix, check=False)
    return State.from_map(m) if isinstance(g, State) else m


def pu_apply(m: PUMap, a):
    return m(a)


def pu_product(f: PUMap, g: PUMap) -> PUMap:
    """``f × g: A₁ × A₂ → B₁ × B₂`` acting componentwise."""
    m = np.zeros((f.target.dim + g.target.dim, f.source.dim + g.source.dim), dtype=complex)
    m[:f.target.dim, :f.source.dim] = f.matrix
    m[f.target.dim:, f.source.dim:] = g.matrix
    return PUMap(direct_sum(f.source, g.source), direct_sum(f.target, g.target), m,
                 check=False)


def conjugation(shape, u_blocks: Sequence) -> PUMap:
    """``a ↦ U* a U`` with ``U`` given blockwise."""
    us = [np.asarray(u, dtype=complex) for u in u_blocks]
    return PUMap.from_function(
        shape, shape,
        lambda a: AlgebraElement(a.shape, [u.conj().T @ b @ u for u, b in zip(us, a.blocks)]))


def coproj_tensor(i: int, a: AlgebraShape, b: AlgebraShape) -> PUMap:
    """``κ₁(x) = x ⊗ 1`` from ``A``, or ``κ₂(y) = 1 ⊗ y`` from ``B``, into ``A ⊗ B``."""
    a, b = _as_shape(a), _as_shape(b)
    ab = tensor(a, b)
    if i == 1:
        return PUMap.from_function(a, ab, lambda x: tensor_elem(x, unit(b)))
    if i == 2:
        return PUMap.from_function(b, ab, lambda y: tensor_elem(unit(a), y))
    raise ValueError("coprojection index must be 1 or 2")


def center(a: AlgebraShape) -> tuple[AlgebraShape, PUMap]:
    """``Z(A) ≅ ℂ^k`` together with its embedding ``z ↦ (z₁·1, …, z_k·1)``."""
    a = _as_shape(a)
    z = AlgebraShape((1,) * a.nblocks)

    def embed(x: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(a, [x.blocks[i][0, 0] * np.eye(n)
                                  for i, n in enumerate(a.block_dims)])

    return z, PUMap.from_function(z, a, embed)


def center_retraction(a: AlgebraShape) -> PUMap:
    """Normalized blockwise trace ``A → Z(A)``; a left inverse of the embedding."""
    a = _as_shape(a)
    z = AlgebraShape((1,) * a.nblocks)
    return PUMap.from_function(
        a, z, lambda x: AlgebraElement(z, [np.trace(b) / len(b) for b in x.blocks]))


def commutator_residual(x: AlgebraElement, samples: Sequence[AlgebraElement]) -> float:
    return max(((x @ s) - (s @ x)).norm() for s in samples)


def mu_mult(a: AlgebraShape) -> PUMap:
    """Multiplication ``μ: A ⊗ Z(A) → A``, ``Σ aᵢ ⊗ zᵢ ↦ Σ aᵢzᵢ``."""
    a = _as_shape(a)
    z, _ = center(a)
    k = a.nblocks
    # block (i, l) of A ⊗ Z(A) is M_{nᵢ}; only l = i survives the product
    return PUMap.from_function(
        tensor(a, z), a, lambda x: AlgebraElement(a, [x.blocks[i * k + i] for i in range(k)]))


def _id_tensor(a: AlgebraShape, f: PUMap) -> PUMap:
    """``id_A ⊗ f``; only used with a commutative codomain for ``f``."""
    b = f.source
    ab, ac = tensor(a, b), tensor(a, f.target)
    m = np.zeros((ac.dim, ab.dim), dtype=complex)
    for ea in basis(a):
        for eb in basis(b):
            col = int(np.argmax(np.abs(tensor_elem(ea, eb).vec())))
            m[:, col] = tensor_elem(ea, f(eb)).vec()
    return PUMap(ab, ac, m, check=False)


def graph_cstar(a: AlgebraShape, f: PUMap) -> PUMap:
    """``gr(f) = μ ∘ (id_A ⊗ f): A ⊗ B → A`` for ``f: B → Z(A)``."""
    a = _as_shape(a)
    z, _ = center(a)
    if f.target != z:
        raise ShapeMismatch(f"f must land in Z(A) = {z!r}, not {f.target!r}")
    return pu_compose(mu_mult(a), _id_tensor(a, f))


def ungraph_cstar(a: AlgebraShape, g: PUMap, tol: float = 1e-9) -> PUMap:
    """Recover ``f = g ∘ κ₂`` as a map into ``Z(A)`` from ``g`` with ``g ∘ κ₁ = id``."""
    a = _as_shape(a)
    ab = g.source
    if g.target != a or ab.nblocks % a.nblocks:
        raise ShapeMismatch(f"{g!r} is not of the form A ⊗ B → A")
    b = _second_factor(a, ab)
    if np.max(np.abs(pu_compose(g, coproj_tensor(1, a, b)).matrix - np.eye(a.dim)),
              initial=0.0) > tol:
        raise ValueError("g ∘ κ₁ ≠ id_A")
    return pu_compose(center_retraction(a), pu_compose(g, coproj_tensor(2, a, b)))


def _second_factor(a: AlgebraShape, ab: AlgebraShape) -> AlgebraShape:
    nb = ab.nblocks // a.nblocks
    dims = []
    for j in range(nb):
        d, r = divmod(ab.block_dims[j], a.block_dims[0])
        if r:
            raise ShapeMismatch(f"{ab!r} is not a tensor with {a!r}")
        dims.append(d)
    b = AlgebraShape(tuple(dims))
    if tensor(a, b) != ab:
        raise ShapeMismatch(f"{ab!r} is not a tensor with {a!r}")
    return b


def char_effect(e: Effect) -> PUMap:
    """``char_e: A × A → A``, ``(a, a') ↦ √e·a·√e + √(1−e)·a'·√(1−e)``."""
    a = e.shape
    s = sqrt_pos(e.element)
    t = sqrt_pos(unit(a) - e.element)

    def fn(x: AlgebraElement) -> AlgebraElement:
        x1, x2 = project(x, a, 1), project(x, a, 2)
        return s @ x1 @ s + t @ x2 @ t

    return PUMap.from_function(direct_sum(a, a), a, fn)


# --- randomized validation -----------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    unital_residual: float
    min_eigenvalue: float
    max_hermitian_defect: float
    max_norm_ratio: float
    samples: int
    witness: AlgebraElement | None = None


def random_element(shape, rng: np.random.Generator) -> AlgebraElement:
    shape = _as_shape(shape)
    return AlgebraElement(shape, [rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                                  for n in shape.block_dims])


def random_positive(shape, rng: np.random.Generator) -> AlgebraElement:
    """``b*b`` for a random ``b`` of random rank; low rank hits the cone's edges."""
    shape = _as_shape(shape)
    blocks = []
    for n in shape.block_dims:
        r = int(rng.integers(1, n + 1))
        b = rng.normal(size=(r, n)) + 1j * rng.normal(size=(r, n))
        blocks.append(b.conj().T @ b)
    return AlgebraElement(shape, blocks)


def pu_validate(m: PUMap, samples: int = 100, tol: float = TOL_POS,
                rng: np.random.Generator | None = None) -> ValidationReport:
    """Sample-based check that ``m`` is positive, unital and contractive.

    Positivity is tested on ``samples`` random ``b*b`` inputs; the norm bound
    ``‖m(a)‖ ≤ ‖a‖`` on as many random general inputs.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    unital = m.unital_residual()
    worst_eig, worst_herm, worst_ratio, witness = np.inf, 0.0, 0.0, None
    for _ in range(samples):
        p = random_positive(m.source, rng)
        scale = max(p.norm(), 1e-300)
        p = p * (1.0 / scale)
        out = m.apply(p)
        herm = max(float(np.max(np.abs(b - b.conj().T))) for b in out.blocks)
        low = min(float(ev[0]) for ev in out.eigenvalues())
        worst_herm = max(worst_herm, herm)
        if low < worst_eig:
            worst_eig = low
            if low < -tol:
                witness = p
        a = random_element(m.source, rng)
        worst_ratio = max(worst_ratio, m.apply(a).norm() / a.norm())
    passed = (unital <= TOL_UNITAL and worst_eig >= -tol and worst_herm <= tol
              and worst_ratio <= 1 + 1e-9)
    return ValidationReport(passed, unital, float(worst_eig), worst_herm, worst_ratio,
                            samples, witness)
