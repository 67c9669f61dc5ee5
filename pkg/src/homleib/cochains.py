"""Hom vector spaces and dense multilinear cochains.

A twist matrix acts on column coordinate vectors: ``alpha(e_c) = sum_r
twist[r, c] e_r``.  A cochain of arity ``n`` from a space of dimension ``d``
to one of dimension ``m`` stores ``coeffs[i_1, ..., i_n, j]``, the
``e_j``-coefficient of ``f(e_{i_1}, ..., e_{i_n})`` (0-based internally).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
import functools
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import linalg


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class HomVectorSpace:
    """A ``dim``-dimensional space with a distinguished endomorphism."""

    dim: int
    twist: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        twist = linalg.array(self.twist)
        if twist.shape != (self.dim, self.dim):
            raise ValueError(f"twist must be {self.dim}x{self.dim}, got shape {twist.shape}")
        object.__setattr__(self, "twist", _freeze(twist))

    @classmethod
    def identity(cls, dim: int) -> "HomVectorSpace":
        return cls(dim, linalg.identity(dim))

    @classmethod
    def diagonal(cls, *entries) -> "HomVectorSpace":
        m = linalg.zeros((len(entries), len(entries)))
        for i, v in enumerate(entries):
            m[i, i] = linalg.scalar(v)
        return cls(len(entries), m)

    def _key(self):
        return (self.dim, tuple(self.twist.flat))

    def __eq__(self, other):
        if not isinstance(other, HomVectorSpace):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        rows = [[str(v) for v in row] for row in self.twist]
        return f"HomVectorSpace(dim={self.dim}, twist={rows})"

    def basis_vector(self, i: int) -> np.ndarray:
        v = linalg.zeros(self.dim)
        v[i] = Fraction(1)
        return v

    def direct_sum(self, other: "HomVectorSpace") -> "HomVectorSpace":
        return HomVectorSpace(self.dim + other.dim, linalg.block_diag(self.twist, other.twist))


def twist_power(space: HomVectorSpace, k: int) -> np.ndarray:
    return linalg.matrix_power(space.twist, k)


def act_on_inputs(coeffs: np.ndarray, mats: Sequence[np.ndarray | None]) -> np.ndarray:
    """Coefficients of ``(x_1, ..., x_n) -> f(M_1 x_1, ..., M_n x_n)``.

    ``None`` leaves a slot untouched.  The last axis of ``coeffs`` is the
    output and is never acted on.
    """
    out = coeffs
    for axis, m in enumerate(mats):
        if m is None:
            continue
        out = np.moveaxis(np.tensordot(out, m, axes=([axis], [0])), -1, axis)
    return out


def act_on_output(coeffs: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Coefficients of ``M o f``."""
    return np.tensordot(coeffs, m, axes=([coeffs.ndim - 1], [1]))


@dataclass(frozen=True, eq=False)
class Cochain:
    """A multilinear map ``source^{(x) n} -> target`` as a dense tensor."""

    source: HomVectorSpace
    target: HomVectorSpace
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = linalg.array(self.coeffs)
        if coeffs.ndim < 2:
            raise ValueError("a cochain needs at least one input slot")
        expected = (self.source.dim,) * (coeffs.ndim - 1) + (self.target.dim,)
        if coeffs.shape != expected:
            raise ValueError(f"coefficient tensor has shape {coeffs.shape}, expected {expected}")
        object.__setattr__(self, "coeffs", _freeze(coeffs))

    @classmethod
    def zero(cls, source: HomVectorSpace, target: HomVectorSpace, arity: int) -> "Cochain":
        return cls(source, target, linalg.zeros((source.dim,) * arity + (target.dim,)))

    @classmethod
    def from_entries(cls, source, target, arity: int, entries: Mapping[tuple, object]) -> "Cochain":
        """Build from ``{(i_1, ..., i_n, j): c}`` with 1-based indices."""
        coeffs = linalg.zeros((source.dim,) * arity + (target.dim,))
        for idx, c in entries.items():
            if len(idx) != arity + 1:
                raise ValueError(f"entry {idx} does not have {arity + 1} indices")
            coeffs[tuple(i - 1 for i in idx)] += linalg.scalar(c)
        return cls(source, target, coeffs)

    @classmethod
    def endomorphism(cls, space: HomVectorSpace, matrix) -> "Cochain":
        """The arity-1 cochain of a linear map given by its matrix."""
        return cls(space, space, linalg.array(matrix).T)

    @property
    def arity(self) -> int:
        return self.coeffs.ndim - 1

    @property
    def degree(self) -> int:
        return self.arity - 1

    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def is_zero(self) -> bool:
        return linalg.is_zero(self.coeffs)

    def entries(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        """Nonzero entries with 1-based indices, in lexicographic order."""
        for idx, v in np.ndenumerate(self.coeffs):
            if v != 0:
                yield tuple(i + 1 for i in idx), v

    def _like(self, coeffs) -> "Cochain":
        return Cochain(self.source, self.target, coeffs)

    def _check_compatible(self, other: "Cochain"):
        if not isinstance(other, Cochain):
            raise TypeError(f"expected a Cochain, got {type(other).__name__}")
        if other.source != self.source or other.target != self.target or other.arity != self.arity:
            raise ValueError("cochains live in different spaces")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        return self._like(self.coeffs + other.coeffs)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        return self._like(self.coeffs - other.coeffs)

    def __neg__(self) -> "Cochain":
        return self._like(-self.coeffs)

    def __mul__(self, c) -> "Cochain":
        return self._like(self.coeffs * linalg.scalar(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and linalg.equal(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{idx}: {v}" for idx, v in self.entries())
        return f"Cochain(arity={self.arity}, {self.source.dim}->{self.target.dim}, {{{body}}})"

    def __call__(self, *args) -> np.ndarray:
        return evaluate(self, args)

    def vector(self) -> np.ndarray:
        return self.coeffs.reshape(-1)


def evaluate(f: Cochain, args: Sequence) -> np.ndarray:
    if len(args) != f.arity:
        raise ValueError(f"cochain of arity {f.arity} called with {len(args)} arguments")
    out = f.coeffs
    for a in args:
        a = linalg.array(a)
        if a.shape != (f.source.dim,):
            raise ValueError(f"argument has shape {a.shape}, expected ({f.source.dim},)")
        out = np.tensordot(a, out, axes=([0], [0]))
    return out


def equivariance_defect(f: Cochain) -> Cochain:
    """``twist_target o f - f o twist_source^{(x) n}``."""
    twisted_out = act_on_output(f.coeffs, f.target.twist)
    twisted_in = act_on_inputs(f.coeffs, [f.source.twist] * f.arity)
    return Cochain(f.source, f.target, twisted_out - twisted_in)


def is_equivariant(f: Cochain) -> bool:
    return equivariance_defect(f).is_zero()


def defect_matrix(source: HomVectorSpace, target: HomVectorSpace, n: int) -> np.ndarray:
    """Matrix of ``f -> equivariance_defect(f)`` on row-major flattened tensors."""
    d, m = source.dim, target.dim
    out_part = linalg.kron(linalg.identity(d ** n), target.twist)
    in_part = linalg.kron(*([source.twist.T] * n), linalg.identity(m))
    return out_part - in_part


@dataclass(frozen=True, eq=False)
class CochainSpace:
    """The equivariant cochains of one arity, with a fixed basis."""

    source: HomVectorSpace
    target: HomVectorSpace
    arity: int
    basis: tuple[Cochain, ...]
    _free: tuple[int, ...] = field(repr=False)
    _basis_matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.source.dim ** self.arity * self.target.dim

    def coordinates(self, f: Cochain) -> np.ndarray:
        """Coordinates of ``f`` in :attr:`basis`; raises if ``f`` lies outside."""
        if f.source != self.source or f.target != self.target or f.arity != self.arity:
            raise ValueError("cochain does not belong to this space")
        v = f.vector()
        coords = np.array([v[i] for i in self._free], dtype=object)
        if self.dim == self.ambient_dim:
            return coords
        if not linalg.equal(self._expand(coords), v):
            raise ValueError("cochain is not equivariant")
        return coords

    def _expand(self, coords) -> np.ndarray:
        out = linalg.zeros(self.ambient_dim)
        for row, terms in enumerate(self._sparse_rows):
            if terms:
                out[row] = sum(c * coords[k] for k, c in terms)
        return out

    def element(self, coords: Sequence) -> Cochain:
        coords = linalg.array(coords) if len(coords) else linalg.zeros(0)
        if coords.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} coordinates")
        if not self.dim:
            return Cochain.zero(self.source, self.target, self.arity)
        shape = (self.source.dim,) * self.arity + (self.target.dim,)
        return Cochain(self.source, self.target, self._expand(coords).reshape(shape))

    @functools.cached_property
    def _sparse_rows(self) -> tuple:
        return tuple(
            tuple((k, c) for k, c in enumerate(row) if c != 0) for row in self._basis_matrix
        )


@lru_cache(maxsize=256)
def equivariant_space(source: HomVectorSpace, target: HomVectorSpace, n: int) -> CochainSpace:
    if n < 1:
        raise ValueError("arity must be at least 1")
    shape = (source.dim,) * n + (target.dim,)
    defect = defect_matrix(source, target, n)
    free = tuple(linalg.free_columns(defect))
    vectors = linalg.kernel_basis(defect)
    basis = tuple(Cochain(source, target, v.reshape(shape)) for v in vectors)
    return CochainSpace(
        source, target, n, basis, free, _freeze(linalg.column_stack(vectors, int(np.prod(shape))))
    )


def equivariant_basis(source: HomVectorSpace, target: HomVectorSpace, n: int) -> tuple[Cochain, ...]:
    return equivariant_space(source, target, n).basis


def basis_tuples(d: int, n: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(d), repeat=n)
