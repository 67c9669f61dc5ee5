"""Cochain complexes of compatible Hom-Leibniz algebras and their cohomology.

Degree ``n`` cochains of the compatible complex are ``n``-tuples of
equivariant ``n``-cochains; the coboundary sends ``(f_1, ..., f_n)`` to the
``(n+1)``-tuple whose ``i``-th entry is ``d2 f_{i-1} + d1 f_i`` (out of range
entries are zero), where ``d1, d2`` are the single-bracket coboundaries.
Coordinates of a tuple are the coordinates of its entries, concatenated.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
import numpy as np

from . import linalg
from .balavoine import bracket
from .cochains import Cochain, CochainSpace, equivariant_space
from .representation import (
    Bidegree,
    Bimodule,
    CompatibleBimodule,
    _elements,
    lift_coefficient_cochain,
)
from .structures import CompatibleHomLeibnizAlgebra, HomLeibnizAlgebra


@dataclass
class DegreeReport:
    n: int
    dim_cochains: int
    rank_d: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_H: int


@dataclass
class ComplexReport:
    degrees: list[DegreeReport] = field(default_factory=list)

    def __getitem__(self, n: int) -> DegreeReport:
        for deg in self.degrees:
            if deg.n == n:
                return deg
        raise KeyError(n)

    def betti(self) -> list[int]:
        return [deg.dim_H for deg in self.degrees]

    def to_dict(self) -> dict:
        return {"degrees": [asdict(deg) for deg in self.degrees]}


def _report(dims: list[int], ranks: list[int]) -> ComplexReport:
    """``dims[i]``, ``ranks[i]``: cochain dimension and coboundary rank in degree ``i + 1``."""
    report = ComplexReport()
    for i, (dim, r) in enumerate(zip(dims, ranks)):
        boundaries = ranks[i - 1] if i else 0
        cocycles = dim - r
        report.degrees.append(DegreeReport(i + 1, dim, r, cocycles, boundaries, cocycles - boundaries))
    return report


def map_matrix(source: CochainSpace, target: CochainSpace, fn) -> np.ndarray:
    """Matrix of the linear map ``fn`` from ``source`` to ``target`` coordinates."""
    cols = [target.coordinates(fn(b)) for b in source.basis]
    return linalg.column_stack(cols, target.dim)


def _interleave(blocks1: np.ndarray, blocks2: np.ndarray, n: int) -> np.ndarray:
    rows, cols = blocks1.shape
    out = linalg.zeros((rows * (n + 1), cols * n))
    for c in range(n):
        out[c * rows:(c + 1) * rows, c * cols:(c + 1) * cols] = blocks1
        out[(c + 1) * rows:(c + 2) * rows, c * cols:(c + 1) * cols] = blocks2
    return out


# -- adjoint coefficients ----------------------------------------------------

def cochain_space(algebra, n: int) -> CochainSpace:
    return equivariant_space(algebra.space, algebra.space, n)


def single_coboundary(A: HomLeibnizAlgebra, n: int) -> np.ndarray:
    """Matrix of ``f -> [pi, f]_B`` from degree ``n`` to ``n + 1``."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    return map_matrix(cochain_space(A, n), cochain_space(A, n + 1), lambda f: bracket(A.pi, f))


def adjoint_cochain_basis(C: CompatibleHomLeibnizAlgebra, n: int) -> list[tuple[Cochain, ...]]:
    space = cochain_space(C, n)
    zero = Cochain.zero(C.space, C.space, n)
    out = []
    for copy in range(n):
        for b in space.basis:
            out.append(tuple(b if i == copy else zero for i in range(n)))
    return out


def adjoint_coboundary_matrix(C: CompatibleHomLeibnizAlgebra, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("degree must be at least 1")
    d1 = single_coboundary(C.first(), n)
    d2 = single_coboundary(C.second(), n)
    out = _interleave(d1, d2, n)
    return out if n % 2 else -out


def apply_adjoint_coboundary(C: CompatibleHomLeibnizAlgebra, fs) -> tuple[Cochain, ...]:
    """The coboundary of an explicit tuple of cochains."""
    n = len(fs)
    zero = Cochain.zero(C.space, C.space, n + 1)
    sign = 1 if n % 2 else -1
    out = []
    for i in range(n + 1):
        term = zero
        if i >= 1:
            term = term + bracket(C.pi2, fs[i - 1])
        if i < n:
            term = term + bracket(C.pi1, fs[i])
        out.append(term * sign)
    return tuple(out)


def tuple_coordinates(C: CompatibleHomLeibnizAlgebra, fs) -> np.ndarray:
    space = cochain_space(C, len(fs))
    parts = [space.coordinates(f) for f in fs]
    return np.concatenate(parts) if parts else linalg.zeros(0)


def tuple_from_coordinates(C: CompatibleHomLeibnizAlgebra, n: int, coords) -> tuple[Cochain, ...]:
    space = cochain_space(C, n)
    coords = linalg.array(coords)
    return tuple(space.element(coords[i * space.dim:(i + 1) * space.dim]) for i in range(n))


def _cohomology(matrices: list[np.ndarray], check_square: bool) -> ComplexReport:
    if check_square:
        for lower, upper in zip(matrices, matrices[1:]):
            if not linalg.is_zero(linalg.matmul(upper, lower)):
                raise ValueError("coboundary does not square to zero; the input structure is invalid")
    return _report([m.shape[1] for m in matrices], [linalg.rank(m) for m in matrices])


def adjoint_cohomology(C: CompatibleHomLeibnizAlgebra, max_degree: int) -> ComplexReport:
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    return _cohomology([adjoint_coboundary_matrix(C, n) for n in range(1, max_degree + 1)], False)


def leibniz_cohomology(A: HomLeibnizAlgebra, max_degree: int) -> ComplexReport:
    """Cohomology of a single algebra with adjoint coefficients."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    return _cohomology([single_coboundary(A, n) for n in range(1, max_degree + 1)], False)


def cohomology_representatives(C: CompatibleHomLeibnizAlgebra, n: int) -> list[tuple[Cochain, ...]]:
    """Cocycles whose classes form a basis of the degree ``n`` cohomology."""
    d = adjoint_coboundary_matrix(C, n)
    chosen = adjoint_coboundary_matrix(C, n - 1) if n > 1 else linalg.zeros((d.shape[1], 0))
    current = linalg.rank(chosen)
    reps = []
    for z in linalg.kernel_basis(d):
        trial = np.concatenate([chosen, z.reshape(-1, 1)], axis=1)
        r = linalg.rank(trial)
        if r > current:
            chosen, current = trial, r
            reps.append(tuple_from_coordinates(C, n, z))
    return reps


# -- arbitrary coefficients ----------------------------------------------------

def coefficient_space(b, n: int) -> CochainSpace:
    return equivariant_space(b.base.space, b.coeff, n)


def _structure(b, which: int) -> Cochain:
    elements = _elements(b)
    if which not in (1, 2) or which > len(elements):
        raise ValueError(f"no structure number {which} on this bimodule")
    return elements[which - 1]


def coefficient_coboundary(b, f: Cochain, which: int = 1) -> Cochain:
    """``(-1)^{n-1} [Pi, lift(f)]_B`` read back as a map ``L^{n+1} -> M``."""
    n = f.arity
    split = b.split
    result = bracket(_structure(b, which), lift_coefficient_cochain(f))
    if not split.has_bidegree(result, Bidegree(n + 1, -1)):
        raise ValueError("lifted coboundary is not homogeneous of the expected bidegree")
    image = split.restrict(result, "L" * (n + 1), "M")
    image = image if n % 2 else -image
    return Cochain(b.base.space, b.coeff, image)


def coefficient_coboundary_matrix(b, n: int, which: int = 1) -> np.ndarray:
    if n < 1:
        raise ValueError("degree must be at least 1")
    return map_matrix(coefficient_space(b, n), coefficient_space(b, n + 1),
                      lambda f: coefficient_coboundary(b, f, which))


def coefficient_complex_matrix(cb: CompatibleBimodule, n: int) -> np.ndarray:
    d1 = coefficient_coboundary_matrix(cb, n, 1)
    d2 = coefficient_coboundary_matrix(cb, n, 2)
    return _interleave(d1, d2, n)


def coefficient_cohomology(cb: CompatibleBimodule, max_degree: int) -> ComplexReport:
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    return _cohomology([coefficient_complex_matrix(cb, n) for n in range(1, max_degree + 1)], True)


def leibniz_coefficient_cohomology(b: Bimodule, max_degree: int) -> ComplexReport:
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    return _cohomology([coefficient_coboundary_matrix(b, n) for n in range(1, max_degree + 1)], True)


def cohomology(structure, max_degree: int) -> ComplexReport:
    """Dispatch on algebra or bimodule, compatible or single."""
    if isinstance(structure, CompatibleHomLeibnizAlgebra):
        return adjoint_cohomology(structure, max_degree)
    if isinstance(structure, HomLeibnizAlgebra):
        return leibniz_cohomology(structure, max_degree)
    if isinstance(structure, CompatibleBimodule):
        return coefficient_cohomology(structure, max_degree)
    if isinstance(structure, Bimodule):
        return leibniz_coefficient_cohomology(structure, max_degree)
    raise TypeError(f"no cochain complex for {type(structure).__name__}")
