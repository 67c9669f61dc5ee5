"""First-order deformations of compatible Hom-Leibniz algebras.

The deformation parameter is never materialised.  A deformation is the pair
``(mu1, m1)`` perturbing ``(pi1, pi2)``, and every check below is one of the
coefficient equations obtained by expanding in powers of the parameter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .balavoine import bracket
from .cochains import Cochain, is_equivariant
from .cohomology import adjoint_coboundary_matrix, cochain_space, tuple_coordinates
from .structures import (
    CompatibleHomLeibnizAlgebra,
    LinearOperator,
    _deformed,
    _operator_on,
    deformed_bracket,
    is_nijenhuis,
    labels,
    witnesses,
)


@dataclass(frozen=True)
class InfinitesimalDeformation:
    base: CompatibleHomLeibnizAlgebra
    mu1: Cochain
    m1: Cochain

    def __post_init__(self):
        for name, f in (("mu1", self.mu1), ("m1", self.m1)):
            if f.arity != 2 or f.source != self.base.space or f.target != self.base.space:
                raise ValueError(f"{name} must be a bilinear map on the base space")
            if not is_equivariant(f):
                raise ValueError(f"{name} does not commute with the twist")

    @classmethod
    def zero(cls, base: CompatibleHomLeibnizAlgebra) -> "InfinitesimalDeformation":
        z = Cochain.zero(base.space, base.space, 2)
        return cls(base, z, z)

    @property
    def pair(self) -> CompatibleHomLeibnizAlgebra:
        """``(mu1, m1)`` as a pair of brackets on the base space (not validated)."""
        return CompatibleHomLeibnizAlgebra(self.base.space, self.mu1, self.m1)


@dataclass
class GeneratesReport:
    cocycle: bool
    pair_is_algebra: bool
    failed: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cocycle and self.pair_is_algebra


def check_generates(deformation: InfinitesimalDeformation) -> GeneratesReport:
    C, mu1, m1 = deformation.base, deformation.mu1, deformation.m1
    linear = {
        "[pi1,mu1]": bracket(C.pi1, mu1),
        "[pi2,m1]": bracket(C.pi2, m1),
        "[pi1,m1]+[mu1,pi2]": bracket(C.pi1, m1) + bracket(mu1, C.pi2),
    }
    quadratic = {
        "[mu1,mu1]": bracket(mu1, mu1),
        "[m1,m1]": bracket(m1, m1),
        "[mu1,m1]": bracket(mu1, m1),
    }
    cocycle = all(f.is_zero() for f in linear.values())
    image = linalg.matmul(adjoint_coboundary_matrix(C, 2), tuple_coordinates(C, (mu1, m1)).reshape(-1, 1))
    if cocycle != linalg.is_zero(image):
        raise RuntimeError("cocycle conditions disagree with the coboundary matrix")
    failed = [name for name, f in {**linear, **quadratic}.items() if not f.is_zero()]
    return GeneratesReport(cocycle, all(f.is_zero() for f in quadratic.values()), failed)


def from_nijenhuis(C: CompatibleHomLeibnizAlgebra, N) -> InfinitesimalDeformation:
    """The trivial deformation ``(pi1_N, pi2_N)`` of a Nijenhuis operator."""
    op = _operator_on(C.space, N)
    if not is_nijenhuis(C, op).ok:
        raise ValueError("operator is not a Nijenhuis operator")
    out = InfinitesimalDeformation(C, deformed_bracket(C.first(), op), deformed_bracket(C.second(), op))
    if not check_generates(out).ok or not check_trivial_via(out, op).ok:
        raise RuntimeError("Nijenhuis deformation fails its own checks")
    return out


@dataclass
class ConditionReport:
    """Per numbered condition, the basis pairs (or basis vectors) where it fails."""

    failures: dict[int, list[tuple[str, ...]]]
    n_invertible: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def failed(self) -> list[int]:
        return sorted(k for k, v in self.failures.items() if v)


def _pair_failures(defect, d: int) -> list[tuple[str, ...]]:
    tensor = defect.coeffs if isinstance(defect, Cochain) else defect
    return witnesses(tensor, [labels("e", d)] * 2)


def _commutator_failures(op: LinearOperator) -> list[tuple[str, ...]]:
    a = op.space.twist
    comm = a.dot(op.matrix) - op.matrix.dot(a)
    # columns index inputs, so transpose into (input, output) layout
    return witnesses(comm.T, [labels("e", op.space.dim)])


def _outer(n: np.ndarray, f: Cochain) -> np.ndarray:
    """``N f(x, y)``."""
    return np.tensordot(f.coeffs, n, axes=([2], [1]))


def _substitute(f: Cochain, left, right) -> np.ndarray:
    """``f(L x, R y)`` with ``None`` meaning the identity."""
    c = f.coeffs
    if left is not None:
        c = np.einsum("ax,ayo->xyo", left, c)
    if right is not None:
        c = np.einsum("by,xbo->xyo", right, c)
    return c


def check_trivial_via(deformation: InfinitesimalDeformation, N) -> ConditionReport:
    """``Id + tN`` as a homomorphism from the deformation onto the base."""
    C = deformation.base
    op = _operator_on(C.space, N)
    n, d = op.matrix, C.dim
    failures = {
        1: _pair_failures(deformation.mu1 - _deformed(C.pi1, n), d),
        2: _pair_failures(deformation.m1 - _deformed(C.pi2, n), d),
        3: _pair_failures(_outer(n, deformation.mu1) - _substitute(C.pi1, n, n), d),
        4: _pair_failures(_outer(n, deformation.m1) - _substitute(C.pi2, n, n), d),
        5: _commutator_failures(op),
    }
    return ConditionReport(failures)


def _same_base(a: InfinitesimalDeformation, b: InfinitesimalDeformation):
    if a.base.space.dim != b.base.space.dim:
        raise ValueError("deformations live on spaces of different dimension")


def check_equivalence_via(
    deformation: InfinitesimalDeformation, other: InfinitesimalDeformation, N
) -> ConditionReport:
    """``Id + tN`` as a homomorphism from ``deformation`` to ``other``."""
    _same_base(deformation, other)
    C, C2 = deformation.base, other.base
    op = _operator_on(C.space, N)
    n, d = op.matrix, C.dim
    failures = {}
    for offset, pi, pi_other, f, g in (
        (0, C.pi1, C2.pi1, deformation.mu1, other.mu1),
        (4, C.pi2, C2.pi2, deformation.m1, other.m1),
    ):
        failures[offset + 1] = _pair_failures(pi.coeffs - pi_other.coeffs, d)
        failures[offset + 2] = _pair_failures((f - g) - _deformed(pi, n), d)
        rhs = _substitute(g, None, n) + _substitute(g, n, None) + _substitute(pi, n, n)
        failures[offset + 3] = _pair_failures(_outer(n, f) - rhs, d)
        failures[offset + 4] = _pair_failures(_substitute(g, n, n), d)
    failures[9] = _commutator_failures(op)
    return ConditionReport(dict(sorted(failures.items())), n_invertible=op.is_invertible())


def difference_is_coboundary(
    deformation: InfinitesimalDeformation, other: InfinitesimalDeformation
) -> Optional[LinearOperator]:
    """An equivariant ``N`` with ``d^1 N = (mu1 - mu1', m1 - m1')``, if one exists."""
    _same_base(deformation, other)
    C = deformation.base
    diff = (deformation.mu1 - other.mu1, deformation.m1 - other.m1)
    x = linalg.solve(adjoint_coboundary_matrix(C, 1), tuple_coordinates(C, diff))
    if x is None:
        return None
    op = LinearOperator(C.space, cochain_space(C, 1).element(x).coeffs.T)
    if _deformed(C.pi1, op.matrix) != diff[0] or _deformed(C.pi2, op.matrix) != diff[1]:
        raise RuntimeError("solution of the coboundary system does not reproduce the difference")
    return op
