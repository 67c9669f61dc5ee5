"""Hom-Leibniz and compatible Hom-Leibniz algebras, homomorphisms and
Nijenhuis operators.

Every check returns a report carrying witnesses: basis tuples, labelled
``"e1", "e2", ...``, at which an identity fails.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from . import linalg
from .balavoine import bracket
from .cochains import Cochain, HomVectorSpace, equivariance_defect

MAX_WITNESSES = 5


def witnesses(defect: np.ndarray, labels_per_axis, limit: int = MAX_WITNESSES) -> list[tuple[str, ...]]:
    """Argument tuples (all axes but the last) where ``defect`` is nonzero."""
    found = []
    for idx in np.ndindex(*defect.shape[:-1]):
        if any(v != 0 for v in defect[idx]):
            found.append(tuple(labels[i] for labels, i in zip(labels_per_axis, idx)))
            if len(found) == limit:
                break
    return found


def labels(prefix: str, dim: int) -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(dim)]


def leibniz_terms(twist: np.ndarray, outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """``o(ax, i(y,z)) - o(i(x,y), az) - o(ay, i(x,z))`` on all basis triples."""
    a = twist
    t1 = np.einsum("ax,yzb,abo->xyzo", a, inner, outer)
    t2 = np.einsum("xya,bz,abo->xyzo", inner, a, outer)
    t3 = np.einsum("ay,xzb,abo->xyzo", a, inner, outer)
    return t1 - t2 - t3


def _check_bilinear(space: HomVectorSpace, pi: Cochain):
    if pi.arity != 2 or pi.source != space or pi.target != space:
        raise ValueError("expected a bilinear cochain on the algebra's space")


@dataclass
class HomLeibnizReport:
    multiplicative: bool
    identity_holds: bool
    witnesses: list[tuple[str, ...]] = field(default_factory=list)
    multiplicative_witnesses: list[tuple[str, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.multiplicative and self.identity_holds


def leibniz_defect(space: HomVectorSpace, pi: Cochain) -> np.ndarray:
    return leibniz_terms(space.twist, pi.coeffs, pi.coeffs)


def check_hom_leibniz(space: HomVectorSpace, pi: Cochain) -> HomLeibnizReport:
    _check_bilinear(space, pi)
    lab = labels("e", space.dim)
    defect = leibniz_defect(space, pi)
    direct = linalg.is_zero(defect)
    via_bracket = bracket(pi, pi).is_zero()
    if direct != via_bracket:
        raise RuntimeError("Leibniz identity and [pi, pi] = 0 disagree; bracket implementation is broken")
    mult = equivariance_defect(pi).coeffs
    return HomLeibnizReport(
        multiplicative=linalg.is_zero(mult),
        identity_holds=direct,
        witnesses=witnesses(defect, [lab] * 3),
        multiplicative_witnesses=witnesses(mult, [lab] * 2),
    )


@dataclass(frozen=True, eq=False)
class HomLeibnizAlgebra:
    space: HomVectorSpace
    pi: Cochain

    def __post_init__(self):
        _check_bilinear(self.space, self.pi)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def brackets(self) -> tuple[Cochain, ...]:
        return (self.pi,)

    def check(self) -> HomLeibnizReport:
        return check_hom_leibniz(self.space, self.pi)

    def __eq__(self, other):
        if not isinstance(other, HomLeibnizAlgebra):
            return NotImplemented
        return self.space == other.space and self.pi == other.pi


@dataclass(frozen=True, eq=False)
class CompatibleHomLeibnizAlgebra:
    space: HomVectorSpace
    pi1: Cochain
    pi2: Cochain

    def __post_init__(self):
        _check_bilinear(self.space, self.pi1)
        _check_bilinear(self.space, self.pi2)

    @classmethod
    def doubled(cls, algebra: HomLeibnizAlgebra) -> "CompatibleHomLeibnizAlgebra":
        """The pair ``(pi, pi)``, compatible whenever ``pi`` is Hom-Leibniz."""
        return cls(algebra.space, algebra.pi, algebra.pi)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def brackets(self) -> tuple[Cochain, ...]:
        return (self.pi1, self.pi2)

    def first(self) -> HomLeibnizAlgebra:
        return HomLeibnizAlgebra(self.space, self.pi1)

    def second(self) -> HomLeibnizAlgebra:
        return HomLeibnizAlgebra(self.space, self.pi2)

    def check(self) -> "CompatibleReport":
        return check_compatible(self.space, self.pi1, self.pi2)

    def __eq__(self, other):
        if not isinstance(other, CompatibleHomLeibnizAlgebra):
            return NotImplemented
        return self.space == other.space and self.pi1 == other.pi1 and self.pi2 == other.pi2


Algebra = Union[HomLeibnizAlgebra, CompatibleHomLeibnizAlgebra]


@dataclass
class CompatibleReport:
    first: HomLeibnizReport
    second: HomLeibnizReport
    compatibility_holds: bool
    witnesses: list[tuple[str, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.first.ok and self.second.ok and self.compatibility_holds


def compatibility_defect(space: HomVectorSpace, pi1: Cochain, pi2: Cochain) -> np.ndarray:
    """Left minus right side of the mixed identity tying the two brackets.

    Equals ``-[pi1, pi2]_B`` as a tensor.
    """
    a = space.twist
    return leibniz_terms(a, pi1.coeffs, pi2.coeffs) + leibniz_terms(a, pi2.coeffs, pi1.coeffs)


def check_compatible(space: HomVectorSpace, pi1: Cochain, pi2: Cochain) -> CompatibleReport:
    _check_bilinear(space, pi1)
    _check_bilinear(space, pi2)
    defect = compatibility_defect(space, pi1, pi2)
    direct = linalg.is_zero(defect)
    if direct != bracket(pi1, pi2).is_zero():
        raise RuntimeError("compatibility identity and [pi1, pi2] = 0 disagree; bracket implementation is broken")
    return CompatibleReport(
        first=check_hom_leibniz(space, pi1),
        second=check_hom_leibniz(space, pi2),
        compatibility_holds=direct,
        witnesses=witnesses(defect, [labels("e", space.dim)] * 3),
    )


def check_homomorphism(phi, source: Algebra, target: Algebra) -> bool:
    """Whether ``phi`` (matrix or operator) maps every bracket of ``source``
    onto the matching bracket of ``target`` and intertwines the twists."""
    m = phi.matrix if isinstance(phi, LinearOperator) else linalg.array(phi)
    if m.shape != (target.dim, source.dim):
        raise ValueError(f"map has shape {m.shape}, expected {(target.dim, source.dim)}")
    if type(source) is not type(target):
        raise ValueError("both algebras must be of the same kind")
    if not linalg.equal(m.dot(source.space.twist), target.space.twist.dot(m)):
        return False
    for b1, b2 in zip(source.brackets, target.brackets):
        # phi([x, y]_1) versus [phi x, phi y]_2 on basis pairs
        lhs = np.tensordot(b1.coeffs, m, axes=([2], [1]))
        rhs = np.einsum("ax,by,abo->xyo", m, m, b2.coeffs)
        if not linalg.equal(lhs, rhs):
            return False
    return True


@dataclass(frozen=True, eq=False)
class LinearOperator:
    space: HomVectorSpace
    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.array(self.matrix)
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError(f"operator must be {self.space.dim}x{self.space.dim}, got shape {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, space: HomVectorSpace) -> "LinearOperator":
        return cls(space, linalg.identity(space.dim))

    @classmethod
    def zero(cls, space: HomVectorSpace) -> "LinearOperator":
        return cls(space, linalg.zeros((space.dim, space.dim)))

    def commutes_with_twist(self) -> bool:
        a = self.space.twist
        return linalg.equal(a.dot(self.matrix), self.matrix.dot(a))

    def as_cochain(self) -> Cochain:
        return Cochain.endomorphism(self.space, self.matrix)

    def is_invertible(self) -> bool:
        return linalg.rank(self.matrix) == self.space.dim

    def __call__(self, v) -> np.ndarray:
        return self.matrix.dot(linalg.array(v))

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return self.space == other.space and linalg.equal(self.matrix, other.matrix)


def combined_bracket(C: CompatibleHomLeibnizAlgebra, k1, k2) -> HomLeibnizAlgebra:
    combined = HomLeibnizAlgebra(C.space, C.pi1 * linalg.scalar(k1) + C.pi2 * linalg.scalar(k2))
    if not combined.check().ok:
        raise ValueError("linear combination is not Hom-Leibniz; the input pair is not compatible")
    return combined


def _operator_on(space: HomVectorSpace, N) -> LinearOperator:
    op = N if isinstance(N, LinearOperator) else LinearOperator(space, N)
    if op.space.dim != space.dim:
        raise ValueError("operator and algebra dimensions differ")
    return op


def _deformed(pi: Cochain, n: np.ndarray) -> Cochain:
    c = pi.coeffs
    term_right = np.einsum("by,xbo->xyo", n, c)  # [x, N y]
    term_left = np.einsum("ax,ayo->xyo", n, c)  # [N x, y]
    term_out = np.tensordot(c, n, axes=([2], [1]))  # N [x, y]
    return Cochain(pi.source, pi.target, term_right + term_left - term_out)


def _torsion(pi: Cochain, n: np.ndarray) -> Cochain:
    deformed = _deformed(pi, n)
    lhs = np.tensordot(deformed.coeffs, n, axes=([2], [1]))
    rhs = np.einsum("ax,by,abo->xyo", n, n, pi.coeffs)
    return Cochain(pi.source, pi.target, lhs - rhs)


def deformed_bracket(A: HomLeibnizAlgebra, N) -> Cochain:
    """``[x, y]_N = [x, N y] + [N x, y] - N [x, y]``."""
    op = _operator_on(A.space, N)
    if not op.commutes_with_twist():
        raise ValueError("operator does not commute with the twist")
    direct = _deformed(A.pi, op.matrix)
    if direct != bracket(A.pi, op.as_cochain()):
        raise RuntimeError("deformed bracket disagrees with [pi, N]_B")
    return direct


def nijenhuis_torsion(A: HomLeibnizAlgebra, N) -> Cochain:
    """``N [x, y]_N - [N x, N y]``."""
    op = _operator_on(A.space, N)
    if not op.commutes_with_twist():
        raise ValueError("operator does not commute with the twist")
    return _torsion(A.pi, op.matrix)


@dataclass
class NijenhuisReport:
    commutes: bool
    torsion_zero: list[bool]
    witnesses: list[list[tuple[str, ...]]]
    # torsion of k1*pi1 + k2*pi2 for each sampled (k1, k2)
    combination_torsion_zero: dict[tuple[int, int], bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.commutes and all(self.torsion_zero)


COMBINATION_SAMPLES = ((1, 1), (2, -3))


def is_nijenhuis(C: Algebra, N) -> NijenhuisReport:
    op = _operator_on(C.space, N)
    lab = labels("e", C.dim)
    torsions = [_torsion(pi, op.matrix) for pi in C.brackets]
    combos = {}
    if len(torsions) == 2:
        for k1, k2 in COMBINATION_SAMPLES:
            combined = _torsion(C.brackets[0] * k1 + C.brackets[1] * k2, op.matrix)
            if combined != torsions[0] * k1 + torsions[1] * k2:
                raise RuntimeError("torsion is not linear in the bracket")
            combos[(k1, k2)] = combined.is_zero()
    return NijenhuisReport(
        commutes=op.commutes_with_twist(),
        torsion_zero=[t.is_zero() for t in torsions],
        witnesses=[witnesses(t.coeffs, [lab] * 2) for t in torsions],
        combination_torsion_zero=combos,
    )


def nijenhuis_deform(C: Algebra, N) -> Algebra:
    """Replace every bracket by its ``N``-deformed bracket."""
    op = _operator_on(C.space, N)
    if not is_nijenhuis(C, op).ok:
        raise ValueError("operator is not a Nijenhuis operator")
    new = [_deformed(pi, op.matrix) for pi in C.brackets]
    for pi, pi_n in zip(C.brackets, new):
        if pi_n != bracket(pi, op.as_cochain()):
            raise RuntimeError("deformed bracket disagrees with [pi, N]_B")
    if isinstance(C, CompatibleHomLeibnizAlgebra):
        out = CompatibleHomLeibnizAlgebra(C.space, *new)
    else:
        out = HomLeibnizAlgebra(C.space, *new)
    if not out.check().ok:
        raise RuntimeError("deformed brackets fail the axioms")
    if not check_homomorphism(op, out, C):
        raise RuntimeError("operator is not a homomorphism from the deformed algebra")
    return out
