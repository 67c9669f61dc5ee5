"""Bimodules, semidirect products, lifts to ``L + M`` and bidegrees.

Action tensors are stored raw: ``left[x, u, o]`` is the ``m_o`` coefficient
of ``m_L(e_x, m_u)`` and ``right[u, x, o]`` that of ``m_R(m_u, e_x)``.  On
``L + M`` the basis lists the ``L`` block first, then the ``M`` block.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import linalg
from .balavoine import bracket
from .cochains import Cochain, HomVectorSpace
from .structures import (
    CompatibleHomLeibnizAlgebra,
    HomLeibnizAlgebra,
    check_compatible,
    labels,
    witnesses,
)


def _action(tensor, shape: tuple[int, int, int], what: str) -> np.ndarray:
    a = linalg.array(tensor)
    if a.shape != shape:
        raise ValueError(f"{what} action has shape {a.shape}, expected {shape}")
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Bimodule:
    base: HomLeibnizAlgebra
    coeff: HomVectorSpace
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        d, m = self.base.dim, self.coeff.dim
        object.__setattr__(self, "left", _action(self.left, (d, m, m), "left"))
        object.__setattr__(self, "right", _action(self.right, (m, d, m), "right"))

    @classmethod
    def adjoint(cls, algebra: HomLeibnizAlgebra) -> "Bimodule":
        return cls(algebra, algebra.space, algebra.pi.coeffs, algebra.pi.coeffs)

    @classmethod
    def trivial(cls, algebra: HomLeibnizAlgebra, coeff: HomVectorSpace) -> "Bimodule":
        d, m = algebra.dim, coeff.dim
        return cls(algebra, coeff, linalg.zeros((d, m, m)), linalg.zeros((m, d, m)))

    @property
    def split(self) -> "DirectSum":
        return DirectSum(self.base.space, self.coeff)


@dataclass(frozen=True, eq=False)
class CompatibleBimodule:
    base: CompatibleHomLeibnizAlgebra
    coeff: HomVectorSpace
    left1: np.ndarray
    right1: np.ndarray
    left2: np.ndarray
    right2: np.ndarray

    def __post_init__(self):
        d, m = self.base.dim, self.coeff.dim
        for name in ("left1", "left2"):
            object.__setattr__(self, name, _action(getattr(self, name), (d, m, m), name))
        for name in ("right1", "right2"):
            object.__setattr__(self, name, _action(getattr(self, name), (m, d, m), name))

    @classmethod
    def adjoint(cls, algebra: CompatibleHomLeibnizAlgebra) -> "CompatibleBimodule":
        p1, p2 = algebra.pi1.coeffs, algebra.pi2.coeffs
        return cls(algebra, algebra.space, p1, p1, p2, p2)

    @classmethod
    def trivial(cls, algebra: CompatibleHomLeibnizAlgebra, coeff: HomVectorSpace) -> "CompatibleBimodule":
        d, m = algebra.dim, coeff.dim
        zl, zr = linalg.zeros((d, m, m)), linalg.zeros((m, d, m))
        return cls(algebra, coeff, zl, zr, zl, zr)

    def first(self) -> Bimodule:
        return Bimodule(self.base.first(), self.coeff, self.left1, self.right1)

    def second(self) -> Bimodule:
        return Bimodule(self.base.second(), self.coeff, self.left2, self.right2)

    @property
    def split(self) -> "DirectSum":
        return DirectSum(self.base.space, self.coeff)


AnyBimodule = Union[Bimodule, CompatibleBimodule]


# -- action axioms ----------------------------------------------------------

def _left_left(a, b, p_in, l_out, l_in):
    # m_L(ax, m_L(y,u)) - m_L([x,y], bu) - m_L(ay, m_L(x,u))   at (x, y, u)
    t1 = np.einsum("px,yuq,pqo->xyuo", a, l_in, l_out)
    t2 = np.einsum("xyp,qu,pqo->xyuo", p_in, b, l_out)
    t3 = np.einsum("py,xuq,pqo->xyuo", a, l_in, l_out)
    return t1 - t2 - t3


def _left_right(a, b, p_in, l_out, r_out, l_in, r_in):
    # m_L(ax, m_R(u,y)) - m_R(m_L(x,u), ay) - m_R(bu, [x,y])   at (x, u, y)
    t1 = np.einsum("px,uyq,pqo->xuyo", a, r_in, l_out)
    t2 = np.einsum("xuq,py,qpo->xuyo", l_in, a, r_out)
    t3 = np.einsum("qu,xyp,qpo->xuyo", b, p_in, r_out)
    return t1 - t2 - t3


def _right_right(a, b, p_in, l_out, r_out, r_in):
    # m_R(bu, [x,y]) - m_R(m_R(u,x), ay) - m_L(ax, m_R(u,y))   at (u, x, y)
    t1 = np.einsum("qu,xyp,qpo->uxyo", b, p_in, r_out)
    t2 = np.einsum("uxq,py,qpo->uxyo", r_in, a, r_out)
    t3 = np.einsum("px,uyq,pqo->uxyo", a, r_in, l_out)
    return t1 - t2 - t3


def _action_defects(a, b, p, l, r):
    return {
        "left_left": _left_left(a, b, p, l, l),
        "left_right": _left_right(a, b, p, l, r, l, r),
        "right_right": _right_right(a, b, p, l, r, r),
    }


def _equivariance_defects(a, b, l, r):
    left = np.tensordot(l, b, axes=([2], [1])) - np.einsum("px,qu,pqo->xuo", a, b, l)
    right = np.tensordot(r, b, axes=([2], [1])) - np.einsum("qu,px,qpo->uxo", b, a, r)
    return left, right


_AXIS_KINDS = {
    "left_left": "eem",
    "left_right": "eme",
    "right_right": "mee",
    "equivariant_left": "em",
    "equivariant_right": "me",
}


def _witness_map(defects: dict, d: int, m: int) -> dict[str, list[tuple[str, ...]]]:
    lab = {"e": labels("e", d), "m": labels("m", m)}
    return {
        name: witnesses(t, [lab[k] for k in _AXIS_KINDS[name.split(":")[-1]]])
        for name, t in defects.items()
    }


@dataclass
class BimoduleReport:
    violations: dict[str, list[tuple[str, ...]]] = field(default_factory=dict)

    @property
    def equivariant(self) -> bool:
        return not any(v for k, v in self.violations.items() if "equivariant" in k)

    @property
    def axioms_hold(self) -> bool:
        return not any(v for k, v in self.violations.items() if "equivariant" not in k)

    @property
    def ok(self) -> bool:
        return self.equivariant and self.axioms_hold


def _bimodule_defects(b: Bimodule) -> dict[str, np.ndarray]:
    a, beta = b.base.space.twist, b.coeff.twist
    defects = _action_defects(a, beta, b.base.pi.coeffs, b.left, b.right)
    left, right = _equivariance_defects(a, beta, b.left, b.right)
    defects["equivariant_left"] = left
    defects["equivariant_right"] = right
    return defects


def check_bimodule(b: Bimodule) -> BimoduleReport:
    report = BimoduleReport(_witness_map(_bimodule_defects(b), b.base.dim, b.coeff.dim))
    mc = check_representation_mc(b)
    base_ok = b.base.check().identity_holds
    if mc != (base_ok and report.axioms_hold):
        raise RuntimeError("semidirect Maurer-Cartan test disagrees with the action axioms")
    return report


def compatibility_defects(cb: CompatibleBimodule) -> dict[str, np.ndarray]:
    """The mixed conditions ``LLM``, ``LML``, ``MLL`` as defect tensors."""
    a, beta = cb.base.space.twist, cb.coeff.twist
    p1, p2 = cb.base.pi1.coeffs, cb.base.pi2.coeffs
    l1, r1, l2, r2 = cb.left1, cb.right1, cb.left2, cb.right2
    return {
        "LLM": _left_left(a, beta, p2, l1, l2) + _left_left(a, beta, p1, l2, l1),
        "LML": _left_right(a, beta, p2, l1, r1, l2, r2) + _left_right(a, beta, p1, l2, r2, l1, r1),
        "MLL": _right_right(a, beta, p2, l1, r1, r2) + _right_right(a, beta, p1, l2, r2, r1),
    }


_AXIS_KINDS.update({"LLM": "eem", "LML": "eme", "MLL": "mee"})


def check_compatible_bimodule(cb: CompatibleBimodule) -> BimoduleReport:
    d, m = cb.base.dim, cb.coeff.dim
    violations = {}
    for tag, sub in (("1", cb.first()), ("2", cb.second())):
        for name, w in _witness_map(_bimodule_defects(sub), d, m).items():
            violations[f"{tag}:{name}"] = w
    violations.update(_witness_map(compatibility_defects(cb), d, m))
    report = BimoduleReport(violations)
    base = cb.base.check()
    base_ok = base.first.identity_holds and base.second.identity_holds and base.compatibility_holds
    if check_compatible_representation_mc(cb) != (base_ok and report.axioms_hold):
        raise RuntimeError("semidirect Maurer-Cartan test disagrees with the compatible action axioms")
    return report


# -- lifts and bidegrees ----------------------------------------------------

@dataclass(frozen=True)
class Bidegree:
    l: int
    k: int

    def __post_init__(self):
        if self.l < -1 or self.k < -1:
            raise ValueError("bidegree components are at least -1")

    @property
    def arity(self) -> int:
        return self.l + self.k + 1

    def __add__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.l + other.l, self.k + other.k)

    def __str__(self):
        return f"{self.l}|{self.k}"


@dataclass(frozen=True)
class DirectSum:
    """The ordered decomposition ``L + M``."""

    base: HomVectorSpace
    coeff: HomVectorSpace

    @property
    def space(self) -> HomVectorSpace:
        return self.base.direct_sum(self.coeff)

    def block(self, tag: str) -> slice:
        d, m = self.base.dim, self.coeff.dim
        if tag == "L":
            return slice(0, d)
        if tag == "M":
            return slice(d, d + m)
        raise ValueError(f"block tag must be 'L' or 'M', got {tag!r}")

    def lift(self, tensor, inputs: str, output: str) -> Cochain:
        """Extend a map on the tagged slots by zero to all of ``L + M``."""
        t = tensor.coeffs if isinstance(tensor, Cochain) else linalg.array(tensor)
        if len(inputs) != t.ndim - 1:
            raise ValueError(f"pattern {inputs!r} does not match a tensor with {t.ndim - 1} inputs")
        space = self.space
        out = linalg.zeros((space.dim,) * len(inputs) + (space.dim,))
        index = tuple(self.block(tag) for tag in inputs) + (self.block(output),)
        if out[index].shape != t.shape:
            raise ValueError(f"tensor shape {t.shape} does not fit the blocks {inputs}->{output}")
        out[index] = t
        return Cochain(space, space, out)

    def restrict(self, f: Cochain, inputs: str, output: str) -> np.ndarray:
        index = tuple(self.block(tag) for tag in inputs) + (self.block(output),)
        return f.coeffs[index]

    def _nonzero_blocks(self, f: Cochain):
        if f.source != self.space or f.target != self.space:
            raise ValueError("cochain does not live on this direct sum")
        for pattern in itertools.product("LM", repeat=f.arity):
            for output in "LM":
                if not linalg.is_zero(self.restrict(f, "".join(pattern), output)):
                    yield "".join(pattern), output

    def has_bidegree(self, f: Cochain, bidegree: Bidegree) -> bool:
        """The zero map has every bidegree of matching arity."""
        if bidegree.arity != f.arity:
            return False
        for pattern, output in self._nonzero_blocks(f):
            extra = 0 if output == "L" else 1
            if pattern.count("M") != bidegree.k + extra:
                return False
        return True

    def bidegree_of(self, f: Cochain) -> Optional[Bidegree]:
        """The bidegree of a nonzero homogeneous map; ``None`` when ``f`` is
        inhomogeneous or zero (zero has no unique bidegree)."""
        ks = {pattern.count("M") - (0 if output == "L" else 1) for pattern, output in self._nonzero_blocks(f)}
        if len(ks) != 1:
            return None
        k = ks.pop()
        return Bidegree(f.arity - 1 - k, k)


def lift(tensor, inputs: str, output: str, base: HomVectorSpace, coeff: HomVectorSpace) -> Cochain:
    return DirectSum(base, coeff).lift(tensor, inputs, output)


def lift_coefficient_cochain(f: Cochain) -> Cochain:
    """Lift of ``f: L^n -> M``; it has bidegree ``n|-1``."""
    return DirectSum(f.source, f.target).lift(f, "L" * f.arity, "M")


def bidegree_of(f: Cochain, split: DirectSum) -> Optional[Bidegree]:
    return split.bidegree_of(f)


# -- semidirect products and Maurer-Cartan form ------------------------------

def structure_element(split: DirectSum, pi: Cochain, left, right) -> Cochain:
    """``lift(pi) + lift(m_L) + lift(m_R)``, the semidirect bracket on ``L + M``."""
    return split.lift(pi, "LL", "L") + split.lift(left, "LM", "M") + split.lift(right, "ML", "M")


def _elements(b: AnyBimodule) -> list[Cochain]:
    split = b.split
    if isinstance(b, Bimodule):
        return [structure_element(split, b.base.pi, b.left, b.right)]
    return [
        structure_element(split, b.base.pi1, b.left1, b.right1),
        structure_element(split, b.base.pi2, b.left2, b.right2),
    ]


def check_representation_mc(b: Bimodule) -> bool:
    (pi_hat,) = _elements(b)
    return bracket(pi_hat, pi_hat).is_zero()


def check_compatible_representation_mc(cb: CompatibleBimodule) -> bool:
    p1, p2 = _elements(cb)
    return all(bracket(x, y).is_zero() for x, y in ((p1, p1), (p2, p2), (p1, p2)))


def semidirect(b: AnyBimodule) -> Union[HomLeibnizAlgebra, CompatibleHomLeibnizAlgebra]:
    if isinstance(b, Bimodule):
        if not check_bimodule(b).ok:
            raise ValueError("not a bimodule")
        out = HomLeibnizAlgebra(b.split.space, *_elements(b))
    else:
        if not check_compatible_bimodule(b).ok:
            raise ValueError("not a compatible bimodule")
        out = CompatibleHomLeibnizAlgebra(b.split.space, *_elements(b))
    if not out.check().ok:
        raise RuntimeError("semidirect product fails the axioms")
    return out
