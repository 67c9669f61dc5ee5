"""Small named algebras used throughout the tests and the CLI fixtures."""
from __future__ import annotations

from .cochains import Cochain, HomVectorSpace
from .structures import CompatibleHomLeibnizAlgebra, HomLeibnizAlgebra


def _bracket(space: HomVectorSpace, entries: dict) -> Cochain:
    return Cochain.from_entries(space, space, 2, entries)


def e1() -> CompatibleHomLeibnizAlgebra:
    """One dimension, identity twist, both brackets zero."""
    s = HomVectorSpace.identity(1)
    return CompatibleHomLeibnizAlgebra(s, _bracket(s, {}), _bracket(s, {}))


def e2() -> HomLeibnizAlgebra:
    """``[e2, e2] = e1`` with identity twist."""
    s = HomVectorSpace.identity(2)
    return HomLeibnizAlgebra(s, _bracket(s, {(2, 2, 1): 1}))


def e3() -> HomLeibnizAlgebra:
    """``[e2, e2] = e1`` twisted by ``diag(4, 2)``."""
    s = HomVectorSpace.diagonal(4, 2)
    return HomLeibnizAlgebra(s, _bracket(s, {(2, 2, 1): 1}))


def e4() -> CompatibleHomLeibnizAlgebra:
    """``[e2, e2] = e1`` and ``{e2, e1} = e1`` with identity twist."""
    s = HomVectorSpace.identity(2)
    return CompatibleHomLeibnizAlgebra(s, _bracket(s, {(2, 2, 1): 1}), _bracket(s, {(2, 1, 1): 1}))


def affine_lie() -> HomLeibnizAlgebra:
    """The non-abelian 2-dimensional Lie algebra ``[e1, e2] = e2 = -[e2, e1]``."""
    s = HomVectorSpace.identity(2)
    return HomLeibnizAlgebra(s, _bracket(s, {(1, 2, 2): 1, (2, 1, 2): -1}))


def doubled(algebra: HomLeibnizAlgebra) -> CompatibleHomLeibnizAlgebra:
    return CompatibleHomLeibnizAlgebra.doubled(algebra)


NAMED = {
    "E1": e1,
    "E2": e2,
    "E3": e3,
    "E4": e4,
    "aff2": affine_lie,
}
