"""Shuffles and the graded Balavoine bracket on twisted cochains.

For ``P`` of arity ``p+1`` and ``Q`` of arity ``q+1`` the partial composition
``P o_k Q`` substitutes ``Q`` into slot ``k`` of ``P``, sums over
``(k-1, q)``-shuffles of the first ``k+q-1`` arguments with the shuffle's
parity as sign, and feeds ``alpha^q`` of every argument that bypasses ``Q``.
Using ``alpha^q`` (one power per extra argument consumed by ``Q``) is what
keeps equivariant cochains closed under the bracket.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cochains import Cochain, act_on_inputs, twist_power


@dataclass(frozen=True)
class SignedShuffle:
    permutation: tuple[int, ...]  # 1-based images sigma(1), ..., sigma(n)
    sign: int


def parity_sign(perm) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def shuffles(i: int, j: int) -> tuple[SignedShuffle, ...]:
    """All ``(i, j)``-shuffles of ``1..i+j``; ordered by their first block."""
    if i < 0 or j < 0:
        raise ValueError("shuffle block sizes must be non-negative")
    n = i + j
    out = []
    for first in itertools.combinations(range(1, n + 1), i):
        rest = tuple(v for v in range(1, n + 1) if v not in first)
        perm = first + rest
        out.append(SignedShuffle(perm, parity_sign(perm)))
    return tuple(out)


def _check_pair(P: Cochain, Q: Cochain):
    if not (P.is_endomorphism() and Q.is_endomorphism()):
        raise ValueError("the bracket is defined on endomorphism-valued cochains")
    if P.source != Q.source:
        raise ValueError("cochains must share one space and twist")


def circ_k(P: Cochain, Q: Cochain, k: int) -> Cochain:
    _check_pair(P, Q)
    p, q = P.degree, Q.degree
    if not 1 <= k <= p + 1:
        raise ValueError(f"insertion slot {k} out of range 1..{p + 1}")
    space = P.source
    twisted = act_on_inputs(
        P.coeffs, [None if slot == k - 1 else twist_power(space, q) for slot in range(p + 1)]
    )
    # axes: P slots other than k, P output, then Q's q+1 inputs
    inserted = np.tensordot(twisted, Q.coeffs, axes=([k - 1], [q + 1]))
    before = list(range(k - 1))
    after = list(range(k - 1, p))
    q_axes = list(range(p + 1, p + q + 2))
    natural = np.transpose(inserted, before + q_axes + after + [p])

    arity = p + q + 1
    moving = k + q - 1
    total = None
    for sh in shuffles(k - 1, q):
        inverse = [0] * moving
        for pos, image in enumerate(sh.permutation):
            inverse[image - 1] = pos
        term = np.transpose(natural, inverse + list(range(moving, arity + 1)))
        term = term if sh.sign > 0 else -term
        total = term if total is None else total + term
    return Cochain(space, space, total)


def circ(P: Cochain, Q: Cochain) -> Cochain:
    _check_pair(P, Q)
    q = Q.degree
    total = None
    for k in range(1, P.degree + 2):
        term = circ_k(P, Q, k)
        if (k - 1) * q % 2:
            term = -term
        total = term if total is None else total + term
    return total


def bracket(P: Cochain, Q: Cochain) -> Cochain:
    """``[P, Q] = P o Q - (-1)^{pq} Q o P`` with ``p, q`` the degrees."""
    pq = P.degree * Q.degree
    left = circ(P, Q)
    right = circ(Q, P)
    return left + right if pq % 2 else left - right
