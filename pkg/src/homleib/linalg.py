"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; vectors and matrices are numpy
arrays of ``dtype=object`` holding fractions.  Row reduction is delegated to
sympy's sparse ``DomainMatrix`` over ``QQ``, which keeps every step exact.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Scalar = Fraction

_LITERAL = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?")


def scalar(value) -> Fraction:
    """Coerce an int, Fraction or rational literal such as ``"-3/4"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        if not _LITERAL.fullmatch(value):
            raise ValueError(f"invalid rational literal {value!r}")
        return Fraction(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot use {value!r} as an exact scalar")


def format_scalar(value: Fraction) -> str:
    return str(Fraction(value))


def array(data) -> np.ndarray:
    """Object array of Fractions with the same shape as ``data``."""
    out = np.array(data, dtype=object)
    if out.ndim == 0:
        return np.array(scalar(out.item()), dtype=object)
    flat = out.reshape(-1)
    for idx, v in enumerate(flat):
        flat[idx] = scalar(v)
    return flat.reshape(out.shape)


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(v == 0 for v in np.asarray(a).flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    a = np.asarray(a)
    b = np.asarray(b)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def matrix_power(m: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        raise ValueError("negative matrix power")
    out = identity(m.shape[0])
    for _ in range(k):
        out = out.dot(m)
    return out


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros((rows, cols))
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def kron(*factors: np.ndarray) -> np.ndarray:
    out = identity(1)
    for f in factors:
        out = np.kron(out, f)
    return out


def _to_domain(m: np.ndarray) -> DomainMatrix:
    rows, cols = m.shape
    elements: dict[int, dict[int, object]] = {}
    for (i, j), v in np.ndenumerate(m):
        if v != 0:
            v = Fraction(v)
            elements.setdefault(i, {})[j] = QQ(v.numerator, v.denominator)
    return DomainMatrix(elements, (rows, cols), QQ)


def _from_domain(dm: DomainMatrix) -> np.ndarray:
    out = zeros(dm.shape)
    for i, row in dm.to_sdm().items():
        for j, v in row.items():
            out[i, j] = Fraction(int(v.numerator), int(v.denominator))
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact matrix product, computed sparsely."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return zeros((a.shape[0], b.shape[1]))
    return _from_domain(_to_domain(a) * _to_domain(b))


def rref(m: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (in increasing order)."""
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ValueError("rref expects a matrix")
    if m.shape[0] == 0 or m.shape[1] == 0:
        return zeros(m.shape), ()
    reduced, pivots = _to_domain(m).rref()
    return _from_domain(reduced), tuple(int(p) for p in pivots)


def rank(m: np.ndarray) -> int:
    return len(rref(m)[1])


def kernel_basis(m: np.ndarray) -> list[np.ndarray]:
    """Basis of the null space, one vector per free column.

    The vector for free column ``f`` has a 1 at ``f`` and zeros at every other
    free column, so a kernel element's coordinates are its free entries.
    """
    m = np.asarray(m, dtype=object)
    cols = m.shape[1]
    reduced, pivots = rref(m)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = zeros(cols)
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -reduced[row, f]
        basis.append(v)
    return basis


def free_columns(m: np.ndarray) -> list[int]:
    pivots = set(rref(m)[1])
    return [c for c in range(np.asarray(m).shape[1]) if c not in pivots]


def solve(m: np.ndarray, b: Sequence) -> Optional[np.ndarray]:
    """Some ``x`` with ``m @ x == b``, or ``None`` when inconsistent.

    Free variables are set to zero.
    """
    m = np.asarray(m, dtype=object)
    b = array(b)
    if b.shape != (m.shape[0],):
        raise ValueError(f"right-hand side has length {b.shape}, expected {m.shape[0]}")
    cols = m.shape[1]
    if m.shape[0] == 0:
        return zeros(cols)
    aug = np.concatenate([m, b.reshape(-1, 1)], axis=1)
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == cols:
        return None
    x = zeros(cols)
    for row, p in enumerate(pivots):
        x[p] = reduced[row, cols]
    return x


def column_stack(vectors: Iterable[np.ndarray], length: int) -> np.ndarray:
    vectors = list(vectors)
    if not vectors:
        return zeros((length, 0))
    return np.stack(vectors, axis=1)
