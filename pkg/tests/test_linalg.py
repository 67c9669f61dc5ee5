from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from homleib import linalg

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def matrices(draw, max_side=4):
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    # sparse-ish so rank deficiency actually shows up
    cell = st.one_of(st.just(Fraction(0)), rationals)
    return linalg.array([[draw(cell) for _ in range(cols)] for _ in range(rows)])


def test_scalar_literals():
    assert linalg.scalar("-3/4") == Fraction(-3, 4)
    assert linalg.scalar("7") == 7
    assert linalg.scalar(5) == Fraction(5)
    assert linalg.scalar(np.int64(-2)) == -2


@pytest.mark.parametrize("bad", ["1/0", "1.5", "1/-2", " 1", "1/02", "", "+1"])
def test_scalar_rejects_bad_literals(bad):
    with pytest.raises(ValueError):
        linalg.scalar(bad)


@pytest.mark.parametrize("bad", [0.5, True, None])
def test_scalar_rejects_inexact(bad):
    with pytest.raises(TypeError):
        linalg.scalar(bad)


def test_format_is_canonical():
    assert linalg.format_scalar(Fraction(6, -4)) == "-3/2"
    assert linalg.format_scalar(Fraction(4, 2)) == "2"


def test_rank_examples():
    assert linalg.rank(linalg.identity(2)) == 2
    assert linalg.rank(linalg.zeros((2, 2))) == 0
    assert linalg.rank(linalg.array([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert linalg.kernel_basis(linalg.identity(2)) == []
    (v,) = linalg.kernel_basis(linalg.array([[1, -1]]))
    assert list(v) == [1, 1]
    m = linalg.array([[1, 2], [2, 4]])
    (w,) = linalg.kernel_basis(m)
    assert linalg.is_zero(m.dot(w))
    assert w[0] * -1 == w[1] * 2  # proportional to (2, -1)


def test_solve_examples():
    assert list(linalg.solve(linalg.identity(2), [3, 5])) == [3, 5]
    assert linalg.solve(linalg.zeros((1, 1)), [1]) is None
    m = linalg.array([[1, 1]])
    x = linalg.solve(m, [2])
    assert x[0] + x[1] == 2


def test_solve_checks_length():
    with pytest.raises(ValueError):
        linalg.solve(linalg.identity(2), [1])


def test_empty_shapes():
    assert linalg.rank(linalg.zeros((0, 3))) == 0
    assert len(linalg.kernel_basis(linalg.zeros((0, 3)))) == 3
    assert linalg.matmul(linalg.zeros((2, 0)), linalg.zeros((0, 3))).shape == (2, 3)


def test_matrix_power():
    a = linalg.array([[0, 1], [0, 0]])
    assert linalg.equal(linalg.matrix_power(a, 0), linalg.identity(2))
    assert linalg.is_zero(linalg.matrix_power(a, 2))
    with pytest.raises(ValueError):
        linalg.matrix_power(a, -1)


def test_block_diag_and_kron():
    b = linalg.block_diag(linalg.array([[2]]), linalg.array([[1, 1], [0, 1]]))
    assert b.shape == (3, 3) and b[0, 0] == 2 and b[1, 2] == 1 and b[0, 1] == 0
    assert linalg.equal(linalg.kron(linalg.identity(2), linalg.array([[3]])), linalg.array([[3, 0], [0, 3]]))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    basis = linalg.kernel_basis(m)
    assert linalg.rank(m) + len(basis) == m.shape[1]
    for v in basis:
        assert linalg.is_zero(m.dot(v))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_oracle(m):
    assert linalg.rank(m) == oracle.rank(m.tolist())


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_by_substitution(m, data):
    b = linalg.array([data.draw(rationals) for _ in range(m.shape[0])])
    x = linalg.solve(m, b)
    if x is None:
        # inconsistent means b raises the rank of the augmented matrix
        assert linalg.rank(np.concatenate([m, b.reshape(-1, 1)], axis=1)) > linalg.rank(m)
    else:
        assert linalg.equal(m.dot(x), b)


@settings(max_examples=40, deadline=None)
@given(matrices(), matrices())
def test_matmul_matches_dense_product(a, b):
    if a.shape[1] != b.shape[0]:
        with pytest.raises(ValueError):
            linalg.matmul(a, b)
    else:
        assert linalg.equal(linalg.matmul(a, b), a.dot(b))


def test_rref_is_deterministic():
    m = linalg.array([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    r1, p1 = linalg.rref(m)
    r2, p2 = linalg.rref(m.copy())
    assert p1 == p2 == (0, 1)
    assert linalg.equal(r1, r2)
