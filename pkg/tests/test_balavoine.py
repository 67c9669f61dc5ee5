import itertools
import random
from math import comb

import pytest

import generators as gen
import oracle
from homleib import catalog, linalg
from homleib.balavoine import bracket, circ, circ_k, parity_sign, shuffles
from homleib.cochains import Cochain, HomVectorSpace, is_equivariant


def as_pairs(shs):
    return [(sh.permutation, sh.sign) for sh in shs]


def test_shuffle_examples():
    assert as_pairs(shuffles(0, 3)) == [((1, 2, 3), 1)]
    assert sorted(as_pairs(shuffles(1, 1))) == [((1, 2), 1), ((2, 1), -1)]
    assert sorted(as_pairs(shuffles(2, 1))) == [((1, 2, 3), 1), ((1, 3, 2), -1), ((2, 3, 1), 1)]


@pytest.mark.parametrize("i,j", [(i, j) for i in range(4) for j in range(4)])
def test_shuffles_match_filtered_permutations(i, j):
    ours = sorted(as_pairs(shuffles(i, j)))
    assert len(ours) == comb(i + j, i)
    assert ours == sorted(oracle.shuffles(i, j))


def test_shuffles_reject_negative():
    with pytest.raises(ValueError):
        shuffles(-1, 2)


def test_parity():
    assert parity_sign((1, 2, 3)) == 1
    assert parity_sign((2, 1, 3)) == -1
    assert parity_sign((3, 1, 2)) == 1


def pointwise(f, space, arity):
    """Coefficients of a Python function of basis vectors."""
    out = linalg.zeros((space.dim,) * arity + (space.dim,))
    for idx in itertools.product(range(space.dim), repeat=arity):
        out[idx] = f(*(space.basis_vector(i) for i in idx))
    return Cochain(space, space, out)


@pytest.fixture(params=["e3", "e4_pi2", "aff2"])
def algebra_pi(request):
    if request.param == "e3":
        A = catalog.e3()
        return A.space, A.pi
    if request.param == "e4_pi2":
        C = catalog.e4()
        return C.space, C.pi2
    A = catalog.affine_lie()
    return A.space, A.pi


def test_circ1_formula(algebra_pi):
    s, pi = algebra_pi
    a = s.twist
    expected = pointwise(lambda x, y, z: pi(pi(x, y), a.dot(z)), s, 3)
    assert circ_k(pi, pi, 1) == expected


def test_circ2_formula(algebra_pi):
    s, pi = algebra_pi
    a = s.twist
    expected = pointwise(lambda x, y, z: pi(a.dot(x), pi(y, z)) - pi(a.dot(y), pi(x, z)), s, 3)
    assert circ_k(pi, pi, 2) == expected


def test_circ_and_bracket_of_degree_one(algebra_pi):
    s, pi = algebra_pi
    assert circ(pi, pi) == circ_k(pi, pi, 1) - circ_k(pi, pi, 2)
    assert bracket(pi, pi) == 2 * circ(pi, pi)


def test_zero_arguments():
    s = HomVectorSpace.diagonal(1, 2)
    pi = Cochain.zero(s, s, 2)
    z3 = Cochain.zero(s, s, 3)
    f = Cochain.from_entries(s, s, 3, {(1, 1, 1, 1): 1})
    assert circ_k(f, Cochain.zero(s, s, 2), 2) == Cochain.zero(s, s, 4)
    assert circ(z3, f).is_zero() and circ(z3, f).arity == 5
    assert bracket(pi, f).is_zero()


def test_e2_is_maurer_cartan():
    pi = catalog.e2().pi
    assert circ(pi, pi).is_zero()
    assert bracket(pi, pi).is_zero()


def test_slot_range_and_spaces():
    s = HomVectorSpace.identity(2)
    pi = catalog.e2().pi
    with pytest.raises(ValueError):
        circ_k(pi, pi, 3)
    with pytest.raises(ValueError):
        circ_k(pi, pi, 0)
    other = Cochain.zero(HomVectorSpace.diagonal(1, 2), HomVectorSpace.diagonal(1, 2), 2)
    with pytest.raises(ValueError):
        bracket(pi, other)
    mixed = Cochain.zero(s, HomVectorSpace.identity(1), 1)
    with pytest.raises(ValueError):
        bracket(mixed, mixed)


def test_bracket_matches_oracle_on_mixed_arities():
    rng = random.Random(5)
    for _ in range(25):
        s = gen.space(rng, rng.randint(1, 2))
        P = gen.equivariant(rng, s, s, rng.randint(1, 3), terms=2)
        Q = gen.equivariant(rng, s, s, rng.randint(1, 3), terms=2)
        if P.arity + Q.arity > 5:
            continue
        expected = oracle.bracket(gen.to_oracle(P), gen.to_oracle(Q), gen.twist_to_oracle(s))
        assert gen.to_oracle(bracket(P, Q)) == expected


def test_closure_needs_outer_power_q():
    # alpha = diag(1, 2) with p != q: the bracket stays equivariant
    s = HomVectorSpace.diagonal(1, 2)
    rng = random.Random(8)
    for _ in range(15):
        P = gen.equivariant(rng, s, s, 2, terms=2)
        Q = gen.equivariant(rng, s, s, 3, terms=2)
        assert is_equivariant(bracket(P, Q))
        assert is_equivariant(bracket(Q, P))
