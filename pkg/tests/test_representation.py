import random

import pytest

import generators as gen
from homleib import catalog, linalg
from homleib.balavoine import bracket
from homleib.cochains import Cochain, HomVectorSpace
from homleib.representation import (
    Bidegree,
    Bimodule,
    CompatibleBimodule,
    DirectSum,
    check_bimodule,
    check_compatible_bimodule,
    check_compatible_representation_mc,
    check_representation_mc,
    lift,
    lift_coefficient_cochain,
    semidirect,
    structure_element,
)


def failing(report):
    return {k for k, v in report.violations.items() if v}


def e4_left2_zeroed():
    C = catalog.e4()
    adj = CompatibleBimodule.adjoint(C)
    return CompatibleBimodule(C, C.space, adj.left1, adj.right1, linalg.zeros((2, 2, 2)), adj.right2)


def test_bimodule_examples():
    E2 = catalog.e2()
    assert check_bimodule(Bimodule.adjoint(E2)).ok
    assert check_bimodule(Bimodule.trivial(E2, HomVectorSpace.diagonal(3, 1))).ok


def test_doubled_right_action():
    # on E2 every product of two brackets vanishes, so 2 pi is still a right action
    E2 = catalog.e2()
    assert check_bimodule(Bimodule(E2, E2.space, E2.pi.coeffs, 2 * E2.pi.coeffs)).ok
    A = catalog.affine_lie()
    r = check_bimodule(Bimodule(A, A.space, A.pi.coeffs, 2 * A.pi.coeffs))
    assert failing(r) == {"right_right"}
    assert ("m1", "e2", "e1") in r.violations["right_right"]
    assert r.equivariant and not r.axioms_hold


def test_bimodule_equivariance_is_checked():
    E3 = catalog.e3()
    coeff = HomVectorSpace.identity(1)
    left = linalg.zeros((2, 1, 1))
    left[0, 0, 0] = 1  # m_L(e1, m1) = m1, but alpha e1 = 4 e1
    r = check_bimodule(Bimodule(E3, coeff, left, linalg.zeros((1, 2, 1))))
    assert not r.equivariant
    assert r.violations["equivariant_left"] == [("e1", "m1")]


def test_action_shapes():
    E2 = catalog.e2()
    with pytest.raises(ValueError):
        Bimodule(E2, HomVectorSpace.identity(1), linalg.zeros((2, 2, 2)), linalg.zeros((1, 2, 1)))


def test_compatible_bimodule_examples():
    C = catalog.e4()
    assert check_compatible_bimodule(CompatibleBimodule.adjoint(C)).ok
    assert check_compatible_bimodule(CompatibleBimodule.trivial(C, HomVectorSpace.identity(2))).ok
    r = check_compatible_bimodule(e4_left2_zeroed())
    assert not r.ok
    assert failing(r) == {"2:left_right", "2:right_right", "LML", "MLL"}
    assert r.violations["LML"] == [("e2", "m2", "e2")]


def test_mc_examples():
    E2 = catalog.e2()
    assert check_representation_mc(Bimodule.adjoint(E2))
    assert check_representation_mc(Bimodule.trivial(E2, HomVectorSpace.identity(2)))
    A = catalog.affine_lie()
    assert not check_representation_mc(Bimodule(A, A.space, A.pi.coeffs, 2 * A.pi.coeffs))
    assert check_compatible_representation_mc(CompatibleBimodule.adjoint(catalog.e4()))
    assert check_compatible_representation_mc(CompatibleBimodule.trivial(catalog.e4(), HomVectorSpace.identity(1)))
    assert not check_compatible_representation_mc(e4_left2_zeroed())


def test_semidirect_examples():
    C = catalog.e4()
    S = semidirect(CompatibleBimodule.trivial(C, HomVectorSpace.identity(1)))
    assert S.dim == 3 and S.check().ok
    for pi in S.brackets:
        assert linalg.is_zero(pi.coeffs[2, :, :]) and linalg.is_zero(pi.coeffs[:, 2, :])
    assert semidirect(CompatibleBimodule.adjoint(C)).dim == 4
    single = semidirect(Bimodule.adjoint(catalog.e2()))
    assert single.dim == 4 and single.check().ok
    with pytest.raises(ValueError):
        semidirect(e4_left2_zeroed())


def test_semidirect_bracket_formula():
    E2 = catalog.e2()
    S = semidirect(Bimodule.adjoint(E2))
    x, u = linalg.array([1, 2]), linalg.array([0, 3])
    y, v = linalg.array([-1, 1]), linalg.array([2, 5])
    got = S.pi(linalg.array([*x, *u]), linalg.array([*y, *v]))
    expected = [*E2.pi(x, y), *(E2.pi(x, v) + E2.pi(u, y))]
    assert list(got) == expected


def test_lift_examples():
    E2 = catalog.e2()
    coeff = HomVectorSpace.identity(1)
    split = DirectSum(E2.space, coeff)
    pi_hat = split.lift(E2.pi, "LL", "L")
    x1, x2 = linalg.array([1, 1]), linalg.array([0, 2])
    v1, v2 = linalg.array([3]), linalg.array([-1])
    assert list(pi_hat(linalg.array([*x1, *v1]), linalg.array([*x2, *v2]))) == [*E2.pi(x1, x2), 0]
    left = linalg.zeros((2, 1, 1))
    left[1, 0, 0] = 5
    m_hat = split.lift(left, "LM", "M")
    assert list(m_hat(linalg.array([*x1, *v1]), linalg.array([*x2, *v2]))) == [0, 0, 5 * x1[1] * v2[0]]
    assert split.lift(linalg.zeros((2, 2, 2)), "LL", "L").is_zero()
    assert lift(E2.pi, "LL", "L", E2.space, coeff) == pi_hat


def test_lift_shape_errors():
    split = DirectSum(HomVectorSpace.identity(2), HomVectorSpace.identity(1))
    with pytest.raises(ValueError):
        split.lift(linalg.zeros((2, 2, 2)), "LM", "M")
    with pytest.raises(ValueError):
        split.lift(linalg.zeros((2, 2, 2)), "L", "L")
    with pytest.raises(ValueError):
        split.block("X")


def test_bidegree_examples():
    C = catalog.e4()
    cb = CompatibleBimodule.adjoint(C)
    split = cb.split
    one_zero = Bidegree(1, 0)
    for tensor, pattern in ((C.pi1, "LL"), (cb.left1, "LM"), (cb.right1, "ML")):
        out = "L" if pattern == "LL" else "M"
        assert split.bidegree_of(split.lift(tensor, pattern, out)) == one_zero
    f = Cochain.from_entries(C.space, C.space, 3, {(1, 2, 2, 1): 1})
    assert split.bidegree_of(lift_coefficient_cochain(f)) == Bidegree(3, -1)
    g = Cochain.from_entries(C.space, C.space, 2, {(2, 2, 2): 1})
    mixed = split.lift(C.pi1, "LL", "L") + split.lift(g, "LL", "M")
    assert split.bidegree_of(mixed) is None
    assert split.bidegree_of(Cochain.zero(split.space, split.space, 2)) is None
    assert split.has_bidegree(Cochain.zero(split.space, split.space, 2), Bidegree(2, -1))


def test_bidegree_bounds():
    with pytest.raises(ValueError):
        Bidegree(-2, 0)
    assert Bidegree(2, -1).arity == 2 and str(Bidegree(1, 0)) == "1|0"
    assert Bidegree(1, 0) + Bidegree(2, -1) == Bidegree(3, -1)


def test_structure_element_is_mc_exactly_for_bimodules():
    rng = random.Random(31)
    seen = set()
    for _ in range(30):
        A = catalog.e2() if rng.random() < 0.5 else catalog.affine_lie()
        coeff = HomVectorSpace.identity(rng.randint(1, 2))
        m = coeff.dim
        b = Bimodule(A, coeff, gen.sparse_tensor(rng, (2, m, m), rng.randint(0, 2)),
                     gen.sparse_tensor(rng, (m, 2, m), rng.randint(0, 2)))
        pi_hat = structure_element(b.split, A.pi, b.left, b.right)
        mc = bracket(pi_hat, pi_hat).is_zero()
        assert mc == check_bimodule(b).axioms_hold
        seen.add(mc)
    assert seen == {True, False}


def test_coefficient_maps_have_zero_bracket():
    # two maps L^n -> M always have zero bracket on L + M
    s, coeff = HomVectorSpace.diagonal(1, 2), HomVectorSpace.diagonal(2)
    rng = random.Random(2)
    for n1, n2 in [(1, 1), (1, 2), (2, 2)]:
        f = gen.equivariant(rng, s, coeff, n1, terms=1)
        g = gen.equivariant(rng, s, coeff, n2, terms=1)
        assert not f.is_zero() and not g.is_zero()
        assert bracket(lift_coefficient_cochain(f), lift_coefficient_cochain(g)).is_zero()
