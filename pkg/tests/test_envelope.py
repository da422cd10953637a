"""Envelope classes: axioms, orthogonality, eigenvectors, inverse map."""

from itertools import permutations

import pytest

from kstab.combinatorics import (
    enumerate_partitions, i_max, i_min, identity_perm, longest_perm,
    membership,
)
from kstab.envelope import (
    axiom_verify, e_and_polarization, kappa_class, nu_roundtrip_check,
    orthogonality_lhs, orthogonality_matrix_identity, orthogonality_verify,
    Q_factors, R_factors, smallness_bound, smallness_check, stab_matrix,
    triangularity_report, xi_diagonal_expected, xi_vector_closed,
    xi_vector_recursive,
)
from kstab.laurent import H, LPoly, one_minus, zratio
from kstab.linalg import Singular
from kstab.ratfunc import RatFunc
from kstab.actions import vec_eq


def test_e_classes_lambda_11():
    # I = ({1},{2}): the only cross-block pair is a=1 < b=2
    ec = e_and_polarization((1, 2), ((1,), (2,)))
    assert ec.vert_minus.is_one()
    assert ec.vert_plus == one_minus(zratio(2, 1), 1)
    assert ec.hor_minus == one_minus(zratio(1, 2))
    assert ec.polarization == LPoly.monomial(zratio(2, 1), -1)
    assert ec.pe == one_minus(zratio(2, 1))
    assert ec.polarization * ec.e == ec.pe
    # I = ({2},{1}): the pair has b=1 < a=2
    ec2 = e_and_polarization((1, 2), ((2,), (1,)))
    assert ec2.vert_minus == one_minus(zratio(1, 2), 1)
    assert ec2.hor_plus == one_minus(zratio(2, 1))
    assert ec2.pe == one_minus(zratio(1, 2), 1)


def test_pe_product_identity_random_sigma():
    for lam in [(2, 1), (1, 1, 1), (1, 2)]:
        for sigma in permutations(range(1, sum(lam) + 1)):
            for I in enumerate_partitions(lam):
                ec = e_and_polarization(sigma, I)
                assert ec.polarization * ec.e == ec.pe
                assert ec.e == ec.hor_minus * ec.vert_minus


def test_pe_newton_interval():
    from kstab.laurent import newton_interval
    for lam in [(1, 1), (2, 1), (1, 1, 1)]:
        bound = smallness_bound(lam)
        for sigma in permutations(range(1, sum(lam) + 1)):
            for I in enumerate_partitions(lam):
                ec = e_and_polarization(sigma, I)
                phi = dict(enumerate(membership(I), start=1))
                assert newton_interval(ec.pe, phi) == (0, bound)


def test_smallness():
    assert smallness_check(LPoly.const(1), ((1,), (2,)), (1, 1))
    assert smallness_check(LPoly(), ((1,), (2,)), (1, 1))
    ec = e_and_polarization((1, 2), ((1,), (2,)))
    assert not smallness_check(ec.pe, ((1,), (2,)), (1, 1))


@pytest.mark.parametrize("lam", [(1, 1), (2, 1)])
def test_axioms_all_sigma(lam):
    for sigma in permutations(range(1, sum(lam) + 1)):
        assert axiom_verify(lam, sigma) == []


def test_axioms_fault_injection():
    lam = (1, 1)
    I, J = ((1,), (2,)), ((2,), (1,))
    bad = axiom_verify(lam, (1, 2), mutate=(I, J, LPoly.const(1)))
    assert bad, "mutant restriction must be rejected"


def test_kappa_diagonal_is_pe():
    lam = (2, 1)
    for sigma in permutations((1, 2, 3)):
        for I in enumerate_partitions(lam):
            assert kappa_class(lam, sigma, I)[I] == \
                e_and_polarization(sigma, I).pe


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 1, 1)])
def test_orthogonality(lam):
    assert orthogonality_verify(lam) == []
    assert orthogonality_matrix_identity(lam)


def test_orthogonality_rational_form():
    lam = (1, 1)
    parts = enumerate_partitions(lam)
    for J in parts:
        for K in parts:
            got = orthogonality_lhs(lam, J, K)
            assert got == (1 if J == K else 0)


@pytest.mark.parametrize("lam", [(1, 1), (2, 1)])
def test_stab_triangular(lam):
    n = sum(lam)
    for sigma in [identity_perm(n), longest_perm(n)]:
        assert triangularity_report(lam, sigma)


def test_stab_invertible():
    lam = (2, 1)
    m = stab_matrix(lam, identity_perm(3))
    try:
        inv = m.inverse()
    except Singular:
        pytest.fail("stab matrix must be invertible over the function field")
    assert (m * inv).is_identity()


def test_xi_example_lambda_11():
    lam = (1, 1)
    lo, hi = ((1,), (2,)), ((2,), (1,))
    xi = xi_vector_closed(lam, hi)
    den = RatFunc.from_poly(one_minus(zratio(1, 2), 1)).inverse()
    expect = {
        membership(lo): RatFunc.from_poly((1 - H).mul_monomial(zratio(1, 2))) * den,
        membership(hi): RatFunc.from_poly(one_minus(zratio(1, 2))) * den,
    }
    assert vec_eq(xi, expect)
    assert vec_eq(xi_vector_recursive(lam, hi), expect)
    assert vec_eq(xi_vector_closed(lam, lo),
                  {membership(lo): RatFunc.const(1)})


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 1, 1)])
def test_xi_recursive_equals_closed(lam):
    for I in enumerate_partitions(lam):
        assert vec_eq(xi_vector_closed(lam, I), xi_vector_recursive(lam, I))


@pytest.mark.parametrize("lam", [(1, 1), (2, 1)])
def test_xi_diagonal_and_imax(lam):
    for I in enumerate_partitions(lam):
        xi = xi_vector_closed(lam, I)
        assert xi[membership(I)] == xi_diagonal_expected(lam, I)
    Imax = i_max(lam)
    rq = RatFunc.from_factors([LPoly.const(1)], Q_factors(lam, Imax))
    for f in R_factors(lam, Imax):
        rq = rq.mul_poly(f)
    assert xi_vector_closed(lam, Imax)[membership(Imax)] == rq


def test_xi_min_is_unit_vector():
    for lam in [(1, 1), (2, 1), (1, 1, 1)]:
        imin = i_min(lam)
        assert vec_eq(xi_vector_closed(lam, imin),
                      {membership(imin): RatFunc.const(1)})


def test_xi_triangularity():
    from kstab.combinatorics import bruhat_leq
    lam = (2, 1)
    idp = identity_perm(3)
    for I in enumerate_partitions(lam):
        xi = xi_vector_closed(lam, I)
        for J in enumerate_partitions(lam):
            if membership(J) in xi and not xi[membership(J)].is_zero():
                assert bruhat_leq(idp, J, I)


@pytest.mark.parametrize("lam", [(1, 1), (2, 1)])
def test_nu_roundtrip(lam):
    assert nu_roundtrip_check(lam)
