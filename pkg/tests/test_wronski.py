"""Discrete Wronskians, deformed presentations, limits."""

import pytest

from kstab.laurent import H, LPoly, VU, frac, one_minus, vg, vq, vQ, vz
from kstab.ratfunc import RatFunc
from kstab.wronski import (
    b_coefficients, b_expansions, b_leading_values_check,
    b_top_identity, bq_operator_consistency_check, classical_limit_check,
    eq_coefficients, h0_limit_check, h_one_specialization_check,
    kQ_classical_limit_check, kQ_relations, kq_relations, mq_matrix,
    wq_tilde, wronskian_det, y_identity_check,
)


def test_wronskian_1x1():
    lam = (3,)
    det = wronskian_det(lam)
    expect = LPoly.const(1)
    for k in (1, 2, 3):
        expect = expect * (1 - LPoly.monomial(((vg(1, k), 1), (VU, -1))))
    assert det == expect


def test_wronskian_11_display():
    lam = (1, 1)
    det = wronskian_det(lam)
    g1 = LPoly.monomial(((vg(1, 1), 1), (VU, -1)))
    g2 = LPoly.monomial(((vg(2, 1), 1), (VU, -1)))
    q12 = LPoly.monomial(((vq(1), -1), (vq(2), 1)))
    hm1 = LPoly.variable(H.variables()[0], -1)
    expect = (1 - g1) * (1 - g2) - q12 * (1 - hm1 * g1) * (1 - H * g2)
    assert det == expect


def test_kq_relations_display():
    # gamma_1 (q1 - q2/h)/(q1 - q2) + gamma_2 (q1 - h q2)/(q1 - q2) = z1 + z2
    # and gamma_1 gamma_2 = z1 z2
    lam = (1, 1)
    rels = kq_relations(lam)
    assert len(rels) == 2
    q1, q2 = LPoly.variable(vq(1)), LPoly.variable(vq(2))
    g1, g2 = LPoly.variable(vg(1, 1)), LPoly.variable(vg(2, 1))
    hm1 = LPoly.variable(H.variables()[0], -1)
    lin = RatFunc.fraction(g1 * (q1 - hm1 * q2) + g2 * (q1 - H * q2), q1 - q2) \
        - RatFunc.from_poly(LPoly.variable(vz(1)) + LPoly.variable(vz(2)))
    assert rels[0] == lin
    quad = RatFunc.from_poly(g1 * g2 - LPoly.variable(vz(1)) * LPoly.variable(vz(2)))
    assert rels[1] == quad


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 2)])
def test_h_one_specialization(lam):
    assert h_one_specialization_check(lam)


@pytest.mark.parametrize("lam", [(1, 1), (2, 1)])
def test_b_top_identity(lam):
    assert b_top_identity(lam)


@pytest.mark.parametrize("lam", [(1, 1), (2, 1)])
def test_b_leading_values(lam):
    assert b_leading_values_check(lam)


@pytest.mark.parametrize("lam", [(1, 1), (2, 1)])
def test_classical_limit(lam):
    assert classical_limit_check(lam)


def test_y_identity():
    assert y_identity_check((1, 1))
    assert y_identity_check((2, 1))


def test_b_count():
    lam = (2, 1)
    assert len(b_coefficients(lam)) == len(lam) + 1


def test_mq_structure():
    lam = (1, 1, 1)
    m = mq_matrix(lam)
    assert m[(0, 2)].is_zero() and m[(2, 0)].is_zero()
    assert m[(1, 0)] == RatFunc.fraction(LPoly.variable(vQ(2)),
                                         LPoly.variable(vQ(1)))


def test_kQ_relations_display():
    lam = (1, 1)
    rels = kQ_relations(lam)
    g1, g2 = LPoly.variable(vg(1, 1)), LPoly.variable(vg(2, 1))
    z1, z2 = LPoly.variable(vz(1)), LPoly.variable(vz(2))
    Qr = LPoly.monomial(((vQ(1), -1), (vQ(2), 1)))
    # coefficient of u^{-1}: -(gamma_1(1 - Q2/Q1) + gamma_2) + (z1 + z2)
    want1 = RatFunc.from_poly(-(g1 * (1 - Qr) + g2) + z1 + z2)
    assert rels[0] == want1
    want2 = RatFunc.from_poly(g1 * g2 - z1 * z2)
    assert rels[1] == want2


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 2)])
def test_h0_limit(lam):
    assert h0_limit_check(lam)


@pytest.mark.parametrize("lam", [(1, 1), (2, 1)])
def test_kQ_classical_limit(lam):
    assert kQ_classical_limit_check(lam)


def test_bq_operator_consistency():
    assert bq_operator_consistency_check(smax=3)
