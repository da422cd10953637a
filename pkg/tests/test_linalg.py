"""Fraction-free matrix kernels."""

import random

import pytest

from kstab.laurent import H, LPoly, frac, one_minus, vg, vz, vQ, VU
from kstab.linalg import RFMatrix, Singular
from kstab.ratfunc import RatFunc

rng = random.Random(77)


def rand_rf(vars_):
    num = LPoly()
    for _ in range(3):
        m = tuple(sorted((v, rng.randint(-1, 1)) for v in vars_ if rng.random() < .6))
        num = num + LPoly.monomial(m, rng.randint(-4, 4))
    den = one_minus(((vz(1), 1), (vz(2), -1)), rng.randint(0, 1))
    return RatFunc.fraction(num, den) if rng.random() < .5 else RatFunc.from_poly(num)


def test_identity_solve():
    A = RFMatrix.identity(3)
    b = RFMatrix([[rand_rf([vz(1), vz(2)])] for _ in range(3)])
    assert A.solve(b) == b


def test_inverse_roundtrip_random():
    for _ in range(6):
        A = RFMatrix([[rand_rf([vz(1), vz(2)]) for _ in range(3)] for _ in range(3)])
        try:
            inv = A.inverse()
        except Singular:
            continue
        assert (A * inv).is_identity()
        assert (inv * A).is_identity()


def test_det_2x2_wronskian_shape():
    # det [[1-g11/u, -g11/u], [Q2/Q1, 1-g21/u]]
    g11 = LPoly.monomial(((vg(1, 1), 1), (VU, -1)))
    g21 = LPoly.monomial(((vg(2, 1), 1), (VU, -1)))
    qq = RatFunc.fraction(LPoly.variable(vQ(2)), LPoly.variable(vQ(1)))
    A = RFMatrix([
        [RatFunc.from_poly(1 - g11), RatFunc.from_poly(-g11)],
        [qq, RatFunc.from_poly(1 - g21)],
    ])
    expect = RatFunc.from_poly((1 - g11) * (1 - g21)) + qq * RatFunc.from_poly(g11)
    assert A.det() == expect


def test_singular_certificate():
    one = RatFunc.const(1)
    A = RFMatrix([[one, one], [one, one]])
    assert A.det() == 0
    with pytest.raises(Singular):
        A.solve(RFMatrix.identity(2))


def test_det_multiplicative_on_product():
    A = RFMatrix([[rand_rf([vz(1)]) for _ in range(2)] for _ in range(2)])
    B = RFMatrix([[rand_rf([vz(2)]) for _ in range(2)] for _ in range(2)])
    assert (A * B).det() == A.det() * B.det()


def test_solve_rectangular_rhs():
    h = RatFunc.from_poly(H)
    A = RFMatrix([[RatFunc.const(1), h], [RatFunc.const(0), RatFunc.const(1)]])
    B = RFMatrix([[h, RatFunc.const(2)], [RatFunc.const(3), h]])
    X = A.solve(B)
    assert A * X == B
