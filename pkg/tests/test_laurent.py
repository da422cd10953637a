"""Core Laurent polynomial arithmetic."""

import random

import pytest

from kstab.laurent import (
    H, LPoly, NotDivisible, VH, exact_div, frac, newton_interval, one_minus,
    parse_var, var_name, vz, zratio, vt,
)

rng = random.Random(20240901)


def rand_poly(vars_, nterms=4, expo=2):
    p = LPoly()
    for _ in range(nterms):
        m = []
        for v in vars_:
            e = rng.randint(-expo, expo)
            if e:
                m.append((v, e))
        c = rng.randint(-5, 5)
        p = p + LPoly.monomial(tuple(sorted(m)), c)
    return p


def test_cancellation():
    z21 = LPoly.monomial(zratio(2, 1))
    assert (one_minus(zratio(2, 1)) + z21).is_one()


def test_square_of_one_minus_h():
    p = (1 - H) * (1 - H)
    assert p == 1 - 2 * H + H ** 2


def test_forced_zero_substitution():
    w = (1 - H) * one_minus(((vt(1, 1), -1), (vz(2), 1)))
    assert w.subst({vt(1, 1): LPoly.variable(vz(2))}).is_zero()


def test_exact_div_simple():
    f = 1 - H ** 2
    assert exact_div(f, 1 - H) == 1 + H


def test_exact_div_not_divisible():
    f = 1 - LPoly.variable(vz(1))
    g = 1 - LPoly.variable(vz(2))
    with pytest.raises(NotDivisible):
        exact_div(f, g)


def test_exact_div_laurent_not_divisible():
    # 1 / (1 - x) has no Laurent-polynomial quotient; must terminate.
    with pytest.raises(NotDivisible):
        exact_div(LPoly.const(1), 1 - LPoly.variable(vz(1)))


def test_exact_div_random_roundtrip():
    vars_ = [VH, vz(1), vz(2)]
    for _ in range(40):
        f = rand_poly(vars_)
        g = rand_poly(vars_, nterms=3)
        if g.is_zero():
            continue
        assert exact_div(f * g, g) == f


def test_newton_interval_basic():
    f = one_minus(zratio(2, 1))
    assert newton_interval(f, {1: 1, 2: 2}) == (0, 1)
    assert newton_interval(LPoly.const(7), {}) == (0, 0)


def test_newton_interval_minkowski():
    block = {1: 1, 2: 2, 3: 1}
    for _ in range(30):
        f = rand_poly([VH, vz(1), vz(2), vz(3)])
        g = rand_poly([VH, vz(1), vz(3)])
        if f.is_zero() or g.is_zero():
            continue
        af, bf = newton_interval(f, block)
        ag, bg = newton_interval(g, block)
        assert newton_interval(f * g, block) == (af + ag, bf + bg)


def test_var_name_roundtrip():
    for v in [VH, vz(3), vt(2, 1), parse_var("gamma(1,2)"), parse_var("q2"),
              parse_var("Q1"), parse_var("u"), parse_var("x"),
              parse_var("alpha3"), parse_var("beta1")]:
        assert parse_var(var_name(v)) == v


def test_substitution_requires_ratfunc():
    f = LPoly.variable(vz(1), -1)
    with pytest.raises(ValueError):
        f.subst({vz(1): 1 - H})


def test_pow_and_scale():
    p = 1 - H
    assert p ** 0 == LPoly.const(1)
    assert p ** 3 == p * p * p
    assert p.scale(frac(1, 2)) + p.scale(frac(1, 2)) == p
