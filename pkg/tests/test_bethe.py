"""Monodromy series, quantum minors, commuting families, the rho action."""

import pytest

from kstab.bethe import (
    SIGN_AT_INF, SIGN_AT_ZERO, a_series, binf_log_identity, binf_scalar_check,
    blim_check, bq_commutator_check_eval, bq_commutator_check_formal,
    bq_series, bq_zero_mode_value, difference_operator_check, e_series,
    f_series, l_series, ltl_zero_mode_check, minor_row_permutation_check,
    nu_intertwine_check, quantum_minor, rho_a_coeff, scalar_prefactor_series,
    xi_action_check,
)
from kstab.actions import op_apply, op_eq, op_identity, op_scale, vec_eq
from kstab.laurent import H, LPoly, frac, one_minus, vg, vz, zratio
from kstab.ratfunc import RatFunc


def test_l_series_n1_values():
    # single site: L(u) = R(z_1/u) * (1-h z_1/u)/(1-z_1/u)
    ls = l_series(1, 2, SIGN_AT_INF, 2)
    # (1,1) entry acting on v_1: the scalar prefactor times 1, since
    # R fixes v_1 x v_1; on v_2 it picks up the aa amplitude too
    pref = scalar_prefactor_series(1, SIGN_AT_INF, 2)
    got = ls[(1, 1)].apply({(1,): RatFunc.const(1)})
    for s in range(3):
        assert vec_eq(got[s], {(1,): pref[s]})


def test_ltl_zero_modes():
    assert ltl_zero_mode_check(2, 2)
    assert ltl_zero_mode_check(3, 2)


def test_minor_p1_is_entry():
    ls = l_series(2, 2, SIGN_AT_INF, 2)
    m = quantum_minor(2, 2, (1,), (2,), SIGN_AT_INF, 2)
    for s in range(3):
        assert op_eq(m.coeffs[s], ls[(1, 2)].coeffs[s])


def test_minor_row_permutation():
    assert minor_row_permutation_check(2, 2, (1, 2), (1, 2), SIGN_AT_INF, 2,
                                       (2, 1))


def test_a_series_leading_identity():
    for sign in (SIGN_AT_ZERO, SIGN_AT_INF):
        for p in (1, 2):
            ser = a_series(2, 2, p, sign, 2)
            assert op_eq(ser.coeffs[0], op_identity(2, 2))


def test_a_top_on_single_site():
    # A_{N,-}(u) multiplies every vector by the scalar prefactor
    ser = a_series(1, 2, 2, SIGN_AT_INF, 2)
    pref = scalar_prefactor_series(1, SIGN_AT_INF, 2)
    for s in range(3):
        assert op_eq(ser.coeffs[s], op_scale(op_identity(2, 1), pref[s]))


@pytest.mark.parametrize("n,N", [(1, 2), (2, 2)])
def test_binf_scalar(n, N):
    assert binf_scalar_check(n, N, smax=3)


def test_binf_log_identity():
    assert binf_log_identity(2, smax=3)
    assert binf_log_identity(3, smax=3)


def test_bq_zero_mode():
    assert bq_zero_mode_value(2, 2, 1)
    assert bq_zero_mode_value(2, 2, 2)


def test_bq_commutators_formal_n2():
    assert bq_commutator_check_formal(2, 2, smax=2) == []


def test_bq_commutators_eval_n3():
    assert bq_commutator_check_eval(
        3, 2, 2, [frac(2), frac(3), frac(5)], frac(7, 11)) == []


def test_blim():
    assert blim_check(2, 2, smax=2)


@pytest.mark.parametrize("lam", [(1, 1), (2, 1)])
def test_xi_action(lam):
    assert xi_action_check(lam, smax=2) == []


def test_ef_rational_agreement():
    # the two expansions of the E coefficient come from one rational function
    zi = LPoly.variable(vz(1))
    u = LPoly.variable(vz(2))  # stand-in variable
    minus_form = RatFunc.fraction(zi, u - zi)
    plus_form = RatFunc.fraction(-zi, zi - u)
    assert minus_form == plus_form
    f_minus = RatFunc.fraction(u, u - zi)
    f_plus = RatFunc.fraction(-u, zi - u)
    assert f_minus == f_plus


def test_rho_a_is_multiplication():
    lam = (1, 1)
    f = RatFunc.const(1)
    imgs = rho_a_coeff(lam, 1, SIGN_AT_INF, 2, f)
    # (1 - h g/u)/(1 - g/u) = 1 + (1-h) g/u + (1-h) g^2/u^2 + ...
    g = LPoly.variable(vg(1, 1))
    assert imgs[0] == 1
    assert imgs[1] == RatFunc.from_poly((1 - H) * g)
    assert imgs[2] == RatFunc.from_poly((1 - H) * g * g)


@pytest.mark.parametrize("kind,p,sign", [
    ("A", 1, SIGN_AT_INF), ("A", 2, SIGN_AT_ZERO),
    ("E", 1, SIGN_AT_INF), ("E", 1, SIGN_AT_ZERO),
    ("F", 1, SIGN_AT_INF), ("F", 1, SIGN_AT_ZERO),
])
def test_nu_intertwine_lambda_11(kind, p, sign):
    lam = (1, 1)
    if kind == "A":
        f = RatFunc.from_poly(LPoly.variable(vg(1, 1)))
    elif kind == "E":
        # source weight (0, 2): symmetric function of the two gamma_2
        f = RatFunc.from_poly(LPoly.variable(vg(2, 1)) * LPoly.variable(vg(2, 2)))
    else:
        # source weight (2, 0)
        f = RatFunc.from_poly(LPoly.variable(vg(1, 1)) + LPoly.variable(vg(1, 2)))
    assert nu_intertwine_check(lam, kind, p, sign, 2, f)


def test_difference_operator():
    assert difference_operator_check(1, 2, smax=2)
    assert difference_operator_check(2, 2, smax=2)
