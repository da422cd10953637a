"""Weight functions: displayed formulas, the table oracle, substitutions."""

import pytest

from kstab.combinatorics import (
    enumerate_partitions, compositions, swap_numbers,
)
from kstab.laurent import H, LPoly, exact_div, one_minus, vg, vt, vz, zratio
from kstab.weights import (
    E_at, E_symbolic, modified_weight, q_of, subst_zJ, table_sum_oracle,
    weight_at, weight_function, weight_sigma, wtilde_at, recursion_check,
)

T11 = ((vt(1, 1), -1),)


def tz(a, hpow=0):
    """1 - h^hpow z_a / t^(1)_1."""
    return one_minus(((vt(1, 1), -1), (vz(a), 1)), hpow)


def test_lambda_11_goldens():
    lam = (1, 1)
    assert weight_function(lam, ((1,), (2,))) == (1 - H) * tz(2)
    assert weight_function(lam, ((2,), (1,))) == (1 - H) * tz(1, 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lambda_1_nminus1_golden(n):
    lam = (1, n - 1)
    for i in range(1, n + 1):
        I = ((i,), tuple(a for a in range(1, n + 1) if a != i))
        expect = 1 - H
        for j in range(1, i):
            expect = expect * tz(j, 1)
        for j in range(i + 1, n):
            expect = expect * tz(j)
        if i < n:
            expect = expect * tz(n)
        assert weight_function(lam, I) == expect


def test_single_block_weight_is_one():
    assert weight_function((3,), ((1, 2, 3),)).is_one()
    # an empty leading block contributes no t variables at all
    assert weight_function((0, 2), ((), (1, 2))).is_one()


def test_full_first_block():
    # lambda=(2,0): both t^(1) variables present, one nonzero substitution term
    lam = (2, 0)
    I = ((1, 2), ())
    w = subst_zJ(weight_function(lam, I), lam, I)
    assert w == (1 - H) ** 2 * one_minus(zratio(1, 2), 1) * one_minus(zratio(2, 1), 1)


def all_lams(nmax=4, Nmax=3):
    for n in range(1, nmax + 1):
        for N in range(1, Nmax + 1):
            yield from compositions(n, N)


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 1, 1), (1, 2), (0, 1, 1)])
def test_oracle_equals_weight_function(lam):
    for I in enumerate_partitions(lam):
        assert table_sum_oracle(lam, I) == weight_function(lam, I)


def test_weight_at_agrees_with_symbolic_substitution():
    for lam in [(1, 1), (2, 1), (1, 1, 1)]:
        for I in enumerate_partitions(lam):
            for J in enumerate_partitions(lam):
                sym = subst_zJ(weight_function(lam, I), lam, J)
                n = sum(lam)
                sigma = tuple(range(1, n + 1))
                assert weight_at(lam, sigma, I, J) == sym


def test_weight_at_permuted():
    lam = (1, 1)
    I = ((1,), (2,))
    # W_{s,I}(t,z) = W_{s(I)}(t, z_2, z_1) = (1-h)(1 - h z_2/t)
    w = weight_sigma(lam, (2, 1), I)
    assert w == (1 - H) * tz(2, 1)
    assert weight_at(lam, (2, 1), I, ((1,), (2,))) == \
        subst_zJ(w, lam, ((1,), (2,)))


def test_E_values():
    assert E_at((1, 1), ((1,), (2,))) == 1 - H
    assert E_at((2,), ((1, 2),)).is_one()
    # two blocks of ones at i<j inside N=3: lambda=(1,1,0) has q(lam)=2
    lam = (1, 1, 0)
    E = E_at(lam, ((1,), (2,), ()))
    expect = (1 - H) ** 3 * one_minus(zratio(2, 1), 1) * one_minus(zratio(1, 2), 1)
    assert E == expect


def test_E_symbolic_diagonal():
    assert E_symbolic((1, 1)) == 1 - H


def test_wtilde_examples():
    lam = (1, 1)
    Iup, Idn = ((1,), (2,)), ((2,), (1,))
    idp = (1, 2)
    # diagonal values P e
    assert wtilde_at(lam, idp, Iup, Iup) == one_minus(zratio(2, 1))
    assert wtilde_at(lam, idp, Idn, Idn) == one_minus(zratio(1, 2), 1)
    # vanishing above the index
    assert wtilde_at(lam, idp, Iup, Idn).is_zero()
    # the off-diagonal value
    assert wtilde_at(lam, idp, Idn, Iup) == 1 - H


def test_wtilde_divisibility_all_small():
    for lam in [(1, 1), (2, 1), (1, 1, 1)]:
        for I in enumerate_partitions(lam):
            for J in enumerate_partitions(lam):
                w = weight_at(lam, tuple(range(1, sum(lam) + 1)), I, J)
                if w.is_zero():
                    continue
                q = exact_div(w, E_at(lam, J))
                assert q == wtilde_at(lam, tuple(range(1, sum(lam) + 1)), I, J)


def test_exact_div_weight_golden():
    # division of the substituted lambda=(1,1) weight by E gives 1 - z_2/z_1
    lam = (1, 1)
    w = weight_at(lam, (1, 2), ((1,), (2,)), ((1,), (2,)))
    assert exact_div(w, 1 - H) == one_minus(zratio(2, 1))


def test_q_of_and_modified_weights():
    assert q_of((1, 1)) == 2
    assert q_of((1, 0, 1, 0)) == 3
    # lambda with ones at positions i<j: the displayed factored forms
    N, i, j = 3, 1, 2
    lam = tuple(1 if k in (i, j) else 0 for k in range(1, N + 1))
    I = tuple((1,) if k == i else (2,) if k == j else () for k in range(1, N + 1))
    J = tuple((2,) if k == i else (1,) if k == j else () for k in range(1, N + 1))
    common = (1 - H) ** (2 * N - i - j) \
        * one_minus(zratio(2, 1), 1) ** (N - j) \
        * one_minus(zratio(1, 2), 1) ** (N - j)
    g = ((vg(i, 1), -1),)
    assert modified_weight(lam, I, 2) == common * one_minus(((vg(i, 1), -1), (vz(2), 1)))
    assert modified_weight(lam, J, 2) == common * one_minus(((vg(i, 1), -1), (vz(1), 1)), 1)
    m1I = modified_weight(lam, I, 1)
    assert m1I == common * one_minus(((vt(j - 1, 1), -1), (vz(2), 1)))


def test_m2w_111_factored():
    lam = (1, 1, 1)
    w = modified_weight(lam, ((1,), (2,), (3,)), 2)
    expect = (1 - H) ** 3 \
        * one_minus(((vg(1, 1), -1), (vz(2), 1))) \
        * one_minus(((vg(1, 1), -1), (vz(3), 1))) \
        * one_minus(((vg(2, 1), -1), (vz(3), 1))) \
        * one_minus(((vg(2, 1), -1), (vz(1), 1)), 1) \
        * one_minus(((vg(1, 1), -1), (vg(2, 1), 1)), 1)
    assert w == expect


@pytest.mark.parametrize("lam", [(1, 1), (2, 0), (1, 1, 1), (2, 1)])
def test_modified_weight_substitution_invariance(lam):
    n = sum(lam)
    idp = tuple(range(1, n + 1))
    for I in enumerate_partitions(lam):
        for J in enumerate_partitions(lam):
            w = weight_at(lam, idp, I, J)
            assert subst_zJ(modified_weight(lam, I, 1), lam, J) == w
            assert subst_zJ(modified_weight(lam, I, 2), lam, J) == w


@pytest.mark.parametrize("lam", [(2, 0), (1, 1), (1, 1, 1)])
def test_recursions(lam):
    assert recursion_check(lam) == []
