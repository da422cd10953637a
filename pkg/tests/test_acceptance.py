"""Acceptance gate: every criterion at desk scale, printed pass/fail.

All arithmetic is exact rational, so every comparison below is equality of
canonical forms (tolerance zero).  Desk scale means n <= 4 and N <= 3;
the n = 4 tiers are the slowest.  Run with `pytest tests/test_acceptance.py
-v -s` to see one line per criterion.
"""

from itertools import permutations

import pytest

from kstab.combinatorics import (
    compositions, enumerate_partitions, format_partition, identity_perm,
    membership,
)
from kstab.laurent import H, LPoly, one_minus, vg, vq, vQ, vt, vz, zratio
from kstab.ratfunc import RatFunc

NMAX, SMAX, BOX = 4, 4, 2


def desk_lambdas(nmax=NMAX, Nmax=3):
    for n in range(1, nmax + 1):
        for N in range(1, Nmax + 1):
            yield from compositions(n, N)


def report(criterion: str, ok: bool):
    print(f"[acceptance] {criterion}: {'PASS' if ok else 'FAIL'}")
    assert ok, criterion


# -- 1. weight-function goldens ---------------------------------------------


def test_criterion_1_weight_goldens():
    from kstab.weights import modified_weight, weight_function

    ok = True
    t11 = vt(1, 1)
    # two-point formulas
    ok &= weight_function((1, 1), ((1,), (2,))) == \
        (1 - H) * one_minus(((t11, -1), (vz(2), 1)))
    ok &= weight_function((1, 1), ((2,), (1,))) == \
        (1 - H) * one_minus(((t11, -1), (vz(1), 1)), 1)
    # single box against the rest
    for n in range(2, NMAX + 1):
        lam = (1, n - 1)
        for i in range(1, n + 1):
            I = ((i,), tuple(a for a in range(1, n + 1) if a != i))
            expect = 1 - H
            for j in range(1, i):
                expect = expect * one_minus(((t11, -1), (vz(j), 1)), 1)
            for j in range(i + 1, n + 1):
                expect = expect * one_minus(((t11, -1), (vz(j), 1)))
            ok &= weight_function(lam, I) == expect
    # modified pair for two nonzero unit slots inside N = 3
    N, i, j = 3, 1, 2
    lam = (1, 1, 0)
    I = ((1,), (2,), ())
    J = ((2,), (1,), ())
    common = (1 - H) ** (2 * N - i - j) \
        * one_minus(zratio(2, 1), 1) ** (N - j) \
        * one_minus(zratio(1, 2), 1) ** (N - j)
    ok &= modified_weight(lam, I, 1) == common * one_minus(
        ((vt(j - 1, 1), -1), (vz(2), 1)))
    ok &= modified_weight(lam, J, 1) == common * one_minus(
        ((vt(j - 1, 1), -1), (vz(1), 1)), 1)
    ok &= modified_weight(lam, I, 2) == common * one_minus(
        ((vg(i, 1), -1), (vz(2), 1)))
    ok &= modified_weight(lam, J, 2) == common * one_minus(
        ((vg(i, 1), -1), (vz(1), 1)), 1)
    # the factored three-colour modification
    w = modified_weight((1, 1, 1), ((1,), (2,), (3,)), 2)
    expect = (1 - H) ** 3 \
        * one_minus(((vg(1, 1), -1), (vz(2), 1))) \
        * one_minus(((vg(1, 1), -1), (vz(3), 1))) \
        * one_minus(((vg(2, 1), -1), (vz(3), 1))) \
        * one_minus(((vg(2, 1), -1), (vz(1), 1)), 1) \
        * one_minus(((vg(1, 1), -1), (vg(2, 1), 1)), 1)
    ok &= w == expect
    report("1 weight-function goldens", ok)


# -- 2. oracle equivalence ----------------------------------------------------


def test_criterion_2_oracle_equivalence():
    from kstab.weights import table_sum_oracle, weight_function

    ok = True
    for lam in desk_lambdas():
        for I in enumerate_partitions(lam):
            if table_sum_oracle(lam, I) != weight_function(lam, I):
                ok = False
    report("2 table oracle = symmetrized definition (n <= 4)", ok)


# -- 3. axiom suite -----------------------------------------------------------


def test_criterion_3_axioms():
    from kstab.envelope import axiom_verify

    bad = []
    for lam in desk_lambdas():
        for sigma in permutations(range(1, sum(lam) + 1)):
            bad.extend(axiom_verify(lam, sigma))
    mutant = axiom_verify((1, 1), (1, 2),
                          mutate=(((1,), (2,)), ((2,), (1,)), LPoly.const(1)))
    ok = not bad and bool(mutant)
    report("3 envelope axioms for every (lambda, sigma), mutants rejected", ok)


# -- 4. orthogonality ---------------------------------------------------------


def test_criterion_4_orthogonality():
    from kstab.envelope import (
        orthogonality_matrix_identity, orthogonality_verify,
    )

    ok = True
    for lam in desk_lambdas():
        if orthogonality_verify(lam):
            ok = False
    for lam in desk_lambdas(3, 3):
        ok &= orthogonality_matrix_identity(lam)
    report("4 orthogonality sum = delta, matrix identity", ok)


# -- 5. R-matrix suite ---------------------------------------------------------


def test_criterion_5_r_matrices():
    from kstab.actions import (
        cocycle_check, duality_check, geom_r_check, geometric_r_matrix,
        inversion_check, ybe_check,
    )

    ok = all(ybe_check(N) and inversion_check(N) for N in (2, 3))
    ok &= duality_check()
    for n in (2, 3):
        for N in (2, 3):
            ok &= geom_r_check(n, N) == []
    triples = [((2, 1, 3), (1, 2, 3), (3, 2, 1)),
               ((1, 3, 2), (2, 3, 1), (1, 2, 3))]
    ok &= cocycle_check(3, 2, triples) == []
    # the displayed two-point formulas, verbatim
    parts, geom = geometric_r_matrix((1, 1), (2, 1), (1, 2))
    den = RatFunc.from_poly(one_minus(zratio(2, 1), 1)).inverse()
    ok &= geom[(0, 0)] == RatFunc.from_poly(one_minus(zratio(2, 1))) * den
    ok &= geom[(1, 0)] == RatFunc.from_poly(
        (1 - H).mul_monomial(zratio(2, 1))) * den
    ok &= geom[(0, 1)] == RatFunc.from_poly(1 - H) * den
    ok &= geom[(1, 1)] == RatFunc.from_poly(H * one_minus(zratio(2, 1))) * den
    _, same = geometric_r_matrix((2,), (2, 1), (1, 2))
    ok &= same.is_identity()
    report("5 Yang-Baxter, inversion, duality, geometric = trigonometric", ok)


# -- 6. Hecke suite -----------------------------------------------------------


def test_criterion_6_hecke():
    from kstab.actions import (
        hecke_check_s_check, hecke_check_s_hat, t_hecke_check, vec_eq,
    )
    from kstab.envelope import xi_vector_closed, xi_vector_recursive

    ok = True
    for n in range(2, NMAX + 1):
        ok &= hecke_check_s_hat(n, radius=BOX) == []
        ok &= t_hecke_check(n, radius=BOX) == []
        ok &= hecke_check_s_check(n, 2, radius=BOX) == []
    for lam in desk_lambdas():
        for I in enumerate_partitions(lam):
            ok &= vec_eq(xi_vector_closed(lam, I), xi_vector_recursive(lam, I))
    # the displayed two-point eigenvector
    lam = (1, 1)
    lo, hi = ((1,), (2,)), ((2,), (1,))
    den = RatFunc.from_poly(one_minus(zratio(1, 2), 1)).inverse()
    expect = {
        membership(lo): RatFunc.from_poly((1 - H).mul_monomial(zratio(1, 2))) * den,
        membership(hi): RatFunc.from_poly(one_minus(zratio(1, 2))) * den,
    }
    ok &= vec_eq(xi_vector_closed(lam, hi), expect)
    report("6 Hecke relations on the [-2,2]^n box, xi recursion = closed", ok)


# -- 7. Bethe suite -----------------------------------------------------------


def test_criterion_7_bethe():
    from kstab.bethe import (
        binf_scalar_check, bq_commutator_check_eval,
        bq_commutator_check_formal, nu_intertwine_check, xi_action_check,
    )
    from kstab.cli import _eval_points, _intertwine_rep

    ok = True
    for lam in desk_lambdas(3, 3):
        ok &= xi_action_check(lam, smax=SMAX) == []
    for n in (1, 2, 3):
        for N in (2, 3):
            ok &= binf_scalar_check(n, N, smax=SMAX)
    ok &= bq_commutator_check_formal(2, 2, smax=2) == []
    points = _eval_points(20240901, 3, count=5)
    assert len(points) >= 5
    for zs, h in points:
        ok &= bq_commutator_check_eval(3, 2, 2, zs, h) == []
    g1 = RatFunc.from_poly(LPoly.variable(vg(1, 1)))
    for kind, p, sign in (("A", 1, "-"), ("A", 2, "+"), ("E", 1, "-"),
                          ("E", 1, "+"), ("F", 1, "-"), ("F", 1, "+")):
        f = g1 if kind == "A" else _intertwine_rep(kind)
        ok &= nu_intertwine_check((1, 1), kind, p, sign, 2, f)
    report("7 eigenvalue/raising formulas, central scalars, commutators,"
           " nu-intertwining", ok)


# -- 8. Wronski suite -----------------------------------------------------------


def test_criterion_8_wronski():
    from kstab.wronski import (
        b_top_identity, classical_limit_check, h0_limit_check, kQ_relations,
        kq_relations,
    )

    ok = True
    # the displayed two-point relations
    rels = kq_relations((1, 1))
    q1, q2 = LPoly.variable(vq(1)), LPoly.variable(vq(2))
    g1, g2 = LPoly.variable(vg(1, 1)), LPoly.variable(vg(2, 1))
    hm1 = LPoly.variable(H.variables()[0], -1)
    lin = RatFunc.fraction(g1 * (q1 - hm1 * q2) + g2 * (q1 - H * q2), q1 - q2) \
        - RatFunc.from_poly(LPoly.variable(vz(1)) + LPoly.variable(vz(2)))
    ok &= rels[0] == lin
    ok &= rels[1] == RatFunc.from_poly(
        g1 * g2 - LPoly.variable(vz(1)) * LPoly.variable(vz(2)))
    for lam in desk_lambdas(3, 3):
        ok &= b_top_identity(lam)
        ok &= classical_limit_check(lam)
        if all(x > 0 for x in lam):
            ok &= h0_limit_check(lam)
    # displayed h -> 0 relations
    relQ = kQ_relations((1, 1))
    Qr = LPoly.monomial(((vQ(1), -1), (vQ(2), 1)))
    want = RatFunc.from_poly(-(g1 * (1 - Qr) + g2)
                             + LPoly.variable(vz(1)) + LPoly.variable(vz(2)))
    ok &= relQ[0] == want
    ok &= relQ[1] == RatFunc.from_poly(
        g1 * g2 - LPoly.variable(vz(1)) * LPoly.variable(vz(2)))
    report("8 Wronskian relations, shift identity, h->0 and q->0 limits", ok)


# -- 9. Grothendieck suite ------------------------------------------------------


def test_criterion_9_grothendieck():
    from kstab.grothendieck import (
        groth_poly, schubert_axioms_check, specialization_check,
    )
    from kstab.laurent import va, vb

    def b_over_a(i, j):
        return one_minus(((va(j), -1), (vb(i), 1)))

    ok = groth_poly((3, 2, 1)) == b_over_a(1, 1) * b_over_a(2, 1) * b_over_a(1, 2)
    ok &= groth_poly((2, 3, 1)) == b_over_a(1, 1) * b_over_a(1, 2)
    ok &= groth_poly((3, 1, 2)) == b_over_a(1, 1) * b_over_a(2, 1)
    ok &= groth_poly((2, 1, 3)) == b_over_a(1, 1)
    ok &= groth_poly((1, 3, 2)) == 1 - LPoly.monomial(
        ((va(1), -1), (va(2), -1), (vb(1), 1), (vb(2), 1)))
    ok &= groth_poly((1, 2, 3)).is_one()
    for lam in desk_lambdas():
        ok &= specialization_check(lam) == []
        ok &= schubert_axioms_check(lam) == []
    I, lo, hi = ((1,), (2,)), ((1,), (2,)), ((2,), (1,))
    ok &= bool(schubert_axioms_check((1, 1), mutate=(I, lo, hi)))
    report("9 Grothendieck polynomials, specialization, interpolation axioms", ok)


# -- 10. structure constants ----------------------------------------------------


def test_criterion_10_structure_constants():
    from kstab.structconst import (
        p1_cube_check, p1_matches_kappa_basis, p1_tables_check,
        structure_constants_match, structure_constants_oracle,
    )

    ok = True
    # first displayed sample, character for character
    c = structure_constants_oracle((2, 2), ((1, 2), (3, 4)), ((1, 4), (2, 3)))
    expect = RatFunc.from_poly(
        (1 - H) * one_minus(zratio(3, 1)) * one_minus(zratio(4, 1))
        * one_minus(zratio(3, 2), 1))
    ok &= c[((1, 2), (3, 4))] == expect
    ok &= all(v.is_zero() for J, v in c.items() if J != ((1, 2), (3, 4)))
    # second sample: the (1 - z4/z1) factor is the theorem-forced form of
    # the displayed product (see the decisions ledger)
    c2 = structure_constants_oracle((2, 2), ((1, 3), (2, 4)), ((1, 4), (2, 3)))
    inner = LPoly.monomial(zratio(2, 1)) + H * (
        LPoly.const(1) - LPoly.monomial(zratio(2, 1))
        - LPoly.monomial(zratio(3, 1)) + LPoly.monomial(zratio(2, 3))
        - LPoly.monomial(((vz(1), -1), (vz(2), 2), (vz(3), -1))))
    ok &= c2[((1, 2), (3, 4))] == RatFunc.from_poly(
        (1 - H) ** 2 * one_minus(zratio(4, 1)) * inner)
    ok &= c2[((1, 3), (2, 4))] == RatFunc.from_poly(
        (1 - H) * one_minus(zratio(2, 1)) * one_minus(zratio(4, 1))
        * one_minus(zratio(2, 3), 1))
    for lam in [(1, 1), (2, 1), (1, 1, 1), (2, 2)]:
        ok &= structure_constants_match(lam) == []
    ok &= p1_tables_check() == []
    ok &= p1_cube_check() == []
    ok &= p1_matches_kappa_basis()
    report("10 closed formula = oracle, projective-line tables and cube", ok)
