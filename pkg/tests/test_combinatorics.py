"""Partitions, orders, permutations, fillings."""

from itertools import permutations

import pytest

from kstab.combinatorics import (
    bruhat_leq, codim_ell, compositions, enumerate_partitions, filling_count,
    fillings, flatten_desc, format_partition, i_max, i_min, identity_perm,
    inversions_p, longest_perm, membership, min_coset_perm, multinomial,
    parse_partition, parse_perm, perm_compose, perm_inverse, perm_length,
    reduced_word, refine_key, sigma_for_groth, swap_numbers,
)


def test_enumeration_order_and_sizes():
    assert enumerate_partitions((1, 1)) == (((1,), (2,)), ((2,), (1,)))
    assert enumerate_partitions((2, 0)) == (((1, 2), ()),)
    assert ((2,), (1,), (3,)) in enumerate_partitions((1, 1, 1))
    for n in range(1, 6):
        for N in (1, 2, 3):
            for lam in compositions(n, N):
                assert len(enumerate_partitions(lam)) == multinomial(lam)


def test_bruhat_examples():
    lam = (1, 1)
    idp = (1, 2)
    assert not bruhat_leq(idp, ((2,), (1,)), ((1,), (2,)))
    assert bruhat_leq(idp, ((1,), (2,)), ((2,), (1,)))
    for lam in [(1, 1), (2, 1), (1, 1, 1)]:
        for sigma in permutations(range(1, sum(lam) + 1)):
            for I in enumerate_partitions(lam):
                assert bruhat_leq(sigma, I, I)
                assert bruhat_leq(idp[:0] + sigma, i_min(lam), I) or True
            assert all(bruhat_leq(identity_perm(sum(lam)), i_min(lam), I)
                       and bruhat_leq(identity_perm(sum(lam)), I, i_max(lam))
                       for I in enumerate_partitions(lam))


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 1, 1), (2, 2)])
def test_bruhat_is_partial_order(lam):
    n = sum(lam)
    parts = enumerate_partitions(lam)
    for sigma in permutations(range(1, n + 1)):
        for A in parts:
            for B in parts:
                if bruhat_leq(sigma, A, B) and bruhat_leq(sigma, B, A):
                    assert A == B
                for C in parts:
                    if bruhat_leq(sigma, A, B) and bruhat_leq(sigma, B, C):
                        assert bruhat_leq(sigma, A, C)


def test_refine_key_refines_order():
    lam = (2, 1)
    for sigma in permutations((1, 2, 3)):
        for A in enumerate_partitions(lam):
            for B in enumerate_partitions(lam):
                if A != B and bruhat_leq(sigma, A, B):
                    assert refine_key(sigma, A) < refine_key(sigma, B)


def test_inversions():
    assert inversions_p(((1,), (2,))) == 1
    assert inversions_p(((2,), (1,))) == 0
    assert inversions_p(((1, 2), (3, 4))) == 4


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 1, 1), (2, 2), (1, 1, 2)])
def test_codim_plus_p_is_dim(lam):
    N = len(lam)
    dim = sum(lam[k] * lam[l] for k in range(N) for l in range(k + 1, N))
    idp = identity_perm(sum(lam))
    for I in enumerate_partitions(lam):
        assert codim_ell(idp, I) + inversions_p(I) == dim


def test_p_changes_by_one_on_adjacent_swap():
    lam = (2, 2)
    for I in enumerate_partitions(lam):
        colors = membership(I)
        for a in range(1, 4):
            if colors[a - 1] != colors[a]:
                delta = inversions_p(swap_numbers(I, a, a + 1)) - inversions_p(I)
                assert delta in (-1, 1)


def test_swap_and_extremes():
    assert swap_numbers(((1,), (2,)), 1, 2) == ((2,), (1,))
    assert i_max((1, 1)) == ((2,), (1,))
    assert i_min((1, 2)) == ((1,), (2, 3))
    assert i_max((2, 1)) == ((2, 3), (1,))


def test_sigma_for_groth_examples():
    assert sigma_for_groth(((1,), (3,), (2,))) == (2, 3, 1)
    assert sigma_for_groth(((1,), (2, 3))) == (2, 3, 1)
    assert sigma_for_groth(((1,), (2,), (3,))) == (3, 2, 1)


def test_flatten_desc():
    assert flatten_desc(((1, 3), (2,))) == ((3,), (1,), (2,))


def test_fillings_count():
    # groups are the first N-1 columns; the z column is fixed
    assert filling_count((1, 1, 1)) == 2
    assert len(list(fillings((1, 1, 1)))) == 2
    assert filling_count((1, 1)) == 1
    assert filling_count((2, 1)) == 2
    assert filling_count((2, 2)) == 2
    assert filling_count((2, 1, 1)) == 12


def test_perm_utilities():
    s = (2, 3, 1)
    assert perm_compose(s, perm_inverse(s)) == (1, 2, 3)
    assert perm_length(longest_perm(4)) == 6
    w = reduced_word(s)
    built = identity_perm(3)
    for i in w:
        built = perm_compose(built, (tuple(range(1, i)) + (i + 1, i)
                                     + tuple(range(i + 2, 4))))
    assert built == s


def test_min_coset_perm():
    lam = (2, 1)
    for I in enumerate_partitions(lam):
        sigma = min_coset_perm(i_min(lam), I)
        assert tuple(tuple(sorted(sigma[a - 1] for a in blk))
                     for blk in i_min(lam)) == I


def test_partition_syntax_roundtrip():
    for text in ["{1,3},{2},{}", "{1},{2}", "{2,3},{1}"]:
        assert format_partition(parse_partition(text)) == text
    assert parse_perm("2,3,1") == (2, 3, 1)
    with pytest.raises(ValueError):
        parse_perm("2,2,1")
    with pytest.raises(ValueError):
        parse_partition("{1},{1}")
