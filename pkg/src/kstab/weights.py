"""Trigonometric weight functions, their substitutions, and the table oracle.

Two independent routes compute the same objects:

* ``weight_function`` follows the defining formula: a product over column
  pairs, symmetrized group by group with exact clearing of the
  antisymmetrized Vandermonde denominators.
* ``table_sum_oracle`` sums one term per filling of the combinatorial
  table, with the type-1/2/3 factor rules.

Fixed-point substitutions (``weight_at``) are evaluated directly from the
filled tables: every denominator of a filling term differs from the
column Vandermonde only by a sign and an invertible monomial, so the sum
is assembled as a single Laurent polynomial and divided exactly.

``wtilde_at`` divides out the diagonal Euler factor E(z_J, h).  Each
nonzero filling term contains the needed binomials as literal factors, so
they are cancelled per term before expansion; if a term ever lacks one,
the code falls back to a global exact division, which raises NotDivisible
on a genuine failure.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .combinatorics import (
    IdxPartition, Perm, apply_perm, check_partition, fillings, lam_onebrace,
    partial_sums, perm_inverse, perm_sign, union_prefix,
)
from .laurent import (
    H, LPoly, div_factors, exact_div, one_minus, vg, vt, vz, zratio,
)
from .ratfunc import RatFunc, divided_diff, symmetrize

# A substituted binomial factor 1 - h^eps z_x / z_y is coded as (eps, x, y).
Factor = tuple


def _ratio(vnum: int, vden: int, hpow: int = 0) -> LPoly:
    """1 - h^hpow * vnum / vden for variable codes."""
    m = ((vnum, 1), (vden, -1)) if vnum < vden else ((vden, -1), (vnum, 1))
    return one_minus(m, hpow)


def _group_clearing_symmetrize(num: LPoly, k: int, size: int) -> LPoly:
    """Symmetrize num / prod_{a<b} (1 - t_b/t_a) over the level-k variables,
    clearing the denominator exactly.

    Writes every permuted denominator through the common Vandermonde:
    the signed sum of permuted numerators times the invertible monomial
    prod t_a^{size-a} is divisible by prod_{a<b} (t_a - t_b).
    """
    from itertools import permutations as all_perms

    total = LPoly()
    for perm in all_perms(range(1, size + 1)):
        mapping = {vt(k, a): vt(k, p) for a, p in enumerate(perm, start=1)
                   if a != p}
        sign = perm_sign(perm)
        mono = tuple((vt(k, p), size - a) for a, p in enumerate(perm, start=1)
                     if size != a)
        term = (num.rename(mapping) if mapping else num).mul_monomial(
            tuple(sorted(m for m in mono if m[1])), sign)
        total = total + term
    for a in range(1, size + 1):
        for b in range(a + 1, size + 1):
            if total.is_zero():
                return total
            total = exact_div(total,
                              LPoly.variable(vt(k, a)) - LPoly.variable(vt(k, b)))
    return total


@lru_cache(maxsize=None)
def weight_function(lam: tuple, I: IdxPartition) -> LPoly:
    """W_I(t, z, h): symmetrized product formula, exact Laurent polynomial.

    Group-by-group symmetrization over the common denominator with exact
    division, innermost level first.
    """
    check_partition(I, lam)
    N = len(lam)
    ps = partial_sums(lam)
    unions = [union_prefix(I, k) for k in range(N + 1)]

    def tv(k: int, a: int) -> int:
        return vz(a) if k == N else vt(k, a)

    num = LPoly.const(1)
    for k in range(1, N):
        uk, uk1 = unions[k], unions[k + 1]
        for a in range(1, ps[k] + 1):
            row = uk[a - 1]
            for c in range(1, ps[k + 1] + 1):
                if uk1[c - 1] < row:
                    num = num * _ratio(tv(k + 1, c), tv(k, a), 1)
                elif uk1[c - 1] > row:
                    num = num * _ratio(tv(k + 1, c), tv(k, a), 0)
            for b in range(a + 1, ps[k] + 1):
                num = num * _ratio(tv(k, b), tv(k, a), 1)
    for k in range(N - 1, 0, -1):
        num = _group_clearing_symmetrize(num, k, ps[k])
    return num * (1 - H) ** lam_onebrace(lam)


@lru_cache(maxsize=None)
def weight_sigma(lam: tuple, sigma: Perm, I: IdxPartition) -> LPoly:
    """W_{sigma,I}(t, z, h) = W_{sigma^{-1}(I)} with z permuted by sigma."""
    if sorted(sigma) != list(range(1, sum(lam) + 1)):
        raise ValueError(f"not a permutation of 1..n: {sigma}")
    base = weight_function(lam, apply_perm(perm_inverse(sigma), I))
    mapping = {vz(a): vz(sigma[a - 1]) for a in range(1, len(sigma) + 1)
               if sigma[a - 1] != a}
    return base.rename(mapping) if mapping else base


def table_term(lam: tuple, I: IdxPartition, filling: tuple) -> RatFunc:
    """The rational function attached to one filled table."""
    N = len(lam)
    ps = partial_sums(lam)
    unions = [union_prefix(I, k) for k in range(N + 1)]

    def tv(k: int, p: int) -> int:
        return vz(p) if k == N else vt(k, filling[k - 1][p - 1])

    num_factors: list[LPoly] = []
    den_factors: list[LPoly] = []
    for k in range(1, N):
        uk, uk1 = unions[k], unions[k + 1]
        for p in range(1, ps[k] + 1):
            row = uk[p - 1]
            for c in range(1, ps[k + 1] + 1):
                hpow = 1 if uk1[c - 1] < row else 0
                if uk1[c - 1] != row:
                    num_factors.append(_ratio(tv(k + 1, c), tv(k, p), hpow))
            for p2 in range(p + 1, ps[k] + 1):
                num_factors.append(_ratio(tv(k, p2), tv(k, p), 1))
                den_factors.append(_ratio(tv(k, p2), tv(k, p), 0))
    return RatFunc.from_factors(num_factors, den_factors)


def table_sum_oracle(lam: tuple, I: IdxPartition) -> LPoly:
    """Independent route to W_I: sum of the filled-table terms."""
    check_partition(I, lam)
    total = RatFunc(LPoly())
    for f in fillings(lam):
        total = total + table_term(lam, I, f)
        total = total.simplify()
    return total.to_poly() * (1 - H) ** lam_onebrace(lam)


# -- substituted evaluation --------------------------------------------


def _term_factors(lam: tuple, Iprime: IdxPartition, sigma: Perm,
                  J: IdxPartition, filling: tuple):
    """Numerator factors of one filling term of W_{sigma,I}(z_J, z, h).

    Returns (None, ...) for a vanishing term, else (counter, oneminush, sign,
    mono) with counter a Counter of (eps, x, y) codes, oneminush the number
    of accidental (1 - h) factors, sign the filling sign, and mono the
    invertible monomial absorbed from the type-3 denominators.
    """
    N = len(lam)
    ps = partial_sums(lam)
    n = ps[N]
    unions_I = [union_prefix(Iprime, k) for k in range(N + 1)]
    unions_J = [union_prefix(J, k) for k in range(N + 1)]

    def val(k: int, p: int) -> int:
        # z-index substituted for the variable in column k, position p
        if k == N:
            return sigma[p - 1]
        return unions_J[k][filling[k - 1][p - 1] - 1]

    counter: Counter = Counter()
    oneminush = 0
    sign = 1
    mono_exp = [0] * (n + 1)
    for k in range(1, N):
        uk, uk1 = unions_I[k], unions_I[k + 1]
        sign *= perm_sign(filling[k - 1])
        for p in range(1, ps[k] + 1):
            row = uk[p - 1]
            y = val(k, p)
            mono_exp[y] += ps[k] - p
            for c in range(1, ps[k + 1] + 1):
                if uk1[c - 1] == row:
                    continue
                eps = 1 if uk1[c - 1] < row else 0
                x = val(k + 1, c)
                if x == y:
                    if eps == 0:
                        return None, 0, 0, ()
                    oneminush += 1
                else:
                    counter[(eps, x, y)] += 1
            for p2 in range(p + 1, ps[k] + 1):
                # type-3 numerators; denominators go into sign and mono
                counter[(1, val(k, p2), y)] += 1
    mono = tuple((vz(a), e) for a, e in enumerate(mono_exp) if e)
    return counter, oneminush, sign, mono


def _expand_counter(counter: Counter) -> LPoly:
    p = LPoly.const(1)
    for (eps, x, y), mult in counter.items():
        b = one_minus(zratio(x, y), eps)
        for _ in range(mult):
            p = p * b
    return p


def _vandermonde_factors(lam: tuple, J: IdxPartition) -> list[LPoly]:
    out = []
    for k in range(1, len(lam)):
        u = union_prefix(J, k)
        for a in range(len(u)):
            for b in range(a + 1, len(u)):
                out.append(LPoly.variable(vz(u[a])) - LPoly.variable(vz(u[b])))
    return out


def _e_offdiag_counter(lam: tuple, J: IdxPartition) -> Counter:
    c: Counter = Counter()
    for k in range(1, len(lam)):
        u = union_prefix(J, k)
        for x in u:
            for y in u:
                if x != y:
                    c[(1, x, y)] += 1
    return c


@lru_cache(maxsize=None)
def weight_at(lam: tuple, sigma: Perm, I: IdxPartition, J: IdxPartition) -> LPoly:
    """W_{sigma,I}(z_J, z, h), assembled from the filled tables."""
    check_partition(I, lam)
    check_partition(J, lam)
    Iprime = apply_perm(perm_inverse(sigma), I)
    total = LPoly()
    for f in fillings(lam):
        counter, acc, sign, mono = _term_factors(lam, Iprime, sigma, J, f)
        if counter is None:
            continue
        term = _expand_counter(counter) * (1 - H) ** acc
        total = total + term.mul_monomial(mono, sign)
    if total.is_zero():
        return total
    total = div_factors(total, ((v, 1) for v in _vandermonde_factors(lam, J)))
    return total * (1 - H) ** lam_onebrace(lam)


def E_at(lam: tuple, J: IdxPartition) -> LPoly:
    """E(z_J, h), expanded."""
    p = (1 - H) ** lam_onebrace(lam)
    for key, mult in _e_offdiag_counter(lam, J).items():
        _, x, y = key
        p = p * one_minus(zratio(x, y), 1) ** mult
    return p


def E_symbolic(lam: tuple) -> LPoly:
    """E(t, h) in the t variables."""
    ps = partial_sums(lam)
    p = LPoly.const(1)
    for k in range(1, len(lam)):
        for a in range(1, ps[k] + 1):
            for b in range(1, ps[k] + 1):
                p = p * (_ratio(vt(k, b), vt(k, a), 1) if a != b else (1 - H))
    return p


@lru_cache(maxsize=None)
def wtilde_at(lam: tuple, sigma: Perm, I: IdxPartition, J: IdxPartition) -> LPoly:
    """The reduced restriction W_{sigma,I}(z_J,z,h) / E(z_J,h)."""
    Iprime = apply_perm(perm_inverse(sigma), I)
    e_counter = _e_offdiag_counter(lam, J)
    total = LPoly()
    for f in fillings(lam):
        counter, acc, sign, mono = _term_factors(lam, Iprime, sigma, J, f)
        if counter is None:
            continue
        reduced = counter - e_counter
        if sum(reduced.values()) + sum(e_counter.values()) != sum(counter.values()):
            # some E factor is missing from this term: take the slow route
            return _wtilde_at_slow(lam, sigma, I, J)
        term = _expand_counter(reduced) * (1 - H) ** acc
        total = total + term.mul_monomial(mono, sign)
    if total.is_zero():
        return total
    return div_factors(total, ((v, 1) for v in _vandermonde_factors(lam, J)))


def _wtilde_at_slow(lam: tuple, sigma: Perm, I: IdxPartition,
                    J: IdxPartition) -> LPoly:
    w = weight_at(lam, sigma, I, J)
    if w.is_zero():
        return w
    w = exact_div(w, (1 - H) ** lam_onebrace(lam))
    for (eps, x, y), mult in _e_offdiag_counter(lam, J).items():
        for _ in range(mult):
            w = exact_div(w, one_minus(zratio(x, y), eps))
    return w


def invert_zh(p: LPoly) -> LPoly:
    """Substitute z -> z^{-1}, h -> h^{-1}."""
    return p.invert_vars([v for v in p.variables()])


def wtilde_symbolic(lam: tuple, sigma: Perm, I: IdxPartition) -> "RatFunc":
    """W_{sigma,I}(t,z,h)/E(t,h) as a rational function, t kept symbolic."""
    from .ratfunc import RatFunc

    ps = partial_sums(lam)
    factors = [(1 - H)] * lam_onebrace(lam)
    for k in range(1, len(lam)):
        for a in range(1, ps[k] + 1):
            for b in range(1, ps[k] + 1):
                if a != b:
                    factors.append(_ratio(vt(k, b), vt(k, a), 1))
    return RatFunc.from_factors([weight_sigma(lam, sigma, I)], factors)


def wtilde_at_inv(lam: tuple, sigma: Perm, I: IdxPartition,
                  J: IdxPartition) -> LPoly:
    """W_{sigma,I}(z_J^{-1}, z^{-1}, h^{-1}) / E(z_J^{-1}, h^{-1})."""
    return invert_zh(wtilde_at(lam, sigma, I, J))


# -- modified weight functions -----------------------------------------


def q_of(lam: tuple) -> int:
    """Greatest index with a nonzero part."""
    for k in range(len(lam), 0, -1):
        if lam[k - 1] > 0:
            return k
    return 0


def modified_weight(lam: tuple, I: IdxPartition, variant: int) -> LPoly:
    """M1 (variant=1) or M2 (variant=2) modification of W_I."""
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    w = weight_function(lam, I)
    N = len(lam)
    ps = partial_sums(lam)
    q = q_of(lam)
    mapping = {vt(k, i): vz(i)
               for k in range(q, N) for i in range(1, ps[k] + 1)}
    if variant == 2:
        gamma_list: list[int] = []
        for m in range(1, N + 1):
            gamma_list.extend(vg(m, j) for j in range(1, lam[m - 1] + 1))
        for k in range(1, q):
            for a in range(1, ps[k] + 1):
                mapping[vt(k, a)] = gamma_list[a - 1]
    return w.rename(mapping)


def subst_zJ(p: LPoly, lam: tuple, J: IdxPartition) -> LPoly:
    """Fixed-point substitution: t^(k)_a -> z at the a-th smallest index of
    the union of the first k blocks of J, and gamma_{k,a} -> z at the a-th
    smallest index of block k of J."""
    mapping: dict[int, int] = {}
    ps = partial_sums(lam)
    for k in range(1, len(lam)):
        u = union_prefix(J, k)
        for a in range(1, ps[k] + 1):
            mapping[vt(k, a)] = vz(u[a - 1])
    for k, blk in enumerate(J, start=1):
        for a, idx in enumerate(blk, start=1):
            mapping[vg(k, a)] = vz(idx)
    return p.rename(mapping)


# -- recursions ---------------------------------------------------------


def recursion_check(lam: tuple) -> list[dict]:
    """Exchange relations for adjacent transpositions, checked exactly.

    Returns a list of counterexample records; empty means all identities
    hold for this composition.
    """
    from itertools import permutations as all_perms

    from .combinatorics import enumerate_partitions, membership, swap_numbers

    n = sum(lam)
    bad = []
    for I in enumerate_partitions(lam):
        colors = membership(I)
        for sigma in all_perms(range(1, n + 1)):
            for a in range(1, n):
                sa, sa1 = sigma[a - 1], sigma[a]
                k, l = colors[sa - 1], colors[sa1 - 1]
                sigma_s = sigma[:a - 1] + (sa1, sa) + sigma[a + 1:]
                lhs = weight_sigma(lam, sigma_s, I)
                w1 = weight_sigma(lam, sigma, I)
                if k == l:
                    ok = lhs == w1
                else:
                    # identities cleared of the 1 - h z_sa/z_sa1 denominator
                    w2 = weight_sigma(lam, sigma, swap_numbers(I, sa, sa1))
                    cleared = lhs * one_minus(zratio(sa, sa1), 1)
                    if k < l:
                        rhs = w1 * one_minus(zratio(sa, sa1)) * H + w2 * (1 - H)
                    else:
                        rhs = w1 * one_minus(zratio(sa, sa1)) \
                            + w2 * ((1 - H).mul_monomial(zratio(sa, sa1)))
                    ok = cleared == rhs
                if not ok:
                    bad.append({"sigma": sigma, "a": a, "I": I,
                                "relation": "exchange"})
    bad.extend(divided_difference_recursion_check(lam))
    return bad


def divided_difference_recursion_check(lam: tuple) -> list[dict]:
    """W_{s_a(I)} = pi_{z_a,z_{a+1}} W_I - h z_a d_{z_a,z_{a+1}} W_I
    whenever a sits in an earlier block than a+1."""
    from .combinatorics import enumerate_partitions, membership, swap_numbers

    n = sum(lam)
    bad = []
    for I in enumerate_partitions(lam):
        colors = membership(I)
        for a in range(1, n):
            if colors[a - 1] >= colors[a]:
                continue
            wI = RatFunc.from_poly(weight_function(lam, I))
            x, y = vz(a), vz(a + 1)
            rhs = divided_diff(wI, x, y, "trigonometric") \
                - divided_diff(wI, x, y, "rational").mul_poly(
                    H.mul_monomial(((x, 1),)))
            lhs = RatFunc.from_poly(weight_function(lam, swap_numbers(I, a, a + 1)))
            if not lhs == rhs:
                bad.append({"I": I, "a": a, "relation": "divided-difference"})
    return bad
