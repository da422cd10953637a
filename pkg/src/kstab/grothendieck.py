"""Double Grothendieck polynomials and the h = 0 specialization.

The polynomials live in the alpha/beta Laurent variables and are produced
by trigonometric divided differences descending from the longest
permutation.  Setting h = 0 and collapsing all t-levels onto one variable
family turns the weight functions into these polynomials under an
inverse-variable dictionary, and the h = 0 restrictions of the classes
satisfy an interpolation characterization with a one-sided Newton bound.
"""

from __future__ import annotations

from functools import lru_cache

from .combinatorics import (
    IdxPartition, Perm, enumerate_partitions, flatten_desc, identity_perm,
    longest_perm, membership, partial_sums, sigma_for_groth,
)
from .laurent import H, LPoly, VH, newton_interval, one_minus, va, vb, vt, vz, zratio
from .ratfunc import RatFunc, divided_diff
from .weights import weight_at, weight_function
from .envelope import e_and_polarization

MAX_N = 6


@lru_cache(maxsize=None)
def groth_poly(perm: Perm) -> LPoly:
    """The double Grothendieck polynomial of a permutation of 1..n."""
    n = len(perm)
    if n > MAX_N:
        raise ValueError(f"permutations up to S_{MAX_N} only")
    if perm == longest_perm(n):
        out = LPoly.const(1)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i + j <= n:
                    out = out * one_minus(((va(j), -1), (vb(i), 1)))
        return out
    # find an ascent and recurse towards the longest permutation
    for i in range(1, n):
        if perm[i - 1] < perm[i]:
            longer = perm[:i - 1] + (perm[i], perm[i - 1]) + perm[i + 1:]
            base = RatFunc.from_poly(groth_poly(longer))
            img = divided_diff(base, va(i), va(i + 1), "trigonometric")
            return img.to_poly()
    raise AssertionError("unreachable: only the longest element has no ascent")


def groth_recursion_independence(n: int) -> bool:
    """Descending along any ascent gives the same polynomial."""
    from itertools import permutations

    for perm in permutations(range(1, n + 1)):
        results = []
        for i in range(1, n):
            if perm[i - 1] < perm[i]:
                longer = perm[:i - 1] + (perm[i], perm[i - 1]) + perm[i + 1:]
                img = divided_diff(RatFunc.from_poly(groth_poly(longer)),
                                   va(i), va(i + 1), "trigonometric")
                results.append(img.to_poly())
        if any(r != groth_poly(perm) for r in results):
            return False
    return True


def groth_descent_check(n: int) -> bool:
    """pi_{a_i, a_{i+1}} sends the polynomial of sigma to that of sigma s_i
    whenever the length decreases."""
    from itertools import permutations

    from .combinatorics import perm_length

    for perm in permutations(range(1, n + 1)):
        for i in range(1, n):
            shorter = perm[:i - 1] + (perm[i], perm[i - 1]) + perm[i + 1:]
            if perm_length(shorter) < perm_length(perm):
                img = divided_diff(RatFunc.from_poly(groth_poly(perm)),
                                   va(i), va(i + 1), "trigonometric")
                if img.to_poly() != groth_poly(shorter):
                    return False
    return True


def wbar(lam: tuple, I: IdxPartition) -> LPoly:
    """The weight function with every t-level collapsed onto the first
    family and h set to zero."""
    w = weight_function(lam, I)
    ps = partial_sums(lam)
    mapping = {vt(k, a): vt(1, a)
               for k in range(2, len(lam)) for a in range(1, ps[k] + 1)}
    return w.rename(mapping).subst_scalar(VH, 0)


def groth_of_partition_specialized(n: int, I: IdxPartition) -> LPoly:
    """The Grothendieck polynomial of sigma_I in the inverse variables:
    alpha_i -> 1/z_{n+1-i} and beta_j -> 1/t^(1)_j."""
    g = groth_poly(sigma_for_groth(I))
    mapping = {}
    for i in range(1, n + 1):
        mapping[va(i)] = LPoly.variable(vz(n + 1 - i), -1)
    for j in range(1, n):
        mapping[vb(j)] = LPoly.variable(vt(1, j), -1)
    return g.subst(mapping)


def specialization_check(lam: tuple) -> list[dict]:
    """The collapsed h=0 weight functions are Grothendieck polynomials, and
    refining a partition into descending singleton blocks does not change
    them."""
    n = sum(lam)
    bad = []
    ones = tuple(1 for _ in range(n))
    for I in enumerate_partitions(lam):
        left = wbar(lam, I)
        if left != groth_of_partition_specialized(n, I):
            bad.append({"I": I, "kind": "dictionary"})
        if left != wbar(ones, flatten_desc(I)):
            bad.append({"I": I, "kind": "flattening"})
    return bad


# -- interpolation characterization at h = 0 --------------------------------


class LowerEndpointViolation(ArithmeticError):
    """The one-sided order is only defined for intervals starting at 0."""


def upper_newton(f: LPoly, J: IdxPartition) -> int:
    lo, hi = newton_interval(f, dict(enumerate(membership(J), start=1)))
    if lo != 0:
        raise LowerEndpointViolation(f"interval starts at {lo}, not 0")
    return hi


def schubert_bound_poly(J: IdxPartition) -> LPoly:
    """prod over cross-block pairs a < b of (1 - z_b/z_a)."""
    colors = membership(J)
    n = len(colors)
    out = LPoly.const(1)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if colors[a - 1] < colors[b - 1]:
                out = out * one_minus(zratio(b, a))
    return out


def schubert_small(f: LPoly, J: IdxPartition) -> bool:
    if f.is_zero():
        return True
    return upper_newton(f, J) < upper_newton(schubert_bound_poly(J), J)


def schubert_restrictions(lam: tuple, I: IdxPartition) -> dict:
    """h = 0 restrictions of the polarized structure-sheaf class."""
    idp = identity_perm(sum(lam))
    return {J: weight_at(lam, idp, I, J).subst_scalar(VH, 0)
            for J in enumerate_partitions(lam)}


def schubert_axioms_check(lam: tuple,
                          mutate: tuple | None = None) -> list[dict]:
    """Value at the own point and smallness elsewhere, plus the instance
    uniqueness argument (a nonzero multiple of the bound product is never
    small)."""
    bad = []
    for I in enumerate_partitions(lam):
        values = schubert_restrictions(lam, I)
        if mutate and mutate[0] == I:
            values = dict(values)
            values[mutate[1]], values[mutate[2]] = \
                values[mutate[2]], values[mutate[1]]
        for J, val in values.items():
            if J == I:
                if val != schubert_bound_poly(I):
                    bad.append({"axiom": "1", "I": I})
            else:
                try:
                    if not schubert_small(val, J):
                        bad.append({"axiom": "2", "I": I, "J": J})
                except LowerEndpointViolation:
                    bad.append({"axiom": "2-lower-endpoint", "I": I, "J": J})
    for J in enumerate_partitions(lam):
        bound = schubert_bound_poly(J)
        for g in (LPoly.const(1), LPoly.const(2) + LPoly.variable(VH)):
            if schubert_small(bound * g, J):
                bad.append({"axiom": "uniqueness", "J": J})
    return bad


def gamma_representative_check(lam: tuple) -> bool:
    """The inverse-variable Grothendieck polynomial in the Chern roots has
    the same restrictions as the h=0 weight function."""
    from .laurent import vg
    from .weights import subst_zJ

    n = sum(lam)
    for I in enumerate_partitions(lam):
        g = groth_poly(sigma_for_groth(I))
        mapping = {}
        for i in range(1, n + 1):
            mapping[va(i)] = LPoly.variable(vz(n + 1 - i), -1)
        gammas = [vg(k, a) for k in range(1, len(lam) + 1)
                  for a in range(1, lam[k - 1] + 1)]
        for j, gv in enumerate(gammas, start=1):
            if j <= n - 1:
                mapping[vb(j)] = LPoly.variable(gv, -1)
        rep = g.subst(mapping)
        expected = schubert_restrictions(lam, I)
        for J in enumerate_partitions(lam):
            if subst_zJ(rep, lam, J) != expected[J]:
                return False
    return True


def pe_h0_check(lam: tuple) -> bool:
    """Axiom value at the own point is the h = 0 limit of the product form
    of the polarized Euler class."""
    idp = identity_perm(sum(lam))
    for I in enumerate_partitions(lam):
        pe0 = e_and_polarization(idp, I).pe.subst_scalar(VH, 0)
        if pe0 != schubert_bound_poly(I):
            return False
    return True
