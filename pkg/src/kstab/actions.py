"""The trigonometric R-matrix, symmetric-group and Hecke-type operators.

Vector-valued objects live on colour sequences: the basis vector
v_{i_1} x ... x v_{i_n} of the n-fold tensor power of C^N is keyed by the
tuple (i_1, ..., i_n).  A vector-valued function maps colour sequences to
rational functions of z_1..z_n, h; a tensor operator maps pairs
(out_state, in_state) to rational functions.

The operators defined here mix the coefficients and the z variables
(through the swap K_i), so they are implemented as functions on vectors,
not as matrices.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct

from .combinatorics import Perm, reduced_word
from .laurent import H, LPoly, one_minus, vz, zratio
from .ratfunc import RatFunc

State = tuple  # colour sequence, length n, entries 1..N
Vec = dict  # State -> RatFunc
TensorOp = dict  # (State, State) -> RatFunc


def vec_add(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for s, c in b.items():
        if s in out:
            v = out[s] + c
            if v.is_zero():
                del out[s]
            else:
                out[s] = v
        else:
            out[s] = c
    return out


def vec_scale(a: Vec, c: RatFunc) -> Vec:
    if c.is_zero():
        return {}
    return {s: v * c for s, v in a.items()}


def vec_eq(a: Vec, b: Vec) -> bool:
    for s in set(a) | set(b):
        va = a.get(s, RatFunc.const(0))
        vb = b.get(s, RatFunc.const(0))
        if not va == vb:
            return False
    return True


def vec_is_zero(a: Vec) -> bool:
    return all(v.is_zero() for v in a.values())


# -- trigonometric R-matrix ----------------------------------------------


def rmatrix_coeffs(z: RatFunc):
    """The four entries of the 2x2 block of the R-matrix at argument z.

    Returned as (aa, ab, ba, bb) for the ordered basis (v_a x v_b,
    v_b x v_a) with a < b; columns are images.
    """
    denom = RatFunc.const(1) - RatFunc.from_poly(H) * z
    dinv = denom.inverse()
    one = RatFunc.const(1)
    h = RatFunc.from_poly(H)
    return ((one - z) * dinv, (one - h) * dinv,
            (one - h) * z * dinv, h * (one - z) * dinv)


@lru_cache(maxsize=None)
def _zpair_coeffs(a: int, b: int):
    """Cached block coefficients at the argument z_a/z_b."""
    return rmatrix_coeffs(RatFunc.from_poly(LPoly.monomial(zratio(a, b))))


def apply_rmatrix(vec: Vec, i: int, j: int, z: RatFunc,
                  coeffs=None) -> Vec:
    """Apply the R-matrix with argument z, first slot on i, second on j."""
    if i > j:
        # R^{(i,j)} with i > j is P R^{(j,i)} P on the underlying slots
        return _swap_states(apply_rmatrix(_swap_states(vec, i, j), j, i, z,
                                          coeffs), i, j)
    aa, ab, ba, bb = coeffs if coeffs is not None else rmatrix_coeffs(z)
    out: Vec = {}
    for state, c in vec.items():
        ci, cj = state[i - 1], state[j - 1]
        if ci == cj:
            out = vec_add(out, {state: c})
            continue
        a, b = min(ci, cj), max(ci, cj)
        lo = state[:i - 1] + (a,) + state[i:j - 1] + (b,) + state[j:]
        hi = state[:i - 1] + (b,) + state[i:j - 1] + (a,) + state[j:]
        if ci < cj:
            out = vec_add(out, {lo: c * aa, hi: c * ba})
        else:
            out = vec_add(out, {lo: c * ab, hi: c * bb})
    return out


def _swap_states(vec: Vec, i: int, j: int) -> Vec:
    out: Vec = {}
    for state, c in vec.items():
        s = list(state)
        s[i - 1], s[j - 1] = s[j - 1], s[i - 1]
        out[tuple(s)] = c
    return out


def rmatrix_op(N: int, n: int, i: int, j: int, z: RatFunc) -> TensorOp:
    """The R-matrix on slots (i, j) as an explicit sparse operator."""
    op: TensorOp = {}
    for state in iproduct(range(1, N + 1), repeat=n):
        img = apply_rmatrix({state: RatFunc.const(1)}, i, j, z)
        for out_state, c in img.items():
            if not c.is_zero():
                op[(out_state, state)] = c
    return op


def op_mul(a: TensorOp, b: TensorOp) -> TensorOp:
    """Composition a o b."""
    by_mid: dict = {}
    for (out_s, mid_s), c in a.items():
        by_mid.setdefault(mid_s, []).append((out_s, c))
    out: TensorOp = {}
    for (mid_s, in_s), cb in b.items():
        for out_s, ca in by_mid.get(mid_s, ()):
            key = (out_s, in_s)
            v = ca * cb
            if key in out:
                v = out[key] + v
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
    return out


def op_apply(a: TensorOp, vec: Vec) -> Vec:
    out: Vec = {}
    for (out_s, in_s), c in a.items():
        v = vec.get(in_s)
        if v is None or v.is_zero():
            continue
        w = c * v
        if out_s in out:
            w = out[out_s] + w
        if w.is_zero():
            out.pop(out_s, None)
        else:
            out[out_s] = w
    return out


def op_add(a: TensorOp, b: TensorOp) -> TensorOp:
    out = dict(a)
    for key, c in b.items():
        v = out.get(key)
        v = c if v is None else v + c
        if v.is_zero():
            out.pop(key, None)
        else:
            out[key] = v
    return out


def op_scale(a: TensorOp, c) -> TensorOp:
    if not isinstance(c, RatFunc):
        c = RatFunc.const(c)
    if c.is_zero():
        return {}
    return {k: v * c for k, v in a.items()}


def op_identity(N: int, n: int) -> TensorOp:
    return {(s, s): RatFunc.const(1) for s in iproduct(range(1, N + 1), repeat=n)}


def op_eq(a: TensorOp, b: TensorOp) -> bool:
    for key in set(a) | set(b):
        va = a.get(key, RatFunc.const(0))
        vb = b.get(key, RatFunc.const(0))
        if not va == vb:
            return False
    return True


def op_subst_scalar(a: TensorOp, v: int, value) -> TensorOp:
    out = {}
    for key, c in a.items():
        cc = c.subst_scalar(v, value)
        if not cc.is_zero():
            out[key] = cc
    return out


# -- R-matrix identities -------------------------------------------------


def zz(a: int, b: int) -> RatFunc:
    """The monomial z_a / z_b as a rational function."""
    return RatFunc.from_poly(LPoly.monomial(zratio(a, b)))


def ybe_check(N: int) -> bool:
    """R12(z2/z1) R13(z3/z1) R23(z3/z2) = R23 R13 R12 on three slots."""
    lhs = op_mul(rmatrix_op(N, 3, 1, 2, zz(2, 1)),
                 op_mul(rmatrix_op(N, 3, 1, 3, zz(3, 1)),
                        rmatrix_op(N, 3, 2, 3, zz(3, 2))))
    rhs = op_mul(rmatrix_op(N, 3, 2, 3, zz(3, 2)),
                 op_mul(rmatrix_op(N, 3, 1, 3, zz(3, 1)),
                        rmatrix_op(N, 3, 1, 2, zz(2, 1))))
    return op_eq(lhs, rhs)


def inversion_check(N: int) -> bool:
    """R^{(1,2)}(z2/z1) R^{(2,1)}(z1/z2) = 1."""
    lhs = op_mul(rmatrix_op(N, 2, 1, 2, zz(2, 1)),
                 rmatrix_op(N, 2, 2, 1, zz(1, 2)))
    return op_eq(lhs, op_identity(N, 2))


def rf_invert_all(c: RatFunc) -> RatFunc:
    """Substitute v -> 1/v for every variable of c (z -> 1/z, h -> 1/h)."""
    vs = set(c.num.variables())
    for f in c.den:
        vs.update(f.variables())
    return c.invert_vars(vs)


def duality_check() -> bool:
    """Transposed 2x2 block at (z, h) = diag(1/h, 1) block(1/z, 1/h) diag(1, h)."""
    aa, ab, ba, bb = rmatrix_coeffs(zz(2, 1))
    lhs = [[aa, ba], [ab, bb]]
    iaa, iab, iba, ibb = (rf_invert_all(c) for c in (aa, ab, ba, bb))
    h = RatFunc.from_poly(H)
    hinv = h.inverse()
    rhs = [[hinv * iaa, hinv * iab * h], [iba, ibb * h]]
    return all(lhs[r][c] == rhs[r][c] for r in range(2) for c in range(2))


# -- Hecke-type operators -------------------------------------------------


def swap_z(f: RatFunc, i: int, j: int) -> RatFunc:
    return f.rename({vz(i): vz(j), vz(j): vz(i)})


@lru_cache(maxsize=None)
def _s_hat_parts(i: int):
    num = RatFunc.from_poly(one_minus(zratio(i + 1, i), 1))
    dinv = RatFunc.from_poly(one_minus(zratio(i + 1, i))).inverse()
    hm1 = RatFunc.from_poly(H - 1)
    return num * dinv, hm1 * dinv


def s_hat(i: int, f: RatFunc) -> RatFunc:
    """hat s_i = (1 - h z_{i+1}/z_i)/(1 - z_{i+1}/z_i) K_i + (h-1)/(1 - z_{i+1}/z_i)."""
    a, b = _s_hat_parts(i)
    return a * swap_z(f, i, i + 1) + b * f


def s_hat_inv(i: int, f: RatFunc) -> RatFunc:
    """Inverse from the quadratic relation: hat s^{-1} = (hat s + 1 - h)/h."""
    hinv = RatFunc.from_poly(H).inverse()
    return (s_hat(i, f) + RatFunc.from_poly(1 - H) * f) * hinv


def s_hat_word(word: list[int], f: RatFunc) -> RatFunc:
    for i in reversed(word):
        f = s_hat(i, f)
    return f


def s_tilde(i: int, vec: Vec) -> Vec:
    """tilde s_i = P^{(i,i+1)} R^{(i,i+1)}(z_i/z_{i+1}) K_i."""
    swapped = {s: swap_z(c, i, i + 1) for s, c in vec.items()}
    r = apply_rmatrix(swapped, i, i + 1, None, coeffs=_zpair_coeffs(i, i + 1))
    return _swap_states(r, i, i + 1)


@lru_cache(maxsize=None)
def _s_check_parts(i: int):
    num = RatFunc.from_poly(one_minus(zratio(i + 1, i), 1))
    dinv = RatFunc.from_poly(one_minus(zratio(i + 1, i))).inverse()
    extra = RatFunc.from_poly((H - 1).mul_monomial(zratio(i + 1, i))) * dinv
    return num * dinv, extra


def s_check(i: int, vec: Vec) -> Vec:
    """check s_i, the Hecke companion of tilde s_i."""
    a, b = _s_check_parts(i)
    return vec_add(vec_scale(s_tilde(i, vec), a), vec_scale(vec, b))


def s_tilde_word(word: list[int], vec: Vec) -> Vec:
    for i in reversed(word):
        vec = s_tilde(i, vec)
    return vec


def s_tilde_perm(sigma: Perm, vec: Vec) -> Vec:
    return s_tilde_word(reduced_word(sigma), vec)


# -- relation checks on monomial boxes ------------------------------------


def monomial_box(n: int, radius: int):
    """All z-monomials with exponents in [-radius, radius]^n."""
    for exps in iproduct(range(-radius, radius + 1), repeat=n):
        yield RatFunc.from_poly(LPoly.monomial(
            tuple((vz(a + 1), e) for a, e in enumerate(exps) if e)))


def geometric_r_matrix(lam: tuple, sigma_to: Perm, sigma_from: Perm):
    """R_{sigma_to, sigma_from} on the weight block of lam: each class of
    the source basis re-expanded in the target basis."""
    from .combinatorics import enumerate_partitions
    from .envelope import solve_in_kappa_basis
    from .linalg import RFMatrix
    from .weights import wtilde_at

    parts = enumerate_partitions(lam)
    cols = []
    for J in parts:
        values = {I: wtilde_at(lam, sigma_from, J, I) for I in parts}
        coords = solve_in_kappa_basis(lam, sigma_to, values)
        cols.append([coords[I] for I in parts])
    return parts, RFMatrix([[cols[c][r] for c in range(len(parts))]
                            for r in range(len(parts))])


def trig_r_block(lam: tuple, i: int, j: int, z: RatFunc):
    """Matrix of R^{(i,j)}(z) restricted to the weight block of lam."""
    from .combinatorics import enumerate_partitions, membership
    from .linalg import RFMatrix

    parts = enumerate_partitions(lam)
    states = [membership(I) for I in parts]
    idx = {s: r for r, s in enumerate(states)}
    cols = []
    for s in states:
        img = apply_rmatrix({s: RatFunc.const(1)}, i, j, z)
        col = [RatFunc.const(0)] * len(states)
        for out_s, c in img.items():
            col[idx[out_s]] = c
        cols.append(col)
    return RFMatrix([[cols[c][r] for c in range(len(states))]
                     for r in range(len(states))])


def geom_r_check(n: int, N: int) -> list[dict]:
    """The geometric R-matrix from Stab matrices equals the trigonometric
    R-matrix in the permuted slots, on every weight block."""
    from itertools import permutations

    from .combinatorics import compositions
    from .linalg import RFMatrix

    bad = []
    for lam in compositions(n, N):
        for sigma in permutations(range(1, n + 1)):
            for a in range(1, n):
                sig_s = sigma[:a - 1] + (sigma[a], sigma[a - 1]) + sigma[a + 1:]
                _, geom = geometric_r_matrix(lam, sig_s, sigma)
                trig = trig_r_block(lam, sigma[a - 1], sigma[a],
                                    zz(sigma[a], sigma[a - 1]))
                if not geom == trig:
                    bad.append({"lam": lam, "sigma": sigma, "a": a})
    return bad


def cocycle_check(n: int, N: int, triples) -> list[dict]:
    """R_{s'', s} = R_{s'', s'} R_{s', s} on sampled permutation triples."""
    from .combinatorics import compositions

    bad = []
    for lam in compositions(n, N):
        for s2, s1, s0 in triples:
            _, direct = geometric_r_matrix(lam, s2, s0)
            _, left = geometric_r_matrix(lam, s2, s1)
            _, right = geometric_r_matrix(lam, s1, s0)
            if not direct == left * right:
                bad.append({"lam": lam, "triple": (s2, s1, s0)})
    return bad


def hecke_check_s_check(n: int, N: int, radius: int = 2) -> list[str]:
    """Quadratic, braid, commutation and z-conjugation relations of check s
    on every basis vector times every monomial in the box."""
    bad = []
    hh = RatFunc.from_poly(H)

    def zmul(vec: Vec, a: int) -> Vec:
        za = RatFunc.from_poly(LPoly.variable(vz(a)))
        return vec_scale(vec, za)

    for state in iproduct(range(1, N + 1), repeat=n):
        for m in monomial_box(n, radius):
            f: Vec = {state: m}
            for i in range(1, n):
                sf = s_check(i, f)
                lhs = vec_add(vec_add(s_check(i, sf), vec_scale(sf, hh)),
                              vec_add(vec_scale(sf, RatFunc.const(-1)),
                                      vec_scale(f, -hh)))
                if not vec_is_zero(lhs):
                    bad.append(f"(s-1)(s+h)=0 fails i={i} state={state}")
                if not vec_eq(s_check(i, zmul(sf, i)),
                              vec_scale(zmul(f, i + 1), hh)):
                    bad.append(f"s z s = h z fails i={i} state={state}")
                for j in range(1, n + 1):
                    if j not in (i, i + 1):
                        if not vec_eq(s_check(i, zmul(f, j)), zmul(sf, j)):
                            bad.append(f"s_i z_j fails i={i} j={j}")
            for i in range(1, n - 1):
                lhs = s_check(i, s_check(i + 1, s_check(i, f)))
                rhs = s_check(i + 1, s_check(i, s_check(i + 1, f)))
                if not vec_eq(lhs, rhs):
                    bad.append(f"braid fails i={i} state={state}")
            for i in range(1, n):
                for j in range(i + 2, n):
                    if not vec_eq(s_check(i, s_check(j, f)),
                                  s_check(j, s_check(i, f))):
                        bad.append(f"commuting fails {i},{j}")
    return bad


def s_tilde_relations_check(n: int, N: int, radius: int = 1) -> list[str]:
    """tilde s is an involution satisfying braid relations, and conjugates
    the multiplication operators z_i correctly."""
    bad = []
    for state in iproduct(range(1, N + 1), repeat=n):
        for m in monomial_box(n, radius):
            f: Vec = {state: m}
            for i in range(1, n):
                if not vec_eq(s_tilde(i, s_tilde(i, f)), f):
                    bad.append(f"involution fails i={i} state={state}")
                za = RatFunc.from_poly(LPoly.variable(vz(i)))
                zb = RatFunc.from_poly(LPoly.variable(vz(i + 1)))
                if not vec_eq(s_tilde(i, vec_scale(s_tilde(i, f), za)),
                              vec_scale(f, zb)):
                    bad.append(f"s z_i s = z_(i+1) fails i={i}")
            for i in range(1, n - 1):
                lhs = s_tilde(i, s_tilde(i + 1, s_tilde(i, f)))
                rhs = s_tilde(i + 1, s_tilde(i, s_tilde(i + 1, f)))
                if not vec_eq(lhs, rhs):
                    bad.append(f"braid fails i={i} state={state}")
    return bad


def t_hecke_check(n: int, radius: int = 2) -> list[str]:
    """The affine Hecke presentation after h = q^{-2}, t_i = q^{-1} hat s_i^{-1}."""
    from .laurent import vq

    q = vq(1)
    qrf = RatFunc.from_poly(LPoly.variable(q))
    qinv = qrf.inverse()
    hsub = {H.variables()[0]: LPoly.variable(q, -2)}

    def t_op(i: int, f: RatFunc) -> RatFunc:
        return qinv * s_hat_inv(i, f).subst(hsub)

    bad = []
    zs = [None] + [RatFunc.from_poly(LPoly.variable(vz(a)))
                   for a in range(1, n + 1)]
    for f in monomial_box(n, radius):
        for i in range(1, n):
            tf = t_op(i, f)
            lhs = t_op(i, tf) - qrf * tf + qinv * tf - f
            if not lhs.is_zero():
                bad.append(f"(t-q)(t+1/q)=0 fails i={i} on {f!r}")
            if not t_op(i, zs[i] * t_op(i, f)) == zs[i + 1] * f:
                bad.append(f"t z_i t = z_(i+1) fails i={i} on {f!r}")
        for i in range(1, n - 1):
            if not t_op(i, t_op(i + 1, t_op(i, f))) == \
                    t_op(i + 1, t_op(i, t_op(i + 1, f))):
                bad.append(f"t braid fails at i={i}")
    return bad


# -- invariance criteria and the theta maps --------------------------------


def s_tilde_fixed_iff_conditions(lam: tuple, fI: dict, j: int) -> tuple:
    """Both sides of the coordinate criterion for tilde s_j f = f.

    fI maps index partitions to scalar RatFuncs; returns (invariant,
    conditions_hold)."""
    from .combinatorics import enumerate_partitions, membership, swap_numbers

    vec: Vec = {}
    for I, c in fI.items():
        if not c.is_zero():
            vec[membership(I)] = c
    invariant = vec_eq(s_tilde(j, vec), vec)
    conds = True
    for I in enumerate_partitions(lam):
        colors = membership(I)
        a, b = colors[j - 1], colors[j]
        fI_I = fI[I]
        fs = fI[swap_numbers(I, j, j + 1)]
        if a == b:
            ok = fI_I == swap_z(fI_I, j, j + 1)
        elif a < b:
            ok = fs == s_hat_inv(j, fI_I)
        else:
            ok = fs == s_hat(j, fI_I)
        conds = conds and ok
    return invariant, conds


def theta(lam: tuple, f: RatFunc) -> Vec:
    """theta via Hecke words: I-th coordinate is hat sigma_I of the
    reversed f over the reversed diagonal Euler factor."""
    from .combinatorics import (
        enumerate_partitions, i_max, membership, min_coset_perm, reduced_word,
    )
    from .envelope import Q_factors

    n = sum(lam)
    imax = i_max(lam)
    rev = {vz(a): vz(n + 1 - a) for a in range(1, n + 1) if a != n + 1 - a}
    fcheck = f.rename(rev) if rev else f
    qcheck = RatFunc.from_factors([LPoly.const(1)], Q_factors(lam, imax))
    base = fcheck * qcheck
    out: Vec = {}
    for I in enumerate_partitions(lam):
        word = reduced_word(min_coset_perm(imax, I))
        out[membership(I)] = s_hat_word(word, base)
    return out


def theta_xi(lam: tuple, f: RatFunc, xi_cache: dict | None = None) -> Vec:
    """theta via the eigenvector family: sum of f(z_I)/R(z_I) xi_I."""
    from .combinatorics import enumerate_partitions, i_min
    from .envelope import R_factors, xi_vectors

    imin = i_min(lam)
    xi = xi_cache if xi_cache is not None else xi_vectors(lam)
    out: Vec = {}
    for I in enumerate_partitions(lam):
        mapping = {}
        for blk_min, blk in zip(imin, I):
            for p, val in zip(blk_min, blk):
                if p != val:
                    mapping[vz(p)] = vz(val)
        fzI = f.rename(mapping) if mapping else f
        rinv = RatFunc.from_factors([LPoly.const(1)], R_factors(lam, I))
        out = vec_add(out, vec_scale(xi[I], fzI * rinv))
    return out


def theta_tilde(lam: tuple, f: RatFunc) -> Vec:
    """The polynomial variant: theta of f twisted by the z_i^{lam^(a)-n}."""
    from .combinatorics import i_min, partial_sums

    n = sum(lam)
    ps = partial_sums(lam)
    mono = []
    for a, blk in enumerate(i_min(lam), start=1):
        for i in blk:
            if ps[a] != n:
                mono.append((vz(i), ps[a] - n))
    return theta(lam, f.mul_poly(LPoly.monomial(tuple(mono))))


def dtilde_poly(n: int) -> LPoly:
    """prod_{i<j} (z_j - h z_i)."""
    out = LPoly.const(1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * (LPoly.variable(vz(j)) - H * LPoly.variable(vz(i)))
    return out


def in_poly_subspace(lam: tuple, vec: Vec) -> bool:
    """Membership in the polynomial subspace: every coordinate times
    prod (z_j - h z_i) is a polynomial with nonnegative exponents."""
    n = sum(lam)
    dt = RatFunc.from_poly(dtilde_poly(n))
    for c in vec.values():
        p = dt * c
        if not p.is_polynomial():
            p = p.simplify()
            if not p.is_polynomial():
                return False
        if any(e < 0 for m in p.num.terms for _, e in m):
            return False
    return True


def hecke_check_s_hat(n: int, radius: int = 2) -> list[str]:
    """Quadratic, braid, commutation and z-conjugation relations of hat s."""
    bad = []
    hh = RatFunc.from_poly(H)
    zs = [None] + [RatFunc.from_poly(LPoly.variable(vz(a)))
                   for a in range(1, n + 1)]
    for f in monomial_box(n, radius):
        for i in range(1, n):
            sf = s_hat(i, f)
            lhs = s_hat(i, sf) + sf - hh * sf - hh * f
            if not lhs.is_zero():
                bad.append(f"(s+1)(s-h)=0 fails at i={i} on {f!r}")
            if not s_hat(i, zs[i + 1] * sf) == hh * zs[i] * f:
                bad.append(f"s z s = h z fails at i={i} on {f!r}")
            for j in range(1, n + 1):
                if j not in (i, i + 1):
                    if not s_hat(i, zs[j] * f) == zs[j] * sf:
                        bad.append(f"s_i z_j commutation fails i={i} j={j}")
        for i in range(1, n - 1):
            lhs = s_hat(i, s_hat(i + 1, s_hat(i, f)))
            rhs = s_hat(i + 1, s_hat(i, s_hat(i + 1, f)))
            if not lhs == rhs:
                bad.append(f"braid fails at i={i} on {f!r}")
        for i in range(1, n):
            for j in range(i + 2, n):
                if not s_hat(i, s_hat(j, f)) == s_hat(j, s_hat(i, f)):
                    bad.append(f"commuting s_i s_j fails at {i},{j}")
    return bad
