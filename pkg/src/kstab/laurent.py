"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A monomial is a tuple of (variable, exponent) pairs, sorted by variable,
with all exponents nonzero (possibly negative).  A polynomial maps monomials
to nonzero rational coefficients:

    z_1*h - 2/3  ->  {((VH,1),(var z 1,1)): frac(1), (): frac(-2,3)}

Variables are interned as integers that sort in the fixed global order

    h < z_1 < z_2 < ... < t(1,1) < t(1,2) < ... < gamma(1,1) < ...
      < q_1 < ... < Q_1 < ... < u < x < alpha_1 < ... < beta_1 < ...

so canonical forms are reproducible byte for byte.  The canonical term
order is graded lexicographic with respect to this variable order.

Coefficients are gmpy2.mpq when available (same exact semantics, faster),
with fractions.Fraction as fallback.
"""

from __future__ import annotations

from typing import Iterable, Mapping

try:
    from gmpy2 import mpq as frac
except ImportError:  # pragma: no cover
    from fractions import Fraction as frac

Mono = tuple  # tuple[tuple[int, int], ...], sorted by variable code

# Variable kinds, in the documented global order.
KH, KZ, KT, KG, KQ, KQQ, KU, KX, KA, KB = range(10)

_KIND_NAMES = {KH: "h", KZ: "z", KT: "t", KG: "gamma", KQ: "q",
               KQQ: "Q", KU: "u", KX: "x", KA: "alpha", KB: "beta"}


def var(kind: int, i: int = 0, j: int = 0) -> int:
    """Intern a variable as an integer code respecting the global order."""
    if not (0 <= i < 1024 and 0 <= j < 1024):
        raise ValueError(f"variable index out of range: kind={kind} i={i} j={j}")
    return (kind << 20) | (i << 10) | j


def var_kind(v: int) -> tuple[int, int, int]:
    return v >> 20, (v >> 10) & 1023, v & 1023


VH = var(KH)
VU = var(KU)
VX = var(KX)


def vz(a: int) -> int:
    return var(KZ, a)


def vt(k: int, a: int) -> int:
    return var(KT, k, a)


def vg(i: int, j: int) -> int:
    return var(KG, i, j)


def vq(i: int) -> int:
    return var(KQ, i)


def vQ(i: int) -> int:
    return var(KQQ, i)


def va(i: int) -> int:
    return var(KA, i)


def vb(i: int) -> int:
    return var(KB, i)


def var_name(v: int) -> str:
    kind, i, j = var_kind(v)
    base = _KIND_NAMES[kind]
    if kind in (KH, KU, KX):
        return base
    if kind in (KT, KG):
        return f"{base}({i},{j})"
    return f"{base}{i}"


def parse_var(name: str) -> int:
    """Inverse of var_name."""
    name = name.strip()
    for kind, base in ((KH, "h"), (KU, "u"), (KX, "x")):
        if name == base:
            return var(kind)
    for kind, base in ((KT, "t"), (KG, "gamma")):
        if name.startswith(base + "("):
            i, j = name[len(base) + 1:-1].split(",")
            return var(kind, int(i), int(j))
    for kind, base in ((KG, "gamma"), (KQQ, "Q"), (KA, "alpha"), (KB, "beta"),
                       (KZ, "z"), (KQ, "q")):
        if name.startswith(base) and name[len(base):].isdigit():
            return var(kind, int(name[len(base):]))
    raise ValueError(f"cannot parse variable name {name!r}")


def _mono_mul_uncached(m1: Mono, m2: Mono) -> Mono:
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            e = e1 + e2
            if e:
                out.append((v1, e))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


_mono_cache: dict = {}


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    # monomial pairs recur massively in the verification grids; a flat
    # dict cache beats re-merging (bounded: cleared when oversized)
    if not m1:
        return m2
    if not m2:
        return m1
    key = (m1, m2)
    out = _mono_cache.get(key)
    if out is None:
        out = _mono_mul_uncached(m1, m2)
        if len(_mono_cache) > 1 << 20:
            _mono_cache.clear()
        _mono_cache[key] = out
    return out


def mono_inv(m: Mono) -> Mono:
    return tuple((v, -e) for v, e in m)


def mono_pow(m: Mono, k: int) -> Mono:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in m)


class NotDivisible(ArithmeticError):
    """Exact division failed; carries the offending remainder as witness."""

    def __init__(self, remainder: "LPoly"):
        super().__init__("polynomial division is not exact")
        self.remainder = remainder


class LPoly:
    """Sparse Laurent polynomial.  Immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, object] | None = None):
        self.terms: dict = dict(terms) if terms else {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c) -> "LPoly":
        c = frac(c)
        return LPoly({(): c} if c else {})

    @staticmethod
    def variable(v: int, e: int = 1) -> "LPoly":
        if e == 0:
            return LPoly.const(1)
        return LPoly({((v, e),): frac(1)})

    @staticmethod
    def monomial(m: Mono, c=1) -> "LPoly":
        c = frac(c)
        m = tuple(sorted((v, e) for v, e in m if e))
        return LPoly({m: c} if c else {})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(): frac(1)}

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def as_constant(self):
        if self.is_zero():
            return frac(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms[()]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def as_monomial(self) -> tuple[Mono, object]:
        if not self.is_monomial():
            raise ValueError("not a monomial")
        return next(iter(self.terms.items()))

    def variables(self) -> list[int]:
        vs = set()
        for m in self.terms:
            for v, _ in m:
                vs.add(v)
        return sorted(vs)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LPoly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == (LPoly.const(other)).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "LPoly":
        if isinstance(other, int):
            other = LPoly.const(other)
        if not isinstance(other, LPoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return LPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LPoly":
        return LPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "LPoly":
        if isinstance(other, int):
            other = LPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LPoly":
        return (-self) + other

    def __mul__(self, other) -> "LPoly":
        if isinstance(other, int):
            if other == 0:
                return LPoly()
            other = LPoly.const(other)
        if not isinstance(other, LPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                s = out.get(m)
                if s is None:
                    out[m] = c
                else:
                    s = s + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return LPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "LPoly":
        c = frac(c)
        if not c:
            return LPoly()
        return LPoly({m: c * v for m, v in self.terms.items()})

    def mul_monomial(self, m: Mono, c=1) -> "LPoly":
        c = frac(c)
        if not c:
            return LPoly()
        return LPoly({mono_mul(mm, m): c * v for mm, v in self.terms.items()})

    def __pow__(self, k: int) -> "LPoly":
        if k < 0:
            m, c = self.as_monomial()
            return LPoly.monomial(mono_pow(m, k), frac(1) / c ** (-k))
        out = LPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- substitution -------------------------------------------------

    def subst(self, mapping: Mapping[int, "LPoly"]) -> "LPoly":
        """Substitute variables by polynomials.

        A variable occurring with a negative exponent may only be replaced
        by an invertible value, i.e. a single monomial; anything else would
        leave the Laurent ring and raises ValueError ("requires RatFunc").
        """
        out = LPoly()
        for m, c in self.terms.items():
            term = LPoly.const(c)
            rest: list[tuple[int, int]] = []
            for v, e in m:
                val = mapping.get(v)
                if val is None:
                    rest.append((v, e))
                    continue
                if e < 0 and not val.is_monomial():
                    if val.is_zero():
                        raise ZeroDivisionError("substituting 0 into a negative power")
                    raise ValueError("substitution into negative exponent requires RatFunc")
                term = term * val ** e
            if rest:
                term = term.mul_monomial(tuple(rest))
            out = out + term
        return out

    def rename(self, mapping: Mapping[int, int]) -> "LPoly":
        """Substitute variables by variables (always exact)."""
        out: dict = {}
        for m, c in self.terms.items():
            acc: dict = {}
            for v, e in m:
                w = mapping.get(v, v)
                acc[w] = acc.get(w, 0) + e
            mm = tuple(sorted((v, e) for v, e in acc.items() if e))
            s = out.get(mm)
            if s is None:
                out[mm] = c
            else:
                s = s + c
                if s:
                    out[mm] = s
                else:
                    del out[mm]
        return LPoly(out)

    def invert_vars(self, vars_: Iterable[int]) -> "LPoly":
        """Substitute v -> 1/v for the given variables (monomial, exact)."""
        vs = set(vars_)
        out: dict = {}
        for m, c in self.terms.items():
            out[tuple((v, -e if v in vs else e) for v, e in m)] = c
        return LPoly(out)

    def subst_scalar(self, v: int, value) -> "LPoly":
        """Substitute a rational number for a variable (nonneg exponents only
        when value == 0)."""
        value = frac(value)
        out = LPoly()
        acc: dict = {}
        for m, c in self.terms.items():
            e0 = 0
            rest = []
            for w, e in m:
                if w == v:
                    e0 = e
                else:
                    rest.append((w, e))
            if e0 < 0 and not value:
                raise ZeroDivisionError("zero substituted into a negative power")
            cc = c * value ** e0 if e0 else c
            if not cc:
                continue
            mm = tuple(rest)
            s = acc.get(mm)
            if s is None:
                acc[mm] = cc
            else:
                s = s + cc
                if s:
                    acc[mm] = s
                else:
                    del acc[mm]
        out.terms = acc
        return out

    def eval_all(self, values: Mapping[int, object]):
        """Evaluate at rational values for every variable; returns a rational."""
        total = frac(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val = val * frac(values[v]) ** e
            total += val
        return total

    # -- term order, degree -------------------------------------------

    def min_degree(self, v: int) -> int:
        """Smallest exponent of v across terms (0 if v absent from a term)."""
        if not self.terms:
            return 0
        md = None
        for m in self.terms:
            e = 0
            for w, ee in m:
                if w == v:
                    e = ee
                    break
            md = e if md is None else min(md, e)
        return md

    def max_degree(self, v: int) -> int:
        if not self.terms:
            return 0
        return max(sum(ee for w, ee in m if w == v) for m in self.terms)

    def coeff_of(self, v: int, e: int) -> "LPoly":
        """Coefficient of v**e, a polynomial in the remaining variables."""
        out: dict = {}
        for m, c in self.terms.items():
            ee = 0
            rest = []
            for w, x in m:
                if w == v:
                    ee = x
                else:
                    rest.append((w, x))
            if ee == e:
                out[tuple(rest)] = c
        return LPoly(out)

    def sorted_terms(self) -> list[tuple[Mono, object]]:
        """Terms in canonical (descending graded lexicographic) order."""
        vs = self.variables()
        idx = {v: i for i, v in enumerate(vs)}

        def key(item):
            m, _ = item
            dense = [0] * len(vs)
            tot = 0
            for v, e in m:
                dense[idx[v]] = e
                tot += e
            return (tot, tuple(dense))

        return sorted(self.terms.items(), key=key, reverse=True)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [str(c)] if (c != 1 or not m) else []
            for v, e in m:
                factors.append(var_name(v) + (f"^{e}" if e != 1 else ""))
            parts.append("*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


ZERO = LPoly()
ONE = LPoly.const(1)
H = LPoly.variable(VH)


def binomial(c0, m0: Mono, c1, m1: Mono) -> LPoly:
    """c0*m0 + c1*m1 (the ubiquitous 1 - h^e z_a/z_b shape)."""
    m0 = tuple(sorted((v, e) for v, e in m0 if e))
    m1 = tuple(sorted((v, e) for v, e in m1 if e))
    return LPoly({m0: frac(c0), m1: frac(c1)})


def one_minus(m: Mono, hpow: int = 0) -> LPoly:
    """1 - h^hpow * m."""
    m = tuple(sorted((v, e) for v, e in m if e))
    mm = mono_mul(((VH, hpow),) if hpow else (), m)
    return LPoly({(): frac(1), mm: frac(-1)})


def zratio(a: int, b: int) -> Mono:
    """The monomial z_a / z_b."""
    if a == b:
        return ()
    va_, vb_ = vz(a), vz(b)
    return ((va_, 1), (vb_, -1)) if va_ < vb_ else ((vb_, -1), (va_, 1))


def _grlex_key_fn(vs: list[int]):
    idx = {v: i for i, v in enumerate(vs)}

    def key(m: Mono):
        dense = [0] * len(vs)
        tot = 0
        for v, e in m:
            dense[idx[v]] = e
            tot += e
        return (tot, tuple(dense))

    return key


def _min_exponent_shift(p: LPoly) -> Mono:
    """Monomial of per-variable minimum exponents of p (absent means 0)."""
    vs = p.variables()
    if not vs:
        return ()
    mins: dict[int, int | None] = {v: None for v in vs}
    for m in p.terms:
        d = dict(m)
        for v in vs:
            e = d.get(v, 0)
            if mins[v] is None or e < mins[v]:
                mins[v] = e
    return tuple(sorted((v, e) for v, e in mins.items() if e))


def exact_div(f: LPoly, g: LPoly) -> LPoly:
    """Divide f by g, requiring the division to be exact.

    Raises NotDivisible (with the remainder witness) otherwise; in the
    verification suites that exception signals a theorem violation.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return LPoly()
    if g.is_monomial():
        m, c = g.as_monomial()
        return f.mul_monomial(mono_inv(m), frac(1) / c)
    # Shift both operands to honest polynomials (monomials are units in the
    # Laurent ring); divisibility is unchanged and the division below then
    # terminates: a quotient monomial with a negative exponent certifies
    # non-divisibility, and otherwise the leading monomial strictly
    # decreases inside a finite box.
    import heapq

    sf, sg = _min_exponent_shift(f), _min_exponent_shift(g)
    fsh = f.mul_monomial(mono_inv(sf))
    gsh = g.mul_monomial(mono_inv(sg))
    vs = sorted(set(fsh.variables()) | set(gsh.variables()))
    idx = {v: i for i, v in enumerate(vs)}
    nv = len(vs)

    def negkey(m: Mono):
        # ascending order of negkey == descending graded lex
        dense = [0] * nv
        tot = 0
        for v, e in m:
            dense[idx[v]] = -e
            tot += e
        return (-tot, tuple(dense))

    glead = min(gsh.terms, key=negkey)
    gc = gsh.terms[glead]
    ginv = mono_inv(glead)
    gtail = [(m, c) for m, c in gsh.terms.items() if m != glead]
    rem = dict(fsh.terms)
    heap = [(negkey(m), m) for m in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while heap:
        _, rlead = heapq.heappop(heap)
        qc = rem.pop(rlead, None)
        if qc is None:
            continue  # stale entry
        qm = mono_mul(rlead, ginv)
        if any(e < 0 for _, e in qm):
            rem[rlead] = qc
            raise NotDivisible(LPoly(rem))
        qc = qc / gc
        quot[qm] = qc
        for m, c in gtail:
            mm = mono_mul(qm, m)
            s = rem.get(mm)
            if s is None:
                rem[mm] = -qc * c
                heapq.heappush(heap, (negkey(mm), mm))
            else:
                s = s - qc * c
                if s:
                    rem[mm] = s
                else:
                    del rem[mm]
    return LPoly(quot).mul_monomial(mono_mul(sf, mono_inv(sg)))


def div_factors(f: LPoly, factors: Iterable[tuple[LPoly, int]]) -> LPoly:
    """Divide f by a product of factors, one exact division at a time."""
    for g, e in factors:
        for _ in range(e):
            f = exact_div(f, g)
    return f


def newton_interval(f: LPoly, block_of: Mapping[int, int]) -> tuple[int, int]:
    """Image of the Newton polygon of f under the linear map sending the
    exponent of z_a to block_of[a].

    Only z-exponents count; h is treated as a constant.  Raises on the zero
    polynomial and on variables other than z and h.
    """
    if f.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    lo = hi = None
    for m in f.terms:
        s = 0
        for v, e in m:
            kind, i, _ = var_kind(v)
            if kind == KZ:
                s += block_of[i] * e
            elif kind != KH:
                raise ValueError(f"newton_interval: unexpected variable {var_name(v)}")
        lo = s if lo is None else min(lo, s)
        hi = s if hi is None else max(hi, s)
    return (lo, hi)
