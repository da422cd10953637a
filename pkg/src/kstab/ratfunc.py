"""Rational functions as Laurent polynomials over factored denominators.

A RatFunc is num / prod(core**mult).  Denominator cores are kept factored
and in a normal form (minimum exponents shifted to zero, leading coefficient
one); the invertible monomial/scalar parts of factors are folded into the
numerator.  Nothing is reduced to lowest terms eagerly -- multivariate gcd
is avoided by design -- but known factors can be cancelled exactly on
demand.  Equality is decided by cross-multiplication.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Mapping

from .laurent import (
    LPoly, Mono, NotDivisible, _grlex_key_fn, _min_exponent_shift, exact_div,
    frac, mono_inv,
)


class NotExpandable(ArithmeticError):
    """The function has no O(1) Laurent expansion at the requested point."""


def normalize_factor(p: LPoly) -> tuple[object, Mono, LPoly]:
    """Write nonzero p as coeff * monomial * core with core in normal form."""
    if p.is_zero():
        raise ZeroDivisionError("zero cannot be a denominator factor")
    shift = _min_exponent_shift(p)
    core = p.mul_monomial(mono_inv(shift))
    key = _grlex_key_fn(core.variables())
    lc = core.terms[max(core.terms, key=key)]
    if lc != 1:
        core = core.scale(frac(1) / lc)
    return lc, shift, core


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: LPoly, den: Mapping[LPoly, int] | None = None):
        self.num = num
        self.den: dict = dict(den) if den else {}
        if num.is_zero():
            self.den = {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_poly(p: LPoly) -> "RatFunc":
        return RatFunc(p)

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(LPoly.const(c))

    @staticmethod
    def fraction(num: LPoly, den: LPoly) -> "RatFunc":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_monomial():
            m, c = den.as_monomial()
            return RatFunc(num.mul_monomial(mono_inv(m), frac(1) / c))
        lc, shift, core = normalize_factor(den)
        return RatFunc(num.mul_monomial(mono_inv(shift), frac(1) / lc), {core: 1})

    @staticmethod
    def from_factors(num_factors: Iterable[LPoly],
                     den_factors: Iterable[LPoly]) -> "RatFunc":
        out = RatFunc(LPoly.const(1))
        for f in num_factors:
            out = out.mul_poly(f)
        for g in den_factors:
            out = out / RatFunc.from_poly(g)
        return out

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def den_expanded(self) -> LPoly:
        d = LPoly.const(1)
        for core, e in sorted(self.den.items(), key=lambda it: repr(it[0])):
            d = d * core ** e
        return d

    def to_poly(self) -> LPoly:
        """Clear the denominator by exact division (raises NotDivisible)."""
        p = self.num
        for core, e in self.den.items():
            for _ in range(e):
                p = exact_div(p, core)
        return p

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        left, right = self.num, other.num
        for core, e in other.den.items():
            k = e - self.den.get(core, 0)
            for _ in range(max(k, 0)):
                left = left * core
        for core, e in self.den.items():
            k = e - other.den.get(core, 0)
            for _ in range(max(k, 0)):
                right = right * core
        return left == right

    def __hash__(self):
        raise TypeError("RatFunc is unhashable; compare with ==")

    def __repr__(self) -> str:
        if not self.den:
            return repr(self.num)
        dens = " * ".join(
            f"({core!r})" + (f"^{e}" if e > 1 else "")
            for core, e in sorted(self.den.items(), key=lambda it: repr(it[0])))
        return f"({self.num!r}) / [{dens}]"

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        if isinstance(other, int):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lcm: dict = dict(self.den)
        for core, e in other.den.items():
            if lcm.get(core, 0) < e:
                lcm[core] = e
        a, b = self.num, other.num
        for core, e in lcm.items():
            for _ in range(e - self.den.get(core, 0)):
                a = a * core
            for _ in range(e - other.den.get(core, 0)):
                b = b * core
        s = a + b
        return RatFunc(s, lcm if s else None)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        if isinstance(other, int):
            other = RatFunc.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, int):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc(LPoly())
        den: dict = dict(self.den)
        for core, e in other.den.items():
            den[core] = den.get(core, 0) + e
        return RatFunc(self.num * other.num, den)

    __rmul__ = __mul__

    def mul_poly(self, p: LPoly) -> "RatFunc":
        return RatFunc(self.num * p, self.den)

    def scale(self, c) -> "RatFunc":
        n = self.num.scale(c)
        return RatFunc(n, self.den if n else None)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        lc, shift, core = normalize_factor(self.num)
        num = self.den_expanded().mul_monomial(mono_inv(shift), frac(1) / lc)
        return RatFunc(num, {core: 1} if not core.is_one() else None)

    def __truediv__(self, other) -> "RatFunc":
        if isinstance(other, int):
            other = RatFunc.const(other)
        return self * other.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(1)
        for _ in range(k):
            out = out * self
        return out

    def simplify(self) -> "RatFunc":
        """Cancel denominator cores that divide the numerator exactly."""
        if self.is_zero():
            return RatFunc(LPoly())
        num = self.num
        den: dict = {}
        for core, e in self.den.items():
            while e > 0:
                try:
                    num = exact_div(num, core)
                except NotDivisible:
                    break
                e -= 1
            if e:
                den[core] = e
        return RatFunc(num, den)

    # -- substitutions ----------------------------------------------------

    def _map(self, fn) -> "RatFunc":
        num = fn(self.num)
        out = RatFunc(num)
        for core, e in self.den.items():
            img = fn(core)
            if img.is_zero():
                raise ZeroDivisionError("substitution kills a denominator factor")
            if img.is_monomial():
                m, c = img.as_monomial()
                out = RatFunc(out.num.mul_monomial(mono_pow_safe(m, -e),
                                                   frac(1) / c ** e), out.den)
            else:
                lc, shift, c2 = normalize_factor(img)
                d = dict(out.den)
                d[c2] = d.get(c2, 0) + e
                out = RatFunc(out.num.mul_monomial(mono_pow_safe(shift, -e),
                                                   frac(1) / lc ** e), d)
        return out

    def rename(self, mapping: Mapping[int, int]) -> "RatFunc":
        return self._map(lambda p: p.rename(mapping))

    def subst(self, mapping: Mapping[int, LPoly]) -> "RatFunc":
        return self._map(lambda p: p.subst(mapping))

    def invert_vars(self, vars_: Iterable[int]) -> "RatFunc":
        vs = list(vars_)
        return self._map(lambda p: p.invert_vars(vs))

    def subst_scalar(self, v: int, value) -> "RatFunc":
        return self._map(lambda p: p.subst_scalar(v, value))

    def eval_all(self, values: Mapping[int, object]):
        total = self.num.eval_all(values)
        for core, e in self.den.items():
            dv = core.eval_all(values)
            if not dv:
                raise ZeroDivisionError("denominator vanishes at evaluation point")
            total = total / dv ** e
        return total


def mono_pow_safe(m: Mono, k: int) -> Mono:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in m)


def symmetrize(f: RatFunc, vars_: list[int]) -> RatFunc:
    """Sum of f over all permutations of the given variables."""
    if len(set(vars_)) != len(vars_):
        raise ValueError("symmetrization variables must be distinct")
    total = RatFunc(LPoly())
    for perm in permutations(vars_):
        mapping = {v: w for v, w in zip(vars_, perm) if v != w}
        total = total + (f.rename(mapping) if mapping else f)
    return total


def _swap(f: RatFunc, x: int, y: int) -> RatFunc:
    return f.rename({x: y, y: x})


def divided_diff(f: RatFunc, x: int, y: int, kind: str = "rational") -> RatFunc:
    """Divided difference operators.

    rational:       (f - s f) / (x - y)
    trigonometric:  rational applied to x*f
    The (x - y) factor is divided out exactly whenever possible.
    """
    if x == y:
        raise ValueError("divided difference needs two distinct variables")
    if kind == "trigonometric":
        return divided_diff(f.mul_poly(LPoly.variable(x)), x, y, "rational")
    if kind != "rational":
        raise ValueError(f"unknown divided difference kind {kind!r}")
    g = f - _swap(f, x, y)
    root = LPoly.variable(x) - LPoly.variable(y)
    if g.is_zero():
        return g
    try:
        return RatFunc(exact_div(g.num, root), g.den)
    except NotDivisible:
        den = dict(g.den)
        _, _, core = normalize_factor(root)
        den[core] = den.get(core, 0) + 1
        return RatFunc(g.num, den)


def _series_coeffs(rf: RatFunc, v: int, at_infinity: bool, smax: int) -> list[RatFunc]:
    """Coefficients c_0..c_smax of the expansion sum c_s * v**(-+s)."""
    if rf.is_zero():
        return [RatFunc(LPoly()) for _ in range(smax + 1)]
    num, den = rf.num, rf.den_expanded()
    if at_infinity:
        ntop, dtop = num.max_degree(v), den.max_degree(v)
        ncoef = [num.coeff_of(v, ntop - s) for s in range(smax + 1)]
        dcoef = [den.coeff_of(v, dtop - s) for s in range(smax + 1)]
        shift = dtop - ntop
    else:
        nbot, dbot = num.min_degree(v), den.min_degree(v)
        ncoef = [num.coeff_of(v, nbot + s) for s in range(smax + 1)]
        dcoef = [den.coeff_of(v, dbot + s) for s in range(smax + 1)]
        shift = nbot - dbot
    if shift < 0:
        raise NotExpandable(f"pole of order {-shift} at the expansion point")
    lead = RatFunc.from_poly(dcoef[0]).inverse()
    inner: list[RatFunc] = []
    for s in range(smax + 1):
        acc = RatFunc.from_poly(ncoef[s])
        for r in range(1, s + 1):
            acc = acc - RatFunc.from_poly(dcoef[r]) * inner[s - r]
        inner.append(acc * lead)
    out = [RatFunc(LPoly())] * shift + inner
    return out[: smax + 1]


def series_at(rf: RatFunc, v: int, point, smax: int) -> list[RatFunc]:
    """Truncated Laurent expansion of rf at v=0 or v=infinity.

    Returns coefficients [c_0, ..., c_smax] with rf = sum c_s v**s (at 0)
    or rf = sum c_s v**-s (at infinity), each c_s free of v.
    """
    if point == 0:
        return _series_coeffs(rf, v, False, smax)
    if point in ("inf", "infinity", float("inf")):
        return _series_coeffs(rf, v, True, smax)
    raise ValueError("expansion point must be 0 or 'inf'")


def limit_at_zero(rf: RatFunc, v: int) -> RatFunc:
    """Exact limit of rf as v -> 0 (error on a pole)."""
    if rf.is_zero():
        return rf
    num, den = rf.num, rf.den_expanded()
    a, b = num.min_degree(v), den.min_degree(v)
    if a < b:
        raise ZeroDivisionError(f"pole at 0 of order {b - a}")
    if a > b:
        return RatFunc(LPoly())
    n0 = num.coeff_of(v, a)
    d0 = den.coeff_of(v, b)
    return RatFunc.from_poly(n0) / RatFunc.from_poly(d0)
