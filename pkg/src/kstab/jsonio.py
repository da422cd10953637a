"""Canonical JSON forms for polynomials, rational functions and matrices.

A polynomial is {"vars": [names in the fixed global order], "terms":
[{"coeff": "p/q", "exp": [ints]}]} with terms in descending graded
lexicographic order, so serialized forms are byte-for-byte reproducible.
Rational functions are {"num": ..., "den": ...} with the denominator
expanded.  Every emitted value re-parses to an equal object.
"""

from __future__ import annotations

import json

from .laurent import LPoly, frac, parse_var, var_name
from .ratfunc import RatFunc


def poly_to_obj(p: LPoly) -> dict:
    vs = p.variables()
    idx = {v: i for i, v in enumerate(vs)}
    terms = []
    for mono, coeff in p.sorted_terms():
        exp = [0] * len(vs)
        for v, e in mono:
            exp[idx[v]] = e
        terms.append({"coeff": str(coeff), "exp": exp})
    return {"vars": [var_name(v) for v in vs], "terms": terms}


def poly_from_obj(obj: dict) -> LPoly:
    vs = [parse_var(name) for name in obj["vars"]]
    out = LPoly()
    for term in obj["terms"]:
        mono = tuple((v, e) for v, e in zip(vs, term["exp"]) if e)
        out = out + LPoly.monomial(mono, frac(term["coeff"]))
    return out


def ratfunc_to_obj(r: RatFunc) -> dict:
    return {"num": poly_to_obj(r.num), "den": poly_to_obj(r.den_expanded())}


def ratfunc_from_obj(obj: dict) -> RatFunc:
    return RatFunc.fraction(poly_from_obj(obj["num"]), poly_from_obj(obj["den"]))


def factored_to_obj(factors) -> list:
    """Render a known factorization [(poly, multiplicity), ...]."""
    return [{"factor": poly_to_obj(p), "power": e} for p, e in factors]


def matrix_to_obj(rows: list[str], cols: list[str], m) -> dict:
    return {"rows": rows, "cols": cols,
            "entries": [[ratfunc_to_obj(m[(i, j)]) for j in range(len(cols))]
                        for i in range(len(rows))]}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def render_poly_text(p: LPoly) -> str:
    return repr(p)


def try_binomial_factorization(p: LPoly):
    """Greedy exact factorization into (1 - h^e x/y) binomials and a
    leading 1-h / constant part; None when the leftover is not a unit."""
    from .laurent import H, NotDivisible, exact_div, one_minus

    factors = []
    work = p
    progress = True
    while progress and not work.is_constant():
        progress = False
        try:
            work2 = exact_div(work, 1 - H)
            factors.append((1 - H, 1))
            work = work2
            progress = True
            continue
        except NotDivisible:
            pass
        vs = work.variables()
        for i, x in enumerate(vs):
            for y in vs:
                if x == y:
                    continue
                for hpow in (0, 1):
                    cand = one_minus(((x, 1), (y, -1)), hpow)
                    try:
                        work2 = exact_div(work, cand)
                    except NotDivisible:
                        continue
                    factors.append((cand, 1))
                    work = work2
                    progress = True
                    break
                if progress:
                    break
            if progress:
                break
    if work.is_monomial():
        if not work.is_one():
            factors.append((work, 1))
        merged: dict = {}
        order = []
        for f, e in factors:
            key = repr(f)
            if key not in merged:
                merged[key] = [f, 0]
                order.append(key)
            merged[key][1] += e
        return [(merged[k][0], merged[k][1]) for k in order]
    return None
