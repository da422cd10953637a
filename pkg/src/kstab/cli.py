"""Command line surface: computations and the verification harness.

Exit codes: 0 success / all identities verified, 1 a counterexample was
found, 2 usage error.  Output is canonical JSON (or aligned text) and is
byte-identical for a fixed configuration regardless of the --jobs setting;
timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import permutations

from . import jsonio
from .combinatorics import (
    compositions, enumerate_partitions, format_partition, identity_perm,
    longest_perm, parse_partition, parse_perm,
)
from .laurent import frac
from .ratfunc import RatFunc

VERSION = "0.1.0"


def _parse_lambda(text: str) -> tuple:
    lam = tuple(int(x) for x in text.split(","))
    if any(x < 0 for x in lam):
        raise ValueError(f"negative part in {text!r}")
    return lam


def _desk_lambdas(nmax: int, Nmax: int):
    for n in range(1, nmax + 1):
        for N in range(1, Nmax + 1):
            yield from compositions(n, N)


def _emit(args, payload: dict, status_line: str | None = None) -> None:
    if args.format == "json":
        sys.stdout.write(jsonio.dumps(payload) + "\n")
    else:
        if status_line:
            sys.stdout.write(status_line + "\n")
        sys.stdout.write(jsonio.dumps(payload) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, (int, str, bool)) or obj is None:
        return obj
    return repr(obj)


# -- computation subcommands -------------------------------------------------


def cmd_weight(args) -> int:
    from .weights import modified_weight, weight_sigma

    lam = _parse_lambda(args.lam)
    I = parse_partition(args.I)
    sigma = parse_perm(args.sigma) if args.sigma else identity_perm(sum(lam))
    if args.modified:
        w = modified_weight(lam, I, args.modified)
    else:
        w = weight_sigma(lam, sigma, I)
    payload = {"lambda": list(lam), "I": format_partition(I),
               "sigma": ",".join(map(str, sigma)),
               "weight": jsonio.poly_to_obj(w)}
    factors = jsonio.try_binomial_factorization(w)
    if factors is not None:
        payload["factored"] = jsonio.factored_to_obj(factors)
    _emit(args, payload)
    return 0


def cmd_kappa(args) -> int:
    from .envelope import kappa_class

    lam = _parse_lambda(args.lam)
    I = parse_partition(args.I)
    sigma = parse_perm(args.sigma) if args.sigma else identity_perm(sum(lam))
    values = kappa_class(lam, sigma, I)
    payload = {"lambda": list(lam), "I": format_partition(I),
               "restrictions": {format_partition(J): jsonio.poly_to_obj(v)
                                for J, v in sorted(values.items())}}
    _emit(args, payload)
    return 0


def cmd_stab(args) -> int:
    from .envelope import stab_matrix

    lam = _parse_lambda(args.lam)
    sigma = parse_perm(args.sigma) if args.sigma else identity_perm(sum(lam))
    parts = enumerate_partitions(lam)
    m = stab_matrix(lam, sigma)
    labels = [format_partition(I) for I in parts]
    _emit(args, jsonio.matrix_to_obj(labels, labels, m))
    return 0


def cmd_xi(args) -> int:
    from .combinatorics import from_membership
    from .envelope import xi_vector_closed, xi_vector_recursive

    lam = _parse_lambda(args.lam)
    fn = xi_vector_recursive if args.method == "recursive" else xi_vector_closed
    which = [parse_partition(args.I)] if args.I else list(enumerate_partitions(lam))
    payload = {"lambda": list(lam), "xi": {}}
    for I in which:
        vec = fn(lam, I)
        payload["xi"][format_partition(I)] = {
            format_partition(from_membership(s, len(lam))):
                jsonio.ratfunc_to_obj(c)
            for s, c in sorted(vec.items())}
    _emit(args, payload)
    return 0


def cmd_groth(args) -> int:
    from .grothendieck import groth_poly

    perm = parse_perm(args.perm)
    _emit(args, {"perm": args.perm,
                 "polynomial": jsonio.poly_to_obj(groth_poly(perm))})
    return 0


def cmd_wronski(args) -> int:
    from .wronski import kQ_relations, kq_relations

    lam = _parse_lambda(args.lam)
    rels = kQ_relations(lam) if args.h0 else kq_relations(lam)
    _emit(args, {"lambda": list(lam), "h0": bool(args.h0),
                 "relations": [jsonio.ratfunc_to_obj(r) for r in rels]})
    return 0


def cmd_structconst(args) -> int:
    from .structconst import structure_constants_oracle

    lam = _parse_lambda(args.lam)
    A, B = parse_partition(args.A), parse_partition(args.B)
    row = structure_constants_oracle(lam, A, B)
    _emit(args, {"lambda": list(lam), "A": format_partition(A),
                 "B": format_partition(B),
                 "constants": {format_partition(J): jsonio.ratfunc_to_obj(c)
                               for J, c in sorted(row.items())}})
    return 0


# -- verification suites -------------------------------------------------------


def _axioms_task(item):
    from .envelope import axiom_verify

    lam, sigma = item
    return [(lam, sigma, rec) for rec in axiom_verify(lam, sigma)]


def suite_axioms(config) -> list:
    tasks = []
    for lam in _desk_lambdas(config["n"], config["N"]):
        for sigma in permutations(range(1, sum(lam) + 1)):
            tasks.append((lam, sigma))
    if config["jobs"] > 1:
        with ProcessPoolExecutor(max_workers=config["jobs"]) as pool:
            results = list(pool.map(_axioms_task, tasks))
    else:
        results = [_axioms_task(t) for t in tasks]
    bad = [rec for chunk in results for rec in chunk]
    return bad


def suite_orthogonality(config) -> list:
    from .envelope import orthogonality_matrix_identity, orthogonality_verify

    bad = []
    for lam in _desk_lambdas(config["n"], config["N"]):
        bad.extend({"lambda": lam, **rec} for rec in orthogonality_verify(lam))
        if sum(lam) <= 3 and not orthogonality_matrix_identity(lam):
            bad.append({"lambda": lam, "identity": "matrix"})
    return bad


def suite_oracle(config) -> list:
    from .weights import table_sum_oracle, weight_function

    bad = []
    for lam in _desk_lambdas(config["n"], config["N"]):
        for I in enumerate_partitions(lam):
            if table_sum_oracle(lam, I) != weight_function(lam, I):
                bad.append({"lambda": lam, "I": format_partition(I)})
    return bad


def suite_recursions(config) -> list:
    from .weights import recursion_check

    bad = []
    for lam in _desk_lambdas(min(config["n"], 3), config["N"]):
        for rec in recursion_check(lam):
            bad.append({"lambda": lam, **rec})
    return bad


def suite_ybe(config) -> list:
    from .actions import duality_check, inversion_check, ybe_check

    bad = []
    for N in range(2, config["N"] + 1):
        if not ybe_check(N):
            bad.append({"relation": "yang-baxter", "N": N})
        if not inversion_check(N):
            bad.append({"relation": "inversion", "N": N})
    if not duality_check():
        bad.append({"relation": "duality"})
    return bad


def suite_geom_r(config) -> list:
    from .actions import cocycle_check, geom_r_check

    n = min(config["n"], 3)
    bad = []
    for nn in range(2, n + 1):
        bad.extend(geom_r_check(nn, config["N"]))
    triples = [((2, 1, 3), (1, 2, 3), (3, 2, 1)),
               ((1, 3, 2), (2, 3, 1), (1, 2, 3))]
    if n >= 3:
        bad.extend(cocycle_check(3, min(config["N"], 2), triples))
    return bad


def suite_hecke(config) -> list:
    from .actions import (
        hecke_check_s_check, hecke_check_s_hat, s_tilde_relations_check,
        t_hecke_check,
    )
    from .envelope import xi_vector_closed, xi_vector_recursive
    from .actions import vec_eq

    bad = []
    box = config["box"]
    for n in range(2, config["n"] + 1):
        bad.extend({"op": "hat", "n": n, "witness": w}
                   for w in hecke_check_s_hat(n, radius=box))
        bad.extend({"op": "t", "n": n, "witness": w}
                   for w in t_hecke_check(n, radius=box))
        radius = box if n <= 3 else min(box, 2)
        bad.extend({"op": "check", "n": n, "witness": w}
                   for w in hecke_check_s_check(n, 2, radius=radius))
        if n <= 3:
            bad.extend({"op": "tilde", "n": n, "witness": w}
                       for w in s_tilde_relations_check(n, 2, radius=1))
    for lam in _desk_lambdas(config["n"], config["N"]):
        for I in enumerate_partitions(lam):
            if not vec_eq(xi_vector_closed(lam, I), xi_vector_recursive(lam, I)):
                bad.append({"op": "xi", "lambda": lam, "I": format_partition(I)})
    return bad


def suite_xi(config) -> list:
    from .actions import vec_eq
    from .envelope import nu_roundtrip_check, xi_vector_closed, xi_vector_recursive

    bad = []
    for lam in _desk_lambdas(config["n"], config["N"]):
        for I in enumerate_partitions(lam):
            if not vec_eq(xi_vector_closed(lam, I), xi_vector_recursive(lam, I)):
                bad.append({"lambda": lam, "I": format_partition(I)})
        if sum(lam) <= 3 and not nu_roundtrip_check(lam):
            bad.append({"lambda": lam, "roundtrip": False})
    return bad


def _eval_points(seed: int, n: int, count: int = 5):
    rng = random.Random(seed)
    points = []
    while len(points) < count:
        h = frac(rng.randint(2, 19), rng.randint(2, 19))
        zs = []
        while len(zs) < n:
            c = frac(rng.randint(1, 60), rng.randint(1, 13))
            if all(c != z and c != h * z and z != h * c for z in zs):
                zs.append(c)
        if h != 1:
            points.append((zs, h))
    return points


def suite_bethe(config) -> list:
    from .bethe import (
        binf_log_identity, binf_scalar_check, blim_check,
        bq_commutator_check_eval, bq_commutator_check_formal,
        difference_operator_check, ltl_zero_mode_check, nu_intertwine_check,
        xi_action_check,
    )
    from .laurent import LPoly, vg

    bad = []
    smax = config["smax"]
    N = config["N"]
    nmax = min(config["n"], 3)
    for lam in _desk_lambdas(nmax, N):
        for rec in xi_action_check(lam, smax=min(smax, 4)):
            bad.append({"check": "xi-action", "lambda": lam, **rec})
    for n in range(1, nmax + 1):
        if not binf_scalar_check(n, min(N, 2), smax=min(smax, 3)):
            bad.append({"check": "central-scalar", "n": n})
        if not binf_log_identity(n, smax=min(smax, 3)):
            bad.append({"check": "log-identity", "n": n})
        if not ltl_zero_mode_check(n, min(N, 2)):
            bad.append({"check": "zero-modes", "n": n})
    if bq_commutator_check_formal(2, 2, smax=2):
        bad.append({"check": "commutators-formal", "n": 2})
    for zs, h in _eval_points(config["seed"], 3):
        if bq_commutator_check_eval(3, 2, 2, zs, h):
            bad.append({"check": "commutators-eval", "point": (zs, h)})
    if not blim_check(2, 2, smax=2):
        bad.append({"check": "q-ratio-limit"})
    if not difference_operator_check(2, 2, smax=2):
        bad.append({"check": "difference-operator"})
    g1 = RatFunc.from_poly(LPoly.variable(vg(1, 1)))
    for kind, p, sign in (("A", 1, "-"), ("E", 1, "-"), ("E", 1, "+"),
                          ("F", 1, "-"), ("F", 1, "+")):
        f = g1 if kind == "A" else _intertwine_rep(kind)
        if not nu_intertwine_check((1, 1), kind, p, sign, 2, f):
            bad.append({"check": "nu-intertwine", "kind": kind, "sign": sign})
    return bad


def _intertwine_rep(kind: str) -> RatFunc:
    from .laurent import LPoly, vg

    if kind == "E":
        return RatFunc.from_poly(
            LPoly.variable(vg(2, 1)) * LPoly.variable(vg(2, 2)))
    return RatFunc.from_poly(
        LPoly.variable(vg(1, 1)) + LPoly.variable(vg(1, 2)))


def suite_wronski(config) -> list:
    from .wronski import (
        b_leading_values_check, b_top_identity, bq_operator_consistency_check,
        classical_limit_check, h0_limit_check, h_one_specialization_check,
        kQ_classical_limit_check, y_identity_check,
    )

    bad = []
    lams = [lam for lam in _desk_lambdas(min(config["n"], 3), config["N"])]
    for lam in lams:
        if not h_one_specialization_check(lam):
            bad.append({"check": "h-one", "lambda": lam})
        if not b_top_identity(lam):
            bad.append({"check": "b-top", "lambda": lam})
        if not b_leading_values_check(lam):
            bad.append({"check": "b-leading", "lambda": lam})
        if not classical_limit_check(lam):
            bad.append({"check": "classical-limit", "lambda": lam})
        if not y_identity_check(lam):
            bad.append({"check": "y-identity", "lambda": lam})
        if all(x > 0 for x in lam):
            if not h0_limit_check(lam):
                bad.append({"check": "h0-limit", "lambda": lam})
            if not kQ_classical_limit_check(lam):
                bad.append({"check": "Q-classical", "lambda": lam})
    if not bq_operator_consistency_check(smax=min(config["smax"], 3)):
        bad.append({"check": "operator-consistency"})
    return bad


def suite_gr_special(config) -> list:
    from .grothendieck import (
        groth_descent_check, groth_recursion_independence,
        schubert_axioms_check, specialization_check,
    )

    bad = []
    if not groth_recursion_independence(min(config["n"], 4)):
        bad.append({"check": "recursion-independence"})
    if not groth_descent_check(min(config["n"], 4)):
        bad.append({"check": "descent"})
    for lam in _desk_lambdas(config["n"], config["N"]):
        bad.extend({"check": "specialization", "lambda": lam, **rec}
                   for rec in specialization_check(lam))
        bad.extend({"check": "interpolation", "lambda": lam, **rec}
                   for rec in schubert_axioms_check(lam))
    return bad


def suite_appendix3(config) -> list:
    from .structconst import (
        h_zero_table_is_classical, p1_cube_check, p1_matches_kappa_basis,
        p1_tables_check,
    )

    bad = [{"check": "table", "witness": w} for w in p1_tables_check()]
    bad.extend({"check": "cube", "witness": w} for w in p1_cube_check())
    if not p1_matches_kappa_basis():
        bad.append({"check": "kappa-basis"})
    if not h_zero_table_is_classical():
        bad.append({"check": "h0-table"})
    return bad


def suite_appendix4(config) -> list:
    from .structconst import (
        associativity_check, commutativity_check, structure_constants_match,
        unit_decomposition_check,
    )

    bad = []
    lams = [(1, 1), (2, 1), (1, 1, 1), (2, 2)]
    for lam in lams:
        bad.extend({"check": "closed-vs-oracle", "lambda": lam, **rec}
                   for rec in structure_constants_match(lam))
        if not commutativity_check(lam):
            bad.append({"check": "commutativity", "lambda": lam})
    for lam in [(1, 1), (2, 1), (1, 1, 1)]:
        if not associativity_check(lam):
            bad.append({"check": "associativity", "lambda": lam})
        if not unit_decomposition_check(lam):
            bad.append({"check": "unit", "lambda": lam})
    return bad


SUITES = {
    "axioms": suite_axioms,
    "orthogonality": suite_orthogonality,
    "oracle": suite_oracle,
    "recursions": suite_recursions,
    "ybe": suite_ybe,
    "geom-r": suite_geom_r,
    "hecke": suite_hecke,
    "xi": suite_xi,
    "bethe": suite_bethe,
    "wronski": suite_wronski,
    "gr-special": suite_gr_special,
    "appendix3": suite_appendix3,
    "appendix4": suite_appendix4,
}


def cmd_verify(args) -> int:
    config = {"n": args.n, "N": args.N, "smax": args.smax, "box": args.box,
              "jobs": args.jobs, "seed": args.seed}
    if args.lam:
        lam = _parse_lambda(args.lam)
        config["n"], config["N"] = sum(lam), len(lam)
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    status = "pass"
    reports = []
    for name in names:
        t0 = time.time()
        bad = SUITES[name](config)
        dt = time.time() - t0
        print(f"[kstab] suite {name}: {'pass' if not bad else 'FAIL'} "
              f"({dt:.1f}s)", file=sys.stderr)
        if bad:
            status = "fail"
        reports.append({"suite": name, "status": "pass" if not bad else "fail",
                        "counterexamples": _jsonable(bad)})
    certificate = {"version": VERSION, "config": _jsonable(config),
                   "status": status, "suites": reports}
    _emit(args, certificate)
    return 0 if status == "pass" else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="kstab",
        description="Exact weight functions, envelope classes, R-matrices, "
                    "commuting families and Wronskian presentations.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("weight", help="a trigonometric weight function")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--I", required=True)
    p.add_argument("--sigma", default=None)
    p.add_argument("--modified", type=int, choices=(1, 2), default=0)
    common(p)
    p.set_defaults(fn=cmd_weight)

    p = sub.add_parser("kappa", help="restrictions of an envelope class")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--I", required=True)
    p.add_argument("--sigma", default=None)
    common(p)
    p.set_defaults(fn=cmd_kappa)

    p = sub.add_parser("stab", help="the matrix of reduced restrictions")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--sigma", default=None)
    common(p)
    p.set_defaults(fn=cmd_stab)

    p = sub.add_parser("xi", help="eigenvector coordinates")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--I", default=None)
    p.add_argument("--method", choices=("closed", "recursive"),
                   default="closed")
    common(p)
    p.set_defaults(fn=cmd_xi)

    p = sub.add_parser("groth", help="a double Grothendieck polynomial")
    p.add_argument("--perm", required=True)
    common(p)
    p.set_defaults(fn=cmd_groth)

    p = sub.add_parser("wronski", help="Wronskian presentation relations")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--h0", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_wronski)

    p = sub.add_parser("structconst", help="products in the envelope basis")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    common(p)
    p.set_defaults(fn=cmd_structconst)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--smax", type=int, default=4)
    p.add_argument("--box", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=20240901)
    common(p)
    p.set_defaults(fn=cmd_verify)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"kstab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
