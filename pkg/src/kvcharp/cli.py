"""Command-line entry point.

Exit codes: 0 success, 1 a check failed, 2 internal error or a violated
valuation bound, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional

from . import charp, chvergne, grt, lie, scalars
from .errors import NotPrimeError, ParseError, ValuationViolation
from .notation import parse_lie
from .words import XY, AssocPoly

EXIT_OK, EXIT_FAIL, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 64
MAX_CH_DEGREE = 10
MAX_SELFCHECK_DEGREE = 6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _mark(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _odd_prime(p: int) -> int:
    try:
        return scalars.require_prime(p, odd=True)
    except NotPrimeError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# ch

def ch_report(N: int) -> dict:
    z = chvergne.ch_series(N)
    match = z == chvergne.ch_oracle(N)
    return {
        "command": "ch",
        "degree": N,
        "oracle_match": match,
        "components": [{"degree": k, "text": str(z[k]), **z[k].to_json()} for k in range(1, N + 1)],
    }


def render_ch(d: dict) -> str:
    lines = [f"z{c['degree']} = {c['text']}" for c in d["components"]]
    if not d["oracle_match"]:
        lines.append("MISMATCH between the double-sum formula and log(e^x e^y)")
    return "\n".join(lines)


def cmd_ch(args) -> int:
    if not 1 <= args.degree <= MAX_CH_DEGREE:
        raise UsageError(f"--degree must be between 1 and {MAX_CH_DEGREE}")
    d = ch_report(args.degree)
    _emit(d, render_ch, args.json)
    return EXIT_OK if d["oracle_match"] else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# vergne

def vergne_report(p: int, N: Optional[int] = None) -> dict:
    N = N or p
    sol = chvergne.vergne_solution(N)
    kv = chvergne.check_kv(sol.F, sol.G, N)
    d = {"command": "vergne", "prime": p, "N": N,
         "kv_eq2_pass": kv.eq2_pass, "kv_eq3_pass": kv.eq3_pass,
         "kv_eq3_cyclic_status": kv.eq3_cyclic_pass}
    d.update(sol.to_json(p))
    A, B = chvergne.extract_AB(p, sol)
    d["A"], d["B"] = str(A), str(B)
    return d


def render_vergne(d: dict) -> str:
    lines = [f"prime {d['prime']}, truncation N = {d['N']}"]
    for name in ("F", "G"):
        prof = ", ".join(f"{e['degree']}:{'inf' if e['min_valuation'] is None else e['min_valuation']}"
                         for e in d["valuation_profile"][name])
        lines.append(f"min {d['prime']}-adic valuation of {name} by degree: {prof}")
    lines.append(f"KV first equation through degree {d['N']}: {_mark(d['kv_eq2_pass'])}")
    lines.append(f"KV trace equation (quadratic) through degree {d['N']}: {_mark(d['kv_eq3_pass'])}")
    lines.append(f"KV trace equation (cyclic words only, informational): {_mark(d['kv_eq3_cyclic_status'])}")
    lines.append(f"A = {d['A']}")
    lines.append(f"B = {d['B']}")
    return "\n".join(lines)


def cmd_vergne(args) -> int:
    p = _odd_prime(args.prime)
    N = args.degree or p
    if N < p - 1:
        raise UsageError("--degree must be at least p - 1")
    try:
        d = vergne_report(p, N)
    except ValuationViolation as exc:
        print(f"valuation bound violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            json.dump(d, fh, indent=2)
    _emit(d, render_vergne, args.json)
    return EXIT_OK if d["kv_eq2_pass"] and d["kv_eq3_pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# verify

def verify_report(p: int, source: str) -> dict:
    F = scalars.GF(p)
    profile = None
    if source == "from-vergne":
        sol = chvergne.vergne_solution(p - 1)
        A, B = chvergne.extract_AB(p, sol)
        psi = charp.build_psi(A)
        profile = {name: chvergne.valuation_profile(getattr(sol, name), p).to_json() for name in ("F", "G")}
    elif source == "paper":
        if p not in charp.KNOWN_SOLUTIONS:
            raise UsageError(f"no published solution for p={p}; known: {sorted(charp.KNOWN_SOLUTIONS)}")
        A, B, psi = charp.known_solution(p)
    else:
        try:
            psi = parse_lie(source, XY, F)
        except (ParseError, ValueError) as exc:
            raise UsageError(f"cannot parse --psi: {exc}") from None
        if psi.terms and psi.degrees() != [p - 1]:
            raise UsageError(f"--psi must be homogeneous of degree {p - 1}")
        A, B = charp.psi_to_AB(psi)
    conj = charp.conjecture_report(p, A, B, psi)
    g = grt.check_grt(psi, p)
    gating = {"eq4": conj.eq4_pass, "eq5": conj.eq5_pass}
    if not g.exploratory:
        gating.update(grt1=g.grt1_pass, grt2=g.grt2_pass, grt3=g.grt3_pass)
    return {
        "command": "verify",
        "prime": p,
        "psi_source": source,
        "valuation_profile": profile,
        "conjecture": conj.to_json(),
        "grt": g.to_json(),
        "gating": gating,
        "passed": all(gating.values()),
    }


def render_verify(d: dict) -> str:
    c, g = d["conjecture"], d["grt"]
    lines = [f"prime {d['prime']}, --psi {d['psi_source']}"]
    if d["valuation_profile"]:
        for name, prof in d["valuation_profile"].items():
            lines.append(f"min valuation of {name}: " + ", ".join(
                f"{e['degree']}:{'inf' if e['min_valuation'] is None else e['min_valuation']}" for e in prof))
    lines += [
        f"A = {c['A']}",
        f"B = {c['B']}",
        f"psi = {c['psi']}",
        f"[x,A] + [y,B] = x^p + y^p - (x+y)^p: {_mark(c['eq4_pass'])}",
        f"trace equation (quadratic): {_mark(c['eq5_pass'])}",
        f"trace equation (cyclic words only, informational): {_mark(c['eq5_tilde_status'])}",
        f"depth of psi = {'inf' if c['depth_of_psi'] is None else c['depth_of_psi']}, c = {c['leading_c']}",
    ]
    tag = " [EXPLORATORY, not gating]" if g["exploratory"] else ""
    lines += [
        f"antisymmetry{tag}: {_mark(g['grt1_pass'])}",
        f"hexagon{tag}: {_mark(g['grt2_pass'])} (integer-lift residual {g['grt2_lift_residual']})",
        f"pentagon in t4{tag}: {_mark(g['grt3_pass'])}",
        "RESULT: " + ("PASS" if d["passed"] else "FAIL (" + ", ".join(
            k for k, v in d["gating"].items() if not v) + ")"),
    ]
    return "\n".join(lines)


def cmd_verify(args) -> int:
    p = _odd_prime(args.prime)
    try:
        d = verify_report(p, args.psi)
    except ValuationViolation as exc:
        print(f"valuation bound violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(d, render_verify, args.json)
    return EXIT_OK if d["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# numtheory

def numtheory_report(p: int, max_m: Optional[int] = None) -> dict:
    max_m = max_m or max(40, 2 * (p - 1))
    staudt = []
    for m in range(2, max_m + 1, 2):
        r = scalars.staudt_check(p, m)
        staudt.append({"m": m, "divides": r.divides, "p_integral": r.p_integral,
                       "residue": None if r.residue_if_divides is None else r.residue_if_divides.residue,
                       "holds": r.holds})
    return {"command": "numtheory", "prime": p, "wilson": scalars.wilson_check(p), "staudt": staudt,
            "passed": scalars.wilson_check(p) and all(s["holds"] for s in staudt)}


def render_numtheory(d: dict) -> str:
    p = d["prime"]
    lines = [f"(p-1)! = -1 mod {p}: {_mark(d['wilson'])}"]
    for s in d["staudt"]:
        if s["divides"]:
            lines.append(f"m={s['m']}: (p-1) | m, p*B_m = {s['residue']} mod {p}: {_mark(s['holds'])}")
        else:
            lines.append(f"m={s['m']}: B_m is {p}-integral: {_mark(s['holds'])}")
    return "\n".join(lines)


def cmd_numtheory(args) -> int:
    d = numtheory_report(_odd_prime(args.prime))
    _emit(d, render_numtheory, args.json)
    return EXIT_OK if d["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# selfcheck

def _jacobi_suite(field, maxdeg: int, trials: int, rng) -> bool:
    ok = True
    for _ in range(trials):
        a, b, c = (grt.random_lie(rng, XY, field, max(1, maxdeg // 2), 2) for _ in range(3))
        ok &= grt.jacobi(a, b, c).is_zero()
    return ok


def selfcheck_results(maxdeg: int = 4, seed: int = 0):
    rng = random.Random(seed)
    yield "Witt dimensions", all(
        len(lie.lyndon_basis(XY, n)) == lie.witt_dimension(2, n) for n in range(1, 2 * maxdeg + 1))
    yield "Jacobi identity over QQ", _jacobi_suite(scalars.QQ, maxdeg, 20, rng)
    yield "Jacobi identity over GF(5)", _jacobi_suite(scalars.GF(5), maxdeg, 20, rng)
    yield "Dynkin criterion accepts Jacobson elements", all(
        lie.is_lie_dynkin(charp.jacobson(p).tau()) for p in (3, 5, 7))
    yield "Dynkin criterion rejects xy", not lie.is_lie_dynkin(AssocPoly({(0, 1): 1}))
    yield "Wilson congruence for primes <= 200", all(
        scalars.wilson_check(p) for p in range(2, 201) if scalars.is_prime(p))
    yield "Bernoulli p-integrality for p <= 37, m <= 40", all(
        scalars.staudt_check(p, m).holds for p in range(3, 38) if scalars.is_prime(p) for m in range(2, 41, 2))
    report = grt.t4_selfcheck(max(2, maxdeg), grt.T4Algebra(scalars.QQ), seed=seed)
    yield from report.results


def cmd_selfcheck(args) -> int:
    if not 2 <= args.maxdeg <= MAX_SELFCHECK_DEGREE:
        raise UsageError(f"--maxdeg must be between 2 and {MAX_SELFCHECK_DEGREE}")
    for name, ok in selfcheck_results(args.maxdeg):
        print(f"{_mark(ok)}  {name}")
        if not ok:
            print(f"first failing property: {name}")
            return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------

def _emit(d: dict, render, as_json: bool):
    if as_json:
        print(json.dumps(d, indent=2, ensure_ascii=False))
    else:
        print(render(d))


RENDERERS = {"ch": render_ch, "vergne": render_vergne, "verify": render_verify,
             "numtheory": render_numtheory}


def render(d: dict) -> str:
    """Text rendering of any JSON report produced by the CLI."""
    return RENDERERS[d["command"]](d)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kvcharp", description="Exact free Lie algebra computations in characteristic p.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ch", help="Campbell-Hausdorff series in the Lyndon basis")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ch)

    p = sub.add_parser("vergne", help="Vergne's solution, valuation profile, A and B")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--degree", type=int, default=None, help="truncation (default: the prime)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dump", metavar="PATH")
    p.set_defaults(func=cmd_vergne)

    p = sub.add_parser("verify", help="check A, B, psi mod p")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--psi", required=True,
                   help="'from-vergne', 'paper' (published closed form, p = 3, 5) or a bracket expression")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("numtheory", help="Wilson and Bernoulli congruences for one prime")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_numtheory)

    p = sub.add_parser("selfcheck", help="structural property suites")
    p.add_argument("--maxdeg", type=int, default=4)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"kvcharp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
