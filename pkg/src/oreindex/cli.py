"""Command line interface: ``oreindex <command> ...``.

Exit codes: 0 ok, 1 internal error, 2 invalid or reducible input,
3 undetermined verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import ffield
from .families import (
    MonoFamilyInstance,
    PolygonMismatch,
    PreconditionError,
    dpr_family_check,
    mono_family_check,
)
from .ore import dedekind_divides_index, index_divisor_verdict, ore_analysis
from .parse import ParseError, parse_poly
from .polygon import newton_polygon, phi_expand, render_svg, residual_poly_from_expansion
from .quintic import READINGS, quintic, quintic_verdict
from .scan import ConfigError, ScanConfig, _parse_range, run_scan, write_outputs
from .zx import INFINITY, check_prime, is_irreducible_Q

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_UNDETERMINED = 0, 1, 2, 3


class InputError(Exception):
    """Invalid or reducible input; maps to exit code 2."""


def _dump(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _poly(text: str):
    try:
        F = parse_poly(text)
    except ParseError as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from exc
    return F


def _monic(text: str):
    F = _poly(text)
    if not F.is_monic() or F.degree < 1:
        raise InputError(f"{F} is not monic of positive degree")
    return F


def _prime(p: int) -> int:
    try:
        check_prime(p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return p


def _irreducible(F) -> None:
    flag = is_irreducible_Q(F)
    if flag is False:
        raise InputError(f"{F} is reducible over Q")
    if flag is None:
        print(f"warning: irreducibility of {F} not established; proceeding", file=sys.stderr)


def cmd_polygon(args) -> int:
    F = _monic(args.poly)
    phi = _monic(args.phi)
    p = _prime(args.prime)
    try:
        exp = phi_expand(F, phi, p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if phi.degree > 1 and not ffield.fp_poly(phi.coeffs, p).is_irreducible():
        raise InputError(f"{phi} is not irreducible mod {p}")
    poly = newton_polygon(exp)
    residuals = [residual_poly_from_expansion(exp, s) for s in poly.principal_sides]
    index = phi.degree * poly.lattice_count() if exp.valuations[0] != INFINITY else None
    if args.svg:
        Path(args.svg).write_text(render_svg(poly), encoding="utf-8")
    if args.json:
        doc = {
            "schema": "oreindex.polygon/1",
            "polynomial": str(F),
            "phi": str(phi),
            "p": p,
            "valuations": [None if u == INFINITY else u for u in exp.valuations],
            **poly.to_dict(),
            "residuals": [r.poly.format() for r in residuals],
            "phi_index": index,
        }
        _dump(doc)
        return EXIT_OK
    print(f"F = {F}, phi = {phi}, p = {p}")
    print("points: " + " ".join(f"({x},{y})" for x, y in poly.points))
    verts = poly.principal_vertices
    print("principal polygon: " + (" - ".join(f"({x},{y})" for x, y in verts) or "empty"))
    for s, r in zip(poly.principal_sides, residuals):
        print(
            f"  side {s}: slope {s.slope_str()}, length {s.length}, height {s.height}, "
            f"degree {s.degree}, residual {r.poly.format()}"
        )
    print(f"ind_phi = {index if index is not None else 'infinite (phi divides F)'}")
    return EXIT_OK


def cmd_dedekind(args) -> int:
    F = _monic(args.poly)
    p = _prime(args.prime)
    divides = dedekind_divides_index(F, p)
    if args.json:
        _dump({"schema": "oreindex.dedekind/1", "polynomial": str(F), "p": p,
               "divides_index": divides})
    else:
        print(f"{p} {'divides' if divides else 'does not divide'} (Z_K : Z[alpha]) for {F}")
    return EXIT_OK


def cmd_ore(args) -> int:
    F = _monic(args.poly)
    p = _prime(args.prime)
    try:
        rep = ore_analysis(F, p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        _dump(rep.to_dict())
        return EXIT_OK
    print(f"F = {F}, p = {p}")
    for r in rep.factors:
        print(f"phi = {r.phi} (multiplicity {r.multiplicity}): ind_phi = {r.index}"
              f"{'' if r.regular else ', not regular'}")
        for s in r.sides:
            facs = ", ".join(
                f"{psi.format()}" + (f" (x{a})" if a > 1 else "") for psi, a in s.factors
            )
            print(f"  side {s.side} slope {s.side.slope_str()}: R = {s.residual.poly.format()}"
                  f" -> {facs}")
    print(f"index lower bound: v_{p}(ind) >= {rep.index_lower_bound}")
    if rep.p_regular:
        print("p-regular; prime ideals (e, f): " + " ".join(f"({e},{f})" for e, f in rep.shapes))
    else:
        print("not p-regular; see index-divisor for the refined census")
    return EXIT_OK


def cmd_index_divisor(args) -> int:
    F = _monic(args.poly)
    _irreducible(F)
    primes = [_prime(args.prime)] if args.prime else [
        q for q in range(2, F.degree + 1) if all(q % d for d in range(2, q))
    ]
    verdicts = [index_divisor_verdict(F, p) for p in primes]
    if args.json:
        _dump({"schema": "oreindex.index-divisor/1", "polynomial": str(F),
               "verdicts": [v.to_dict() for v in verdicts]})
    else:
        for v in verdicts:
            line = f"p = {v.p}: {v.divides}"
            if v.divides == "yes":
                line += f" (P_{v.witness_f} >= {v.P_f} > N_{v.witness_f} = {v.N_f})"
            print(line)
            if args.trace:
                for t in v.trace:
                    print("    " + t)
    return EXIT_UNDETERMINED if any(v.divides == "undetermined" for v in verdicts) else EXIT_OK


def cmd_quintic(args) -> int:
    v = quintic_verdict(args.a, args.b, args.reading)
    if args.json:
        _dump(v.to_dict(trace=args.trace))
    else:
        print(f"F = {quintic(args.a, args.b)}")
        if not v.irreducible:
            print("reducible over Q")
        else:
            hits = v.common_index_divisors
            for p in hits:
                th = v.by_theorem.get(p)
                if th is None:
                    print(f"{p} | i(K) [engine]")
                elif th.divides:
                    print(f"{p} | i(K) [{th.tag}, engine agrees]")
                else:
                    print(f"{p} | i(K) [engine; {v.reading} conditions: none]")
            for p, th in sorted(v.by_theorem.items()):
                if th.divides and p not in hits:
                    print(f"{p}: {v.reading} condition {th.tag} holds but the engine says "
                          f"{v.by_engine[p].divides}")
            if not hits:
                print("no common index divisor")
            for n in v.notes:
                print("note: " + n)
    if not v.irreducible:
        return EXIT_INPUT
    if any(e.divides == "undetermined" for e in v.by_engine.values()):
        return EXIT_UNDETERMINED
    return EXIT_OK


def cmd_scan(args) -> int:
    overrides = {
        "csv": args.csv, "json": args.json, "ledger": args.ledger, "jobs": args.jobs,
        "seed": args.seed, "reading": args.reading,
        "a_range": _parse_range(args.a_range) if args.a_range else None,
        "b_range": _parse_range(args.b_range) if args.b_range else None,
        "primes": tuple(int(t) for t in args.primes.split(",")) if args.primes else None,
    }
    try:
        if args.config:
            cfg = ScanConfig.from_file(args.config, **overrides)
        else:
            cfg = ScanConfig(**{k: v for k, v in overrides.items() if v is not None})
    except (ConfigError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    res = run_scan(cfg)
    write_outputs(res)
    s = res.summary
    print(f"candidates {s['candidates']}, irreducible {s['irreducible']}, "
          f"discrepancies {s['discrepancies']}")
    for p in (2, 3):
        if f"p{p}" in s:
            conds = ", ".join(f"{k}: {n}" for k, n in s[f"p{p}"]["conditions"].items())
            eng = ", ".join(f"{k}: {n}" for k, n in s[f"p{p}"]["engine"].items())
            print(f"p = {p}: conditions {{{conds}}}; engine {{{eng}}}")
    if "p5" in s:
        print("p = 5: engine " + ", ".join(f"{k}: {n}" for k, n in s["p5"]["engine"].items()))
    if any(s.get(f"p{p}", {}).get("engine", {}).get("undetermined") for p in (2, 3, 5)):
        return EXIT_UNDETERMINED
    return EXIT_OK


def cmd_mono(args) -> int:
    inst = MonoFamilyInstance(args.prime, args.r, args.v, args.u, args.m, args.a, args.b)
    try:
        rep = mono_family_check(inst, args.trial_bound)
    except PreconditionError as exc:
        raise InputError("; ".join(exc.violations)) from exc
    if args.json:
        _dump(rep.to_dict())
        return EXIT_OK
    d = rep.to_dict()
    print(f"F = {d['polynomial']}")
    print(f"single side (0,{inst.u})-({inst.n},0): {d['single_side']}; ind_phi = {d['phi_index']}")
    x, y = rep.theta
    print(f"theta = alpha^{x} / {inst.p}^{y}; minimal polynomial {d['theta_minpoly']}")
    print(f"{inst.p}-Eisenstein: {d['eisenstein_at_p']}; Delta_p = {d['delta_p']}, "
          f"squarefree: {d['delta_p_squarefree']}")
    return EXIT_OK


def cmd_dpr(args) -> int:
    try:
        rep = dpr_family_check(args.prime, args.r, args.m, args.a, args.b)
    except PreconditionError as exc:
        raise InputError("; ".join(exc.violations)) from exc
    except PolygonMismatch as exc:
        print(f"polygon mismatch: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED
    if args.json:
        _dump(rep.to_dict())
        return EXIT_OK
    print(f"F = {rep.to_dict()['polynomial']}, phi = x + {rep.b}")
    print("predicted sides found: " + ", ".join(f"{s}-{e}" for s, e in rep.predicted_sides))
    print(f"P_1 >= {rep.P1} > N_1 = {rep.N1}: {rep.p} | i(K)" if rep.common_index_divisor
          else f"P_1 >= {rep.P1}, N_1 = {rep.N1}: not certified")
    print(f"engine verdict: {rep.engine_verdict}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oreindex", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=None, help="seed for randomized factorization")
    sub = ap.add_subparsers(dest="command", required=True)

    def poly_cmd(name, fn, help_, prime_required=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("poly", help='monic polynomial, e.g. "x^5+3x^2+144"')
        sp.add_argument("-p", "--prime", type=int, required=prime_required)
        sp.add_argument("--json", action="store_true", help="print JSON")
        sp.set_defaults(func=fn)
        return sp

    sp = poly_cmd("polygon", cmd_polygon, "phi-Newton polygon, residual polynomials, phi-index")
    sp.add_argument("--phi", required=True, help="monic phi, irreducible mod p")
    sp.add_argument("--svg", metavar="PATH", help="write an SVG rendering")
    poly_cmd("dedekind", cmd_dedekind, "Dedekind's criterion")
    poly_cmd("ore", cmd_ore, "Ore analysis: polygons, residual factorizations, index bound")
    sp = poly_cmd("index-divisor", cmd_index_divisor, "is p a common index divisor?",
                  prime_required=False)
    sp.add_argument("--trace", action="store_true", help="show the derivation")

    sp = sub.add_parser("quintic", help="closed-form and engine verdicts for x^5 + a x^2 + b")
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)
    sp.add_argument("--reading", choices=READINGS, default="printed")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--trace", action="store_true", help="include engine traces in JSON")
    sp.set_defaults(func=cmd_quintic)

    sp = sub.add_parser("scan", help="grid scan of x^5 + a x^2 + b")
    sp.add_argument("--config", metavar="PATH", help="key = value configuration file")
    sp.add_argument("--a-range", metavar="LO..HI")
    sp.add_argument("--b-range", metavar="LO..HI")
    sp.add_argument("--primes", metavar="2,3")
    sp.add_argument("--csv", metavar="PATH")
    sp.add_argument("--json", metavar="PATH")
    sp.add_argument("--ledger", metavar="PATH")
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--seed", type=int, dest="scan_seed")
    sp.add_argument("--reading", choices=READINGS)
    sp.set_defaults(func=cmd_scan)

    fam = sub.add_parser("families", help="degree p^r family checkers")
    fsub = fam.add_subparsers(dest="family", required=True)
    sp = fsub.add_parser("mono", help="x^(p^r) + p^v a x^m + p^u b")
    for name in ("r", "v", "u", "m", "a", "b"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.add_argument("-p", "--prime", type=int, required=True)
    sp.add_argument("--trial-bound", type=int, default=10**6)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_mono)
    sp = fsub.add_parser("dpr", help="x^(p^r) + a x^m + b")
    for name in ("r", "m", "a", "b"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.add_argument("-p", "--prime", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_dpr)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "scan":
        args.seed = args.scan_seed if args.scan_seed is not None else args.seed
    if args.seed is not None:
        ffield.set_default_seed(args.seed)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
