"""Command-line front end.

Exit status: 0 on success, 1 when a verification finds a mismatch, 2 for
invalid input (bad flags, malformed JSON, dimension errors).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import oracle, sampling
from .newton import ParseError, newton_polytope, parse_laurent, big_delta, delta_star
from .polytope import (
    GeometryError,
    MixedVolumeCache,
    Polytope,
    mixed_volume,
    qnk,
    rat_str,
    volume,
)
from .strata import (
    StrataReport,
    consistency_deg2,
    consistency_deg3,
    r_residual,
)

SCHEMAS = """\
Polytope JSON:   {"dim": d, "points": [["p/q", ...], ...]}
                 coordinates are integers or "p/q" strings; output lists the
                 vertices in lexicographic order.
Polynomial text: terms joined by + or -, term = [coeff *] z1^e1 * z2^e2 ...
                 e.g. "3*z1^2*z2^-1 - z2", "1/2*z1^0"
Polynomial JSON: {"vars": n, "terms": [{"coeff": "p/q", "exp": [..]}]}
Report JSON:     {"degree": k, "chi": {"H": int, ...},
                  "relations": [{"name": "...", "residual": "0"}]}
Polytope arguments accept inline JSON or a path to a JSON file.
"""


class UsageError(Exception):
    pass


def _load_polytope(text: str) -> Polytope:
    if not text.lstrip().startswith("{"):
        if not os.path.exists(text):
            raise UsageError(f"not inline JSON and no such file: {text}")
        with open(text) as fh:
            text = fh.read()
    return Polytope.from_json(text)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _report_text(report: StrataReport) -> str:
    lines = [f"degree {report.chi.degree}"]
    lines += [f"chi({k}) = {v}" for k, v in report.chi.as_ints().items()]
    lines += [f"relation {r.name}: residual {rat_str(r.residual)}" for r in report.relations]
    return "\n".join(lines)


def cmd_newton(args) -> int:
    poly = parse_laurent(args.poly, args.vars)
    p = newton_polytope(poly)
    _emit(args, p.to_json_obj(), p.to_json())
    return 0


def cmd_mixvol(args) -> int:
    bodies = [_load_polytope(b) for b in args.body]
    value = mixed_volume(bodies, MixedVolumeCache())
    _emit(args, {"mixed_volume": rat_str(value)}, rat_str(value))
    return 0


def cmd_qnk(args) -> int:
    bodies = [_load_polytope(b) for b in args.body]
    value = qnk(args.n, len(bodies), bodies, MixedVolumeCache())
    _emit(args, {"n": args.n, "k": len(bodies), "value": rat_str(value)}, rat_str(value))
    return 0


def cmd_chi2(args) -> int:
    ds = [_load_polytope(x) for x in (args.d0, args.d1, args.d2)]
    report = consistency_deg2(*ds, MixedVolumeCache())
    _emit(args, report.to_json_obj(), _report_text(report))
    return 0 if report.ok else 1


def cmd_chi3(args) -> int:
    ds = [_load_polytope(x) for x in (args.d0, args.d1, args.d2, args.d3)]
    report = consistency_deg3(*ds, MixedVolumeCache())
    _emit(args, report.to_json_obj(), _report_text(report))
    return 0 if report.ok else 1


def _trial_summary(args, name: str, results: list[dict], label: str) -> int:
    good = sum(r["ok"] for r in results)
    payload = {"check": name, "dim": args.dim, "trials": args.trials, "seed": args.seed,
               "passed": good, "results": results}
    _emit(args, payload, f"{good}/{args.trials} {label}")
    return 0 if good == args.trials else 1


def cmd_verify_r(args) -> int:
    rng = random.Random(args.seed)
    cache = MixedVolumeCache()
    results = []
    for i in range(args.trials):
        s1 = sampling.random_rational_polytope(rng, args.dim, args.bound)
        s2 = sampling.random_rational_polytope(rng, args.dim, args.bound)
        res = r_residual(s1, s2, cache)
        results.append({"trial": i, "residual": rat_str(res), "ok": res == 0})
    return _trial_summary(args, "r-identity", results, "residuals zero")


def cmd_verify_prism(args) -> int:
    rng = random.Random(args.seed)
    cache = MixedVolumeCache()
    results = []
    n = args.dim
    for i in range(args.trials):
        base0, base1, whole = sampling.random_slab_pair(rng, n, args.bound)
        lhs = volume(whole)
        rhs = (_nvol(base0, cache) + qnk(n, 2, [base0, base1], cache)
               + _nvol(base1, cache)) / (n + 1)
        results.append({"trial": i, "lhs": rat_str(lhs), "rhs": rat_str(rhs), "ok": lhs == rhs})
    return _trial_summary(args, "prism", results, "prism volumes equal")


def _nvol(p: Polytope, cache) -> Fraction:
    return mixed_volume([p] * p.ambient_dim, cache)


def cmd_verify_del(args) -> int:
    rng = random.Random(args.seed)
    cache = MixedVolumeCache()
    results = []
    n = args.dim
    for i in range(args.trials):
        d0, d1, d2 = (sampling.random_integer_polytope(rng, n, args.bound) for _ in range(3))
        lhs = volume(big_delta(2, [d0, d1, d2]))
        ds = delta_star(d0, d1, d2)
        rhs = (_nvol(d0, cache) + 2 * _nvol(ds, cache) + _nvol(d2, cache)
               + qnk(n, 2, [d0, ds], cache) + qnk(n, 2, [ds, d2], cache)) / (n + 1)
        results.append({"trial": i, "lhs": rat_str(lhs), "rhs": rat_str(rhs), "ok": lhs == rhs})
    return _trial_summary(args, "lifted-volume", results, "lifted volumes equal")


def cmd_verify_consistency(args) -> int:
    rng = random.Random(args.seed)
    cache = MixedVolumeCache()
    results = []
    for i in range(args.trials):
        ds = [sampling.random_integer_polytope(rng, args.dim, args.bound) for _ in range(4)]
        report = consistency_deg3(*ds, cache)
        entry = report.to_json_obj()
        entry.update(trial=i, ok=report.ok)
        results.append(entry)
    return _trial_summary(args, "degree-3 relations", results, "relation sets zero")


def cmd_verify_oracle1d(args) -> int:
    if args.segments:
        try:
            pairs = json.loads(args.segments)
            configs = [[oracle.segment(int(a), int(b)) for a, b in pairs]]
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise UsageError(f"--segments must be a JSON list of [a, b] pairs: {exc}")
    else:
        rng = random.Random(args.seed)
        configs = [[sampling.random_segment(rng, args.bound) for _ in range(args.degree + 1)]
                   for _ in range(args.configs)]
    reports = [oracle.verify_1d(segs, args.degree, args.trials, args.seed + c, args.tol,
                                args.coeff_bound, args.retry_cap)
               for c, segs in enumerate(configs)]
    mismatches = sum(r.count("mismatch") for r in reports)
    ambiguous = sum(r.count("ambiguous") for r in reports)
    total = sum(r.trials for r in reports)
    matches = sum(r.count("match") for r in reports)
    payload = {"degree": args.degree, "configs": [r.to_json_obj() for r in reports],
               "matches": matches, "mismatches": mismatches, "ambiguous": ambiguous,
               "trials": total}
    lines = []
    for r in reports:
        segs = " ".join(f"[{rat_str(s.vertices[0][0])},{rat_str(s.vertices[-1][0])}]"
                        for s in r.segments)
        chi = " ".join(f"{k}={v}" for k, v in r.chi_predicted.items())
        lines.append(f"{segs}: {r.count('match')}/{r.trials} match "
                     f"(first draw {r.first_draw_matches}, retries {r.retries}) {chi}")
    lines.append(f"{matches}/{total} trials match, {mismatches} mismatches, "
                 f"{ambiguous} unresolved")
    _emit(args, payload, "\n".join(lines))
    return 1 if mismatches else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulerstrata",
        description="Euler characteristics of root-coincidence strata from Newton polytopes.",
        epilog=SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    trials = argparse.ArgumentParser(add_help=False)
    trials.add_argument("--dim", type=int, default=2)
    trials.add_argument("--trials", type=int, default=100)
    trials.add_argument("--seed", type=int, default=0)
    trials.add_argument("--bound", type=int, default=3,
                        help="random vertices are drawn from [-B, B]^dim")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("newton", parents=[common], help="Newton polytope of a Laurent polynomial",
                       epilog=SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--poly", required=True)
    p.add_argument("--vars", type=int, required=True)
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("mixvol", parents=[common], help="mixed volume of d bodies in R^d")
    p.add_argument("--body", action="append", required=True)
    p.set_defaults(func=cmd_mixvol)

    p = sub.add_parser("qnk", parents=[common], help="evaluate Q^n_k on k bodies")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--body", action="append", required=True)
    p.set_defaults(func=cmd_qnk)

    p = sub.add_parser("chi2", parents=[common], help="strata of a degree-2 polynomial")
    for name in ("--d0", "--d1", "--d2"):
        p.add_argument(name, required=True)
    p.set_defaults(func=cmd_chi2)

    p = sub.add_parser("chi3", parents=[common], help="strata of a degree-3 polynomial")
    for name in ("--d0", "--d1", "--d2", "--d3"):
        p.add_argument(name, required=True)
    p.set_defaults(func=cmd_chi3)

    for name, func, help_ in (
            ("verify-r", cmd_verify_r, "convex-union identity on random rational pairs"),
            ("verify-prism", cmd_verify_prism, "volume of the hull of two parallel slices"),
            ("verify-del", cmd_verify_del, "volume of the degree-2 lifted polytope"),
            ("verify-consistency", cmd_verify_consistency, "degree-3 linear relations")):
        p = sub.add_parser(name, parents=[common, trials], help=help_)
        p.set_defaults(func=func)

    p = sub.add_parser("verify-oracle1d", parents=[common],
                       help="compare formulas with direct root counting at n = 1")
    p.add_argument("--degree", type=int, choices=(2, 3), default=2)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--coeff-bound", type=int, default=50)
    p.add_argument("--retry-cap", type=int, default=5)
    p.add_argument("--configs", type=int, default=1,
                   help="number of random segment configurations")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--segments", help='JSON list of [a, b] pairs, e.g. "[[0,1],[0,1],[0,1]]"')
    p.set_defaults(func=cmd_verify_oracle1d)
    return parser


def _validate(args) -> None:
    for name in ("trials", "dim", "configs"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            raise UsageError(f"--{name} must be positive")
    if getattr(args, "seed", 0) < 0:
        raise UsageError("--seed must be nonnegative")
    if getattr(args, "tol", 1.0) <= 0:
        raise UsageError("--tol must be positive")
    if getattr(args, "coeff_bound", 2) < 2:
        raise UsageError("--coeff-bound must be at least 2")
    if getattr(args, "dim", 1) > 6:
        raise UsageError("--dim must be at most 6")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except (UsageError, GeometryError, ParseError, ValueError, TypeError) as exc:
        print(f"eulerstrata {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
