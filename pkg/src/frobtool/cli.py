"""Command line front end.

Exit status: 0 success, 2 usage error, 3 computation error (reason code on
stderr), 4 theorem violation or golden mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import cache
from .errors import FrobError, NotFPure, TooLarge
from .experiments import (EXPECTED_4_1, EXPECTED_4_2, CampaignConfig, GoldenFailure, check_golden,
                          dump_report, ideal_json, perturb_theorem_A, perturb_theorem_B,
                          random_campaign, run_example_4_1, run_example_4_2)
from .frobenius import (HypersurfaceContext, fedder_fpure, find_splitting_prime,
                        glassbrenner_witness, jacobian_ideal, splitting_ideal, splitting_number,
                        splitting_ratio_estimate)
from .parser import parse_poly, parse_ring_file

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VIOLATION = 0, 2, 3, 4

HYPERSURFACE_COMMANDS = ("fpure", "splitting-ideal", "splitting-numbers", "splitting-prime",
                         "dimension", "ratio", "jacobian", "sfr-check", "perturb")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--cache-dir", default=os.environ.get("FROBTOOL_CACHE_DIR"),
                        help="directory for cached Groebner bases (default $FROBTOOL_CACHE_DIR)")
    common.add_argument("--budget-seconds", type=float, default=None,
                        help="soft wall-clock limit checked between stages")

    source = _Parser(add_help=False)
    source.add_argument("-i", "--input", help="ring file with p, vars, order and f")
    source.add_argument("--ring", help='inline ring, e.g. "p=7 vars=x y z order=grevlex"')
    source.add_argument("--f", help="hypersurface equation")

    parser = _Parser(prog="frobtool", description="Frobenius splitting invariants of hypersurfaces")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("fpure", parents=[common, source], help="Fedder's criterion")
    p = sub.add_parser("splitting-ideal", parents=[common, source], help="lift of I_e")
    p.add_argument("--e", type=_positive, default=1)
    p = sub.add_parser("splitting-numbers", parents=[common, source], help="a_1 .. a_E")
    p.add_argument("--max-e", type=_positive, default=1)
    p = sub.add_parser("splitting-prime", parents=[common, source], help="lift of the splitting prime")
    p.add_argument("--max-iter", type=_positive, default=20)
    p = sub.add_parser("dimension", parents=[common, source], help="splitting dimension")
    p.add_argument("--max-iter", type=_positive, default=20)
    p = sub.add_parser("ratio", parents=[common, source], help="a_e / p^(e n)")
    p.add_argument("--e", type=_positive, default=1)
    p.add_argument("--max-iter", type=_positive, default=20)
    sub.add_parser("jacobian", parents=[common, source], help="partial derivatives of f")
    p = sub.add_parser("sfr-check", parents=[common, source], help="Glassbrenner witness for c")
    p.add_argument("--c", help="test element (or key c in the ring file)")
    p.add_argument("--max-e", type=_positive, default=1)
    p = sub.add_parser("perturb", parents=[common, source], help="Theorem A or B perturbation harness")
    p.add_argument("--theorem", choices=("A", "B"), required=True)
    p.add_argument("--eps", help="explicit perturbation (default: random samples)")
    p.add_argument("--samples", type=_positive, default=3)
    p.add_argument("--max-e", type=_positive, default=1)
    p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("example", parents=[common], help="golden run of a worked example")
    p.add_argument("name", choices=("4.1", "4.2"))
    p.add_argument("--a2", action="store_true", help="also compute a_2 for 4.2")

    p = sub.add_parser("campaign", parents=[common], help="randomized theorem campaign")
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--n-vars", type=_positive, required=True)
    p.add_argument("--degree", type=_positive, default=4)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--samples", type=_positive, default=3)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--timings", action="store_true", help="record wall-clock timings in the report")
    return parser


def _load(args):
    """Ring file contents from -i or --ring/--f, validated before any algebra."""
    if args.input and args.ring:
        raise UsageError("give either -i/--input or --ring, not both")
    if args.input:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}")
    elif args.ring:
        text = args.ring
    else:
        raise UsageError("a ring is required: use -i/--input or --ring")
    rf = parse_ring_file(text)
    if args.f is not None:
        if "f" in rf.polys:
            raise UsageError("f given both in the ring file and with --f")
        rf.polys["f"] = parse_poly(args.f, rf.ring)
    if "f" not in rf.polys:
        raise UsageError("no hypersurface: give --f or an f= line")
    return rf


def _check_flags(args):
    if args.command == "campaign":
        if args.trials < 0:
            raise UsageError("--trials must be non-negative")
        if args.n_vars > 8:
            raise UsageError("--n-vars is at most 8")
    if args.budget_seconds is not None and args.budget_seconds <= 0:
        raise UsageError("--budget-seconds must be positive")


class _Clock:
    def __init__(self, budget):
        self.deadline = None if budget is None else time.monotonic() + budget

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise TooLarge("time budget exhausted")


def _emit(args, out, report, text):
    if args.json:
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _gens_text(gens):
    return ", ".join(gens) if gens else "0"


def _run_hypersurface(args, rf, out, clock):
    ring = rf.ring
    f = rf.polys["f"]
    ctx = HypersurfaceContext(ring, f)
    base = {"v": 1, "ring": ring.inline(), "f": str(f), "command": args.command}
    cmd = args.command

    if cmd == "fpure":
        v = fedder_fpure(ctx)
        _emit(args, out, {**base, "fpure": v}, f"F-pure: {str(v).lower()}")
    elif cmd == "splitting-ideal":
        J = splitting_ideal(ctx, args.e)
        gens = ideal_json(J)
        a = 0 if J.is_unit() else splitting_number(ctx, args.e)
        _emit(args, out, {**base, "e": args.e, "ideal": gens, "a": a},
              f"I_{args.e} = ({_gens_text(gens)})\na_{args.e} = {a}")
    elif cmd == "splitting-numbers":
        values = []
        for e in range(1, args.max_e + 1):
            values.append(splitting_number(ctx, e))
            clock.check()
        rows = "\n".join(f"{e:>3}  {a}" for e, a in enumerate(values, 1))
        _emit(args, out, {**base, "a": values}, "  e  a_e\n" + rows)
    elif cmd in ("splitting-prime", "dimension", "ratio"):
        prime = find_splitting_prime(ctx, max_iter=args.max_iter)
        clock.check()
        gens = ideal_json(prime.ideal)
        info = {"prime": gens, "certificate": prime.certificate, "zero": prime.is_zero,
                "dimension": prime.dimension, "dimension_exact": prime.dimension_exact}
        if cmd == "splitting-prime":
            _emit(args, out, {**base, **info},
                  f"{_gens_text(gens)}\ncertificate: {prime.certificate}")
        elif cmd == "dimension":
            bound = "" if prime.dimension_exact else " (upper bound)"
            _emit(args, out, {**base, **info}, f"splitting dimension: {prime.dimension}{bound}")
        else:
            r = splitting_ratio_estimate(ctx, args.e, prime)
            _emit(args, out, {**base, **info, "e": args.e, "ratio": str(r)},
                  f"a_{args.e} / p^({args.e}*{prime.dimension}) = {r}")
    elif cmd == "jacobian":
        gens = [str(g) for g in jacobian_ideal(f).gens]
        _emit(args, out, {**base, "jacobian": gens}, f"Jac(f) = ({_gens_text(gens)})")
    elif cmd == "sfr-check":
        c = parse_poly(args.c, ring) if args.c is not None else rf.polys.get("c")
        if c is None:
            raise UsageError("sfr-check needs --c or a c= line")
        ok, e = glassbrenner_witness(ctx, c, args.max_e)
        _emit(args, out, {**base, "c": str(c), "verdict": ok, "witness_e": e},
              f"strongly F-regular witness: {str(ok).lower()}" + (f" (e = {e})" if ok else ""))
    elif cmd == "perturb":
        eps = parse_poly(args.eps, ring) if args.eps is not None else rf.polys.get("eps")
        if eps is not None and not eps:
            raise UsageError("the perturbation must be nonzero")
        if not fedder_fpure(ctx):
            raise NotFPure("f is not F-pure")
        explicit = [eps] if eps is not None else None
        e_range = tuple(range(1, args.max_e + 1))
        if args.theorem == "A":
            outs = perturb_theorem_A(ctx, args.samples, e_range, args.seed, eps=explicit)
            bad = [o for o in outs if o.completed and not o.verdict_A]
        else:
            outs = perturb_theorem_B(ctx, args.samples, 1, args.seed, eps=explicit, e_range=e_range)
            bad = [o for o in outs if o.completed and not o.verdict_B]
        report = {**base, "theorem": args.theorem, "seed": args.seed,
                  "outcomes": [o.as_dict() for o in outs], "violations": len(bad)}
        lines = []
        for o in outs:
            if o.skipped:
                lines.append(f"eps = {o.eps}: skipped ({o.skipped})")
            elif args.theorem == "A":
                lines.append(f"eps = {o.eps}: a = {o.a_before} -> {o.a_after}  "
                             f"{'ok' if o.verdict_A else 'VIOLATION'}")
            else:
                lines.append(f"eps = {o.eps}: dim {o.dim_before} -> {o.dim_after}  "
                             f"{'ok' if o.verdict_B else 'VIOLATION'}"
                             + ("  (strict)" if o.strict_B else ""))
        _emit(args, out, report, "\n".join(lines))
        return EXIT_VIOLATION if bad else EXIT_OK
    return EXIT_OK


def _run_example(args, out):
    if args.name == "4.1":
        report, expected = run_example_4_1(), EXPECTED_4_1
    else:
        report, expected = run_example_4_2(with_a2=args.a2), EXPECTED_4_2
    status = EXIT_OK
    try:
        check_golden(report, expected)
        report["golden"] = "pass"
    except GoldenFailure as exc:
        report["golden"] = f"fail: {exc}"
        status = EXIT_VIOLATION
    if args.json:
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        width = max(len(k) for k in report)
        for k, v in report.items():
            out.write(f"{k:<{width}}  {json.dumps(v) if not isinstance(v, str) else v}\n")
    return status


def _run_campaign(args, out):
    config = CampaignConfig(p=args.p, n_vars=args.n_vars, degree=args.degree, trials=args.trials,
                            seed=args.seed, eps_samples=args.samples, workers=args.workers,
                            budget_seconds=args.budget_seconds, record_timings=args.timings)
    report = random_campaign(config)
    agg = report["aggregates"]
    if args.json:
        out.write(dump_report(report))
    else:
        out.write(f"ring {report['ring']}  seed {report['seed']}  trials {agg['trials']}  "
                  f"F-pure {agg['fpure']}\n")
        for name in ("A", "B"):
            b = agg[name]
            out.write(f"Theorem {name}: {b['passed']}/{b['completed']} passed, "
                      f"skipped {json.dumps(b['skipped'], sort_keys=True)}\n")
        c = agg["C"]
        out.write(f"Theorem C battery: {c['consistent']}/{c['instances']} consistent\n")
        out.write(f"violations: {len(agg['violations'])}\n")
    return EXIT_VIOLATION if agg["violations"] else EXIT_OK


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_flags(args)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    try:
        cache.set_cache_dir(args.cache_dir)
        if args.command == "example":
            return _run_example(args, out)
        if args.command == "campaign":
            return _run_campaign(args, out)
        rf = _load(args)
        return _run_hypersurface(args, rf, out, _Clock(args.budget_seconds))
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (FrobError, OverflowError, ValueError) as exc:
        code = getattr(exc, "code", "overflow" if isinstance(exc, OverflowError) else "invalid")
        err.write(f"error [{code}]: {exc}\n")
        return EXIT_COMPUTE
    finally:
        cache.set_cache_dir(None)


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
