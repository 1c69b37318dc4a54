"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 precondition violated, 4 internal
invariant breach.
"""
import argparse
import json
import os
import sys

from . import output
from .algebra import StandingAssumptionError
from .coefficients import CoeffRing, RingError
from .ext import PRESETS, ExtError, custom_module, ext_via_bar
from .scenarios import KINDS, ScenarioError, ScenarioSpec, run_scenario
from .spectral import Bounds, InvariantError, RuleError
from .symmetric import remainder_sign_report, sigma_difference, split_primes, vex

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got %r" % text)


def _common(p):
    p.add_argument("--max-filt", type=int, default=None, help="largest filtration s reported")
    p.add_argument("--max-deg", type=int, default=None, help="largest motivic degree p reported")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--sqrt-minus-one", action="store_true",
                   help="-1 is a square in the coefficients (matters in characteristic 2)")


def build_parser():
    parser = argparse.ArgumentParser(prog="rsss", description="Trigraded spectral sequence calculator.")
    sub = parser.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scenario", help="run a named computation")
    kinds = sc.add_subparsers(dest="kind", required=True)
    for kind in KINDS:
        k = kinds.add_parser(kind)
        k.add_argument("--n", type=int, required=True)
        if kind in ("stiefel", "crosscheck"):
            k.add_argument("--m", type=int, required=True)
        if kind in ("left-right", "stiefel", "crosscheck"):
            k.add_argument("--u", type=_ints, required=True)
            k.add_argument("--v", type=_ints, required=True)
        if kind == "weighted-gln":
            k.add_argument("--w", type=_ints, required=True)
        if kind == "crosscheck":
            k.add_argument("--prime", type=int, required=True)
        else:
            k.add_argument("--coeff", default=None, help="z, q, zmod:p or zloc:p1,p2,...")
        _common(k)

    ex = sub.add_parser("ext", help="Ext over a finite algebra via the bar complex")
    method = ex.add_subparsers(dest="method", required=True)
    bar = method.add_parser("bar")
    bar.add_argument("--preset", required=True, help="lambda1, z2-group or custom:<file>")
    bar.add_argument("--max-degree", type=int, default=4)
    bar.add_argument("--coeff", default=None)
    _common(bar)

    vx = sub.add_parser("vex", help="approximate extension of a weight vector")
    vx.add_argument("--u", type=_ints, required=True)
    vx.add_argument("--v", type=_ints, required=True)
    _common(vx)

    sp = sub.add_parser("split-primes", help="odd primes over which q splits into linear factors")
    sp.add_argument("--q", type=_ints, required=True, help="coefficients, constant term first")
    sp.add_argument("--max", type=int, default=1000)
    _common(sp)
    return parser


def _threads():
    raw = os.environ.get("RSSS_THREADS")
    if raw is None or raw == "":
        return None
    try:
        n = int(raw)
    except ValueError:
        raise UsageError("RSSS_THREADS must be an integer")
    if n < 1:
        raise UsageError("RSSS_THREADS must be positive")
    return n


def _ring(text, default, flag):
    try:
        return CoeffRing.parse(text or default, sqrt_minus_one=flag)
    except RingError as exc:
        raise UsageError(str(exc))


def _scenario(args):
    if args.kind == "crosscheck":
        ring = CoeffRing.mod(args.prime) if args.prime > 1 else CoeffRing.rationals()
    else:
        ring = _ring(args.coeff, "zloc:2" if args.kind == "stiefel" else "q", args.sqrt_minus_one)
    spec = ScenarioSpec(args.kind, args.n, ring, m=getattr(args, "m", None), u=getattr(args, "u", None),
                        v=getattr(args, "v", None), w=getattr(args, "w", None),
                        prime=getattr(args, "prime", None))
    bounds = Bounds(args.max_filt, args.max_deg)
    if args.kind == "crosscheck":
        report = run_scenario(spec, bounds)
        doc = output.crosscheck_document(report)
        return doc, output.crosscheck_text(report)
    result = run_scenario(spec, bounds, keep_pages=True)
    return output.scenario_document(result), output.scenario_text(result)


def _ext(args):
    preset = args.preset
    if preset.startswith("custom:"):
        path = preset[len("custom:"):]
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError("cannot read %s: %s" % (path, exc))
        coeff = _ring(args.coeff, doc.get("coeff", "q"), args.sqrt_minus_one)
        module = custom_module(doc, coeff)
    elif preset in PRESETS:
        default = "z" if preset == "z2-group" else "q"
        module = PRESETS[preset](_ring(args.coeff, default, args.sqrt_minus_one))
    else:
        raise UsageError("unknown preset %r" % preset)
    if args.max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    result = ext_via_bar(module, args.max_degree)
    return output.ext_document(result, preset), output.ext_text(result)


def _vex(args):
    res = vex(args.u, args.v)
    n = len(args.u)
    diffs = [sigma_difference(args.u, args.v, i) for i in range(1, n + 1)]
    doc = output.vex_document(args.u, args.v, res, diffs, remainder_sign_report(args.u, args.v))
    return doc, output.generic_text({k: doc[k] for k in ("q", "r", "sigma_vex", "sigma_differences")})


def _split(args):
    pairs = split_primes(args.q, args.max)
    doc = output.split_primes_document(args.q, args.max, pairs)
    return doc, output.generic_text({"primes": [(p, r) for p, r in pairs]})


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        # computations run in a single thread; the value is validated so scripts can rely on it
        _threads()
        handler = {"scenario": _scenario, "ext": _ext, "vex": _vex, "split-primes": _split}[args.command]
        doc, text = handler(args)
    except UsageError as exc:
        print("rsss: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print("rsss: invariant breach: %s" % exc, file=sys.stderr)
        return EXIT_INVARIANT
    except (ScenarioError, StandingAssumptionError, RingError, RuleError, ExtError, ValueError) as exc:
        print("rsss: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    sys.stdout.write(output.dumps(doc) if args.format == "json" else text)
    return EXIT_OK


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
