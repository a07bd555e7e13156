"""Command-line front end.

Exit status: 0 on success, 1 when a counterexample is found, 2 on usage errors.
"""
import argparse
import json
import sys

from .exactnum import CycloMatrix, CycloNumber, parse_rational
from .theorem import (
    Counterexample,
    block_det_identity_check,
    factorize,
    kostant_value,
    norm_map,
    siegel_levi_check,
    sym_lambda_check,
    twisted_character,
    twisted_conjugate,
    verify_identity,
)
from .verify import TrialConfig, random_rational, random_weight, run_sweep, stream, sweep_document
from .weights import TwistedPoint, Weight


class UsageError(Exception):
    pass


def _weight(args):
    if args.lam is None:
        raise UsageError("--lambda is required")
    try:
        return Weight.parse(args.lam)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--lambda: {exc}") from None


def _rationals(text, flag):
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        return [parse_rational(p) for p in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag}: bad rational list {text!r} ({exc})") from None


def _positive(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    if value < 1:
        raise UsageError(f"{flag} must be positive, got {value}")
    return value


def _emit(args, doc, text):
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print(text)


def _format_mus(result):
    lines = []
    for i, members in enumerate(result.classes.classes):
        line = f"  class {i}: {{{', '.join(str(a) for a in members)}}}"
        if not result.vanishes:
            line += f"  ->  mu_{i} = ({', '.join(str(x) for x in result.mus[i])})"
        lines.append(line)
    return "\n".join(lines)


def cmd_character(args):
    lam = _weight(args)
    n = _positive(args.n, "--n")
    t = _rationals(args.t, "--t")
    if len(lam) != len(t) * n:
        raise UsageError(f"--lambda has {len(lam)} entries, expected len(--t) * --n = {len(t) * n}")
    if any(x == 0 for x in t):
        raise UsageError("--t entries must be nonzero")
    value = twisted_character(lam, TwistedPoint(tuple(t), n))
    _emit(args, value.to_json(), str(value))
    return 0


def _shape(args, lam=None):
    m = _positive(args.m, "--m")
    n = _positive(args.n, "--n")
    if lam is not None and len(lam) != m * n:
        raise UsageError(f"--lambda has {len(lam)} entries, expected --m * --n = {m * n}")
    return m, n


def cmd_factor(args):
    lam = _weight(args)
    m, n = _shape(args, lam)
    result = factorize(lam, m, n)
    text = [f"lambda = ({', '.join(map(str, lam))}),  m = {m},  n = {n}", _format_mus(result)]
    if result.vanishes:
        text.append("character vanishes identically on t.c_n")
    else:
        sign = "+" if result.sign > 0 else "-"
        factors = " ".join(f"Theta_{i}(t^{n})" for i in range(n))
        text.append(f"Theta(t.c_{n}) = {sign} {factors}")
    _emit(args, result.to_json(), "\n".join(text))
    return 0


def cmd_verify(args):
    if args.lam is not None:
        lam = _weight(args)
        m, n = _shape(args, lam)
        trials = _positive(args.trials, "--trials")
        report = verify_identity(lam, m, n, trials, args.seed)
        lines = [f"lambda = {lam}, m = {m}, n = {n}, seed = {args.seed}"]
        for tr in report.trials:
            t = ",".join(str(x) for x in tr.t)
            lines.append(f"  t = ({t}): lhs = {tr.lhs}, rhs = {tr.rhs}  {'ok' if tr.ok else 'MISMATCH'}")
        _emit(args, report.to_json(), "\n".join(lines))
        return 0 if report.passed else 1

    if args.config is not None:
        try:
            with open(args.config) as fh:
                config = TrialConfig.from_json(json.load(fh))
        except (OSError, ValueError, TypeError) as exc:
            raise UsageError(f"--config: {exc}") from None
    else:
        shapes = [(args.m, args.n)] if args.m and args.n else None
        kwargs = {"seed": args.seed, "trials": args.trials or 3}
        if shapes:
            kwargs["shapes"] = shapes
        if args.samples:
            kwargs["weights_per_shape"] = args.samples
        try:
            config = TrialConfig(**kwargs)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    reports = run_sweep(config)
    bad = [r for r in reports if not r.passed]
    lines = [f"{len(reports)} weights checked, {len(bad)} with counterexamples"]
    lines += [f"  counterexample: lambda = {r.lam}, m = {r.m}, n = {r.n}" for r in bad]
    _emit(args, sweep_document(config, reports), "\n".join(lines))
    return 1 if bad else 0


def cmd_kostant_scan(args):
    n = _positive(args.n, "--n")
    samples = _positive(args.samples, "--samples")
    if args.lo > args.hi:
        raise UsageError(f"--lo {args.lo} exceeds --hi {args.hi}")
    rows = []
    ok = True
    for i in range(samples):
        lam = random_weight(n, args.lo, args.hi, stream(args.seed, "kostant", n, i))
        try:
            rows.append((lam, kostant_value(lam, n)))
        except Counterexample:
            ok = False
            rows.append((lam, None))
    doc = [{"lambda": list(lam), "value": v} for lam, v in rows]
    text = "\n".join(f"{str(lam):>24}  {v if v is not None else 'OUT OF RANGE'}" for lam, v in rows)
    _emit(args, doc, text)
    return 0 if ok else 1


def cmd_block_det(args):
    m, n = _shape(args)
    trials = args.trials or 1
    rows = []
    ok = True
    for i in range(trials):
        rng = stream(args.seed, "block", m, n, i)
        Xs = [CycloMatrix([[random_rational(rng, 9) for _ in range(m)] for _ in range(m)]) for _ in range(n)]
        lhs, rhs, c = block_det_identity_check(Xs)
        ok = ok and lhs == rhs
        rows.append({"lhs": lhs.to_json(), "rhs": rhs.to_json(), "c": c.to_json(), "ok": lhs == rhs})
    text = "\n".join(
        f"  trial {i}: lhs = {CycloNumber.from_json(r['lhs'])}, c = {CycloNumber.from_json(r['c'])}, "
        f"{'ok' if r['ok'] else 'MISMATCH'}"
        for i, r in enumerate(rows)
    )
    _emit(args, rows, text)
    return 0 if ok else 1


def _random_invertible(rng, m):
    while True:
        g = CycloMatrix([[random_rational(rng, 9) for _ in range(m)] for _ in range(m)])
        if g.det():
            return g


def cmd_norm(args):
    m, n = _shape(args)
    trials = args.trials or 1
    rows = []
    ok = True
    for i in range(trials):
        rng = stream(args.seed, "norm", m, n, i)
        gs = [_random_invertible(rng, m) for _ in range(n)]
        hs = [_random_invertible(rng, m) for _ in range(n)]
        before = norm_map(gs).charpoly()
        after = norm_map(twisted_conjugate(gs, hs)).charpoly()
        ok = ok and before == after
        rows.append({"charpoly": [c.to_json() for c in before], "ok": before == after})
    text = "\n".join(
        f"  trial {i}: charpoly of norm = {[str(CycloNumber.from_json(c)) for c in r['charpoly']]} "
        f"{'preserved' if r['ok'] else 'CHANGED'}"
        for i, r in enumerate(rows)
    )
    _emit(args, rows, text)
    return 0 if ok else 1


def cmd_sym_lambda(args):
    if args.kind is None:
        raise UsageError("--kind is required")
    if args.k is None or args.k < 0:
        raise UsageError("--k must be a non-negative integer")
    t = _rationals(args.t, "--t")
    n = _positive(args.n, "--n")
    m = len(t)
    if args.m is not None and args.m != m:
        raise UsageError(f"--m is {args.m} but --t has {m} entries")
    if args.kind == "ext" and args.k > m * n:
        raise UsageError(f"--k {args.k} exceeds the dimension {m * n}")
    if any(x == 0 for x in t):
        raise UsageError("--t entries must be nonzero")
    try:
        value = sym_lambda_check(args.kind, args.k, m, n, t)
    except Counterexample as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return 1
    _emit(args, value.to_json(), str(value))
    return 0


def cmd_siegel(args):
    if args.k is None or args.k < 0:
        raise UsageError("--k must be a non-negative integer")
    t = _rationals(args.t, "--t")
    if args.m is not None and args.m != len(t):
        raise UsageError(f"--m is {args.m} but --t has {len(t)} entries")
    if any(x == 0 for x in t):
        raise UsageError("--t entries must be nonzero")
    try:
        value = siegel_levi_check(len(t), args.k, t)
    except Counterexample as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return 1
    _emit(args, value.to_json(), str(value))
    return 0


COMMANDS = {
    "character": (cmd_character, "character of lambda at t.c_n"),
    "factor": (cmd_factor, "residue classes, factor weights mu_i and the sign"),
    "verify": (cmd_verify, "check the factorization at random points (or sweep)"),
    "kostant-scan": (cmd_kostant_scan, "Coxeter values of random GL_n weights"),
    "block-det": (cmd_block_det, "check the block determinant identity"),
    "norm": (cmd_norm, "norm map invariance under twisted conjugation"),
    "sym-lambda": (cmd_sym_lambda, "Sym^k / Lambda^k closed forms at t.c_n"),
    "siegel": (cmd_siegel, "Sym^k(C^4m) at the Siegel-Levi twisted element"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="twistedchar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--lambda", dest="lam", help="highest weight, e.g. 1,1,0,0")
        p.add_argument("--m", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--t", help="comma-separated rationals, e.g. 1,2/3")
        p.add_argument("--trials", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", action="store_true")
        p.add_argument("--kind", choices=["sym", "ext"])
        p.add_argument("--k", type=int)
        p.add_argument("--lo", type=int, default=0)
        p.add_argument("--hi", type=int, default=6)
        p.add_argument("--config", help="TrialConfig JSON file (verify without --lambda)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except UsageError as exc:
        parser.error(f"{args.command}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
