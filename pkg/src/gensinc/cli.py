"""Command-line front end.

Each subcommand writes a CSV (``--out``, default stdout) and a JSON summary
of its checks (``--summary``, default ``<out>.summary.json``; stderr when the
CSV goes to stdout). Exit status: 0 all checks pass, 1 a mathematical check
failed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .generators import CoeffSeq
from .grid import parse_float_list, parse_grid, parse_int_list
from .io import InputError, kernel_from_json, load_kernel, load_signal, read_json
from .kernel import decay_envelope, eval_sinc_F, eval_sinc_F_spectral
from .noise import NoiseModel, run_noise_study
from .sampling import reconstruct
from .smoothness import NUMERIC_TERMS, Verdict, smoothness_report
from .truncation import run_truncation_study

SCHEMA_PATH = Path(__file__).with_name("schemas") / "summary.schema.json"


def fmt(x):
    return "%.17g" % x


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else str(x)


def check(name, ok, value, bound, **where):
    out = {"name": name, "pass": bool(ok), "value": _num(value), "bound": _num(bound)}
    out.update(where)
    return out


def _eval(args):
    kernel = load_kernel(args.coeffs)
    t = parse_grid(args.grid)
    direct = eval_sinc_F(kernel, t)
    spec = eval_sinc_F_spectral(kernel, t)
    env = decay_envelope(kernel, t)
    rows = [(fmt(a), fmt(b), fmt(c), fmt(d)) for a, b, c, d in zip(t, direct, spec, env)]
    gap = np.abs(direct - spec)
    worst = int(np.argmax(gap))
    excess = np.abs(direct) - env
    wdecay = int(np.argmax(excess))
    checks = [
        check("dual_route", gap[worst] <= args.tol, gap[worst], args.tol, t=float(t[worst])),
        check("decay_envelope", excess[wdecay] <= 0, abs(direct[wdecay]), env[wdecay], t=float(t[wdecay])),
    ]
    return ("t", "sinc_F", "spectral", "envelope"), rows, checks, {}


def _reconstruct(args):
    sig = load_signal(args.signal)
    t = parse_grid(args.grid)
    f = reconstruct(sig, t)
    at_samples = reconstruct(sig, sig.indices * math.pi)
    gap = np.abs(at_samples - sig.values)
    worst = int(np.argmax(gap))
    checks = [
        check("interpolation", gap[worst] <= args.tol, gap[worst], args.tol, n=int(sig.indices[worst]))
    ]
    return ("t", "f_reconstructed"), [(fmt(a), fmt(b)) for a, b in zip(t, f)], checks, {}


def _truncation(args):
    sig = load_signal(args.signal)
    depths = parse_int_list(args.depths)
    study = run_truncation_study(sig, depths)
    rows, checks = [], []
    for r in study.rows:
        rows.append((str(r.n), fmt(r.empirical_sup_error), fmt(r.bound), fmt(r.ratio)))
        checks.append(
            check(f"bound_dominance[n={r.n}]", r.holds, r.empirical_sup_error, r.bound, n=r.n, t=r.t_at_sup)
        )
    info = {"bound_slope": _num(study.slope), "grid_points": study.grid_size}
    return ("n", "empirical_sup_error", "bound", "ratio"), rows, checks, info


def _noise(args):
    sig = load_signal(args.signal)
    t = parse_grid(args.grid)
    model = NoiseModel(args.sigma, args.dist, args.seed)
    study = run_noise_study(sig, model, args.trials, t, workers=args.workers)
    rows, checks = [], []
    for r in study.rows:
        rows.append((fmt(r.t), fmt(r.mean_err), fmt(r.var_err), fmt(r.exact_var), fmt(r.bound)))
        checks.append(check("variance_bound", r.var_bounded, r.var_err, r.bound, t=r.t))
        rel = abs(r.var_err - r.exact_var) / r.exact_var if r.exact_var > 0 else abs(r.var_err)
        checks.append(check("variance_exact", r.var_close(args.tol), rel, args.tol, t=r.t))
    exceed = study.mean_exceedances()
    allowed = study.allowed_mean_exceedances()
    checks.append(check("zero_mean_band", exceed <= allowed, exceed, allowed))
    info = {"trials": args.trials, "seed": args.seed, "distribution": args.dist, "sigma": args.sigma}
    return ("t", "mean_err", "var_err", "exact_var", "bound"), rows, checks, info


def _decay_arg(text, n_terms):
    kind, _, param = text.partition(":")
    if kind == "geometric" and param:
        return CoeffSeq.geometric(float(param), n_terms)
    if kind in ("power", "power_law") and param:
        return CoeffSeq.power_law(float(param), n_terms)
    path = Path(text)
    if not path.exists():
        raise InputError(f"--decay: expected geometric:A, power:P or a coefficient file, got {text!r}")
    try:
        return kernel_from_json(read_json(path)).coeffs
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _smoothness(args):
    b = _decay_arg(args.decay, args.n_terms)
    report = smoothness_report(b, parse_float_list(args.s), args.N)
    rows = [(fmt(r.s), fmt(r.partial_N), fmt(r.partial_2N), r.verdict.value) for r in report.rows]
    # convergence at s must imply convergence at every smaller s
    ordered = sorted(report.rows, key=lambda r: r.s)
    seen_fail = None
    monotone = True
    for r in ordered:
        if r.verdict is not Verdict.CONVERGES:
            seen_fail = r.s if seen_fail is None else seen_fail
        elif seen_fail is not None:
            monotone = False
    checks = [check("verdict_monotone", monotone, None, None)]
    nu2 = report.nu2_bound
    info = {"nu2_lower_bound": None if nu2 is None else _num(nu2), "N": args.N}
    return ("s", "partial_N", "partial_2N", "verdict"), rows, checks, info


COMMANDS = {
    "eval": _eval,
    "reconstruct": _reconstruct,
    "truncation": _truncation,
    "noise": _noise,
    "smoothness": _smoothness,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="CSV output path (default stdout)")
    common.add_argument("--summary", default=None, help="JSON summary path")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="gensinc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="tabulate sinc_F by both routes")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--grid", default="-10pi:10pi:pi/64")
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser("reconstruct", parents=[common], help="evaluate a signal from its samples")
    p.add_argument("--signal", required=True)
    p.add_argument("--grid", default="-10pi:10pi:pi/64")
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser("truncation", parents=[common], help="adaptive truncation error study")
    p.add_argument("--signal", required=True)
    p.add_argument("--depths", default="1..32")
    p.add_argument("--tol", type=float, default=1e-12, help="accepted for uniformity; the bound is checked exactly")

    p = sub.add_parser("noise", parents=[common], help="Monte-Carlo noisy-sample study")
    p.add_argument("--signal", required=True)
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--dist", choices=["gaussian", "uniform_centered"], default="gaussian")
    p.add_argument("--grid", default="-4pi:4pi:pi/4")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tol", type=float, default=0.1, help="relative tolerance on the variance")

    p = sub.add_parser("smoothness", parents=[common], help="Sobolev smoothness certificate")
    p.add_argument("--decay", required=True, help="geometric:A | power:P | coefficient JSON file")
    p.add_argument("--s", default="0.5,1,2,2.4,2.6,10,100")
    p.add_argument("--N", type=int, default=NUMERIC_TERMS)
    p.add_argument("--n-terms", type=int, default=64, dest="n_terms")
    p.add_argument("--tol", type=float, default=1e-12, help="accepted for uniformity; verdicts are exact")
    return parser


def _write_csv(path, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if path == "-":
        sys.stdout.write(buf.getvalue())
    else:
        Path(path).write_text(buf.getvalue())


def _glue_negative_values(argv):
    # "--grid -10pi:10pi:pi/64" would otherwise read the value as a flag
    out = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt != "-":
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(a)
    return out


_VALUE_FLAGS = ("--grid", "--s", "--sigma", "--seed", "--depths")


def run(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        if not args.tol > 0:
            raise InputError(f"--tol must be positive, got {args.tol}")
        header, rows, checks, info = COMMANDS[args.command](args)
    except (InputError, ValueError) as exc:
        print(f"gensinc {args.command}: error: {exc}", file=sys.stderr)
        return 2
    ok = all(c["pass"] for c in checks)
    summary = {"command": args.command, "pass": ok, "checks": checks, "info": info}
    _write_csv(args.out, header, rows)
    text = json.dumps(summary, indent=2) + "\n"
    target = args.summary or (None if args.out == "-" else args.out + ".summary.json")
    if target is None:
        sys.stderr.write(text)
    else:
        Path(target).write_text(text)
    for c in checks:
        if not c["pass"]:
            where = ", ".join(f"{k}={c[k]}" for k in ("t", "n") if k in c)
            print(f"FAILED {c['name']}: value={c['value']} bound={c['bound']} {where}", file=sys.stderr)
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
