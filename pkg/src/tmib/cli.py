"""Command-line entry point: ``tmib verify | stft | norms | weights``.

Exit codes: 0 success, 1 at least one failed check, 2 unreadable or malformed
input (including an invalid config), 3 non-uniform sample grid, 4 unknown
field-norm or weight kind.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import ConfigInvalid, GridNonUniform, KindUnknown, ParseError, TmibError
from .io import field_spec_from_dict, read_signal, write_field
from .modspace import ModulationSpaceSpec, modulation_norm
from .signal import lp_norm
from .stft import analyze, gaussian_window
from .verify import SUITES, RunConfig, run_verify
from .weights import (
    WeightSequence,
    associated_function,
    check_m1,
    check_m2,
    check_m6,
    weight_from_dict,
)


def _grid_arg(text: str) -> tuple[float, int]:
    try:
        T, N = text.split(",")
        return float(T), int(N)
    except ValueError:
        raise argparse.ArgumentTypeError("expected T,N such as 8,256") from None


def _load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON ({exc.msg})") from exc


def _window(arg: str | None, grid):
    """A number is a Gaussian width; anything else is a signal CSV on the same grid."""
    if arg is None:
        return gaussian_window(grid)
    try:
        return gaussian_window(grid, float(arg))
    except ValueError:
        pass
    g = read_signal(arg)
    if not g.grid.same_as(grid):
        raise ParseError(f"{arg}: window grid differs from the signal grid")
    return g


def cmd_verify(args) -> int:
    data = _load_json(args.config) if args.config else {}
    cfg = RunConfig.from_dict(data)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.grid is not None:
        overrides["T"], overrides["N"] = args.grid
    if args.suites:
        overrides["suites"] = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    if args.count is not None:
        overrides["count"] = args.count
    if args.out:
        overrides["output"] = args.out
    if args.jobs is not None:
        overrides["jobs"] = args.jobs
    if overrides:
        cfg = RunConfig(**{**cfg.__dict__, **overrides})
    report = run_verify(cfg)
    if not cfg.output:
        print(report.to_json())
    s = report.summary
    print(f"{s['total']} checks: {s['pass']} pass, {s['fail']} fail, {s['skip']} skip",
          file=sys.stderr)
    for r in report.failures:
        print(f"FAIL {r.suite} {r.check_id}: lhs={r.lhs!r} rhs={r.rhs!r}", file=sys.stderr)
    return 1 if s["fail"] else 0


def cmd_stft(args) -> int:
    f = read_signal(args.input)
    V = analyze(f, _window(args.window, f.grid))
    write_field(args.out or sys.stdout, V, magnitude=args.magnitude)
    return 0


def _fmt_p(p) -> str:
    return "inf" if math.isinf(p) else f"{p:g}"


def cmd_norms(args) -> int:
    f = read_signal(args.input)
    request = _load_json(args.spec) if args.spec else {}
    if isinstance(request, list):
        request = {"modulation": request}
    if not isinstance(request, dict):
        raise ParseError("norm request must be a JSON object or list")
    rows = []
    for item in request.get("lp", []):
        p = math.inf if str(item.get("p", 2)).lower() == "inf" else float(item.get("p", 2))
        eta = weight_from_dict(item["weight"]) if "weight" in item else None
        label = f"L^{_fmt_p(p)}" + (f"[{item['weight'].get('kind')}]" if eta else "")
        rows.append((label, lp_norm(f, p, eta)))
    window = _window(args.window, f.grid)
    for item in request.get("modulation", []):
        F = field_spec_from_dict(item)
        rows.append((f"M^{F.label()}", modulation_norm(f, ModulationSpaceSpec(F, window))))
    if rows:
        width = max(len(r[0]) for r in rows)
        print(f"{'norm':<{width}}  value")
        for label, value in rows:
            print(f"{label:<{width}}  {value:.12g}")
    return 0


def cmd_weights(args) -> int:
    if args.sequence:
        seq = WeightSequence.from_csv(args.sequence)
    else:
        seq = WeightSequence.gevrey(args.gevrey, args.length)
    print(f"sequence  {seq.label} (P={seq.P})")
    print(f"M1        {'yes' if check_m1(seq) else 'no'}")
    print(f"M2 c0     {check_m2(seq, args.H):.12g}  (H={args.H:g})")
    print(f"M6        {'yes' if check_m6(seq, args.c0, args.L0) else 'no'}"
          f"  (c0={args.c0:g}, L0={args.L0:g})")
    if args.rho:
        print("rho  M(rho)")
        for rho in args.rho:
            print(f"{rho:g}  {associated_function(seq, rho):.12g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tmib", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites and write a JSON report")
    v.add_argument("--config", help="JSON run configuration")
    v.add_argument("--seed", type=int)
    v.add_argument("--out", help="report path (stdout when omitted)")
    v.add_argument("--suites", help="comma-separated subset of: " + ",".join(SUITES))
    v.add_argument("--grid", type=_grid_arg, help="T,N")
    v.add_argument("--count", type=int, help="random signals per suite")
    v.add_argument("--jobs", type=int, help="suites run in parallel")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stft", help="short-time transform of a signal CSV")
    s.add_argument("input")
    s.add_argument("--window", help="Gaussian width or window signal CSV (default width 1)")
    s.add_argument("--out", help="field CSV path (stdout when omitted)")
    s.add_argument("--magnitude", action="store_true", help="write |V| only")
    s.set_defaults(func=cmd_stft)

    n = sub.add_parser("norms", help="weighted Lp and modulation-space norms of a signal")
    n.add_argument("input")
    n.add_argument("--spec", help='JSON {"lp": [...], "modulation": [...]}')
    n.add_argument("--window", help="Gaussian width or window signal CSV")
    n.set_defaults(func=cmd_norms)

    w = sub.add_parser("weights", help="weight-sequence conditions and associated function")
    src = w.add_mutually_exclusive_group()
    src.add_argument("--sequence", help="CSV with one value per line")
    src.add_argument("--gevrey", type=float, default=1.0, help="order of p!^order")
    w.add_argument("--length", type=int, default=200, help="prefix length for --gevrey")
    w.add_argument("--H", type=float, default=2.0)
    w.add_argument("--c0", type=float, default=1.0)
    w.add_argument("--L0", type=float, default=1.0)
    w.add_argument("--rho", type=float, nargs="*", default=[])
    w.set_defaults(func=cmd_weights)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GridNonUniform as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except KindUnknown as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (OSError, ParseError, ConfigInvalid) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TmibError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
