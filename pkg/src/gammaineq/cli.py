"""Command-line front end.

    gammaineq list [--format text|json] [--filter TEXT]
    gammaineq check ID [ID ...] [--mode float|certified] [--samples N]
                    [--VAR lo:hi[:law]] [--VAR-samples N] [--side S] [--order P]
                    [--refine] [--format text|json] [--out PATH] [--timing]
    gammaineq repro [--format text|json] [--out PATH]
    gammaineq plotdata ID --VAR lo:hi[:law] ... [--samples N] -o PATH

Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import catalog, proofsteps, verifier
from .errors import DomainError, RegionError, UnknownIdError
from .grid import Axis, parse_region

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# every variable name used by some catalog record
VARIABLES = ("t", "x", "y", "a", "b", "s", "i", "k")


class UsageError(Exception):
    pass


def _sci(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, str):
        return v
    return f"{v:.5e}"


def _point_text(point) -> str:
    if not point:
        return "-"
    return ", ".join(f"{k}={_sci(v) if isinstance(v, float) else v}" for k, v in point.items())


def _emit(text: str, out_path):
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {out_path}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(text)


# list --------------------------------------------------------------------------------

def cmd_list(args) -> int:
    rows = []
    for rid in catalog.ids():
        rec = catalog.get(rid)
        if args.filter and args.filter.upper() not in rid.upper():
            continue
        rows.append({"id": rid, "kind": rec.kind, "variables": list(rec.variables),
                     "domain": rec.domain_text, "formula": rec.formula})
    if args.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", None)
    else:
        width = max((len(r["id"]) for r in rows), default=2)
        lines = [f"{r['id']:<{width}}  {r['kind']:<7}  {r['domain']}\n{'':<{width}}  {r['formula']}"
                 for r in rows]
        _emit("\n".join(lines) + ("\n" if lines else ""), None)
    return EXIT_OK


# scans -------------------------------------------------------------------------------

def _region_overrides(args, record) -> tuple[dict, dict]:
    region, per_axis = {}, {}
    by_name = {ax.name: ax for ax in record.axes}
    for var in VARIABLES:
        text = getattr(args, f"r_{var}", None)
        n = getattr(args, f"n_{var}", None)
        if text is None and n is None:
            continue
        if var not in record.variables:
            raise UsageError(f"{record.id} has no variable {var!r} "
                             f"(variables: {', '.join(record.variables)})")
        if text is not None:
            base = by_name[var]
            law = base.law if base.law in ("lin", "log", "int") else "lin"
            try:
                region[var] = parse_region(text, var, law)
            except ValueError as exc:
                raise UsageError(f"--{var} {text}: {exc}") from None
        if n is not None:
            per_axis[var] = n
    return region, per_axis


def _scan_params(args, record) -> dict:
    params = {}
    if args.side is not None or args.order is not None:
        if "side" not in record.params:
            raise UsageError(f"{record.id} takes no --side/--order")
        if args.order is not None and args.side is None:
            raise UsageError("--order needs --side")
        params["side"] = args.side
        params["order"] = args.order
    return params


def _config(args, ineq_id, keep_rows=False) -> verifier.ScanConfig:
    record = catalog.get(ineq_id)
    region, per_axis = _region_overrides(args, record)
    return verifier.ScanConfig(
        ineq_id, region=region, samples=args.samples, axis_samples=per_axis,
        mode=args.mode, refine=getattr(args, "refine", False),
        params=_scan_params(args, record), workers=args.workers, keep_rows=keep_rows)


def _report_text(rep: verifier.VerificationReport, timing: bool) -> str:
    status = "OK" if rep.ok else "FAIL"
    lines = [f"{rep.ineq_id}  {status}  mode={rep.mode}  samples={rep.samples}  "
             f"min_margin={_sci(rep.min_margin)} at {_point_text(rep.argmin)}"]
    if len(rep.components) > 1:
        for comp, info in rep.components.items():
            lines.append(f"  {comp}: min_margin={_sci(info['min_margin'])} "
                         f"at {_point_text(info['argmin'])}")
    if rep.refined:
        lines.append(f"  refined: margin={_sci(rep.refined['margin'])} "
                     f"at {_point_text(rep.refined['point'])}")
    lines.append(f"  violations={len(rep.violations)}  cleared={len(rep.cleared)}  "
                 f"nonfinite={len(rep.nonfinite)}")
    for v in rep.violations[:10]:
        lines.append(f"    {v['escalated']['status']}: {v['component']} "
                     f"margin={_sci(v['margin'])} at {_point_text(v['point'])}")
    if rep.monotonicity is not None:
        bad = [m for m in rep.monotonicity if not m["decreasing"]]
        lines.append(f"  monotone slices: {len(rep.monotonicity) - len(bad)}"
                     f"/{len(rep.monotonicity)} decreasing")
    if timing:
        lines.append(f"  wall_time_ms={rep.wall_time_ms:.1f}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    for rid in args.ids:
        catalog.get(rid)
    configs = [_config(args, rid) for rid in args.ids]
    reports = [verifier.scan(c) for c in configs]
    if args.format == "json":
        text = json.dumps([r.to_dict(args.timing) for r in reports], indent=2) + "\n"
    else:
        text = "\n".join(_report_text(r, args.timing) for r in reports) + "\n"
    _emit(text, args.out)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_plotdata(args) -> int:
    record = catalog.get(args.id)
    given = [v for v in VARIABLES if getattr(args, f"r_{v}", None) is not None]
    if not given:
        raise UsageError("plotdata needs a region, e.g. --t 1e-3:1e3")
    config = _config(args, args.id, keep_rows=True)
    free = [ax for ax in verifier.resolve_axes(record, config)
            if isinstance(ax, Axis) and ax.law != "int"]
    if len(free) > 2:
        raise UsageError(f"plotdata needs a 1-D or 2-D region; fix one of "
                         f"{', '.join(ax.name for ax in free)} with --VAR value")
    rep = verifier.scan(config)
    _emit(rep.to_csv(), args.out)
    return EXIT_OK


def cmd_repro(args) -> int:
    rows = proofsteps.checkpoints()
    ok = all(r.ok for r in rows)
    if args.format == "json":
        text = json.dumps({"checkpoints": [r.as_dict() for r in rows], "ok": ok}, indent=2) + "\n"
    else:
        width = max(len(r.name) for r in rows)
        lines = []
        for r in rows:
            exp = r.as_dict()["expected"]
            exp = "holds" if r.kind == "claim" else exp
            lines.append(f"{r.name:<{width}}  {'ok  ' if r.ok else 'FAIL'}  "
                         f"computed={r.computed:.12g}  expected={exp}")
        lines.append("all checkpoints reproduced" if ok else "checkpoint mismatch")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


# parser ------------------------------------------------------------------------------

def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _add_scan_flags(p, with_out=True):
    p.add_argument("--mode", choices=("float", "certified"), default="float")
    p.add_argument("--samples", type=_positive_int, default=None,
                   help="samples per continuous variable")
    for var in VARIABLES:
        p.add_argument(f"--{var}", dest=f"r_{var}", metavar="LO:HI[:LAW]", default=None,
                       help=argparse.SUPPRESS)
        p.add_argument(f"--{var}-samples", dest=f"n_{var}", type=_positive_int, default=None,
                       help=argparse.SUPPRESS)
    p.add_argument("--side", choices=("lower", "upper"), default=None)
    p.add_argument("--order", type=float, default=None, help="mean order p for INTMEAN")
    p.add_argument("--workers", type=_positive_int, default=None,
                   help="process count (default: GAMMAINEQ_WORKERS or CPU count)")
    p.add_argument("--seed", type=int, default=None, help="reserved; grids are deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammaineq",
        description="Numerical verification of gamma and digamma function inequalities.",
        epilog="Regions are given per variable as --VAR lo:hi[:lin|log] or --VAR value; "
               "--VAR-samples N sets one axis.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="show the catalog")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--filter", default=None, help="keep ids containing this text")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("check", help="scan inequalities and report margins")
    p.add_argument("ids", nargs="+", metavar="ID")
    _add_scan_flags(p)
    p.add_argument("--refine", action="store_true", help="golden-section refinement at the minimum")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.add_argument("--timing", action="store_true", help="include wall time in the output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("repro", help="recompute the proof checkpoints")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("plotdata", help="write (point, margin) rows as CSV")
    p.add_argument("id", metavar="ID")
    _add_scan_flags(p)
    p.add_argument("-o", "--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv",), default="csv")
    p.set_defaults(func=cmd_plotdata)
    return parser


def _glue_negative_regions(argv):
    # argparse reads "--y -0.9:-0.6" as two options; pass it as "--y=-0.9:-0.6"
    flags = {f"--{v}" for v in VARIABLES}
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in flags and nxt is not None and nxt[:2] in {f"-{c}" for c in "0123456789."}:
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_regions(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, UnknownIdError, RegionError, DomainError, ValueError) as exc:
        print(f"gammaineq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
