"""Command-line front end: RMSE tables, pointwise evaluation, mesh dumps,
and cross-sections, emitted as CSV. All commands are deterministic; the
thread count only affects wall time, never the output bytes.

Exit codes: 0 success, 2 usage or domain error, 1 internal error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import experiments as ex

__all__ = ["main", "entry"]

OUT_DIR_ENV = "DISKBERN_OUT_DIR"

_OPERATORS = ("Cbar", "Bbar", "Bstancu-disk")


def _fmt(value: float, digits: int = 9) -> str:
    return f"{value:.{digits}g}"


def _parse_n_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n list {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("n values must be positive integers")
    return values


def _parse_point(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"bad point {text!r}, expected x,y")
    return float(parts[0]), float(parts[1])


def _resolve_function(spec: str):
    if spec.startswith("const:"):
        value = float(spec.split(":", 1)[1])
        return spec, lambda x, y: value
    if spec in ex.BUILTINS:
        return spec, ex.BUILTINS[spec]
    raise ValueError(f"unknown function {spec!r}; use example1..example4 or const:<v>")


def _out_path(name: str, out: str | None) -> Path:
    if out is not None:
        return Path(out)
    return Path(os.environ.get(OUT_DIR_ENV, ".")) / name


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def cmd_table(args) -> int:
    report_c, report_b = ex.run_example(args.example, args.n, threads=args.threads)
    rows = [(n, rc, rb) for (n, rc), (_, rb) in zip(report_c.entries, report_b.entries)]
    path = _out_path(f"table_example{args.example}.csv", args.out)
    _write_csv(path, ["n", "rmse_C", "rmse_B"], rows)
    print(path)
    return 0


def cmd_eval(args) -> int:
    _, f = _resolve_function(args.fn)
    x, y = args.point
    op = ex.disk_operator(args.op, args.n)
    value = float(op(f, [(x, y)], threads=args.threads)[0])
    print(_fmt(value, 12))
    return 0


def cmd_mesh(args) -> int:
    if args.kind == "stancu":
        mesh = ex.mesh_stancu_disk(args.n)
        header = ["x", "y", "k", "j"]
        rows = [(float(x), float(y), k, j)
                for (x, y), (k, j) in zip(mesh.points, mesh.labels)]
    else:
        mesh = ex.mesh_quadrant_disk(args.n, dedup=args.dedup)
        header = ["x", "y", "quadrant", "k", "j"]
        rows = [(float(x), float(y), q, k, j)
                for (x, y), (q, k, j) in zip(mesh.points, mesh.labels)]
    path = _out_path(f"mesh_{args.kind}_{args.n}.csv", args.out)
    _write_csv(path, header, rows)
    print(path)
    return 0


def cmd_section(args) -> int:
    fid, f = _resolve_function(args.fn)
    p0, p1 = args.segment
    rows = ex.cross_section(args.op, f, args.n, segment=(p0, p1),
                            samples=args.samples, threads=args.threads)
    header = ["s", "x", "y", "f"] + [f"op_{n}" for n in args.n]
    path = _out_path(f"section_{args.op}_{fid}.csv", args.out)
    _write_csv(path, header, rows)
    print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diskbern",
        description="Bernstein-type approximation on the unit disk",
    )
    parser.add_argument("--threads", type=int, default=os.cpu_count(),
                        help="parallel mesh sweep width (output-invariant)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="reproduce an RMSE table")
    p.add_argument("--example", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--n", type=_parse_n_list, default=list(ex.DEFAULT_N_LIST))
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("eval", help="evaluate an operator at one point")
    p.add_argument("--op", choices=_OPERATORS, required=True)
    p.add_argument("--fn", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--point", type=_parse_point, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("mesh", help="emit a mesh as CSV")
    p.add_argument("--kind", choices=("stancu", "quadrant"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("section", help="cross-section along a segment")
    p.add_argument("--op", choices=_OPERATORS, required=True)
    p.add_argument("--fn", required=True)
    p.add_argument("--n", type=_parse_n_list, required=True)
    p.add_argument("--segment", type=_parse_segment,
                   default=((-1.0, 0.0), (1.0, 0.0)),
                   help="x0,y0,x1,y1 (default: x-axis diameter)")
    p.add_argument("--samples", type=int, default=801)
    p.add_argument("--out")
    p.set_defaults(func=cmd_section)

    return parser


def _parse_segment(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"bad segment {text!r}, expected x0,y0,x1,y1")
    vals = [float(p) for p in parts]
    return (vals[0], vals[1]), (vals[2], vals[3])


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
