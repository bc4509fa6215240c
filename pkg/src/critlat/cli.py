"""Command-line interface.

Exit codes: 0 success, 1 verification failed, 2 usage error, 3 I/O error.
Floats are printed with 17 significant digits so every value round-trips.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from .critical import Branch, CriticalData, critical_determinant, p_zero
from .geometry import P_MAX, DyadicDomain, validate_exponent
from .lattice import DEFAULT_TOL, Lattice2, admissibility, critical_lattice, scale_lattice
from .oracle import min_det_search
from .tower import MAX_LEVEL, build_tower

RECORD_FIELDS = ("p", "sigma", "tau", "delta0", "delta1", "branch", "delta", "volume", "density", "class")
BRANCH_CHOICES = {"auto": None, "zero": Branch.SIGMA, "one": Branch.TAU}

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def fmt_float(v: float) -> str:
    return format(v, "#.17g")


def _json_value(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"cannot serialize {v!r}")
        return fmt_float(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def dumps(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _json_value(obj)


def _csv_cell(v) -> str:
    return fmt_float(v) if isinstance(v, float) else str(v)


def record(data: CriticalData) -> dict:
    return {
        "p": data.p,
        "sigma": data.sigma,
        "tau": data.tau,
        "delta0": data.delta0,
        "delta1": data.delta1,
        "branch": data.branch.value,
        "delta": data.delta,
        "volume": data.volume,
        "density": data.density,
        "class": data.ball_class.value,
    }


def _basis(lat: Lattice2) -> list:
    return [list(lat.b1.as_tuple()), list(lat.b2.as_tuple())]


def _render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        body = dumps(rows[0]) if len(rows) == 1 else "[\n" + ",\n".join(dumps(r) for r in rows) + "\n]"
        return body + "\n"
    header = list(rows[0])
    lines = [",".join(header)]
    lines += [",".join(_csv_cell(r[k]) for k in header) for r in rows]
    return "\n".join(lines) + "\n"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".critlat-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# argument types ---------------------------------------------------------


def _exponent(text: str) -> float:
    try:
        return validate_exponent(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


# commands ---------------------------------------------------------------


def cmd_eval(args) -> int:
    sys.stdout.write(_render([record(critical_determinant(args.p))], args.format))
    return EXIT_OK


def cmd_table(args, parser) -> int:
    if not (1.0 <= args.p_min < args.p_max <= P_MAX):
        parser.error(f"need 1 <= p_min < p_max <= {P_MAX:g}")
    if not 2 <= args.count <= 100_000:
        parser.error("count must lie in [2, 100000]")
    n = args.count - 1
    grid = [args.p_min + (args.p_max - args.p_min) * i / n for i in range(n)] + [args.p_max]
    text = _render([record(critical_determinant(p)) for p in grid], args.format)
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        _write_atomic(args.out, text)
    except OSError as exc:
        print(f"critlat: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_p0(args, parser) -> int:
    if not args.tol >= 1e-12:
        parser.error("tol must be >= 1e-12")
    z = p_zero(args.tol)
    inside = 2.57 < z.bracket_lo and z.bracket_hi < 2.58
    if args.format == "json":
        sys.stdout.write(
            dumps({"p0": z.value, "bracket_lo": z.bracket_lo, "bracket_hi": z.bracket_hi,
                   "residual": z.residual, "within_2.57_2.58": inside}) + "\n"
        )
    else:
        print(fmt_float(z.value))
        print(f"residual {fmt_float(z.residual)}")
        print(f"bracket [{fmt_float(z.bracket_lo)}, {fmt_float(z.bracket_hi)}] "
              f"{'inside' if inside else 'OUTSIDE'} (2.57, 2.58)")
    return EXIT_OK if inside else EXIT_NEGATIVE


def _lattice_for(args) -> tuple[Lattice2, str]:
    if getattr(args, "basis", None) is not None:
        x1, y1, x2, y2 = args.basis
        lat, name = Lattice2.from_rows(((x1, y1), (x2, y2))), "custom"
    else:
        lat = critical_lattice(args.p, BRANCH_CHOICES[args.branch])
        name = args.branch
    if getattr(args, "shrink", 1.0) != 1.0:
        lat = Lattice2(lat.b1.scaled(args.shrink), lat.b2.scaled(args.shrink))
    level = getattr(args, "level", 0)
    return (scale_lattice(lat, level) if level else lat), name


def cmd_lattice(args) -> int:
    lat, _ = _lattice_for(args)
    branch = BRANCH_CHOICES[args.branch] or critical_determinant(args.p).branch
    out = {"p": args.p, "branch": branch.value, "basis": _basis(lat), "det": lat.det}
    if args.format == "json":
        sys.stdout.write(dumps(out) + "\n")
    else:
        print(f"p {fmt_float(args.p)} branch {branch.value}")
        for v in (lat.b1, lat.b2):
            print(f"{fmt_float(v.x)} {fmt_float(v.y)}")
        print(f"det {fmt_float(lat.det)}")
    return EXIT_OK


def cmd_verify(args, parser) -> int:
    if not 1e-12 <= args.tol <= 1e-6:
        parser.error("tol must lie in [1e-12, 1e-6]")
    try:
        lat, name = _lattice_for(args)
    except ValueError as exc:
        parser.error(str(exc))
    rep = admissibility(lat, DyadicDomain(args.p, args.level), args.tol)
    if args.format == "json":
        out = {
            "p": args.p, "m": args.level, "lattice": name, "basis": _basis(lat), "det": lat.det,
            "admissible": rep.admissible, "boundary_pairs": rep.boundary_pairs,
            "coeff_bound": list(rep.coeff_bound), "tol": rep.tol,
            "violations": [{"coeffs": list(v.coeffs), "point": list(v.point.as_tuple()),
                            "functional": v.value} for v in rep.violations],
        }
        sys.stdout.write(dumps(out) + "\n")
    else:
        verdict = "admissible" if rep.admissible else "NOT admissible"
        print(f"{verdict}, {rep.boundary_pairs} boundary pairs")
        for v in rep.violations:
            print(f"  violation {v.coeffs[0]} {v.coeffs[1]}: ({fmt_float(v.point.x)}, "
                  f"{fmt_float(v.point.y)}) functional {fmt_float(v.value)}")
    return EXIT_OK if rep.admissible else EXIT_NEGATIVE


def cmd_search(args, parser) -> int:
    if args.grid < 64:
        parser.error("grid must be >= 64")
    if args.refine < 20:
        parser.error("refine must be >= 20")
    res = min_det_search(args.p, args.grid, args.refine)
    out = {
        "p": res.p, "delta_hat": res.delta_hat, "closed_form": res.closed_form,
        "abs_gap": res.abs_gap, "grid": res.grid_size, "t1": res.best.t1, "t2": res.best.t2,
        "basis": _basis(res.best.lattice),
    }
    if args.format == "json":
        sys.stdout.write(dumps(out) + "\n")
    else:
        for k, v in out.items():
            if k != "basis":
                print(f"{k} {_csv_cell(v)}")
    return EXIT_OK


def cmd_tower(args, parser) -> int:
    if not 0 <= args.levels <= MAX_LEVEL:
        parser.error(f"levels must lie in [0, {MAX_LEVEL}]")
    rep = build_tower(args.p, args.levels, args.direction)
    base = next(lv.det for lv in rep.levels if lv.m == 0)
    rows = [
        {"m": lv.m, "det": lv.det, "det_ratio": lv.det / base, "volume": lv.volume,
         "b1x": lv.lattice.b1.x, "b1y": lv.lattice.b1.y, "b2x": lv.lattice.b2.x, "b2y": lv.lattice.b2.y}
        for lv in rep.levels
    ]
    if args.format == "json":
        out = {"p": rep.p, "direction": rep.direction.value, "limit_label": rep.limit_label,
               "lattice_limit_label": rep.lattice_limit_label, "levels": rows}
        sys.stdout.write(dumps(out) + "\n")
    else:
        sys.stdout.write(_render(rows, "csv"))
        print(f"# limit_label: {rep.limit_label}")
        print(f"# lattice_limit_label: {rep.lattice_limit_label}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="critlat", description="Critical lattices and packing densities of |x|^p + |y|^p <= 1."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, fmt_choices=("json", "csv"), default_fmt="json"):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=fmt_choices, default=default_fmt)
        return sp

    sp = add("eval", "critical data for one exponent")
    sp.add_argument("--p", type=_exponent, required=True)

    sp = add("table", "critical data on a uniform grid of exponents", default_fmt="csv")
    sp.add_argument("--p-min", type=float, required=True)
    sp.add_argument("--p-max", type=float, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--out", help="output file (written atomically); stdout if omitted")

    sp = add("p0", "crossover exponent of the two branches", ("text", "json"), "text")
    sp.add_argument("--tol", type=float, default=1e-10)

    for name, help_ in (("lattice", "closed-form critical lattice"),
                        ("verify", "enumerate and check admissibility")):
        sp = add(name, help_, ("text", "json"), "text")
        sp.add_argument("--p", type=_exponent, required=True)
        sp.add_argument("--branch", choices=list(BRANCH_CHOICES), default="auto")
        if name == "verify":
            sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
            sp.add_argument("--shrink", type=_positive, default=1.0,
                            help="multiply the basis by this factor")
            sp.add_argument("--basis", type=float, nargs=4, metavar=("X1", "Y1", "X2", "Y2"),
                            help="check this basis instead of a closed-form lattice")
            sp.add_argument("--level", type=int, default=0, choices=range(MAX_LEVEL + 1),
                            metavar="M", help="check 2^M * lattice against 2^M D_p")

    sp = add("search", "brute-force minimization over three-contact lattices", ("text", "json"), "text")
    sp.add_argument("--p", type=_exponent, required=True)
    sp.add_argument("--grid", type=int, default=512)
    sp.add_argument("--refine", type=int, default=40)

    sp = add("tower", "dyadic tower of domains and critical lattices", ("csv", "json"), "csv")
    sp.add_argument("--p", type=_exponent, required=True)
    sp.add_argument("--levels", type=int, required=True)
    sp.add_argument("--direction", choices=["direct", "inverse"], default="direct")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("eval", "lattice"):
        handler = {"eval": cmd_eval, "lattice": cmd_lattice}[args.command]
        return handler(args)
    handler = {"table": cmd_table, "p0": cmd_p0, "verify": cmd_verify,
               "search": cmd_search, "tower": cmd_tower}[args.command]
    return handler(args, parser)


if __name__ == "__main__":
    sys.exit(main())
