"""Command-line surface: bound calculators, optimal radii, tables, figures.

Exit codes: 0 success, 2 usage error, 3 numerical failure.  Machine output
is JSON on stdout; tables are CSV files mirroring the published layouts;
figures are self-contained SVGs with a CSV sidecar of the raw polylines.
All stdout output is deterministic; the optional run manifest (which holds
wall time) goes to a separate file.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from . import __version__
from .poly_core import Interval
from . import bounds as bounds_mod

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

TABLE1_PAIRS = [(4, 3), (5, 3), (6, 4), (6, 5), (7, 5)]
TABLE2_M = [10, 30, 50, 70, 90]
TABLE2_P = [2, 3, 4]
TABLE3_BLOCKS = [(3, range(4, 13)), (4, range(5, 14))]


class NumericalFailure(Exception):
    pass


def _json_out(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_manifest(path: str | None, command: str, parameters: dict,
                    outputs: list, started: float) -> None:
    if not path:
        return
    manifest = {
        "command": command,
        "parameters": parameters,
        "versions": {"rkstab": __version__},
        "outputs": outputs,
        "wall_time": time.time() - started,
    }
    for out in outputs:
        if not os.path.exists(out):
            raise NumericalFailure(f"declared output missing: {out}")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _report_dict(rep) -> dict:
    return {
        "name": rep.name,
        "m": rep.m,
        "n": rep.n,
        "value": rep.value,
        "kind": rep.kind,
        "source": rep.source,
        "root_equation": rep.root_equation,
        "aux": {k: v for k, v in rep.aux.items()},
    }


def cmd_bounds(args) -> int:
    m, n = args.m, args.n
    reports = {
        "absolute_upper": bounds_mod.absolute_upper(m, n),
        "parabolic_upper": bounds_mod.parabolic_upper(m, n),
        "parabolic_lower": bounds_mod.parabolic_lower(m, n),
    }
    payload = {name: _report_dict(rep) for name, rep in reports.items()}
    payload["parabolic_limit_cap"] = bounds_mod.parabolic_limit_cap(n)
    if m > n:
        iv = bounds_mod.threshold_upper_lower(m, n)
        payload["threshold_bracket"] = {"lo": iv.lo, "hi": iv.hi}
    if args.eta is not None or args.delta is not None:
        eta = args.eta if args.eta is not None else 0.0
        delta = args.delta if args.delta is not None else 0.0
        payload["damped_parabolic_upper"] = _report_dict(
            bounds_mod.damped_parabolic_upper(m, n, eta, delta)
        )
    _json_out(payload)
    _write_manifest(args.manifest, "bounds", {"m": m, "n": n}, [], args._started)
    return EXIT_OK


def cmd_radius(args) -> int:
    from . import optimal

    geometry = {"disc": "disc", "segment": "segment", "threshold": "abs_monotone"}[args.geometry]
    damping = None
    if args.eta is not None or args.delta is not None:
        damping = (args.eta or 0.0, args.delta or 0.0)
    res = optimal.optimal_radius(args.m, args.n, geometry, damping)
    cert = {}
    for key, val in res.certificate.items():
        if key == "touch_points":
            cert[key] = [[complex(z).real, complex(z).imag] if isinstance(z, complex) else z
                         for z in val]
        else:
            cert[key] = val
    payload = {
        "m": res.m,
        "n": res.n,
        "geometry": args.geometry,
        "radius": res.radius,
        "bisection_width": res.bisection_width,
        "poly_coeffs": list(res.poly.coeffs),
        "certificate": cert,
    }
    _json_out(payload)
    _write_manifest(args.manifest, "radius",
                    {"m": args.m, "n": args.n, "geometry": args.geometry},
                    [], args._started)
    return EXIT_OK


def _table_rows(which: int):
    """(header, rows, ok): cells are computed one by one; a failing cell
    becomes an ERROR entry so the rest of the table still comes out."""
    from . import optimal

    ok = True

    def cell(fn):
        nonlocal ok
        try:
            return fn()
        except Exception as exc:
            sys.stderr.write(f"table cell failed: {exc}\n")
            ok = False
            return None

    if which == 1:
        # the published table truncates to two decimals; match that for diffing
        trunc2 = lambda v: f"{int(v * 100) / 100:.2f}"
        header = ["pair", "optimal_radius", "upper_bound"]
        rows = []
        for (m, n) in TABLE1_PAIRS:
            r = cell(lambda: optimal.optimal_radius(m, n, "disc").radius)
            ub = cell(lambda: bounds_mod.absolute_upper(m, n).value)
            rows.append([f"r_{{{m},{n}}}",
                         "ERROR" if r is None else trunc2(r),
                         "ERROR" if ub is None else trunc2(ub)])
        return header, rows, ok
    if which == 2:
        from .quadrature import lambda_max

        header = ["m"] + [f"p={p}" for p in TABLE2_P]
        rows = []
        for m in TABLE2_M:
            vals = [cell(lambda p=p: lambda_max(m, p)) for p in TABLE2_P]
            rows.append([str(m)] + ["ERROR" if v is None else f"{v:.4f}" for v in vals])
        return header, rows, ok
    header = ["n", "stages", "lower_bound", "theta", "upper_bound"]
    rows = []
    for n, stage_range in TABLE3_BLOCKS:
        for m in stage_range:
            lo = cell(lambda: bounds_mod.parabolic_lower(m, n).value)
            th = cell(lambda: optimal.optimal_radius(m, n, "segment").radius)
            hi = cell(lambda: bounds_mod.parabolic_upper(m, n).value)
            fmt = lambda v: "ERROR" if v is None else f"{v:.3f}"
            rows.append([str(n), str(m), fmt(lo), fmt(th), fmt(hi)])
    return header, rows, ok


def cmd_table(args) -> int:
    out = args.out or f"table{args.which}.csv"
    header, rows, cells_ok = _table_rows(args.which)
    partial = not cells_ok
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    _json_out({"table": args.which, "csv": out, "rows": len(rows)})
    _write_manifest(args.manifest, "table", {"which": args.which}, [out], args._started)
    return EXIT_NUMERICAL if partial else EXIT_OK


def _sidecar(path_svg: str) -> str:
    root, _ = os.path.splitext(path_svg)
    return root + ".csv"


def _write_sidecar(path: str, series: list) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["series", "index", "x", "y"])
        for name, pts in series:
            for i, (x, y) in enumerate(pts):
                writer.writerow([name, i, f"{x:.12g}", f"{y:.12g}"])


def cmd_figure(args) -> int:
    from . import optimal, region as region_mod
    from .svg_out import SvgCanvas, compose

    m, n = args.m, args.n
    out = args.out or f"figure_{args.kind}_{m}_{n}.svg"
    res_grid = (args.resolution, args.resolution)
    series: list = []

    if args.kind == "polygon":
        res = optimal.optimal_radius(m, n, "disc")
        iv = Interval(-2.0 * res.radius, 0.0)
        poly_pts = region_mod.control_polygon(res.poly, iv, m)
        raster = region_mod.rasterize(res.poly, region_mod.auto_window(2 * res.radius), res_grid)
        canvas = SvgCanvas((raster.window.re_lo, raster.window.re_hi),
                           (raster.window.im_lo, raster.window.im_hi))
        canvas.axes()
        for i, line in enumerate(raster.boundary):
            pts = [(z.real, z.imag) for z in line]
            canvas.polyline(pts, color_index=0)
            series.append((f"contour{i}", pts))
        canvas.polyline(poly_pts, color_index=1)
        canvas.markers(poly_pts, color_index=1)
        series.append(("control_polygon", [(float(x), float(q)) for x, q in poly_pts]))
        canvas.label(f"disc-optimal polynomial, {m} stages, order {n}")
        svg = canvas.render(timestamp=not args.no_timestamp)
    elif args.kind == "region":
        res = optimal.optimal_radius(m, n, "segment")
        raster = region_mod.rasterize(res.poly, region_mod.auto_window(res.radius), res_grid)
        canvas = SvgCanvas((raster.window.re_lo, raster.window.re_hi),
                           (raster.window.im_lo, raster.window.im_hi))
        canvas.axes()
        for i, line in enumerate(raster.boundary):
            pts = [(z.real, z.imag) for z in line]
            canvas.polyline(pts, color_index=0)
            series.append((f"contour{i}", pts))
        canvas.label(f"segment-optimal polynomial, {m} stages, order {n}")
        svg = canvas.render(timestamp=not args.no_timestamp)
    elif args.kind == "damped":
        if n != 1:
            raise NumericalFailure("damped figures use the first-order Chebyshev family (n = 1)")
        eta = args.eta if args.eta is not None else 0.05
        plain = bounds_mod.first_order_segment_optimal(m)
        damped, span, delta_eff, eta_eff = bounds_mod.guillou_lago_damped(m, eta)
        canvases = []
        for title, poly, radius in (
            ("undamped", plain, 2.0 * m * m),
            (f"damped eta={eta:g}", damped, span + delta_eff),
        ):
            raster = region_mod.rasterize(poly, region_mod.auto_window(radius), res_grid)
            canvas = SvgCanvas((raster.window.re_lo, raster.window.re_hi),
                               (raster.window.im_lo, raster.window.im_hi))
            canvas.axes()
            for i, line in enumerate(raster.boundary):
                pts = [(z.real, z.imag) for z in line]
                canvas.polyline(pts, color_index=0)
                series.append((f"{title}_contour{i}", pts))
            canvas.label(title)
            canvases.append(canvas)
        svg = compose(canvases, timestamp=not args.no_timestamp)
    else:
        raise NumericalFailure(f"unknown figure kind {args.kind}")

    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    sidecar = _sidecar(out)
    _write_sidecar(sidecar, series)
    _json_out({"figure": args.kind, "svg": out, "csv": sidecar})
    _write_manifest(args.manifest, "figure",
                    {"m": m, "n": n, "kind": args.kind}, [out, sidecar], args._started)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rkstab",
        description="Stability-radius bounds and optimal stability polynomials "
                    "for explicit Runge-Kutta methods.",
    )
    parser.add_argument("--version", action="version", version=f"rkstab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="bound calculators for one (m, n)")
    p_bounds.add_argument("m", type=int)
    p_bounds.add_argument("n", type=int)
    p_bounds.add_argument("--eta", type=float, default=None)
    p_bounds.add_argument("--delta", type=float, default=None)
    p_bounds.set_defaults(func=cmd_bounds)

    p_radius = sub.add_parser("radius", help="optimal radius for one (m, n)")
    p_radius.add_argument("m", type=int)
    p_radius.add_argument("n", type=int)
    p_radius.add_argument("--geometry", choices=["disc", "segment", "threshold"], required=True)
    p_radius.add_argument("--eta", type=float, default=None)
    p_radius.add_argument("--delta", type=float, default=None)
    p_radius.set_defaults(func=cmd_radius)

    p_table = sub.add_parser("table", help="reproduce a published table as CSV")
    p_table.add_argument("--which", type=int, choices=[1, 2, 3], required=True)
    p_table.add_argument("--out", default=None)
    p_table.set_defaults(func=cmd_table)

    p_fig = sub.add_parser("figure", help="emit an SVG figure with CSV sidecar")
    p_fig.add_argument("m", type=int)
    p_fig.add_argument("n", type=int)
    p_fig.add_argument("--kind", choices=["region", "polygon", "damped"], required=True)
    p_fig.add_argument("--out", default=None)
    p_fig.add_argument("--eta", type=float, default=None)
    p_fig.add_argument("--resolution", type=int, default=160)
    p_fig.add_argument("--no-timestamp", action="store_true")
    p_fig.set_defaults(func=cmd_figure)

    for p in (p_bounds, p_radius, p_table, p_fig):
        p.add_argument("--manifest", default=None,
                       help="write a JSON run manifest to this path")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._started = time.time()
    try:
        if args.command in ("bounds", "radius") and not 1 <= args.n <= args.m:
            parser.error(f"need 1 <= n <= m, got m={args.m} n={args.n}")
        return args.func(args)
    except (ValueError,) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
