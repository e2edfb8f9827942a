"""Command-line entry point: ``pentagram <subcommand> [options]``.

Exit status: 0 on success, 1 when a verification fails (or a computation
hits a degenerate input), 2 on usage errors.
"""

import argparse
import json
import sys

from .curves import (
    NormalFormCurve, build_curve, count_points, genus_report, good_fiber_check,
    lemma_fiber,
)
from .errors import IndeterminatePoint, LeavesModuli, PentagramError
from .experiments import census, fiber_periods, height_growth
from .fields import QQ, parse_field
from .lax import invariants_H, lax_conjugacy_holds, zero_curvature_holds
from .pentagram import VERTEX_SHIFT, map_coords, map_refactor, map_vertices
from .polygon import (
    CornerCoords, corner_coords_from_vertices, polygon_from_coords, random_coords,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _field(text):
    try:
        return parse_field(text)
    except PentagramError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(args, payload, text=None):
    if args.out == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text if text is not None else json.dumps(payload, indent=2))


def _start(args):
    if getattr(args, "coords", None):
        with open(args.coords) as fh:
            return CornerCoords.parse(fh.read(), args.field)
    return random_coords(args.n, args.field, args.seed)


def _step(coords, route, t):
    """t-th iterate through the chosen route, in coordinate-route labels."""
    if route == "coords":
        for _ in range(t):
            coords = map_coords(coords)
        return coords
    if route == "vertices":
        poly = polygon_from_coords(coords)
        for _ in range(t):
            poly = map_vertices(poly)
        return corner_coords_from_vertices(poly).shift(-VERTEX_SHIFT * t)
    for _ in range(t):
        coords = map_refactor(polygon_from_coords(coords))
    return coords


# ---------------------------------------------------------------------------

def cmd_iterate(args):
    start = _start(args)
    end = _step(start, args.route, args.steps)
    _emit(args, {"n": end.n, "field": args.field.describe(), "route": args.route,
                 "steps": args.steps, "x": [str(v) for v in end.x],
                 "y": [str(v) for v in end.y]}, str(end))
    return EXIT_OK


def cmd_invariants(args):
    start = _start(args)
    h0 = invariants_H(start)
    conserved, done, stopped = True, 0, None
    cur = start
    for t in range(args.steps):
        try:
            cur = map_coords(cur)
        except (IndeterminatePoint, LeavesModuli) as exc:
            stopped = f"step {t + 1} undefined ({exc})"
            break
        done = t + 1
        if invariants_H(cur) != h0:
            conserved = False
            break
    payload = {"H": [str(h) for h in h0], "steps": args.steps}
    text = "H: " + ", ".join(str(h) for h in h0)
    if args.steps:
        payload.update(conserved=conserved, steps_checked=done, degenerated=stopped)
        text += f"\nconserved: {str(conserved).lower()} ({done} steps checked)"
        if stopped:
            text += f"\norbit degenerated: {stopped}"
    _emit(args, payload, text)
    return EXIT_OK if conserved else EXIT_FAIL


def _verify_one(coords):
    out = {}
    poly = polygon_from_coords(coords)
    out["roundtrip"] = corner_coords_from_vertices(poly) == coords
    image = map_coords(coords)
    out["routes"] = (corner_coords_from_vertices(map_vertices(poly)).shift(-VERTEX_SHIFT) == image
                     and map_refactor(poly) == image)
    out["invariants"] = invariants_H(image) == invariants_H(coords)
    out["zero_curvature"] = zero_curvature_holds(coords)
    out["lax"] = lax_conjugacy_holds(coords)
    return out


def cmd_verify(args):
    tally = {k: [0, 0] for k in ("roundtrip", "routes", "invariants", "zero_curvature", "lax")}
    skipped = 0
    for s in range(args.seed, args.seed + args.count):
        coords = random_coords(args.n, args.field, s, in_domain=True)
        try:
            res = _verify_one(coords)
        except PentagramError:
            skipped += 1
            continue
        for k, ok in res.items():
            tally[k][0 if ok else 1] += 1
    failed = any(bad for _, bad in tally.values())
    payload = {"n": args.n, "field": args.field.describe(), "skipped_degenerate": skipped,
               "suites": {k: {"pass": a, "fail": b} for k, (a, b) in tally.items()},
               "ok": not failed}
    lines = [f"{k}: {a} pass, {b} fail" for k, (a, b) in tally.items()]
    lines.append(f"skipped (degenerate inputs): {skipped}")
    lines.append(f"ok: {str(not failed).lower()}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_FAIL if failed else EXIT_OK


def _run_census(args):
    return census(args.n, args.field, mode=args.mode, horizon=args.horizon, seed=args.seed,
                  sample_size=args.sample_size, bound=args.bound, threads=args.threads)


def cmd_census(args):
    rep = _run_census(args)
    print(rep.to_json())
    return EXIT_FAIL if rep.conservation_failures or rep.audit_failures else EXIT_OK


def cmd_fiber_periods(args):
    print(json.dumps(fiber_periods(_run_census(args)), indent=2))
    return EXIT_OK


def cmd_heights(args):
    if args.field is not QQ:
        raise SystemExit("heights: --field must be Q")
    series = height_growth(random_coords(args.n, QQ, args.seed, in_domain=True), args.steps)
    if args.out == "csv":
        sys.stdout.write(series.to_csv())
    else:
        print(json.dumps(series.to_dict(), indent=2))
    return EXIT_OK


def _curve_from_args(args):
    if args.curve_file:
        with open(args.curve_file) as fh:
            return NormalFormCurve.from_text(fh.read())
    if args.good_fiber:
        return lemma_fiber(args.good_fiber.split("-", 1)[1], args.n, args.field)
    if args.I is None or args.J is None:
        raise SystemExit("curve: give --good-fiber, --curve-file, or both --I and --J")
    return NormalFormCurve(args.n, [args.field.parse(s) for s in args.I.split(",")],
                           [args.field.parse(s) for s in args.J.split(",")], args.field)


def cmd_curve(args):
    c = _curve_from_args(args)
    payload = {"curve": c.to_text(), "R": repr(build_curve(c))}
    ok = True
    if c.field.is_finite:
        rep = good_fiber_check(c, bound=args.bound)
        payload["good_fiber"] = rep.to_dict()
        ok = rep.good
    if args.count:
        payload["counts"] = [count_points(c, r) for r in range(1, args.count + 1)]
    if args.genus_fit is not None:
        g = genus_report(c, args.genus_fit, rmax=max(args.count or 0, 2 * args.genus_fit))
        payload["genus_fit"] = {"genus": g.genus, "counts": g.counts,
                                "l_polynomial": g.l_polynomial, "verdict": g.verdict,
                                "hasse_weil": g.hasse_weil}
        ok = ok and g.verdict
    print(json.dumps(payload, indent=2))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="pentagram",
                                     description="Exact experiments with the pentagram map.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=5, help="number of vertices (default 5)")
    common.add_argument("--field", type=_field, default=QQ, help="Q, p, q or p^r (default Q)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--steps", type=int, default=1)
    common.add_argument("--out", choices=("text", "json", "csv"), default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--bound", type=int, default=10 ** 7,
                        help="enumeration / population size limit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iterate", parents=[common], help="apply the map --steps times")
    p.add_argument("--route", choices=("coords", "vertices", "refactor"), default="coords")
    p.add_argument("--coords", help="file with 'x: ...' and 'y: ...' lines")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("invariants", parents=[common], help="print H and check conservation")
    p.add_argument("--coords", help="file with 'x: ...' and 'y: ...' lines")
    p.set_defaults(func=cmd_invariants, steps=0)

    p = sub.add_parser("verify", parents=[common], help="identity suites on random seeds")
    p.add_argument("--count", type=int, default=20)
    p.set_defaults(func=cmd_verify)

    for name, fn in (("census", cmd_census), ("fiber-periods", cmd_fiber_periods)):
        p = sub.add_parser(name, parents=[common], help="finite-field orbit census"
                           if name == "census" else "period statistics per invariant fiber")
        p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
        p.add_argument("--sample-size", type=int, default=1000)
        p.add_argument("--horizon", type=int, default=None)
        p.set_defaults(func=fn)

    p = sub.add_parser("heights", parents=[common], help="Weil height growth over Q")
    p.set_defaults(func=cmd_heights, steps=12)

    p = sub.add_parser("curve", parents=[common], help="normal-form spectral curves")
    p.add_argument("--good-fiber", choices=("lemma-tame", "lemma-wild"))
    p.add_argument("--curve-file")
    p.add_argument("--I", help="comma-separated I_0..I_m")
    p.add_argument("--J", help="comma-separated J_0..J_m")
    p.add_argument("--count", type=int, default=0, help="also print N_1..N_count")
    p.add_argument("--genus-fit", type=int, metavar="G")
    p.set_defaults(func=cmd_curve)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 4:
        parser.error("--n must be at least 4")
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return EXIT_USAGE
        raise
    except PentagramError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
