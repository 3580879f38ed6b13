"""Command-line front end.

Exit codes:
    0  success
    1  ``verify``: at least one invariant failed
    2  invalid input (bad alpha0, malformed list, unknown field, failed --require-bc)
    3  ``area``: a field meeting the boundary hypotheses falls below the bound
       by more than the quadrature error (internal inconsistency)
    4  grid file could not be parsed
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from . import closed_forms, fields, functional, optimizer, verify
from .errors import DegenerateAnnulus, ExcludedIndex, GridFormatError, SasakiAreaError
from .quadrature import DEFAULT_SCHEME, QuadratureScheme
from .sphere import PUNCTURED_SPHERE, make_annulus

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BOUND_VIOLATED = 3
EXIT_GRID = 4


class UsageError(Exception):
    pass


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.12g}"
    if x is None:
        return ""
    return str(x)


def _emit(payload, output: str, out) -> None:
    """Write one record (dict) or a table (list of dicts) as JSON or CSV."""
    if output == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    rows = payload if isinstance(payload, list) else [payload]
    rows = [{k: v for k, v in r.items() if not isinstance(v, (dict, list))} for r in rows]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(rows[0]))
    for r in rows:
        w.writerow([_fmt(v) for v in r.values()])
    out.write(buf.getvalue())


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def _annulus(args):
    if args.alpha0 is None:
        raise UsageError("--alpha0 is required")
    try:
        return make_annulus(_angle(args.alpha0, args.degrees))
    except DegenerateAnnulus:
        raise UsageError("alpha0 must lie in (0, pi/2)") from None


def _scheme(args) -> QuadratureScheme:
    try:
        return DEFAULT_SCHEME.with_(
            order=args.order,
            panels=args.panels,
            tol=args.tol,
            endpoint_substitution=not args.no_substitution,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _float_list(text: str, degrees: bool = False):
    try:
        values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"malformed list {text!r}") from None
    if not values:
        raise UsageError("list must not be empty")
    return [_angle(v, degrees) for v in values]


def _int_list(text: str):
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"malformed integer list {text!r}") from None
    if not values:
        raise UsageError("list must not be empty")
    return values


def cmd_bound(args, out) -> int:
    A = _annulus(args)
    q = _scheme(args)
    K, bound = functional.lower_bound(A, q)
    K_check, _ = functional.lower_bound(A, functional._other(q))
    payload = {
        "alpha0": A.alpha0,
        "K": K,
        "bound": bound,
        "quad_error": abs(K - K_check),
        "closed_form_conjecture_gap": K - functional.k_conjecture(A.alpha0),
        "notes": functional.BOUND_NOTE,
    }
    _emit(payload, args.output, out)
    return EXIT_OK


def _resolve_field(args):
    """Return ``(field, region)`` for the --field choice."""
    kind = args.field
    if kind == "vk":
        if args.k is None:
            raise UsageError("--field vk needs --k")
        if args.alpha0 is None:
            return closed_forms.vk_field(args.k), PUNCTURED_SPHERE
        A = _annulus(args)
        return closed_forms.vk_field(args.k, domain=A), A
    if kind == "grid":
        if not args.grid:
            raise UsageError("--field grid needs --grid PATH")
        A = _annulus(args) if args.alpha0 is not None else None
        try:
            F = fields.load_grid_csv(args.grid, A)
        except OSError as exc:
            raise GridFormatError(str(exc)) from None
        return F, F.domain
    A = _annulus(args)
    if kind == "minimizer":
        return closed_forms.minimizer_field(A), A
    if kind == "constant":
        return closed_forms.constant_field(_angle(args.theta, args.degrees), domain=A), A
    if kind == "linear":
        return closed_forms.linear_profile_field(A), A
    raise UsageError(f"unknown field {kind!r}")


def cmd_area(args, out) -> int:
    F, region = _resolve_field(args)
    q = _scheme(args)
    boundary = None
    if region is not PUNCTURED_SPHERE:
        boundary = fields.check_boundary_conditions(F, region, tol=args.bc_tol)
        if args.require_bc and not boundary.passed:
            raise UsageError(f"field fails the boundary conditions (max violation {boundary.max_violation:.3e})")
    report = functional.area(F, region, q)
    payload = {
        "field": F.name,
        "region": "punctured-sphere" if region is PUNCTURED_SPHERE else "annulus",
        "alpha0": None if region is PUNCTURED_SPHERE else region.alpha0,
        "area": report.area,
        "lower_bound": report.lower_bound,
        "K": report.k_constant,
        "gap": report.gap,
        "quad_error": report.estimated_quadrature_error,
        "hypotheses_hold": report.hypotheses_hold,
    }
    if boundary is not None:
        payload["boundary"] = {
            "tangent_at_boundaries": boundary.tangent_at_boundaries,
            "antipodal_opposition": boundary.antipodal_opposition,
            "perpendicular_at_equator": boundary.perpendicular_at_equator,
            "max_violation": boundary.max_violation,
            "tolerance": boundary.tolerance,
        }
        payload["tangent_at_boundaries"] = boundary.tangent_at_boundaries
    payload["notes"] = report.notes
    _emit(payload, args.output, out)
    if report.bound_violated:
        print(f"error: area is below the lower bound by {-report.gap:.3e}", file=sys.stderr)
        return EXIT_BOUND_VIOLATED
    return EXIT_OK


def cmd_optimize(args, out) -> int:
    A = _annulus(args)
    if args.n < 8:
        raise UsageError("--n must be at least 8")
    res = optimizer.minimize_profile(
        A, n=args.n, max_iters=args.max_iters, grad_tol=args.grad_tol, step_rule=args.step_rule
    )
    _, bound = functional.lower_bound(A)
    if args.export:
        optimizer.export_profile(res.profile, args.export)
    payload = {
        "alpha0": A.alpha0,
        "n": args.n,
        "final_area": res.final_area,
        "field_area": res.field_area,
        "bound": bound,
        "field_gap": res.field_area - bound,
        "iterations": res.iterations,
        "gradient_norm": res.gradient_norm,
        "converged": res.converged,
        "status": res.status,
        "max_deviation_from_closed_form": res.max_deviation_from_closed_form,
        "first_integral_residual": optimizer.first_integral_residual(res.profile),
    }
    _emit(payload, args.output, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    names = None
    if args.check:
        names = set(args.check)
        unknown = names - set(verify.CHECKS)
        if unknown:
            raise UsageError(f"unknown check(s): {', '.join(sorted(unknown))}")
    results = verify.run_checks(seed=args.seed, names=names)
    if args.output == "json":
        _emit([{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results], "json", out)
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}\n")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print("failed invariants: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def _alpha_row(a0):
    A = make_annulus(a0)
    K, bound = functional.lower_bound(A)
    value = functional.axisymmetric_area(closed_forms.minimizer_field(A), A)
    return {"alpha0": A.alpha0, "K": K, "bound": bound, "minimizer_area": value, "gap": value - bound}


def _k_row(k):
    try:
        _, bcgn = closed_forms.reference_bounds(k)
    except ExcludedIndex:
        bcgn = None
    value = functional.area(closed_forms.vk_field(k), PUNCTURED_SPHERE).area
    return {"k": k, "bcj": closed_forms.bcj_bound(k), "bcgn": bcgn, "vk_area": value}


def cmd_sweep(args, out) -> int:
    if (args.alpha0 is None) == (args.k is None):
        raise UsageError("give exactly one of --alpha0 LIST or --k LIST")
    if args.alpha0 is not None:
        values = _float_list(args.alpha0, args.degrees)
        for a0 in values:
            if not 0.0 < a0 < math.pi / 2:
                raise UsageError("alpha0 must lie in (0, pi/2)")
        row = _alpha_row
    else:
        values = _int_list(args.k)
        row = _k_row
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(row, values))  # map keeps input order
    _emit(rows, args.output, out)
    return EXIT_OK


def _add_quadrature(p):
    g = p.add_argument_group("quadrature")
    g.add_argument("--order", type=int, default=DEFAULT_SCHEME.order, help="Gauss-Legendre points per panel")
    g.add_argument("--panels", type=int, default=DEFAULT_SCHEME.panels)
    g.add_argument("--tol", type=float, default=DEFAULT_SCHEME.tol, help="adaptive Simpson tolerance")
    g.add_argument("--no-substitution", action="store_true", help="integrate in latitude directly")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sasaki-annulus",
        description="Sasaki area of unit vector fields on spherical annuli.",
    )
    parser.add_argument("--degrees", action="store_true", help="read input angles in degrees (output stays in radians)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output_default="json"):
        p.add_argument("--output", choices=("json", "csv"), default=output_default)
        p.add_argument("--degrees", action="store_true", default=argparse.SUPPRESS)

    p = sub.add_parser("bound", help="constant K and the lower bound for an annulus")
    p.add_argument("--alpha0", type=float, required=True)
    common(p)
    _add_quadrature(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("area", help="area of a field with its gap to the bound")
    p.add_argument("--alpha0", type=float)
    p.add_argument("--field", choices=("minimizer", "constant", "linear", "vk", "grid"), default="minimizer")
    p.add_argument("--k", type=int, help="index class for --field vk")
    p.add_argument("--grid", help="CSV file with header alpha,theta for --field grid")
    p.add_argument("--theta", type=float, default=math.pi / 2, help="angle of --field constant")
    p.add_argument("--require-bc", action="store_true", help="reject fields failing the boundary conditions")
    p.add_argument("--bc-tol", type=float, default=1e-8)
    common(p)
    _add_quadrature(p)
    p.set_defaults(func=cmd_area)

    p = sub.add_parser("optimize", help="minimize the discrete area over pinned profiles")
    p.add_argument("--alpha0", type=float, required=True)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--max-iters", type=int, default=2_000_000)
    p.add_argument("--grad-tol", type=float, default=1e-8)
    p.add_argument("--step-rule", choices=optimizer.STEP_RULES, default="adaptive")
    p.add_argument("--export", help="write the optimized profile as an alpha,theta CSV")
    common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--check", action="append", help="run only the named check (repeatable)")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="tabulate bounds over alpha0 or index classes")
    p.add_argument("--alpha0", help="comma-separated half-widths")
    p.add_argument("--k", help="comma-separated index classes")
    p.add_argument("--jobs", type=int, default=1, help="rows computed concurrently")
    common(p, output_default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if not hasattr(args, "degrees"):
        args.degrees = False
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GridFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GRID
    except SasakiAreaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
