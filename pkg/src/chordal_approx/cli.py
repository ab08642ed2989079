"""Command-line interface: approximate, verify, counterexample, report."""

import argparse
import json
import math
import os
import sys
import time

from . import __version__
from .annulus import approximate_laurent
from .circle import CircleSamples, approximate_on_circle, sample_circle
from .counterexamples import (
    area_mean_iterated,
    boundary_pole_function,
    inner_circle_mean,
    mean_value_pv,
    re_identity_max_deviation,
    sup_bound_counterexample,
)
from .disc import ApproxResult, approximate_on_disc, infinity_approximant
from .errors import ApproximationError, ChordalApproxError, MembershipError, ValidationError
from .funcspec import (
    Arc,
    Circle,
    ClosedAnnulus,
    ClosedDisc,
    ConstantInfinity,
    DisjointUnion,
    StarlikeCompact,
    classify_membership,
    evaluate,
    evaluate_array,
)
from .reporting import error_profile, read_csv, write_csv, write_svg
from .serialization import (
    SCHEMA_VERSION,
    decode_domain,
    decode_function,
    decode_grid,
    decode_samples,
    dumps,
    encode_domain,
    encode_estimate,
    encode_function,
    encode_grid,
)
from .special_domains import (
    approximate_on_arc,
    approximate_on_disjoint_union,
    approximate_on_starlike,
)
from .supmetric import GridSpec, domain_grid_points, sup_chordal, verification_grid

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_VALIDATION = 2
EXIT_APPROXIMATION = 3


def _load_json_arg(raw: str):
    if raw.startswith("@"):
        with open(raw[1:], encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(raw)


def _emit(obj, out=None):
    text = dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _error_json(kind: str, message: str):
    _emit({"v": SCHEMA_VERSION, "error": {"type": kind, "message": message}})


def approximate_dispatch(target, domain, eps: float, grid: GridSpec | None = None) -> ApproxResult:
    """Route a target/domain pair to the matching pipeline."""
    if isinstance(domain, ClosedDisc):
        if isinstance(target, ConstantInfinity):
            poly = infinity_approximant(eps)
            g = grid or GridSpec.default_for(domain)
            est = sup_chordal(target, poly, domain, verification_grid(g))
            return ApproxResult(
                poly, eps, est, None, 0, f"constant level {int(poly.coeffs[0].real)}"
            )
        return approximate_on_disc(target, domain, eps, grid)
    if isinstance(domain, Circle):
        if abs(domain.center) > 1e-12 or abs(domain.radius - 1.0) > 1e-12:
            raise ValidationError(
                "trigonometric approximation is supported on the unit circle "
                "only (the coefficient representation is tied to powers of z)"
            )
        if isinstance(target, CircleSamples):
            return approximate_on_circle(target, eps, None, grid)
        k = grid.angular_count if grid is not None else 1024
        samples = sample_circle(target, k)
        return approximate_on_circle(samples, eps, target, grid)
    if isinstance(domain, ClosedAnnulus):
        return approximate_laurent(target, domain, eps, grid)
    if isinstance(domain, StarlikeCompact):
        return approximate_on_starlike(domain, target, eps, grid)
    if isinstance(domain, Arc):
        values = [evaluate(target, z) for z in domain.points]
        return approximate_on_arc(domain, values, eps, target, grid)
    if isinstance(domain, DisjointUnion):
        parts = [
            (part, approximate_dispatch(target, part, eps / 2, grid))
            for part in domain.parts
        ]
        return approximate_on_disjoint_union(parts, eps, grid)
    raise ValidationError(f"unsupported domain {type(domain).__name__}")


def _result_document(result: ApproxResult, target, domain, eps, grid, seed) -> dict:
    return {
        "v": SCHEMA_VERSION,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "seed": seed,
        "target": encode_function(target) if target is not None else None,
        "domain": encode_domain(domain),
        "target_eps": eps,
        "approximant": encode_function(result.approximant),
        "achieved_error": encode_estimate(result.achieved_error),
        "dilation_r": result.dilation_r,
        "degree_n": result.degree_N,
        "notes": result.notes,
        "grid": encode_grid(grid),
    }


def cmd_approximate(args) -> int:
    try:
        target_json = _load_json_arg(args.target)
        domain = decode_domain(_load_json_arg(args.domain))
        if isinstance(target_json, list):
            target = decode_samples(target_json)
        else:
            target = decode_function(target_json)
        eps = float(args.eps)
        grid = decode_grid(_load_json_arg(args.grid)) if args.grid else None
    except (ValidationError, ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        _error_json("validation", str(exc))
        return EXIT_VALIDATION
    try:
        result = approximate_dispatch(target, domain, eps, grid)
    except (MembershipError, ApproximationError) as exc:
        _error_json(type(exc).__name__, str(exc))
        return EXIT_APPROXIMATION
    except ValidationError as exc:
        _error_json("validation", str(exc))
        return EXIT_VALIDATION

    os.makedirs(args.out, exist_ok=True)
    doc = _result_document(
        result,
        None if isinstance(target, CircleSamples) else target,
        domain,
        eps,
        grid or GridSpec.default_for(domain),
        args.seed,
    )
    result_path = os.path.join(args.out, "result.json")
    with open(result_path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))

    csv_path = os.path.join(args.out, "error_profile.csv")
    profile_target = (
        ConstantInfinity() if isinstance(target, CircleSamples) and target.all_infinite()
        else target
    )
    if isinstance(profile_target, CircleSamples):
        # sample-backed target: profile against the samples themselves
        pts = profile_target.points
        from .sphere import chi_array

        qv, qi = evaluate_array(result.approximant, pts)
        chis = chi_array(profile_target.array, profile_target.infinity_mask, qv, qi)
        rows = [
            (float(z.real), float(z.imag), float(c)) for z, c in zip(pts, chis)
        ]
    else:
        vpts = domain_grid_points(
            domain, verification_grid(grid or GridSpec.default_for(domain))
        )
        rows = error_profile(profile_target, result.approximant, vpts)
    write_csv(csv_path, rows)
    if args.svg:
        write_svg(os.path.join(args.out, "error.svg"), rows)
    _emit(
        {
            "v": SCHEMA_VERSION,
            "achieved_error": result.achieved_error.value,
            "target_eps": eps,
            "result": result_path,
        }
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.result, encoding="utf-8") as fh:
            doc = json.load(fh)
        approximant = decode_function(doc["approximant"])
        domain = decode_domain(doc["domain"])
        eps = float(doc["target_eps"])
        target = (
            decode_function(_load_json_arg(args.target))
            if args.target
            else decode_function(doc["target"])
        )
        grid = decode_grid(doc.get("grid", {}))
        if args.factor and args.factor > 1:
            grid = GridSpec(
                grid.radial_count * args.factor,
                grid.angular_count * args.factor,
                grid.refinement_factor,
                grid.max_refinements,
            )
    except (ValidationError, ValueError, KeyError, TypeError, json.JSONDecodeError, OSError) as exc:
        _error_json("validation", str(exc))
        return EXIT_VALIDATION
    est = sup_chordal(
        target, approximant, domain, verification_grid(grid), seed=args.seed
    )
    ok = est.value < eps
    _emit(
        {
            "v": SCHEMA_VERSION,
            "measured_error": est.value,
            "target_eps": eps,
            "seed": args.seed,
            "pass": ok,
        }
    )
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _counterexample_report(args) -> dict:
    name = args.name
    if name == "sup-bound":
        n, r = args.n, args.r
        got = sup_bound_counterexample(n, r)
        expected = {
            "global_sup": 1.0,
            "annulus_sup": 1.0 / math.sqrt(1.0 + n * n * r * r),
        }
        tol = 1e-12
        ok = (
            abs(got.global_sup - expected["global_sup"]) <= tol
            and abs(got.annulus_sup - expected["annulus_sup"]) <= tol
        )
        return {
            "name": name,
            "computed": {"global_sup": got.global_sup, "annulus_sup": got.annulus_sup},
            "expected": expected,
            "tolerance": tol,
            "pass": ok,
        }
    if name == "mean-value-pv":
        pv = mean_value_pv(args.quad_points)
        f_at_zero = evaluate(
            decode_function({"pole_rational": {"w": [1, 0], "q": [[0, 0], [1, 0]]}}), 0
        ).value
        re_dev = re_identity_max_deviation()
        ok = (
            abs(pv.principal_value + 0.5) <= 1e-6
            and pv.imaginary_magnitude < 1e-8
            and re_dev < 1e-12
            and f_at_zero == -1
        )
        return {
            "name": name,
            "computed": {
                "principal_value": pv.principal_value,
                "imaginary_magnitude": pv.imaginary_magnitude,
                "re_identity_max_deviation": re_dev,
                "f_at_zero": [f_at_zero.real, f_at_zero.imag],
            },
            "expected": {"principal_value": -0.5, "f_at_zero": [-1.0, 0.0]},
            "tolerance": 1e-6,
            "pass": ok,
        }
    if name == "area-mean":
        val = area_mean_iterated(args.radial_points)
        inner_half = inner_circle_mean(0.5)
        ok = abs(val - 1.0) <= 1e-4 and abs(inner_half - 2 * math.pi) <= 1e-8
        return {
            "name": name,
            "computed": {
                "area_mean": val,
                "inner_integral_at_half": [inner_half.real, inner_half.imag],
            },
            "expected": {"area_mean": 1.0, "inner_integral_at_half": [2 * math.pi, 0.0]},
            "tolerance": 1e-4,
            "pass": ok,
        }
    if name == "boundary-poles":
        pts = [complex(p[0], p[1]) for p in args.poles]
        f = boundary_pole_function(pts, args.multiplicities)
        report = classify_membership(f, ClosedDisc(0j, 1.0))
        v0 = evaluate(f, 0)
        computed = {
            "member": report.member,
            "f_at_zero": None if v0.is_infinity else [v0.value.real, v0.value.imag],
            "pole_count": len(pts),
        }
        ok = report.member
        if pts == [complex(1, 0)]:
            ok = ok and not v0.is_infinity and abs(v0.value + 1.0) <= 1e-12
        return {
            "name": name,
            "computed": computed,
            "expected": {"member": True},
            "tolerance": 1e-12,
            "pass": ok,
        }
    raise ValidationError(f"unknown counterexample {name!r}")


def cmd_counterexample(args) -> int:
    try:
        report = _counterexample_report(args)
    except (ValidationError, ValueError) as exc:
        _error_json("validation", str(exc))
        return EXIT_VALIDATION
    report["v"] = SCHEMA_VERSION
    _emit(report, args.out)
    return EXIT_OK if report["pass"] else EXIT_VERIFY_FAILED


def cmd_report(args) -> int:
    try:
        with open(args.result, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        _error_json("validation", str(exc))
        return EXIT_VALIDATION
    summary = {
        "v": SCHEMA_VERSION,
        "target_eps": doc.get("target_eps"),
        "achieved_error": doc.get("achieved_error", {}).get("value"),
        "degree_n": doc.get("degree_n"),
        "dilation_r": doc.get("dilation_r"),
        "notes": doc.get("notes"),
    }
    if args.csv:
        try:
            rows = read_csv(args.csv)
        except (OSError, ValidationError) as exc:
            _error_json("validation", str(exc))
            return EXIT_VALIDATION
        summary["csv_rows"] = len(rows)
        summary["csv_max_error"] = max(r[2] for r in rows)
        if args.svg:
            write_svg(args.svg, rows)
            summary["svg"] = args.svg
    _emit(summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordal-approx",
        description=(
            "Uniform approximation of sphere-valued analytic functions in the "
            "chordal metric"
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_app = sub.add_parser("approximate", help="build a verified approximant")
    p_app.add_argument("--target", required=True, help="function JSON (or @file)")
    p_app.add_argument("--domain", required=True, help="domain JSON (or @file)")
    p_app.add_argument("--eps", required=True, type=float)
    p_app.add_argument("--grid", help="grid JSON (or @file)")
    p_app.add_argument("--out", default=".", help="output directory")
    p_app.add_argument("--svg", action="store_true", help="also write error.svg")
    p_app.add_argument("--seed", type=int, default=0)
    p_app.set_defaults(func=cmd_approximate)

    p_ver = sub.add_parser("verify", help="re-verify a result on a fresh grid")
    p_ver.add_argument("--result", required=True, help="result.json path")
    p_ver.add_argument("--target", help="override target JSON (or @file)")
    p_ver.add_argument("--seed", type=int, default=0, help="grid jitter seed")
    p_ver.add_argument("--factor", type=int, default=1, help="extra grid refinement")
    p_ver.set_defaults(func=cmd_verify)

    p_ce = sub.add_parser("counterexample", help="run a numeric counterexample")
    p_ce.add_argument(
        "name",
        choices=["sup-bound", "mean-value-pv", "area-mean", "boundary-poles"],
    )
    p_ce.add_argument("--n", type=int, default=100)
    p_ce.add_argument("--r", type=float, default=0.5)
    p_ce.add_argument("--quad-points", type=int, default=4096)
    p_ce.add_argument("--radial-points", type=int, default=256)
    p_ce.add_argument(
        "--poles",
        type=lambda s: json.loads(s),
        default=[[1.0, 0.0]],
        help="JSON list of [re, im] unimodular points",
    )
    p_ce.add_argument(
        "--multiplicities", type=lambda s: json.loads(s), default=None
    )
    p_ce.add_argument("--out", help="also write the report JSON here")
    p_ce.set_defaults(func=cmd_counterexample)

    p_rep = sub.add_parser("report", help="summarize a result file")
    p_rep.add_argument("--result", required=True)
    p_rep.add_argument("--csv", help="error profile CSV to summarize")
    p_rep.add_argument("--svg", help="render the CSV to this SVG path")
    p_rep.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ChordalApproxError as exc:
        _error_json(type(exc).__name__, str(exc))
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
