"""Command-line front end: one subcommand per experiment.

All configuration is JSON (inline or file paths); results are emitted as
canonical JSON (or CSV for point-list certificates).  Runs with the same
arguments and seed are byte-identical.  Exit codes: 0 success, 2 bad
configuration, 3 domain violation, 4 budget exhaustion, 1 golden-file
mismatch or internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .closed_forms import has_closed_form, kob_royden_closed
from .contraction import check_strict_image, degree_collapse_demo, iterate_to_fixed_point
from .distgraph import kob_distance_graph
from .errors import BudgetError, ConfigError, DomainError, KoblabError
from .estimator import (
    OptimizerBudget,
    estimate_kob_royden,
    lemma_compare_bound,
    uniform_monotonicity_report,
)
from .geometry import (
    Annulus,
    Ball,
    Disc,
    SampledCurve,
    TubeCircle,
    domain_from_json,
)
from .hausdorff import hausdorff_k_measure
from .invariants import (
    l1_annulus,
    l1_annulus_domain,
    lk_tube_upper,
    max_radial_deviation,
    tube_map_degree,
)
from .parallel import set_thread_cap
from .polymap import PolyMap


@dataclass(frozen=True)
class RunConfig:
    """Resolved common run options shared by every subcommand."""

    seed: int
    output_path: str | None
    format: str
    golden_path: str | None

    def __post_init__(self):
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")


# ---------------------------------------------------------------------------
# small parsing helpers


def _parse_complex_list(text: str) -> list[complex]:
    try:
        return [complex(part.strip().replace("i", "j")) for part in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex list {text!r}: {exc}") from exc


def _load_json(spec: str) -> dict:
    if spec.lstrip().startswith("{"):
        try:
            return json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad inline JSON: {exc}") from exc
    if not os.path.exists(spec):
        raise ConfigError(f"no such file: {spec}")
    with open(spec, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad JSON in {spec}: {exc}") from exc


def _budget_from_args(args) -> OptimizerBudget:
    return OptimizerBudget(
        max_degree=args.max_degree,
        restarts=args.restarts,
        max_iters=args.max_iters,
        boundary_angles=args.boundary_angles,
        seed=args.seed,
    )


def _add_budget_args(p: argparse.ArgumentParser, max_degree: int = 6) -> None:
    p.add_argument("--max-degree", type=int, default=max_degree)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--boundary-angles", type=int, default=256)


def _json_bytes(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_rows(payload: dict) -> str:
    pts = payload.get("certificate", {})
    rows = ["index,param,re,im"]
    if isinstance(pts, dict) and "points" in pts:
        params = pts.get("params", range(len(pts["points"])))
        for i, (t, point) in enumerate(zip(params, pts["points"])):
            for re, im in point:
                rows.append(f"{i},{t},{re},{im}")
    elif "iterates" in payload:
        for i, point in enumerate(payload["iterates"]):
            for re, im in point:
                rows.append(f"{i},{i},{re},{im}")
    else:
        raise ConfigError("this report has no point-list certificate for CSV")
    return "\n".join(rows) + "\n"


def _compare_golden(payload: dict, path: str) -> list[str]:
    with open(path, "r", encoding="utf-8") as fh:
        stored = json.load(fh)
    diffs: list[str] = []

    def walk(a, b, where):
        if isinstance(a, dict) and isinstance(b, dict):
            for key in sorted(set(a) | set(b)):
                if key not in a or key not in b:
                    diffs.append(f"{where}.{key}: present on one side only")
                else:
                    walk(a[key], b[key], f"{where}.{key}")
        elif isinstance(a, list) and isinstance(b, list):
            if len(a) != len(b):
                diffs.append(f"{where}: length {len(a)} vs {len(b)}")
            else:
                for i, (x, y) in enumerate(zip(a, b)):
                    walk(x, y, f"{where}[{i}]")
        elif isinstance(a, bool) or isinstance(b, bool):
            if a != b:
                diffs.append(f"{where}: {a} vs {b}")
        elif isinstance(a, (int, float)) and isinstance(b, (int, float)):
            if not math.isclose(a, b, rel_tol=1e-6, abs_tol=1e-9):
                diffs.append(f"{where}: {a} vs {b}")
        elif a != b:
            diffs.append(f"{where}: {a!r} vs {b!r}")

    walk(stored, payload, "$")
    return diffs


def _emit(payload: dict, cfg: RunConfig) -> int:
    text = _csv_rows(payload) if cfg.format == "csv" else _json_bytes(payload)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.golden_path:
        if not os.path.exists(cfg.golden_path):
            with open(cfg.golden_path, "w", encoding="utf-8") as fh:
                fh.write(_json_bytes(payload))
            sys.stderr.write(f"golden baseline written: {cfg.golden_path}\n")
        else:
            diffs = _compare_golden(payload, cfg.golden_path)
            if diffs:
                for d in diffs[:20]:
                    sys.stderr.write(f"golden mismatch {d}\n")
                return 1
    return 0


def _selftest_report(checks: list[tuple[str, bool, str]]) -> int:
    ok = True
    for name, passed, detail in checks:
        sys.stdout.write(f"{'PASS' if passed else 'FAIL'} {name}{'' if passed else ': ' + detail}\n")
        ok = ok and passed
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# subcommand implementations


def cmd_l1_annulus(args) -> tuple[dict, int]:
    if args.selftest:
        checks = []
        rep = l1_annulus(math.e, 2.0, OptimizerBudget(restarts=2, seed=args.seed))
        err = abs(rep.value - math.pi**2) / math.pi**2
        checks.append(("l1 R=e within 1%", err < 0.01, f"rel err {err:.4g}"))
        try:
            l1_annulus(1.0)
            checks.append(("l1 R=1 rejected", False, "no error raised"))
        except ConfigError:
            checks.append(("l1 R=1 rejected", True, ""))
        rep9 = l1_annulus_domain(Annulus(1.0, 9.0), 2.0, OptimizerBudget(restarts=2, seed=args.seed))
        err9 = abs(rep9.value - math.pi**2 / math.log(9)) / (math.pi**2 / math.log(9))
        checks.append(("l1 A(1,9) within 1%", err9 < 0.01, f"rel err {err9:.4g}"))
        return {}, _selftest_report(checks)

    budget = OptimizerBudget(restarts=args.restarts, max_iters=args.max_iters, seed=args.seed)
    if args.A is not None or args.B is not None:
        if args.A is None or args.B is None:
            raise ConfigError("provide both --A and --B")
        if not (0 < args.A < args.B):
            raise ConfigError("need 0 < A < B")
        report = l1_annulus_domain(Annulus(args.A, args.B), args.scale, budget, args.harmonics)
        log_ratio = math.log(args.B / args.A)
        center_radius = math.sqrt(args.A * args.B)
    else:
        if args.R is None:
            raise ConfigError("provide --R or --A/--B")
        report = l1_annulus(args.R, args.scale, budget, args.harmonics)
        log_ratio = math.log(args.R)
        center_radius = 1.0
    analytic = (args.scale / 2.0) * math.pi**2 / log_ratio
    payload = report.to_json()
    payload["analytic_value"] = analytic
    payload["relative_error"] = abs(report.value - analytic) / analytic
    payload["certificate_radial_deviation"] = max_radial_deviation(report.certificate, center_radius)
    return payload, 0


def cmd_kob_eval(args) -> tuple[dict, int]:
    if args.selftest:
        checks = []
        ball = Ball(2, (0, 0), 1.0)
        closed = kob_royden_closed(ball, [0, 0], [1, 0]).value
        est = estimate_kob_royden(ball, [0, 0], [1, 0], OptimizerBudget(max_degree=2, restarts=2, seed=args.seed)).value
        checks.append(("ball closed form 1.0", abs(closed - 1.0) < 1e-12, f"{closed}"))
        checks.append(("ball estimate within 2%", closed - 1e-9 <= est <= 1.02 * closed, f"{est}"))
        disc = Disc(0.0, 1.0)
        got = kob_royden_closed(disc, [0.5], [1.0]).value
        checks.append(("disc density at 0.5", abs(got - 1 / 0.75) < 1e-12, f"{got}"))
        return {}, _selftest_report(checks)

    if not (args.domain and args.p and args.v):
        raise ConfigError("kob-eval needs --domain, --p and --v")
    domain = domain_from_json(_load_json(args.domain))
    p = _parse_complex_list(args.p)
    v = _parse_complex_list(args.v)
    budget = _budget_from_args(args)
    payload: dict = {"domain": domain.to_json(), "p": [[z.real, z.imag] for z in p], "v": [[z.real, z.imag] for z in v]}
    if has_closed_form(domain):
        payload["closed_form"] = kob_royden_closed(domain, p, v).to_json()
    if not args.closed_only:
        est = estimate_kob_royden(domain, p, v, budget)
        payload["estimate"] = est.to_json()
        if "closed_form" in payload:
            payload["ratio_estimate_over_closed"] = est.value / payload["closed_form"]["value"]
    return payload, 0


def cmd_monotonicity(args) -> tuple[dict, int]:
    if args.selftest:
        checks = []
        rep = lemma_compare_bound(Disc(0.0, 1.0), Disc(0.0, 2.0), [0.0])
        checks.append(
            ("disc pair c_bound vs ratio", abs(rep.c_bound - rep.observed_ratio) < 1e-6,
             f"{rep.c_bound} vs {rep.observed_ratio}")
        )
        checks.append(("disc pair c = 0.5", abs(rep.c_bound - 0.5) < 1e-9, f"{rep.c_bound}"))
        return {}, _selftest_report(checks)

    if not (args.inner and args.outer):
        raise ConfigError("monotonicity needs --inner and --outer")
    inner = domain_from_json(_load_json(args.inner))
    outer = domain_from_json(_load_json(args.outer))
    budget = _budget_from_args(args)
    payload: dict = {"inner": repr(inner), "outer": repr(outer)}
    if args.uniform:
        payload["uniform"] = uniform_monotonicity_report(
            inner, outer, sample_points=args.samples, budget=budget
        )
    if args.point is not None:
        rep = lemma_compare_bound(inner, outer, _parse_complex_list(args.point), budget=budget)
        payload["pointwise"] = rep.to_json()
    if "uniform" not in payload and "pointwise" not in payload:
        raise ConfigError("nothing to do: pass --point and/or --uniform")
    return payload, 0


def cmd_hausdorff(args) -> tuple[dict, int]:
    if args.selftest:
        checks = []
        ann = Annulus(math.exp(-0.5), math.exp(0.5))
        t = np.linspace(0.0, 2 * np.pi, 257)
        circle = SampledCurve.from_array(np.exp(1j * t)[:, None], closed=True, params=t)
        rep = hausdorff_k_measure(circle, 1, domain=ann, scale=2.0)
        err = abs(rep.value - math.pi**2) / math.pi**2
        checks.append(("circle measure vs pi^2", err < 0.02, f"rel err {err:.4g}"))
        checks.append(("ladder monotone", rep.monotone, "estimates decreased"))
        disc = Disc(0.0, 1.0)
        seg = SampledCurve.from_array(np.linspace(0, 0.5, 33)[:, None].astype(complex))
        rep2 = hausdorff_k_measure(seg, 1, domain=disc)
        oracle = math.atanh(0.5)
        err2 = abs(rep2.value - oracle) / oracle
        checks.append(("segment measure vs artanh", err2 < 0.02, f"rel err {err2:.4g}"))
        return {}, _selftest_report(checks)

    if not args.curve:
        raise ConfigError("hausdorff needs --curve")
    domain = domain_from_json(_load_json(args.domain)) if args.domain else None
    curve = SampledCurve.from_json(_load_json(args.curve))
    report = hausdorff_k_measure(curve, args.k, domain=domain, scale=args.scale, levels=args.levels)
    return report.to_json(), 0


def cmd_tube_lk(args) -> tuple[dict, int]:
    if args.selftest:
        a = lk_tube_upper(1, 0.2, mesh_density=2).value
        b = lk_tube_upper(1, 0.3, mesh_density=2).value
        return {}, _selftest_report([
            ("tube k=1 strictly decreasing", a > b > 0, f"{a} vs {b}"),
        ])

    radii = [float(r) for r in args.radii.split(",")]
    if any(not 0 < r < 0.5 for r in radii):
        raise ConfigError("radii must lie in (0, 0.5)")
    values = [lk_tube_upper(args.k, r, args.mesh_density, not args.no_shrink).value for r in radii]
    payload = {
        "k": args.k,
        "radii": radii,
        "values": values,
        "strictly_decreasing": all(a > b for a, b in zip(values, values[1:])),
    }
    return payload, 0


def cmd_fixed_point(args) -> tuple[dict, int]:
    if args.selftest:
        f = PolyMap.from_univariate([0.25, 0.5])
        rep = iterate_to_fixed_point(f, Disc(0.0, 1.0), starts=[[0.0], [0.9j], [-0.5]])
        z0 = rep.z0.as_array()[0]
        return {}, _selftest_report([
            ("halfshift fixed point 0.5", abs(z0 - 0.5) < 1e-9, f"{z0}"),
            ("agreement under 1e-8", rep.distinct_starts_agreement < 1e-8, f"{rep.distinct_starts_agreement}"),
        ])

    if not (args.map and args.domain):
        raise ConfigError("fixed-point needs --map and --domain")
    fmap = PolyMap.from_json(_load_json(args.map))
    domain = domain_from_json(_load_json(args.domain))
    starts = None
    if args.starts:
        starts = [_parse_complex_list(s) for s in args.starts.split(";")]
    if args.check_only:
        _, delta = check_strict_image(fmap, domain)
        return {"margin": delta}, 0
    report = iterate_to_fixed_point(fmap, domain, starts=starts, tol=args.tol, max_iter=args.max_iter)
    return report.to_json(), 0


def cmd_tube_degree(args) -> tuple[dict, int]:
    if args.selftest:
        checks = []
        src = TubeCircle(2, 0.3)
        ident = PolyMap.identity(2)
        checks.append(("identity degree 1", tube_map_degree(ident, src, src) == 1, ""))
        const = PolyMap.from_terms(2, 2, {(0, 0): np.array([1.0, 0.0])})
        checks.append(("constant degree 0", tube_map_degree(const, src, src) == 0, ""))
        sq = PolyMap.from_terms(2, 2, {(2, 0): np.array([1.0, 0.0])})
        got = tube_map_degree(sq, TubeCircle(2, 0.1), TubeCircle(2, 0.5))
        checks.append(("square map degree 2", got == 2, f"{got}"))
        return {}, _selftest_report(checks)

    if not args.map:
        raise ConfigError("tube-degree needs --map")
    fmap = PolyMap.from_json(_load_json(args.map))
    source = TubeCircle(args.source_n, args.source_r)
    target = TubeCircle(args.target_n if args.target_n else args.source_n, args.target_r)
    if args.collapse:
        payload = degree_collapse_demo(fmap, source, target, horizon=args.horizon)
        return payload, 0
    deg = tube_map_degree(fmap, source, target, args.mesh_density)
    return {"degree": deg}, 0


def cmd_kob_distance(args) -> tuple[dict, int]:
    if args.selftest:
        disc = Disc(0.0, 1.0)
        d = kob_distance_graph(disc, 0.0, 0.5, lattice_step=0.02)
        err = abs(d / np.arctanh(0.5) - 1.0)
        rev = kob_distance_graph(disc, 0.5, 0.0, lattice_step=0.02)
        return {}, _selftest_report([
            ("disc radial vs arctanh", err < 0.02, f"rel err {err:.4g}"),
            ("symmetric endpoints", abs(d - rev) < 1e-12, f"|d - rev| = {abs(d - rev):.3g}"),
        ])

    if not (args.domain and args.a and args.b):
        raise ConfigError("kob-distance needs --domain, --a and --b")
    domain = domain_from_json(_load_json(args.domain))
    a = _parse_complex_list(args.a)
    b = _parse_complex_list(args.b)
    d = kob_distance_graph(domain, a, b, lattice_step=args.lattice_step, scale=args.scale)
    return {"distance": d, "lattice_step": args.lattice_step, "scale": args.scale}, 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="koblab",
        description="Hyperbolic-geometry invariants of bounded complex domains.",
    )
    parser.add_argument("--threads", type=int, default=None, help="cap worker threads (or set KOBLAB_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", dest="output_path", default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--golden", dest="golden_path", default=None)
        p.add_argument("--selftest", action="store_true")

    p = sub.add_parser("l1-annulus", help="shortest-loop value of an annulus")
    p.add_argument("--R", type=float, default=None)
    p.add_argument("--A", type=float, default=None)
    p.add_argument("--B", type=float, default=None)
    p.add_argument("--scale", type=float, default=2.0)
    p.add_argument("--harmonics", type=int, default=16)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-iters", type=int, default=2000)
    common(p)
    p.set_defaults(func=cmd_l1_annulus)

    p = sub.add_parser("kob-eval", help="closed form and upper estimate of the metric")
    p.add_argument("--domain", required=False, default=None)
    p.add_argument("--p", default=None)
    p.add_argument("--v", default=None)
    p.add_argument("--closed-only", action="store_true")
    _add_budget_args(p)
    common(p)
    p.set_defaults(func=cmd_kob_eval)

    p = sub.add_parser("monotonicity", help="nested-pair comparison bounds")
    p.add_argument("--inner", default=None)
    p.add_argument("--outer", default=None)
    p.add_argument("--point", default=None)
    p.add_argument("--uniform", action="store_true")
    p.add_argument("--samples", type=int, default=6)
    _add_budget_args(p, max_degree=1)
    common(p)
    p.set_defaults(func=cmd_monotonicity)

    p = sub.add_parser("hausdorff", help="k-measure of a sampled curve")
    p.add_argument("--domain", default=None)
    p.add_argument("--curve", default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--levels", type=int, default=5)
    common(p)
    p.set_defaults(func=cmd_hausdorff)

    p = sub.add_parser("tube-lk", help="core-class measure upper bounds across radii")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--radii", default="0.1,0.15,0.2,0.25,0.3")
    p.add_argument("--mesh-density", type=int, default=3)
    p.add_argument("--no-shrink", action="store_true")
    common(p)
    p.set_defaults(func=cmd_tube_lk)

    p = sub.add_parser("fixed-point", help="iterate a strict self-map to its fixed point")
    p.add_argument("--map", default=None)
    p.add_argument("--domain", default=None)
    p.add_argument("--starts", default=None, help="semicolon-separated point lists")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-iter", type=int, default=5000)
    p.add_argument("--check-only", action="store_true")
    common(p)
    p.set_defaults(func=cmd_fixed_point)

    p = sub.add_parser("tube-degree", help="loop degree of a tube map")
    p.add_argument("--map", default=None)
    p.add_argument("--source-n", type=int, default=2)
    p.add_argument("--source-r", type=float, default=0.3)
    p.add_argument("--target-n", type=int, default=None)
    p.add_argument("--target-r", type=float, default=0.3)
    p.add_argument("--mesh-density", type=int, default=512)
    p.add_argument("--collapse", action="store_true")
    p.add_argument("--horizon", type=int, default=5)
    common(p)
    p.set_defaults(func=cmd_tube_degree)

    p = sub.add_parser("kob-distance", help="graph distance between two points")
    p.add_argument("--domain", default=None)
    p.add_argument("--a", default=None)
    p.add_argument("--b", default=None)
    p.add_argument("--lattice-step", type=float, default=0.05)
    p.add_argument("--scale", type=float, default=1.0)
    common(p)
    p.set_defaults(func=cmd_kob_distance)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        set_thread_cap(args.threads)
    cfg = RunConfig(
        seed=getattr(args, "seed", 0),
        output_path=getattr(args, "output_path", None),
        format=getattr(args, "format", "json"),
        golden_path=getattr(args, "golden_path", None),
    )
    try:
        payload, code = args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2
    except DomainError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return 3
    except BudgetError as exc:
        sys.stderr.write(f"budget exhausted: {exc}\n")
        return 4
    except KoblabError as exc:
        sys.stderr.write(f"inconsistency: {exc}\n")
        return 1
    if code != 0:
        return code
    if payload:
        return _emit(payload, cfg)
    return 0


if __name__ == "__main__":
    sys.exit(main())
