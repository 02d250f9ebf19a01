"""Command-line surface: facet derivation, quantum bounds, sweeps, urn runs.

Every subcommand prints one machine-readable report (JSON, or CSV for
sweeps) to stdout; --out mirrors it to a file and --plot renders a figure
next to the delimited output.  Identical invocations produce byte-identical
output.  Exit codes: 0 ok, 1 usage error, 2 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .classical import (
    SZ_THRESHOLD_THETA,
    UrnDistribution,
    all_pairs,
    correlation_point,
    monomial_expectation,
    sample_urn,
    singlet_sz_profile,
    specker_check,
)
from .errors import BoolebellError, DegeneratePolytope, NoConvergence
from .polytope import (
    SCENARIO_ALIASES,
    Facet,
    Scenario,
    dd_hull,
    enumerate_vertices,
    membership,
)
from .quantum import Direction, deviation_extrema
from .report import csv_lines, dumps
from .spectral import (
    CHSH_FACET,
    optimize_angles,
    optimize_equidistant,
    quantum_bound,
    sz_singlet_value,
    sz_spectrum,
)


def _load_scenario(token: str) -> tuple[Scenario, object]:
    """Resolve a scenario alias or JSON document path; returns (scenario, echo)."""
    if token in SCENARIO_ALIASES:
        return SCENARIO_ALIASES[token], token
    doc = json.loads(Path(token).read_text())
    return Scenario.from_dict(doc), doc


def _parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip() != ""]


def _parse_rationals(text: str) -> list[Fraction]:
    return [Fraction(tok.strip()) for tok in text.split(",") if tok.strip() != ""]


def _complex_vector(vec) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in vec]


def _facet_from_args(args) -> Facet:
    return Facet(args.offset, tuple(int(c) for c in _parse_floats(args.normal)))


def _bound_results(report) -> dict:
    return {
        "lambda_min": report.lambda_min,
        "lambda_max": report.lambda_max,
        "classical_min": report.classical_min,
        "classical_max": report.classical_max,
        "violation": report.violation,
        "degenerate_min": report.degenerate_min,
        "degenerate_max": report.degenerate_max,
        "state_min": _complex_vector(report.state_min),
        "state_max": _complex_vector(report.state_max),
    }


def _sweep_rows(start: float, stop: float, steps: int) -> list[dict]:
    rows = []
    for k in range(steps):
        theta = start + (stop - start) * k / (steps - 1)
        spec = sz_spectrum(theta)
        rows.append(
            {
                "theta": theta,
                "mu1_closed": spec.mu1,
                "mu1_computed": spec.mu1_computed,
                "mu2_closed": spec.mu2,
                "mu2_computed": spec.mu2_computed,
                "singlet_sum": sz_singlet_value(theta),
                "classical_bound": -1,
                "mu1_abs_err": abs(spec.mu1 - spec.mu1_computed),
                "mu2_abs_err": abs(spec.mu2 - spec.mu2_computed),
                "degenerate": spec.degenerate,
            }
        )
    return rows


SWEEP_COLUMNS = [
    "theta",
    "mu1_closed",
    "mu1_computed",
    "mu2_closed",
    "mu2_computed",
    "singlet_sum",
    "classical_bound",
    "mu1_abs_err",
    "mu2_abs_err",
    "degenerate",
]


# ---------------------------------------------------------------------------
# subcommand handlers (each returns the full stdout text)


def _cmd_facets(args) -> str:
    scenario, echo = _load_scenario(args.scenario)
    v = enumerate_vertices(scenario)
    h = dd_hull(v)
    report = {
        "command": "facets",
        "inputs": {"scenario": echo},
        "results": {
            "dimension": h.dimension,
            "vertex_count": len(v.vertices),
            "facet_count": len(h.facets),
            "facets": [f.to_dict() for f in h.facets],
        },
        "version": __version__,
    }
    return dumps(report)


def _cmd_qbound(args) -> str:
    scenario, echo = _load_scenario(args.scenario)
    facet = _facet_from_args(args)
    angles = _parse_floats(args.angles)
    if len(angles) != scenario.observable_count:
        raise ValueError(
            f"need {scenario.observable_count} angles, got {len(angles)}"
        )
    directions = [Direction(t) for t in angles]
    bound = quantum_bound(facet, directions, scenario)
    report = {
        "command": "qbound",
        "inputs": {
            "scenario": echo,
            "facet": facet.to_dict(),
            "angles": angles,
        },
        "results": _bound_results(bound),
        "version": __version__,
    }
    return dumps(report)


def _cmd_optimize(args) -> str:
    scenario, echo = _load_scenario(args.scenario)
    facet = _facet_from_args(args)
    inputs = {"scenario": echo, "facet": facet.to_dict(), "equidistant": args.equidistant}
    if args.equidistant:
        theta, result = optimize_equidistant(facet, scenario)
        extra = {"theta": theta}
    else:
        initial = None
        if args.initial:
            initial = [Direction(t) for t in _parse_floats(args.initial)]
            inputs["initial"] = [d.theta for d in initial]
        result = optimize_angles(facet, scenario, initial=initial)
        extra = {}
    report = {
        "command": "optimize",
        "inputs": inputs,
        "results": {
            "angles": [d.theta for d in result.directions],
            "violation": result.objective,
            "lambda_min": result.report.lambda_min,
            "lambda_max": result.report.lambda_max,
            "classical_min": result.report.classical_min,
            "classical_max": result.report.classical_max,
            "iterations": result.iterations,
            **extra,
        },
        "version": __version__,
    }
    return dumps(report)


def _cmd_sweep(args) -> str:
    if args.steps < 2:
        raise ValueError("steps must be at least 2")
    rows = _sweep_rows(args.start, args.stop, args.steps)
    if args.plot:
        from . import plots

        plots.render_sweep(rows, args.plot)
    if args.json:
        report = {
            "command": "sweep",
            "inputs": {"start": args.start, "stop": args.stop, "steps": args.steps},
            "results": {"rows": rows},
            "version": __version__,
        }
        return dumps(report)
    return "\n".join(csv_lines(SWEEP_COLUMNS, [[r[c] for c in SWEEP_COLUMNS] for r in rows]))


def _cmd_deviation(args) -> str:
    ext = deviation_extrema()
    if args.plot:
        from . import plots

        plots.render_deviation(ext, args.plot)
    report = {
        "command": "deviation",
        "inputs": {},
        "results": {
            "theta_low": ext.theta_low,
            "theta_high": ext.theta_high,
            "max_abs_deviation": ext.max_abs_deviation,
        },
        "version": __version__,
    }
    return dumps(report)


def _cmd_urn(args) -> str:
    doc = json.loads(Path(args.urn).read_text())
    urn = UrnDistribution.from_dict(doc)
    pairs = all_pairs(urn.observable_count)
    results: dict = {
        "observables": urn.observable_count,
        "pairs": [list(p) for p in pairs],
        "exact": [monomial_expectation(urn, p) for p in pairs],
    }
    report = {
        "command": "urn",
        "inputs": {"urn": doc},
        "results": results,
        "version": __version__,
    }
    if args.scenario:
        scenario, echo = _load_scenario(args.scenario)
        point = correlation_point(urn, scenario)
        h = dd_hull(enumerate_vertices(scenario))
        results["membership"] = membership(h, point).status
        report["inputs"]["scenario"] = echo
    if args.samples:
        sample = sample_urn(urn, args.samples, args.seed)
        results["draws"] = sample.draws
        results["empirical"] = list(sample.empirical)
        results["counts"] = {
            "".join("+" if s > 0 else "-" for s in ball): c
            for ball, c in sample.counts.items()
        }
        report["seed"] = args.seed
    return dumps(report)


def _cmd_specker(args) -> str:
    scenario, echo = _load_scenario(args.scenario)
    point = _parse_rationals(args.point)
    h = dd_hull(enumerate_vertices(scenario))
    check = specker_check(tuple(point), h)
    results = {
        "point": list(point),
        "status": check.membership.status,
        "margins": list(check.membership.margins),
        "worst_margin": check.worst_margin,
        "worst_facet": check.worst_facet.to_dict(),
    }
    inputs = {"scenario": echo, "point": [str(p) for p in point]}
    if args.theta is not None:
        profile = singlet_sz_profile(args.theta)
        results["profile"] = {
            "theta": profile.theta,
            "correlations": list(profile.correlations),
            "sz_sum": profile.sz_sum,
            "classical_violated": profile.classical_violated,
            "threshold_theta": SZ_THRESHOLD_THETA,
        }
        inputs["theta"] = args.theta
    report = {
        "command": "specker",
        "inputs": inputs,
        "results": results,
        "version": __version__,
    }
    return dumps(report)


def _cmd_chsh(args) -> str:
    scenario = SCENARIO_ALIASES["chsh"]
    result = optimize_angles(CHSH_FACET, scenario)
    report = {
        "command": "chsh",
        "inputs": {"scenario": "chsh", "facet": CHSH_FACET.to_dict()},
        "results": {
            "angles": [d.theta for d in result.directions],
            "lambda_min": result.report.lambda_min,
            "lambda_max": result.report.lambda_max,
            "classical_min": result.report.classical_min,
            "classical_max": result.report.classical_max,
            "violation": result.objective,
            "facet": CHSH_FACET.to_dict(),
        },
        "version": __version__,
    }
    return dumps(report)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolebell",
        description="Correlation polytope facets and their quantum min-max violations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scenario(p, required=True, default=None):
        p.add_argument(
            "--scenario",
            required=required,
            default=default,
            help="scenario JSON file, or one of the aliases: sz, chsh",
        )

    def add_facet(p):
        p.add_argument("--normal", required=True, help="facet normal, e.g. 1,1,1")
        p.add_argument("--offset", type=int, default=1, help="facet offset b (default 1)")

    def add_out(p):
        p.add_argument("--out", help="also write the report to this file")

    p = sub.add_parser("facets", help="derive the facet inequalities of a scenario")
    add_scenario(p)
    add_out(p)
    p.set_defaults(handler=_cmd_facets)

    p = sub.add_parser("qbound", help="quantum bound of a facet at fixed angles")
    add_scenario(p)
    add_facet(p)
    p.add_argument("--angles", required=True, help="planar polar angles, radians, comma separated")
    add_out(p)
    p.set_defaults(handler=_cmd_qbound)

    p = sub.add_parser("optimize", help="maximize the quantum violation of a facet")
    add_scenario(p)
    add_facet(p)
    p.add_argument("--equidistant", action="store_true",
                   help="restrict directions to 0, t, 2t, ... and optimize t alone")
    p.add_argument("--initial", help="starting planar angles, comma separated")
    add_out(p)
    p.set_defaults(handler=_cmd_optimize)

    p = sub.add_parser("sweep", help="eigenvalue sweep over equidistant polar angles")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=math.pi)
    p.add_argument("--steps", type=int, default=25)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true", help="CSV rows (default)")
    fmt.add_argument("--json", action="store_true", help="JSON report instead of CSV")
    p.add_argument("--plot", help="render the sweep figure to this file")
    add_out(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("deviation", help="extrema of the classical-quantum deviation")
    p.add_argument("--plot", help="render the deviation curve to this file")
    add_out(p)
    p.set_defaults(handler=_cmd_deviation)

    p = sub.add_parser("urn", help="exact and sampled correlations of an urn model")
    p.add_argument("--urn", required=True, help="urn JSON file with rational weights")
    add_scenario(p, required=False)
    p.add_argument("--samples", type=int, help="Monte Carlo draw count")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (echoed in the report)")
    add_out(p)
    p.set_defaults(handler=_cmd_urn)

    p = sub.add_parser("specker", help="membership of a correlation point, with profile")
    add_scenario(p, required=False, default="sz")
    p.add_argument("--point", default="-1,-1,-1",
                   help="correlation vector, rational entries (default -1,-1,-1)")
    p.add_argument("--theta", type=float,
                   help="also report the singlet profile at this angle")
    add_out(p)
    p.set_defaults(handler=_cmd_specker)

    p = sub.add_parser("chsh", help="optimized four-observable violation report")
    add_out(p)
    p.set_defaults(handler=_cmd_chsh)

    return parser


def run(argv) -> int:
    """Dispatch a CLI invocation; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        text = args.handler(args)
    except (NoConvergence, DegeneratePolytope) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except (BoolebellError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    print(text)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text + "\n")
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
