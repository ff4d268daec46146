"""Command-line front end: simulate, cluster, baseline, report.

Configuration can come from a JSON file (--config) whose keys mirror
PipelineConfig; command-line flags override file values.  Exit codes:
0 success, 2 empty level set, 3 eigensolver failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .datasets import MixtureSpec, save_points, simulate_mixture
from .density import EmptyLevelSetError
from .pipeline import (
    DEFAULT_BANDWIDTH_GRID,
    PipelineConfig,
    _stage_seeds,
    run_baseline,
    run_pipeline,
)
from .spectral import EigensolverError

__all__ = ["main"]

EXIT_EMPTY_LEVEL_SET = 2
EXIT_EIGENSOLVER = 3


def _parse_grid(text: str) -> tuple:
    values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    if not values:
        raise argparse.ArgumentTypeError("bandwidth grid must list at least one value")
    return values


def _add_pipeline_flags(parser: argparse.ArgumentParser, with_level: bool) -> None:
    parser.add_argument("--config", help="JSON file with PipelineConfig fields")
    parser.add_argument("--input", help="CSV point file (skips simulation)")
    parser.add_argument("--n", type=int, help="sample size when simulating")
    parser.add_argument("--seed", type=int, help="root seed (simulation + k-means)")
    parser.add_argument("--bandwidth", type=float, help="fixed KDE bandwidth")
    parser.add_argument("--bandwidth-grid", type=_parse_grid,
                        help="comma-separated cross-validation grid")
    if with_level:
        parser.add_argument("--level", type=float, help="fixed density level t")
        parser.add_argument("--retain-fraction", type=float,
                            help="retention fraction selecting t (default 0.85)")
    parser.add_argument("--scale-h", type=float, help="graph connectivity radius h")
    parser.add_argument("--zero-tol", type=float,
                        help="eigenvalue zero tolerance (default 1e-8)")
    parser.add_argument("--ell", type=int,
                        help="embedding dimension (default: zero-eigenvalue count)")
    parser.add_argument("--restarts", type=int, help="k-means restarts (default 10)")
    parser.add_argument("--dump-graph", help="write sparse triplets (i,j,value) here")
    parser.add_argument("--report-components", action="store_true",
                        help="print component count and d_min")
    parser.add_argument("--out", help="output directory (default: out)")


def _config_from_args(args, baseline: bool) -> PipelineConfig:
    values: dict = {}
    if args.config:
        raw = json.loads(Path(args.config).read_text())
        mixture = raw.pop("mixture", None)
        if mixture is not None:
            raw["mixture"] = MixtureSpec(**mixture)
        if "bandwidth_grid" in raw and raw["bandwidth_grid"] is not None:
            raw["bandwidth_grid"] = tuple(raw["bandwidth_grid"])
        values.update(raw)

    overrides = {
        "csv_path": args.input,
        "n": args.n,
        "seed": args.seed,
        "bandwidth": args.bandwidth,
        "bandwidth_grid": args.bandwidth_grid,
        "scale_h": args.scale_h,
        "zero_tol": args.zero_tol,
        "ell": args.ell,
        "restarts": args.restarts,
        "dump_graph": args.dump_graph,
        "output_dir": args.out,
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = value

    if not baseline:
        if getattr(args, "level", None) is not None:
            values["level"] = args.level
            values["retain_fraction"] = None
        elif getattr(args, "retain_fraction", None) is not None:
            values["retain_fraction"] = args.retain_fraction
            values["level"] = None
        if values.get("level") is None and values.get("retain_fraction") is None:
            values["retain_fraction"] = 0.85

    if values.get("bandwidth") is None and values.get("bandwidth_grid") is None:
        values["bandwidth_grid"] = DEFAULT_BANDWIDTH_GRID
    return PipelineConfig(**values)


def _print_summary(summary: dict, report_components: bool) -> None:
    print(f"retained {summary['jn']} of {summary['n']} points at level t={summary['t']:.6g}")
    print(f"bandwidth {summary['bandwidth']:.6g}, zero-eigenvalue count {summary['ell_hat']}, "
          f"embedding dimension {summary['ell']}")
    print(f"k-means inertia {summary['inertia']:.6g}")
    if summary["ari"] is not None:
        print(f"adjusted Rand index vs ground truth: {summary['ari']:.4f}")
    if report_components:
        d_min = summary["d_min"]
        print(f"graph components: {summary['component_count']}, "
              f"d_min: {'undefined' if d_min is None else format(d_min, '.6g')}")


def _cmd_simulate(args) -> int:
    sim_seed, _ = _stage_seeds(args.seed)
    points = simulate_mixture(MixtureSpec(seed=sim_seed), args.n)
    save_points(points, args.out)
    print(f"wrote {points.n} labeled points to {args.out}")
    return 0


def _cmd_cluster(args, baseline: bool) -> int:
    config = _config_from_args(args, baseline)
    try:
        summary = run_baseline(config) if baseline else run_pipeline(config)
    except EmptyLevelSetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_LEVEL_SET
    except EigensolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EIGENSOLVER
    _print_summary(summary, args.report_components)
    print(f"reports written to {config.output_dir}")
    return 0


def _cmd_report(args) -> int:
    out = Path(args.out)
    summary = json.loads((out / "summary.json").read_text())
    _print_summary(summary, report_components=True)
    lines = (out / "eigenvalues.csv").read_text().splitlines()[1:]
    head = lines[: min(50, summary["jn"])]
    print(f"first {len(head)} eigenvalues of I - S:")
    for line in head:
        index, value = line.split(",")
        print(f"  {index:>4}  {float(value):.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levelset-spectral",
        description="Spectral clustering on estimated density level sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="draw the benchmark mixture to CSV")
    p_sim.add_argument("--n", type=int, default=1900)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", default="points.csv")
    p_sim.set_defaults(func=_cmd_simulate)

    p_cluster = sub.add_parser("cluster", help="full level-set spectral clustering run")
    _add_pipeline_flags(p_cluster, with_level=True)
    p_cluster.set_defaults(func=lambda a: _cmd_cluster(a, baseline=False))

    p_base = sub.add_parser("baseline", help="unfiltered run (level forced to 0)")
    _add_pipeline_flags(p_base, with_level=False)
    p_base.set_defaults(func=lambda a: _cmd_cluster(a, baseline=True))

    p_report = sub.add_parser("report", help="print a finished run's summary")
    p_report.add_argument("--out", default="out", help="output directory of the run")
    p_report.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
