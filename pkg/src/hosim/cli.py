"""Command-line interface.

Verbs:

    hosim run <config> [--out DIR]      run an experiment matrix
    hosim example                       print + self-check the worked example
    hosim paths export <file> ...       generate a trajectory to a path file
    hosim paths import <file> ...       validate/summarize a path file
    hosim explain <config> --step N     print one decision's score tables

Exit codes: 0 success, 2 validation error, 3 reproduction-check failure.
The output directory may also be set via the HOSIM_OUTPUT_DIR
environment variable (the only environment override).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .config import ConfigError, parse_config
from .mobility import (
    MODELS,
    MobilitySpec,
    generate,
    load_path_file,
    save_path_file,
)
from .worked_example import check_example, report

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CHECK_FAILED = 3


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hosim",
        description="Deterministic cellular-handover simulator",
    )
    parser.add_argument("--version", action="version", version=f"hosim {__version__}")
    sub = parser.add_subparsers(required=True)

    p_run = sub.add_parser("run", help="run an experiment matrix from a config file")
    p_run.add_argument("config")
    p_run.add_argument("--out", help="output directory (overrides the config)")
    p_run.set_defaults(func=_cmd_run)

    p_ex = sub.add_parser("example", help="print and self-check the worked example")
    p_ex.set_defaults(func=_cmd_example)

    p_paths = sub.add_parser("paths", help="export or import trajectory path files")
    paths_sub = p_paths.add_subparsers(required=True)
    p_exp = paths_sub.add_parser("export", help="generate a trajectory path file")
    p_exp.add_argument("file")
    p_exp.add_argument("--model", choices=[m for m in MODELS if m != "fixed_path"],
                       default="manhattan")
    p_exp.add_argument("--steps", type=int, default=10000)
    p_exp.add_argument("--seed", type=int, default=1)
    p_exp.add_argument("--width", type=float, default=19000.0)
    p_exp.add_argument("--height", type=float, default=19000.0)
    p_exp.add_argument("--waypoint-resolution", type=float, default=1000.0)
    p_exp.set_defaults(func=_cmd_paths_export)
    p_imp = paths_sub.add_parser("import", help="validate a trajectory path file")
    p_imp.add_argument("file")
    p_imp.set_defaults(func=_cmd_paths_import)

    p_explain = sub.add_parser(
        "explain", help="print the score tables of one handover decision"
    )
    p_explain.add_argument("config")
    p_explain.add_argument("--step", type=int, default=0,
                           help="first decision at or after this step")
    p_explain.add_argument("--replication", type=int, default=0)
    p_explain.add_argument("--cell", type=int, default=0,
                           help="matrix cell index (default first)")
    p_explain.set_defaults(func=_cmd_explain)

    return parser


def _cmd_run(args) -> int:
    from .results import run_matrix

    matrix = parse_config(args.config)
    out = args.out or os.environ.get("HOSIM_OUTPUT_DIR") or matrix.output_dir
    written = run_matrix(matrix, out)
    print(f"summary : {written['summary']}")
    print(f"manifest: {written['manifest']}")
    for rec in written["records"]:
        print(f"records : {rec}")
    return EXIT_OK


def _cmd_example(args) -> int:
    print(report(), end="")
    deviations = check_example()
    if deviations:
        for d in deviations:
            print(f"CHECK FAILED {d}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print("self-check: all reference values reproduced")
    return EXIT_OK


def _cmd_paths_export(args) -> int:
    spec = MobilitySpec(
        kind=args.model,
        field_size=(args.width, args.height),
        steps=args.steps,
        waypoint_resolution=args.waypoint_resolution,
        seed=args.seed,
    )
    save_path_file(generate(spec), args.file)
    print(f"wrote {args.steps + 1} points to {args.file}")
    return EXIT_OK


def _cmd_paths_import(args) -> int:
    t = load_path_file(args.file)
    n = len(t)
    if n == 0:
        print(f"{args.file}: empty path")
        return EXIT_VALIDATION
    step = t.step_resolution
    bad_steps = 0
    for i in range(1, n):
        dx = abs(float(t.xs[i] - t.xs[i - 1]))
        dy = abs(float(t.ys[i] - t.ys[i - 1]))
        if dx not in (0.0, step) or dy not in (0.0, step):
            bad_steps += 1
    print(f"points : {n}")
    print(f"x range: [{t.xs.min():g}, {t.xs.max():g}]")
    print(f"y range: [{t.ys.min():g}, {t.ys.max():g}]")
    print(f"steps violating the per-axis 0/{step:g} m law: {bad_steps}")
    return EXIT_OK if bad_steps == 0 else EXIT_VALIDATION


def _cmd_explain(args) -> int:
    from .engine import run_replication
    from .worked_example import format_breakdown

    matrix = parse_config(args.config)
    if not (0 <= args.cell < len(matrix.cells)):
        print(f"error: cell index out of range (matrix has {len(matrix.cells)})",
              file=sys.stderr)
        return EXIT_VALIDATION
    config = matrix.cells[args.cell]
    records, _, _ = run_replication(config, args.replication, keep_breakdowns=True)
    for r in records:
        if r.step >= args.step and r.breakdown is not None:
            print(f"cell {config.model_label}/{config.policy} replication "
                  f"{args.replication}, handover at step {r.step}")
            print(f"serving {r.serving} -> selected {r.selected} "
                  f"(ground truth {r.ground_truth}, "
                  f"{'correct' if r.correct else 'incorrect'})")
            print(format_breakdown(r.breakdown, r.selected), end="")
            return EXIT_OK
    print("error: no scored decision at or after the requested step",
          file=sys.stderr)
    return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
