"""Result persistence: summary CSV, per-handover record CSVs and the
reproduction manifest.

Summary CSV columns (one row per matrix cell):

    model,policy,cl_limit,jitter_fraction,k_used,replications,
    handovers_total,correct_total,percent_correct_mean,ci95_low,
    ci95_high,fallback_rate

Record CSV columns (one row per handover):

    replication,step,serving,selected,ground_truth,correct,fallback,
    s_om,s_cl,s_rss,s_was

Booleans are written as 0/1; missing scores as empty fields; floats
with six decimals.  All output is deterministic for a given config and
master seed.
"""

from __future__ import annotations

import json
from pathlib import Path

from .config import ExperimentMatrix, emit_effective
from .engine import CellConfig, HandoverRecord, RunSummary, run_replication

SUMMARY_COLUMNS = (
    "model",
    "policy",
    "cl_limit",
    "jitter_fraction",
    "k_used",
    "replications",
    "handovers_total",
    "correct_total",
    "percent_correct_mean",
    "ci95_low",
    "ci95_high",
    "fallback_rate",
)

RECORD_COLUMNS = (
    "replication",
    "step",
    "serving",
    "selected",
    "ground_truth",
    "correct",
    "fallback",
    "s_om",
    "s_cl",
    "s_rss",
    "s_was",
)


def _f(v: float) -> str:
    return f"{v:.6f}"


def _opt(v: float | None) -> str:
    return "" if v is None else _f(v)


def summary_row(config: CellConfig, summary: RunSummary) -> str:
    return ",".join(
        (
            config.model_label,
            config.policy,
            _f(config.cl_limit),
            _f(config.jitter_fraction),
            str(config.k_used),
            str(config.replications),
            str(summary.handovers),
            str(summary.correct),
            _f(summary.mean_percent_correct),
            _f(summary.ci95[0]),
            _f(summary.ci95[1]),
            _f(summary.fallback_rate),
        )
    )


def write_summary(path: Path, rows: list[str]) -> None:
    path.write_text(",".join(SUMMARY_COLUMNS) + "\n" + "".join(r + "\n" for r in rows))


def record_rows(rep: int, records: list[HandoverRecord]) -> list[str]:
    out = []
    for r in records:
        out.append(
            ",".join(
                (
                    str(rep),
                    str(r.step),
                    str(r.serving),
                    str(r.selected),
                    str(r.ground_truth),
                    "1" if r.correct else "0",
                    "1" if r.fallback_used else "0",
                    _opt(r.s_om),
                    _opt(r.s_cl),
                    _opt(r.s_rss),
                    _opt(r.s_was),
                )
            )
        )
    return out


def cell_key(config: CellConfig) -> str:
    """Deterministic file-name key for one matrix cell."""
    label = config.model_label.replace(":", "_")
    return (
        f"{label}_{config.policy}_cl{config.cl_limit:g}"
        f"_j{config.jitter_fraction:g}_k{config.k_used}"
    )


def run_matrix(matrix: ExperimentMatrix, out_dir: str | Path | None = None) -> dict:
    """Run every cell, write summary.csv, manifest.json and (optionally)
    per-cell record CSVs.  Returns {"summary": path, "manifest": path,
    "records": [paths]}."""
    from .engine import run_experiment

    out = Path(out_dir if out_dir is not None else matrix.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    record_files = []
    summaries = []
    for config in matrix.cells:
        if matrix.write_records:
            summary = RunSummary()
            all_rows = []
            for rep in range(config.replications):
                records, gaps, reassoc = run_replication(config, rep)
                summary.coverage_gaps += gaps
                summary.reassociations += reassoc
                summary.handovers += len(records)
                summary.correct += sum(r.correct for r in records)
                summary.fallbacks += sum(r.fallback_used for r in records)
                summary.orientation_skips += sum(r.orientation_skipped for r in records)
                if records:
                    summary.per_replication.append(
                        100.0 * sum(r.correct for r in records) / len(records)
                    )
                all_rows.extend(record_rows(rep, records))
            from .engine import _aggregate

            _aggregate(summary)
            rec_path = out / f"records_{cell_key(config)}.csv"
            rec_path.write_text(
                ",".join(RECORD_COLUMNS) + "\n" + "".join(r + "\n" for r in all_rows)
            )
            record_files.append(rec_path)
        else:
            summary = run_experiment(config)
        summaries.append(summary)
        rows.append(summary_row(config, summary))

    summary_path = out / "summary.csv"
    write_summary(summary_path, rows)
    json_path = out / "summary.json"
    json_path.write_text(summaries_json(matrix.cells, summaries))
    manifest_path = out / "manifest.json"
    manifest_path.write_text(build_manifest(matrix))
    return {
        "summary": summary_path,
        "summary_json": json_path,
        "manifest": manifest_path,
        "records": record_files,
    }


def summaries_json(cells: list[CellConfig], summaries: list[RunSummary]) -> str:
    """Per-experiment JSON summaries: everything in the CSV plus the
    per-replication vectors and the episode counters."""
    docs = []
    for config, s in zip(cells, summaries):
        docs.append(
            {
                "model": config.model_label,
                "policy": config.policy,
                "cl_limit": config.cl_limit,
                "jitter_fraction": config.jitter_fraction,
                "k_used": config.k_used,
                "replications": config.replications,
                "handovers": s.handovers,
                "correct": s.correct,
                "percent_correct_mean": s.mean_percent_correct,
                "ci95": list(s.ci95),
                "fallbacks": s.fallbacks,
                "orientation_skips": s.orientation_skips,
                "reassociations": s.reassociations,
                "coverage_gaps": s.coverage_gaps,
                "per_replication_percent": s.per_replication,
            }
        )
    return json.dumps(docs, indent=2, sort_keys=True) + "\n"


def build_manifest(matrix: ExperimentMatrix) -> str:
    """A self-contained description sufficient to reproduce every output
    byte: the effective config, per-cell identity and seeds, and the
    waypoints of any fixed routes (so the manifest does not depend on
    the original path files)."""
    cells = [
        {
            "index": c.cell_index,
            "model": c.model_label,
            "policy": c.policy,
            "cl_limit": c.cl_limit,
            "jitter_fraction": c.jitter_fraction,
            "k_used": c.k_used,
            "master_seed": c.master_seed,
        }
        for c in matrix.cells
    ]
    routes = {}
    for c in matrix.cells:
        if c.path_label and c.path_label not in routes:
            routes[c.path_label] = [[p[0], p[1]] for p in c.waypoints]
    doc = {
        "format": "hosim-manifest-v1",
        "effective_config": emit_effective(matrix),
        "cells": cells,
        "routes": routes,
        "summary_columns": list(SUMMARY_COLUMNS),
        "record_columns": list(RECORD_COLUMNS),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
