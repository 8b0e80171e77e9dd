import { mkdirSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";

import { groupedBarSvg } from "./chart.js";
import { readSummary } from "./csv.js";
import {
  EmptySelectionError,
  type Bar,
  type BarGroup,
  type FigureKind,
  type FigureSpec,
  type SummaryRow,
} from "./types.js";

const DEFAULT_K_USED = 3;

function isFixedPath(row: SummaryRow): boolean {
  return row.model.startsWith("fixed_path");
}

function near(a: number, b: number): boolean {
  return Math.abs(a - b) < 1e-9;
}

function toBar(label: string, row: SummaryRow): Bar {
  return {
    label,
    raw: row.percentCorrectMeanRaw,
    value: row.percentCorrectMean,
  };
}

function sortedUnique(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

/** Group the filtered rows for one figure.  Bars carry the raw CSV text
 * of percent_correct_mean; nothing is recomputed. */
export function buildGroups(rows: SummaryRow[], spec: FigureSpec): BarGroup[] {
  const cl = spec.clLimit;
  const jitter = spec.jitterFraction;
  if (spec.kind === "history_bars") {
    const selected = rows.filter(
      (r) =>
        !isFixedPath(r) &&
        r.policy === "proposed" &&
        (cl === undefined || near(r.clLimit, cl)) &&
        (jitter === undefined || near(r.jitterFraction, jitter)),
    );
    return groupBy(
      selected,
      (r) => r.model,
      (r) => `history ${r.kUsed}`,
      (r) => r.kUsed,
    );
  }
  if (spec.kind === "policy_bars") {
    const selected = rows.filter(
      (r) =>
        isFixedPath(r) &&
        (cl === undefined || near(r.clLimit, cl)) &&
        (jitter === undefined || near(r.jitterFraction, jitter)),
    );
    return groupBy(
      selected,
      (r) => r.model.split(":")[1] ?? r.model,
      (r) => r.policy,
      (r) => (r.policy === "proposed" ? 0 : 1),
    );
  }
  // cutoff_bars: cutoff sweep at one history length
  const k = spec.kUsed ?? DEFAULT_K_USED;
  const selected = rows.filter(
    (r) =>
      !isFixedPath(r) &&
      r.policy === "proposed" &&
      r.kUsed === k &&
      (jitter === undefined || near(r.jitterFraction, jitter)),
  );
  return groupBy(
    selected,
    (r) => r.model,
    (r) => `cutoff ${trim(r.clLimit)}`,
    (r) => r.clLimit,
  );
}

function groupBy(
  rows: SummaryRow[],
  groupKey: (r: SummaryRow) => string,
  barKey: (r: SummaryRow) => string,
  barOrder: (r: SummaryRow) => number,
): BarGroup[] {
  const groups = new Map<string, { row: SummaryRow; order: number }[]>();
  for (const row of rows) {
    const key = groupKey(row);
    if (!groups.has(key)) {
      groups.set(key, []);
    }
    groups.get(key)!.push({ row, order: barOrder(row) });
  }
  const labels = [...groups.keys()].sort();
  return labels.map((label) => ({
    label,
    bars: groups
      .get(label)!
      .sort((a, b) => a.order - b.order)
      .map(({ row }) => toBar(barKey(row), row)),
  }));
}

export function trim(v: number): string {
  return String(v);
}

function title(spec: FigureSpec): string {
  const parts: string[] = [];
  if (spec.kind === "history_bars") {
    parts.push("correct handovers by history length");
  } else if (spec.kind === "policy_bars") {
    parts.push("proposed scheme vs strongest-signal baseline");
  } else {
    parts.push("correct handovers by cutoff load");
  }
  if (spec.clLimit !== undefined) {
    parts.push(`cutoff ${trim(spec.clLimit)}`);
  }
  if (spec.jitterFraction !== undefined) {
    parts.push(
      spec.jitterFraction === 0
        ? "fixed placement"
        : `${trim(spec.jitterFraction * 100)}% placement jitter`,
    );
  }
  return parts.join(", ");
}

/** Sidecar value table: one tab-separated line per bar with the raw CSV
 * value, enabling value-level testing without parsing the image. */
export function sidecarText(groups: BarGroup[]): string {
  const lines = ["group\tbar\tvalue"];
  for (const g of groups) {
    for (const b of g.bars) {
      lines.push(`${g.label}\t${b.label}\t${b.raw}`);
    }
  }
  return lines.join("\n") + "\n";
}

export interface RenderedFigure {
  svgPath: string;
  sidecarPath: string;
  groups: BarGroup[];
}

/** Render one figure and its sidecar table. */
export function render(spec: FigureSpec): RenderedFigure {
  const rows = readSummary(spec.csvPath);
  const groups = buildGroups(rows, spec);
  if (groups.length === 0) {
    throw new EmptySelectionError(
      `kind=${spec.kind} cutoff=${spec.clLimit} jitter=${spec.jitterFraction}`,
    );
  }
  const svg = groupedBarSvg(title(spec), groups);
  mkdirSync(dirname(spec.outPath), { recursive: true });
  writeFileSync(spec.outPath, svg);
  const sidecarPath = spec.outPath.replace(/\.svg$/, "") + ".values.tsv";
  writeFileSync(sidecarPath, sidecarText(groups));
  return { svgPath: spec.outPath, sidecarPath, groups };
}

/** Render every figure the CSV supports: one per (kind, cutoff, jitter)
 * combination present, with deterministic file names. */
export function renderAll(csvPath: string, outDir: string): RenderedFigure[] {
  const rows = readSummary(csvPath);
  const out: RenderedFigure[] = [];
  const sweeps = rows.filter((r) => !isFixedPath(r) && r.policy === "proposed");
  const fixed = rows.filter(isFixedPath);

  for (const cl of sortedUnique(sweeps.map((r) => r.clLimit))) {
    const atCl = sweeps.filter((r) => near(r.clLimit, cl));
    for (const jit of sortedUnique(atCl.map((r) => r.jitterFraction))) {
      const cell = atCl.filter((r) => near(r.jitterFraction, jit));
      if (sortedUnique(cell.map((r) => r.kUsed)).length < 2) {
        continue;
      }
      out.push(
        render({
          kind: "history_bars",
          csvPath,
          outPath: join(outDir, `history_bars_cl${trim(cl)}_j${trim(jit)}.svg`),
          clLimit: cl,
          jitterFraction: jit,
        }),
      );
    }
  }

  for (const jit of sortedUnique(sweeps.map((r) => r.jitterFraction))) {
    const atJit = sweeps.filter(
      (r) => near(r.jitterFraction, jit) && r.kUsed === DEFAULT_K_USED,
    );
    if (sortedUnique(atJit.map((r) => r.clLimit)).length < 2) {
      continue;
    }
    out.push(
      render({
        kind: "cutoff_bars",
        csvPath,
        outPath: join(outDir, `cutoff_bars_j${trim(jit)}.svg`),
        jitterFraction: jit,
      }),
    );
  }

  for (const cl of sortedUnique(fixed.map((r) => r.clLimit))) {
    const atCl = fixed.filter((r) => near(r.clLimit, cl));
    for (const jit of sortedUnique(atCl.map((r) => r.jitterFraction))) {
      out.push(
        render({
          kind: "policy_bars",
          csvPath,
          outPath: join(outDir, `policy_bars_cl${trim(cl)}_j${trim(jit)}.svg`),
          clLimit: cl,
          jitterFraction: jit,
        }),
      );
    }
  }

  return out;
}
