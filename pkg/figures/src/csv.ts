import { readFileSync } from "node:fs";

import { MissingColumnsError, type SummaryRow } from "./types.js";

export const REQUIRED_COLUMNS = [
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
] as const;

/** Parse the simulator's summary CSV (simple comma format, no quoting). */
export function parseSummary(text: string): SummaryRow[] {
  const lines = text.split("\n").filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new MissingColumnsError([...REQUIRED_COLUMNS]);
  }
  const header = (lines[0] ?? "").split(",");
  const index = new Map<string, number>();
  header.forEach((name, i) => index.set(name.trim(), i));
  const missing = REQUIRED_COLUMNS.filter((c) => !index.has(c));
  if (missing.length > 0) {
    throw new MissingColumnsError(missing);
  }
  const rows: SummaryRow[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    const cell = (name: string): string => cells[index.get(name)!] ?? "";
    rows.push({
      model: cell("model"),
      policy: cell("policy"),
      clLimit: Number(cell("cl_limit")),
      jitterFraction: Number(cell("jitter_fraction")),
      kUsed: Number(cell("k_used")),
      replications: Number(cell("replications")),
      handoversTotal: Number(cell("handovers_total")),
      correctTotal: Number(cell("correct_total")),
      percentCorrectMean: Number(cell("percent_correct_mean")),
      percentCorrectMeanRaw: cell("percent_correct_mean"),
      ci95Low: Number(cell("ci95_low")),
      ci95High: Number(cell("ci95_high")),
      fallbackRate: Number(cell("fallback_rate")),
    });
  }
  return rows;
}

export function readSummary(path: string): SummaryRow[] {
  return parseSummary(readFileSync(path, "utf8"));
}
