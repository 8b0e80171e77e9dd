/** One row of the simulator's summary CSV.  Numeric fields keep their
 * raw string form as well: plotted values are passed through verbatim,
 * never recomputed or reformatted. */
export interface SummaryRow {
  model: string;
  policy: string;
  clLimit: number;
  jitterFraction: number;
  kUsed: number;
  replications: number;
  handoversTotal: number;
  correctTotal: number;
  percentCorrectMean: number;
  /** raw CSV text of percent_correct_mean */
  percentCorrectMeanRaw: string;
  ci95Low: number;
  ci95High: number;
  fallbackRate: number;
}

export type FigureKind = "history_bars" | "policy_bars" | "cutoff_bars";

export interface FigureSpec {
  kind: FigureKind;
  csvPath: string;
  outPath: string;
  /** cutoff-load filter (history_bars, policy_bars) */
  clLimit?: number;
  /** placement-jitter filter (all kinds) */
  jitterFraction?: number;
  /** history-length filter (cutoff_bars; default 3) */
  kUsed?: number;
}

/** One bar: the label within its group and the raw CSV value. */
export interface Bar {
  label: string;
  raw: string;
  value: number;
}

export interface BarGroup {
  label: string;
  bars: Bar[];
}

export class MissingColumnsError extends Error {
  constructor(missing: string[]) {
    super(`summary CSV is missing required columns: ${missing.join(", ")}`);
    this.name = "MissingColumnsError";
  }
}

export class EmptySelectionError extends Error {
  constructor(detail: string) {
    super(`no summary rows match the figure filters (${detail})`);
    this.name = "EmptySelectionError";
  }
}
