/** A small but realistic summary CSV covering all three figure kinds. */

const HEADER =
  "model,policy,cl_limit,jitter_fraction,k_used,replications," +
  "handovers_total,correct_total,percent_correct_mean,ci95_low,ci95_high," +
  "fallback_rate";

function row(
  model: string,
  policy: string,
  cl: string,
  jitter: string,
  k: number,
  mean: string,
): string {
  return [
    model,
    policy,
    cl,
    jitter,
    String(k),
    "30",
    "3000",
    "2100",
    mean,
    "60.000000",
    "80.000000",
    "0.010000",
  ].join(",");
}

export function sweepCsv(): string {
  const lines = [HEADER];
  const models = ["manhattan", "random_waypoint", "random_direction"];
  models.forEach((model, mi) => {
    for (let k = 1; k <= 5; k++) {
      // distinctive, exactly-representable values
      const mean = `${40 + 10 * mi + k}.125000`;
      lines.push(row(model, "proposed", "0.700000", "0.000000", k, mean));
    }
  });
  // a second history sweep under placement jitter
  models.forEach((model, mi) => {
    for (let k = 1; k <= 5; k++) {
      const mean = `${36 + 10 * mi + k}.250000`;
      lines.push(row(model, "proposed", "0.700000", "0.050000", k, mean));
    }
  });
  // second cutoff at the reference history length for cutoff_bars
  models.forEach((model, mi) => {
    lines.push(
      row(model, "proposed", "0.900000", "0.000000", 3, `${35 + 10 * mi}.500000`),
    );
  });
  // fixed routes for policy_bars
  for (const path of ["path1", "path2"]) {
    lines.push(
      row(`fixed_path:${path}`, "proposed", "0.700000", "0.000000", 3,
          "81.250000"),
    );
    lines.push(
      row(`fixed_path:${path}`, "rss_only", "0.700000", "0.000000", 3,
          "66.750000"),
    );
  }
  return lines.join("\n") + "\n";
}
