/** Command-line entry point.
 *
 *   node dist/src/main.js <summary.csv> <outdir>                 render all
 *   node dist/src/main.js <summary.csv> <outdir> --kind K        one figure
 *       [--cutoff 0.7] [--jitter 0] [--k 3]
 *
 * Exit codes: 0 ok, 2 bad arguments / empty selection / bad CSV.
 */

import { join } from "node:path";

import { render, renderAll, trim } from "./render.js";
import {
  EmptySelectionError,
  MissingColumnsError,
  type FigureKind,
} from "./types.js";

const KINDS: FigureKind[] = ["history_bars", "policy_bars", "cutoff_bars"];

function fail(message: string): never {
  process.stderr.write(`error: ${message}\n`);
  process.exit(2);
}

export function main(argv: string[]): number {
  const positional: string[] = [];
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i]!;
    if (arg.startsWith("--")) {
      const value = argv[i + 1];
      if (value === undefined) {
        fail(`flag ${arg} needs a value`);
      }
      flags.set(arg.slice(2), value);
      i++;
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 2) {
    fail("usage: main.js <summary.csv> <outdir> [--kind ...] [--cutoff ...]" +
         " [--jitter ...] [--k ...]");
  }
  const [csvPath, outDir] = positional as [string, string];

  try {
    if (!flags.has("kind")) {
      const figures = renderAll(csvPath, outDir);
      if (figures.length === 0) {
        fail("the CSV contains no renderable figure combination");
      }
      for (const f of figures) {
        process.stdout.write(`wrote ${f.svgPath}\n`);
      }
      return 0;
    }
    const kind = flags.get("kind") as FigureKind;
    if (!KINDS.includes(kind)) {
      fail(`unknown kind ${kind}; expected one of ${KINDS.join(", ")}`);
    }
    const clLimit = flags.has("cutoff") ? Number(flags.get("cutoff")) : undefined;
    const jitter = flags.has("jitter") ? Number(flags.get("jitter")) : undefined;
    const kUsed = flags.has("k") ? Number(flags.get("k")) : undefined;
    const name = [
      kind,
      clLimit !== undefined ? `cl${trim(clLimit)}` : "",
      jitter !== undefined ? `j${trim(jitter)}` : "",
    ]
      .filter((s) => s.length > 0)
      .join("_");
    const figure = render({
      kind,
      csvPath,
      outPath: join(outDir, `${name}.svg`),
      clLimit,
      jitterFraction: jitter,
      kUsed,
    });
    process.stdout.write(`wrote ${figure.svgPath}\n`);
    process.stdout.write(`wrote ${figure.sidecarPath}\n`);
    return 0;
  } catch (err) {
    if (err instanceof EmptySelectionError || err instanceof MissingColumnsError) {
      fail(err.message);
    }
    throw err;
  }
}

if (process.argv[1] && import.meta.url === new URL(`file://${process.argv[1]}`).href) {
  process.exit(main(process.argv.slice(2)));
}
