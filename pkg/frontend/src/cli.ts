#!/usr/bin/env node
/**
 * Batch figure rendering from harness output files.
 *
 *   cfisac-plots <kind> --trace run.csv [--trace more.csv]
 *                [--summary run.json] --out figure.svg
 *                [--log-x] [--log-y] [--title text]
 *
 * Kinds: sinr-curve | pa-curve | crlb-curve | threshold-tradeoff | power-curve
 */

import { render } from "./render.js";
import type { FigureKind, PlotJob } from "./types.js";

const KINDS: FigureKind[] = [
  "sinr-curve",
  "pa-curve",
  "crlb-curve",
  "threshold-tradeoff",
  "power-curve",
];

export function parseArgs(argv: string[]): PlotJob {
  const [kind, ...rest] = argv;
  if (!KINDS.includes(kind as FigureKind)) {
    throw new Error(`first argument must be one of: ${KINDS.join(", ")}`);
  }
  const job: PlotJob = {
    kind: kind as FigureKind,
    tracePaths: [],
    summaryPaths: [],
    outputPath: "",
    style: {},
  };
  for (let i = 0; i < rest.length; i++) {
    const flag = rest[i];
    const next = () => {
      if (i + 1 >= rest.length) throw new Error(`${flag} needs a value`);
      return rest[++i];
    };
    switch (flag) {
      case "--trace":
        job.tracePaths.push(next());
        break;
      case "--summary":
        job.summaryPaths.push(next());
        break;
      case "--out":
        job.outputPath = next();
        break;
      case "--log-x":
        job.style!.logX = true;
        break;
      case "--log-y":
        job.style!.logY = true;
        break;
      case "--title":
        job.style!.title = next();
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!job.outputPath) {
    throw new Error("--out is required");
  }
  return job;
}

function main(): number {
  try {
    const job = parseArgs(process.argv.slice(2));
    render(job);
    console.log(`wrote ${job.outputPath}`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 2;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main());
}
