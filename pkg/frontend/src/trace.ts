import { readFileSync } from "node:fs";
import { basename } from "node:path";

import {
  TRACE_COLUMNS,
  type RunSummaryData,
  type SweepSummaryData,
  type TraceData,
} from "./types.js";

export class MissingColumnError extends Error {
  constructor(file: string, column: string) {
    super(`${file}: required column "${column}" is missing`);
    this.name = "MissingColumnError";
  }
}

/** Parse one harness trace CSV and validate its layout. */
export function readTrace(path: string): TraceData {
  const text = readFileSync(path, "utf8").trimEnd();
  const lines = text.split("\n");
  if (lines.length < 2) {
    throw new Error(`${path}: no data rows`);
  }
  const columns = lines[0].split(",");
  for (const required of TRACE_COLUMNS) {
    if (!columns.includes(required)) {
      throw new MissingColumnError(path, required);
    }
  }
  const rhoColumns = columns.filter((c) => /^rho_\d+$/.test(c));
  if (rhoColumns.length === 0) {
    throw new MissingColumnError(path, "rho_1");
  }

  const series = new Map<string, number[]>(columns.map((c) => [c, []]));
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new Error(`${path}: row ${i} has ${cells.length} cells, expected ${columns.length}`);
    }
    for (let j = 0; j < columns.length; j++) {
      const value = Number(cells[j]);
      if (Number.isNaN(value) && cells[j] !== "nan") {
        throw new Error(`${path}: row ${i}, column "${columns[j]}": not a number (${cells[j]})`);
      }
      series.get(columns[j])!.push(value);
    }
  }
  return {
    name: basename(path).replace(/\.csv$/, ""),
    columns,
    series,
    nTx: rhoColumns.length,
  };
}

/** Total transmitted power per iteration (the rho columns summed). */
export function totalPower(trace: TraceData): number[] {
  const n = trace.series.get("iter")!.length;
  const totals = new Array<number>(n).fill(0);
  for (let tx = 1; tx <= trace.nTx; tx++) {
    const column = trace.series.get(`rho_${tx}`)!;
    for (let i = 0; i < n; i++) {
      totals[i] += column[i];
    }
  }
  return totals;
}

export function readRunSummary(path: string): RunSummaryData {
  const doc = JSON.parse(readFileSync(path, "utf8"));
  for (const field of ["solver", "threshold_l_sq", "threshold_v_sq"]) {
    if (!(field in doc)) {
      throw new Error(`${path}: summary is missing "${field}"`);
    }
  }
  return doc as RunSummaryData;
}

export function readSweepSummary(path: string): SweepSummaryData {
  const doc = JSON.parse(readFileSync(path, "utf8"));
  if (!Array.isArray(doc.sweep_values) || !Array.isArray(doc.runs)) {
    throw new Error(`${path}: not a sweep summary (needs sweep_values and runs)`);
  }
  return doc as SweepSummaryData;
}
