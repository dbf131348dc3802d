import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  MissingColumnError,
  readRunSummary,
  readSweepSummary,
  readTrace,
  totalPower,
} from "../src/trace.js";

const DATA = fileURLToPath(new URL("../testdata", import.meta.url));
const MCG_TRACE = join(DATA, "paper-isac-pp-mcg-ils.csv");
const SENSING_TRACE = join(DATA, "paper-isac-p-ncg-ils.csv");

describe("readTrace", () => {
  it("parses a harness trace with all columns and rho vectors", () => {
    const trace = readTrace(MCG_TRACE);
    expect(trace.nTx).toBe(10);
    expect(trace.columns.slice(0, 4)).toEqual(["iter", "mu", "L", "sinr"]);
    const iters = trace.series.get("iter")!;
    expect(iters[0]).toBe(0);
    expect(iters.length).toBeGreaterThan(100);
    // the run converged: the last SINR beats the uniform start
    const sinr = trace.series.get("sinr")!;
    expect(sinr[sinr.length - 1]).toBeGreaterThan(sinr[0]);
  });

  it("names the missing column in the error", () => {
    const dir = mkdtempSync(join(tmpdir(), "trace-"));
    const path = join(dir, "broken.csv");
    const lines = readFileSync(MCG_TRACE, "utf8").split("\n");
    const drop = lines[0].split(",").indexOf("sinr");
    const without = lines
      .filter((l) => l.length > 0)
      .map((l) => l.split(",").filter((_, i) => i !== drop).join(","));
    writeFileSync(path, without.join("\n") + "\n");
    expect(() => readTrace(path)).toThrow(MissingColumnError);
    expect(() => readTrace(path)).toThrow(/"sinr"/);
  });

  it("rejects rho-less files", () => {
    const dir = mkdtempSync(join(tmpdir(), "trace-"));
    const path = join(dir, "norho.csv");
    writeFileSync(path, "iter,mu,L,sinr,trace_l,trace_v,penalty,step,deflection\n0,1,1,1,1,1,0,0,0\n");
    expect(() => readTrace(path)).toThrow(/rho_1/);
  });
});

describe("totalPower", () => {
  it("stays on the unit budget for the simplex-constrained solver", () => {
    const totals = totalPower(readTrace(MCG_TRACE));
    for (const t of totals) {
      expect(Math.abs(t - 1)).toBeLessThan(1e-9);
    }
  });

  it("drops below the budget in the pure-sensing run", () => {
    const totals = totalPower(readTrace(SENSING_TRACE));
    expect(totals[0]).toBeCloseTo(1, 9);
    expect(totals[totals.length - 1]).toBeLessThan(1);
  });
});

describe("summary readers", () => {
  it("exposes thresholds from a run summary", () => {
    const summary = readRunSummary(join(DATA, "paper-isac-pp-mcg-ils.json"));
    expect(summary.threshold_l_sq).toBe(250);
    expect(summary.threshold_v_sq).toBe(0.13);
    expect(summary.converged).toBe(true);
  });

  it("reads a sweep summary with aligned runs", () => {
    const sweep = readSweepSummary(join(DATA, "sweep-summary.json"));
    expect(sweep.sweep_values).toEqual([50, 100, 250, 500, 1000]);
    expect(sweep.runs).toHaveLength(5);
  });

  it("rejects a run summary fed as a sweep", () => {
    expect(() => readSweepSummary(join(DATA, "paper-isac-pp-mcg-ils.json"))).toThrow(
      /sweep_values/,
    );
  });
});
