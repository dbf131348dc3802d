export type FigureKind =
  | "sinr-curve"
  | "pa-curve"
  | "crlb-curve"
  | "threshold-tradeoff"
  | "power-curve";

export interface StyleOptions {
  /** Logarithmic x axis (iteration counts span decades). */
  logX?: boolean;
  /** Logarithmic y axis. */
  logY?: boolean;
  title?: string;
  width?: number;
  height?: number;
  /** Threshold overlays for crlb-curve; defaults come from the summary file. */
  thresholds?: { location: number; velocity: number };
}

export interface PlotJob {
  kind: FigureKind;
  /** Per-iteration trace CSVs produced by the experiment harness. */
  tracePaths: string[];
  /** Summary JSONs (run summaries, or one sweep summary for threshold-tradeoff). */
  summaryPaths: string[];
  outputPath: string;
  style?: StyleOptions;
}

/** Columns every harness trace CSV must carry (rho_1..rho_N follow). */
export const TRACE_COLUMNS = [
  "iter",
  "mu",
  "L",
  "sinr",
  "trace_l",
  "trace_v",
  "penalty",
  "step",
  "deflection",
] as const;

export interface TraceData {
  /** Source file, used for series labels. */
  name: string;
  columns: string[];
  /** Column name -> numeric values, one entry per iteration row. */
  series: Map<string, number[]>;
  /** Number of rho_* columns. */
  nTx: number;
}

export interface RunSummaryData {
  scenario: string;
  solver: string;
  converged: boolean;
  final_sinr: number;
  threshold_l_sq: number;
  threshold_v_sq: number;
  [key: string]: unknown;
}

export interface SweepSummaryData {
  sweep_parameter: string;
  sweep_values: number[];
  runs: RunSummaryData[];
}
