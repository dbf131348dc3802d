import { writeFileSync } from "node:fs";

import { LineChart } from "echarts/charts";
import {
  GridComponent,
  LegendComponent,
  MarkLineComponent,
  TitleComponent,
} from "echarts/components";
import * as echarts from "echarts/core";
import { SVGRenderer } from "echarts/renderers";

import { readRunSummary, readSweepSummary, readTrace, totalPower } from "./trace.js";
import type { PlotJob, StyleOptions, TraceData } from "./types.js";

echarts.use([
  LineChart,
  GridComponent,
  LegendComponent,
  MarkLineComponent,
  TitleComponent,
  SVGRenderer,
]);

const DEFAULT_WIDTH = 800;
const DEFAULT_HEIGHT = 500;

const PALETTE = [
  "#4165a8",
  "#c2403c",
  "#3d8a51",
  "#8956a3",
  "#c07f2e",
  "#4ba6a8",
  "#9d5242",
  "#6b742f",
  "#b05c8a",
  "#526178",
];

type EChartsOption = Record<string, unknown>;

function axis(type: "value" | "log", name: string): Record<string, unknown> {
  return { type, name, nameLocation: "middle", nameGap: 30 };
}

function xAxisFor(style: StyleOptions): Record<string, unknown> {
  return axis(style.logX ? "log" : "value", "iteration");
}

function line(name: string, points: [number, number][], extra: Record<string, unknown> = {}) {
  return {
    type: "line",
    name,
    data: points,
    showSymbol: false,
    ...extra,
  };
}

function zip(x: number[], y: number[]): [number, number][] {
  return x.map((xi, i) => [xi, y[i]]);
}

function requireInputs(job: PlotJob, traces: number, summaries = 0): void {
  if (job.tracePaths.length < traces) {
    throw new Error(`${job.kind} needs at least ${traces} trace file(s)`);
  }
  if (job.summaryPaths.length < summaries) {
    throw new Error(`${job.kind} needs at least ${summaries} summary file(s)`);
  }
}

function sinrCurve(job: PlotJob, style: StyleOptions): EChartsOption {
  requireInputs(job, 1);
  const traces = job.tracePaths.map(readTrace);
  return {
    title: { text: style.title ?? "communication SINR vs iteration" },
    legend: { top: 28 },
    xAxis: xAxisFor(style),
    yAxis: axis(style.logY ? "log" : "value", "SINR"),
    series: traces.map((t) =>
      line(t.name, zip(t.series.get("iter")!, t.series.get("sinr")!)),
    ),
  };
}

function paCurve(job: PlotJob, style: StyleOptions): EChartsOption {
  requireInputs(job, 1);
  const trace = readTrace(job.tracePaths[0]);
  const iters = trace.series.get("iter")!;
  const series = [];
  for (let tx = 1; tx <= trace.nTx; tx++) {
    series.push(line(`tx ${tx}`, zip(iters, trace.series.get(`rho_${tx}`)!)));
  }
  return {
    title: { text: style.title ?? `power allocation vs iteration (${trace.name})` },
    legend: { top: 28 },
    xAxis: xAxisFor(style),
    yAxis: axis("value", "allocation fraction"),
    series,
  };
}

function thresholdLine(value: number, label: string) {
  return {
    silent: true,
    symbol: "none",
    lineStyle: { type: "dashed", width: 1.5 },
    label: { formatter: label, position: "insideEndTop" },
    data: [{ yAxis: value }],
  };
}

function crlbCurve(job: PlotJob, style: StyleOptions): EChartsOption {
  requireInputs(job, 1);
  const trace = readTrace(job.tracePaths[0]);
  const thresholds =
    style.thresholds ??
    (() => {
      if (job.summaryPaths.length === 0) {
        throw new Error(
          "crlb-curve needs threshold values: supply a run summary or style.thresholds",
        );
      }
      const summary = readRunSummary(job.summaryPaths[0]);
      return { location: summary.threshold_l_sq, velocity: summary.threshold_v_sq };
    })();
  const iters = trace.series.get("iter")!;
  const traceL = trace.series.get("trace_l")!;
  const traceV = trace.series.get("trace_v")!;
  // keep the dashed threshold line inside the grid even when the data sits below it
  const ceil = (data: number[], threshold: number) =>
    Math.max(...data.filter(Number.isFinite), threshold) * 1.1;
  return {
    title: { text: style.title ?? `estimation bounds vs iteration (${trace.name})` },
    legend: { top: 28 },
    xAxis: xAxisFor(style),
    yAxis: [
      {
        ...axis(style.logY ? "log" : "value", "location bound (m^2)"),
        max: ceil(traceL, thresholds.location),
      },
      {
        ...axis(style.logY ? "log" : "value", "velocity bound ((m/s)^2)"),
        nameGap: 40,
        max: ceil(traceV, thresholds.velocity),
      },
    ],
    series: [
      line("location", zip(iters, traceL), {
        yAxisIndex: 0,
        markLine: thresholdLine(thresholds.location, `location threshold ${thresholds.location}`),
      }),
      line("velocity", zip(iters, traceV), {
        yAxisIndex: 1,
        markLine: thresholdLine(thresholds.velocity, `velocity threshold ${thresholds.velocity}`),
      }),
    ],
  };
}

function thresholdTradeoff(job: PlotJob, style: StyleOptions): EChartsOption {
  requireInputs(job, 0, 1);
  const sweep = readSweepSummary(job.summaryPaths[0]);
  const points = zip(
    sweep.sweep_values,
    sweep.runs.map((r) => r.final_sinr),
  );
  return {
    title: { text: style.title ?? `steady-state SINR vs ${sweep.sweep_parameter}` },
    xAxis: axis(style.logX ? "log" : "value", sweep.sweep_parameter),
    yAxis: axis("value", "SINR"),
    series: [line("final SINR", points, { showSymbol: true, symbolSize: 7 })],
  };
}

function powerCurve(job: PlotJob, style: StyleOptions): EChartsOption {
  requireInputs(job, 1);
  const trace = readTrace(job.tracePaths[0]);
  return {
    title: { text: style.title ?? `total transmit power vs iteration (${trace.name})` },
    xAxis: xAxisFor(style),
    yAxis: axis("value", "total power fraction"),
    series: [line("total power", zip(trace.series.get("iter")!, totalPower(trace)))],
  };
}

const BUILDERS: Record<PlotJob["kind"], (job: PlotJob, style: StyleOptions) => EChartsOption> = {
  "sinr-curve": sinrCurve,
  "pa-curve": paCurve,
  "crlb-curve": crlbCurve,
  "threshold-tradeoff": thresholdTradeoff,
  "power-curve": powerCurve,
};

// The SVG renderer names CSS classes with a process-global chart counter, so
// two renders of the same figure differ textually. Renumber the class tokens
// in order of first appearance to make output a pure function of the job.
function normalizeSvg(svg: string): string {
  const mapping = new Map<string, string>();
  return svg.replace(/zr\d+-(cls|c)-?\d+/g, (token, group: string) => {
    let canonical = mapping.get(token);
    if (canonical === undefined) {
      canonical = `zr-${group}-${mapping.size}`;
      mapping.set(token, canonical);
    }
    return canonical;
  });
}

/** Build the figure and return it as an SVG string. */
export function renderSvg(job: PlotJob): string {
  const builder = BUILDERS[job.kind];
  if (!builder) {
    throw new Error(`unknown figure kind "${job.kind}"`);
  }
  const style = job.style ?? {};
  const option = builder(job, style);
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width: style.width ?? DEFAULT_WIDTH,
    height: style.height ?? DEFAULT_HEIGHT,
  });
  try {
    chart.setOption({ animation: false, color: PALETTE, ...option });
    return normalizeSvg(chart.renderToSVGString());
  } finally {
    chart.dispose();
  }
}

/** Render the figure to job.outputPath. */
export function render(job: PlotJob): void {
  writeFileSync(job.outputPath, renderSvg(job));
}
