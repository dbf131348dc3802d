"""Experiment orchestration on top of the solver library.

Scenario files are JSON documents with unit-suffixed field names; loading
produces the immutable (Scenario, WaveformSpec, Constraints) triple.  An
ExperimentSpec names a scenario, a solver and optional dotted-key
overrides, and run_experiment turns it into a per-iteration CSV trace plus
a JSON summary.  Output is deterministic: identical specs produce
byte-identical CSV files.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .scene import SPEED_OF_LIGHT, Scenario
from .waveform import WaveformSpec
from .crlb import crlb_traces, crlb_traces_and_grad, extract_weights
from .optimizer import SOLVERS, Constraints, SolveTrace, SolverConfig

SCHEMA_VERSION = 1
STEADY_STATE_WINDOW = 100

TRACE_COLUMNS = ("iter", "mu", "L", "sinr", "trace_l", "trace_v",
                 "penalty", "step", "deflection")


class ConfigError(ValueError):
    """Scenario file violates the schema; the message carries the field path."""


@dataclass(frozen=True)
class ScenarioBundle:
    """Everything a solver needs, as loaded from one scenario file."""

    name: str
    scenario: Scenario
    waveform: WaveformSpec
    constraints: Constraints

    @property
    def sinr_scale(self) -> float:
        s = self.scenario
        return s.total_power / (self.waveform.t_eff * s.noise_var_comm)


def _get(mapping, key, path, kind=None):
    if not isinstance(mapping, dict) or key not in mapping:
        raise ConfigError(f"{path}.{key}: missing required field")
    value = mapping[key]
    if kind is not None and not isinstance(value, kind):
        raise ConfigError(f"{path}.{key}: expected {getattr(kind, '__name__', kind)}, "
                          f"got {type(value).__name__}")
    return value


def _number(mapping, key, path, positive=False):
    value = _get(mapping, key, path)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {type(value).__name__}")
    if positive and not value > 0:
        raise ConfigError(f"{path}.{key}: must be positive, got {value}")
    return float(value)


def _matrix(mapping, key, path, shape=None):
    value = _get(mapping, key, path, list)
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}.{key}: not a numeric array ({exc})") from None
    if shape is not None and arr.shape != shape:
        raise ConfigError(f"{path}.{key}: expected shape {shape}, got {arr.shape}")
    return arr


def _bound_vector(raw, key, n, path):
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return np.full(n, float(raw))
    arr = np.asarray(raw, dtype=float)
    if arr.shape != (n,):
        raise ConfigError(f"{path}.{key}: expected a scalar or {n} values, got shape {arr.shape}")
    return arr


def bundled_scenario_path(name: str) -> Path:
    """Path of a scenario shipped with the package (e.g. 'paper-isac.cfg')."""
    if not name.endswith(".cfg"):
        name = name + ".cfg"
    path = resources.files("cfisac").joinpath("data", name)
    return Path(str(path))


def load_scenario(path) -> ScenarioBundle:
    """Parse and validate a scenario file.

    ``path`` may be a filesystem path or the bare name of a bundled
    scenario.  Schema violations raise ConfigError with the field path.
    """
    p = Path(path)
    if not p.exists():
        candidate = bundled_scenario_path(p.name)
        if candidate.exists():
            p = candidate
        else:
            raise ConfigError(f"scenario file not found: {path}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{p}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{p}: top level must be an object")

    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version: expected {SCHEMA_VERSION}, got {version!r}")
    name = doc.get("name", p.stem)

    sc = _get(doc, "scene", "", dict)
    tx = _matrix(sc, "tx_positions_m", "scene")
    if tx.ndim != 2 or tx.shape[1] != 2:
        raise ConfigError(f"scene.tx_positions_m: expected (N, 2) points, got {tx.shape}")
    n = tx.shape[0]
    rx = _matrix(sc, "rx_positions_m", "scene")
    if rx.ndim != 2 or rx.shape[1] != 2:
        raise ConfigError(f"scene.rx_positions_m: expected (K, 2) points, got {rx.shape}")
    k = rx.shape[0]
    carrier = _number(sc, "carrier_hz", "scene", positive=True)

    try:
        scenario = Scenario(
            tx_positions=tx,
            rx_positions=rx,
            target_location=_matrix(sc, "target_location_m", "scene", shape=(2,)),
            target_velocity=_matrix(sc, "target_velocity_mps", "scene", shape=(2,)),
            rcs_sq=_matrix(sc, "rcs_sq", "scene", shape=(n, k)),
            channel_gain=_matrix(sc, "channel_gain", "scene", shape=(n,)),
            wavelength=SPEED_OF_LIGHT / carrier,
            total_power=_number(sc, "total_power_w", "scene", positive=True),
            noise_var_comm=_number(sc, "noise_var_comm_w", "scene", positive=True),
            noise_var_clutter=_number(sc, "noise_var_clutter_w", "scene", positive=True),
            sample_rate=_number(sc, "sample_rate_hz", "scene", positive=True),
        )
    except ValueError as exc:
        raise ConfigError(f"scene: {exc}") from None

    wf = _get(doc, "waveform", "", dict)
    n_chirps = _get(wf, "n_chirps", "waveform")
    if isinstance(n_chirps, bool) or not isinstance(n_chirps, int):
        raise ConfigError("waveform.n_chirps: expected an integer")
    try:
        waveform = WaveformSpec(
            n_chirps=n_chirps,
            pulse_scale=_number(wf, "pulse_scale_s", "waveform", positive=True),
            carrier=carrier,
            sample_rate=scenario.sample_rate,
            t_eff=_number(wf, "t_eff_s", "waveform", positive=True),
        )
    except ValueError as exc:
        raise ConfigError(f"waveform: {exc}") from None

    cn = _get(doc, "constraints", "", dict)
    try:
        constraints = Constraints(
            rho_min=_bound_vector(_get(cn, "rho_min", "constraints"), "rho_min", n, "constraints"),
            rho_max=_bound_vector(_get(cn, "rho_max", "constraints"), "rho_max", n, "constraints"),
            delta_l_sq=_number(cn, "delta_l_sq_m2", "constraints", positive=True),
            delta_v_sq=_number(cn, "delta_v_sq_mps2", "constraints", positive=True),
        )
    except ValueError as exc:
        raise ConfigError(f"constraints: {exc}") from None

    return ScenarioBundle(name=name, scenario=scenario, waveform=waveform,
                          constraints=constraints)


INIT_MODES = ("uniform", "heuristic", "explicit")


@dataclass(frozen=True)
class ExperimentSpec:
    """One solver run (or a sweep of runs) on one scenario file."""

    scenario: str
    solver: str = "pp-mcg-ils"
    init: str = "uniform"
    init_rho: tuple[float, ...] | None = None
    overrides: tuple[tuple[str, float], ...] = ()
    sweep_parameter: str | None = None
    sweep_values: tuple[float, ...] = ()
    output_dir: str | None = None
    label: str | None = None

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}; choose from {sorted(SOLVERS)}")
        if self.init not in INIT_MODES:
            raise ValueError(f"init must be one of {INIT_MODES}")
        if self.init == "explicit":
            if self.init_rho is None:
                raise ValueError("explicit init requires init_rho")
            total = float(np.sum(self.init_rho))
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"explicit init_rho must sum to 1, got {total}")
        for v in self.sweep_values:
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"sweep values must be finite and positive, got {v}")
        if self.sweep_values and self.sweep_parameter is None:
            raise ValueError("sweep_values given without sweep_parameter")


@dataclass(frozen=True)
class RunSummary:
    scenario: str
    solver: str
    converged: bool
    termination: str
    inner_iterations: int
    outer_iterations: int
    final_rho: tuple[float, ...]
    final_sinr: float
    final_trace_l: float
    final_trace_v: float
    final_penalty: float
    final_total_power: float
    threshold_l_sq: float
    threshold_v_sq: float
    steady_state_rho: tuple[float, ...]
    steady_state_sinr: float
    wall_time_s: float
    overrides: tuple[tuple[str, float], ...] = ()


def default_solver_config(solver: str) -> SolverConfig:
    """Per-solver defaults; the pure-sensing solver runs a gentler penalty
    schedule with a tighter stop and its own step profile."""
    if solver == "p-ncg-ils":
        return SolverConfig(mu_1=1.0, sigma_upsilon=0.2, eps_mu=1e-6, upsilon_0=0.1)
    return SolverConfig()


def apply_overrides(bundle: ScenarioBundle, config: SolverConfig, overrides):
    """Dotted-key overrides on constraints, solver config, waveform or scene."""
    for key, value in overrides:
        group, _, field_name = key.partition(".")
        try:
            if group == "constraints":
                if field_name in ("rho_min", "rho_max"):
                    n = bundle.scenario.n_tx
                    value = np.full(n, float(value))
                bundle = replace(bundle, constraints=replace(bundle.constraints,
                                                             **{field_name: value}))
            elif group in ("solver", "config"):
                kwargs = {field_name: type(getattr(config, field_name))(value)}
                config = replace(config, **kwargs)
            elif group == "waveform":
                if field_name == "n_chirps":
                    value = int(value)
                bundle = replace(bundle, waveform=replace(bundle.waveform,
                                                          **{field_name: value}))
            elif group == "scene":
                bundle = replace(bundle, scenario=replace(bundle.scenario,
                                                          **{field_name: value}))
            else:
                raise ConfigError(f"override {key!r}: unknown group {group!r}")
        except (TypeError, AttributeError) as exc:
            raise ConfigError(f"override {key!r}: {exc}") from None
    return bundle, config


def initial_allocation(spec: ExperimentSpec, bundle: ScenarioBundle) -> np.ndarray:
    n = bundle.scenario.n_tx
    if spec.init == "uniform":
        return np.full(n, 1.0 / n)
    if spec.init == "heuristic":
        g = bundle.scenario.channel_gain
        if np.any(g <= 0):
            raise ConfigError("heuristic init needs strictly positive channel gains")
        return g / g.sum()
    rho = np.asarray(spec.init_rho, dtype=float)
    if rho.shape != (n,):
        raise ConfigError(f"init_rho must have length {n}")
    return rho


def _fmt(x) -> str:
    return repr(float(x))


def write_trace_csv(path, trace: SolveTrace, sinr_scale: float):
    n = len(trace.rho)
    header = ",".join(TRACE_COLUMNS + tuple(f"rho_{i + 1}" for i in range(n)))
    lines = [header]
    for r in trace.records:
        cells = [str(r.iteration), _fmt(r.mu), _fmt(r.objective),
                 _fmt(sinr_scale * r.sinr_gain), _fmt(r.trace_l), _fmt(r.trace_v),
                 _fmt(r.penalty), _fmt(r.step), _fmt(r.deflection)]
        cells.extend(_fmt(x) for x in r.rho)
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")


def summarize(trace: SolveTrace, bundle: ScenarioBundle, spec: ExperimentSpec,
              wall_time: float) -> RunSummary:
    scale = bundle.sinr_scale
    rho = trace.rho
    try:
        trace_l, trace_v = crlb_traces(extract_weights(bundle.scenario, spec=bundle.waveform), rho)
    except Exception:
        trace_l = trace_v = float("nan")
    tail = [r.rho for r in trace.records[-STEADY_STATE_WINDOW:]]
    steady = np.mean(tail, axis=0)
    g = bundle.scenario.channel_gain
    return RunSummary(
        scenario=bundle.name,
        solver=trace.solver,
        converged=trace.converged,
        termination=trace.termination,
        inner_iterations=trace.inner_iterations,
        outer_iterations=trace.outer_iterations,
        final_rho=tuple(float(x) for x in rho),
        final_sinr=float(scale * (rho @ g)),
        final_trace_l=float(trace_l),
        final_trace_v=float(trace_v),
        final_penalty=trace.final_penalty,
        final_total_power=float(np.sum(rho)),
        threshold_l_sq=bundle.constraints.delta_l_sq,
        threshold_v_sq=bundle.constraints.delta_v_sq,
        steady_state_rho=tuple(float(x) for x in steady),
        steady_state_sinr=float(scale * (steady @ g)),
        wall_time_s=wall_time,
        overrides=tuple(spec.overrides),
    )


def _run_label(spec: ExperimentSpec, bundle: ScenarioBundle) -> str:
    return spec.label or f"{bundle.name}-{spec.solver}"


def run_experiment(spec: ExperimentSpec) -> RunSummary:
    """Execute one solve, optionally writing trace CSV and JSON summary."""
    bundle = load_scenario(spec.scenario)
    config = default_solver_config(spec.solver)
    bundle, config = apply_overrides(bundle, config, spec.overrides)
    weights = extract_weights(bundle.scenario, spec=bundle.waveform)
    rho_init = initial_allocation(spec, bundle)

    start = time.perf_counter()
    trace = SOLVERS[spec.solver](weights, bundle.constraints, config=config,
                                 rho_init=rho_init)
    wall = time.perf_counter() - start
    summary = summarize(trace, bundle, spec, wall)

    if spec.output_dir is not None:
        out = Path(spec.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        label = _run_label(spec, bundle)
        write_trace_csv(out / f"{label}.csv", trace, bundle.sinr_scale)
        (out / f"{label}.json").write_text(
            json.dumps(asdict(summary), indent=2, sort_keys=True) + "\n")
    return summary


def _sanitize(value: float) -> str:
    return str(value).replace(".", "p")


def run_sweep(spec: ExperimentSpec) -> list[RunSummary]:
    """One solve per sweep value; each run gets its own trace files."""
    if spec.sweep_parameter is None or not spec.sweep_values:
        raise ValueError("run_sweep needs sweep_parameter and sweep_values")
    summaries = []
    for value in spec.sweep_values:
        sub = replace(spec,
                      overrides=spec.overrides + ((spec.sweep_parameter, value),),
                      sweep_parameter=None, sweep_values=(),
                      label=(spec.label or "sweep") + f"-{_sanitize(value)}")
        summaries.append(run_experiment(sub))
    if spec.output_dir is not None:
        out = Path(spec.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        doc = {"sweep_parameter": spec.sweep_parameter,
               "sweep_values": list(spec.sweep_values),
               "runs": [asdict(s) for s in summaries]}
        (out / f"{spec.label or 'sweep'}-summary.json").write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return summaries


def run_validation(scenario_path, seed: int = 0) -> tuple[bool, list[str]]:
    """Invariant suite for one scenario file; returns (all_passed, report).

    Checks the two CRLB evaluation routes against each other, the analytic
    gradients against finite differences, and the solver contract (simplex
    iterates, sufficient decrease, penalty at exit) on a short run.
    """
    from .crlb import blocks_from_weights, crlb_direct, crlb_reformulated

    lines: list[str] = []
    ok = True

    def check(label, passed, detail=""):
        nonlocal ok
        ok = ok and bool(passed)
        tail = f"  ({detail})" if detail else ""
        lines.append(f"[{'PASS' if passed else 'FAIL'}] {label}{tail}")

    bundle = load_scenario(scenario_path)
    lines.append(f"scenario: {bundle.name} "
                 f"(N={bundle.scenario.n_tx}, K={bundle.scenario.n_rx})")
    weights = extract_weights(bundle.scenario, spec=bundle.waveform)
    rng = np.random.default_rng(seed)
    n = bundle.scenario.n_tx

    worst = 0.0
    for _ in range(20):
        rho = rng.dirichlet(np.ones(n))
        direct = crlb_direct(blocks_from_weights(weights, rho))
        reform = crlb_reformulated(weights, rho)
        worst = max(worst,
                    abs(reform.trace_l - direct.trace_l) / abs(direct.trace_l),
                    abs(reform.trace_v - direct.trace_v) / abs(direct.trace_v))
    check("trace evaluation routes agree", worst <= 1e-8, f"max rel err {worst:.2e}")

    worst = 0.0
    h = 1e-6
    for _ in range(3):
        rho = rng.dirichlet(np.ones(n)) * 0.8 + 0.1 / n
        _, _, grad_l, grad_v = crlb_traces_and_grad(weights, rho)
        for j in range(n):
            e = np.zeros(n)
            e[j] = h
            lp = crlb_traces(weights, rho + e)
            lm = crlb_traces(weights, rho - e)
            fd_l = (lp[0] - lm[0]) / (2 * h)
            fd_v = (lp[1] - lm[1]) / (2 * h)
            scale_l = max(abs(fd_l), abs(grad_l[j]), 1e-12)
            scale_v = max(abs(fd_v), abs(grad_v[j]), 1e-12)
            worst = max(worst, abs(fd_l - grad_l[j]) / scale_l,
                        abs(fd_v - grad_v[j]) / scale_v)
    check("analytic trace gradients match finite differences", worst <= 1e-5,
          f"max rel err {worst:.2e}")

    trace = SOLVERS["pp-mcg-ils"](weights, bundle.constraints,
                                  config=default_solver_config("pp-mcg-ils"),
                                  rho_init=np.full(n, 1.0 / n))
    sums = np.array([r.rho.sum() for r in trace.records])
    check("iterates stay on the unit simplex",
          np.max(np.abs(sums - 1.0)) <= 1e-12,
          f"max |sum-1| {np.max(np.abs(sums - 1.0)):.2e}")
    check("iterates stay nonnegative",
          all(np.all(r.rho >= 0) for r in trace.records))
    dsums = np.array([abs(r.direction_sum) for r in trace.records])
    check("search directions sum to zero", np.max(dsums) <= 1e-10,
          f"max |1^T d| {np.max(dsums):.2e}")
    margins = np.array([r.armijo_margin for r in trace.records])
    check("every accepted step satisfies sufficient decrease",
          np.max(margins) <= 1e-9, f"max margin {np.max(margins):.2e}")
    check("solver reached the penalty stop",
          trace.converged and trace.final_penalty < default_solver_config("pp-mcg-ils").eps_mu,
          f"termination {trace.termination}, mu*alpha {trace.final_penalty:.2e}")
    return ok, lines


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[RunSummary, ...]
    disagreements: tuple[tuple[str, str, float], ...]   # (solver_a, solver_b, linf)

    def format(self) -> str:
        head = f"{'solver':<12} {'conv':<5} {'iters':>8} {'sinr':>10} {'trace_l':>10} {'trace_v':>10}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(f"{r.solver:<12} {str(r.converged):<5} {r.inner_iterations:>8d} "
                         f"{r.final_sinr:>10.4f} {r.final_trace_l:>10.3f} {r.final_trace_v:>10.5f}")
        for a, b, d in self.disagreements:
            lines.append(f"WARNING: {a} vs {b} final rho differ (linf {d:.3e} > 1e-2)")
        return "\n".join(lines)


def compare_solvers(specs: list[ExperimentSpec]) -> ComparisonTable:
    """Run several specs on one scenario and tabulate the outcomes."""
    scenarios = {s.scenario for s in specs}
    if len(scenarios) != 1:
        raise ValueError(f"compare_solvers needs a single shared scenario, got {sorted(scenarios)}")
    summaries = [run_experiment(s) for s in specs]
    disagreements = []
    for i in range(len(summaries)):
        for j in range(i + 1, len(summaries)):
            a, b = summaries[i], summaries[j]
            linf = float(np.max(np.abs(np.array(a.final_rho) - np.array(b.final_rho))))
            if linf > 1e-2:
                disagreements.append((a.solver, b.solver, linf))
    return ComparisonTable(rows=tuple(summaries), disagreements=tuple(disagreements))
