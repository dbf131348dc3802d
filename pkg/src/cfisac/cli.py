"""Command-line front end for the experiment harness.

Subcommands: run (one solve), sweep (one override key over several
values), compare (several solvers on one scenario), validate (invariant
report for a scenario file).  Exit codes: 0 success, 1 solver failure,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .harness import (ConfigError, ExperimentSpec, compare_solvers,
                      run_experiment, run_sweep, run_validation)
from .optimizer import SOLVERS

EXIT_OK = 0
EXIT_SOLVER_FAILURE = 1
EXIT_USAGE = 2

DEFAULT_COMPARE = ("pp-mcg-ils", "pp-msd-ils", "pp-ncg", "pp-nsd")


class _Parser(argparse.ArgumentParser):
    # argparse already exits with 2 on bad flags; this only makes the
    # behavior explicit for subparsers too.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_set(values):
    """key=value pairs; each value is a float or a comma list of floats."""
    pairs = []
    for item in values:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        try:
            parsed = tuple(float(x) for x in raw.split(","))
        except ValueError:
            raise ConfigError(f"--set {key}: values must be numeric, got {raw!r}") from None
        pairs.append((key, parsed))
    return pairs


def _split_sets(pairs):
    """Separate scalar overrides from the single swept key, if any."""
    overrides, sweep = [], None
    for key, values in pairs:
        if len(values) == 1:
            overrides.append((key, values[0]))
        elif sweep is None:
            sweep = (key, values)
        else:
            raise ConfigError("only one --set key may carry a value list")
    return tuple(overrides), sweep


def _parse_init(raw):
    """'uniform' | 'heuristic' | 'explicit:v1,v2,...'"""
    mode, sep, rest = raw.partition(":")
    if mode in ("uniform", "heuristic") and not sep:
        return mode, None
    if mode == "explicit" and sep:
        try:
            return mode, tuple(float(x) for x in rest.split(","))
        except ValueError:
            raise ConfigError(f"--init explicit: values must be numeric, got {rest!r}") from None
    raise ConfigError(f"--init expects uniform, heuristic or explicit:v1,..., got {raw!r}")


def build_parser() -> _Parser:
    parser = _Parser(prog="cfisac",
                     description="Power-allocation experiments for cell-free "
                                 "sensing/communication networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, solver=True):
        p.add_argument("--scenario", required=True,
                       help="scenario file path or bundled name (e.g. paper-isac.cfg)")
        if solver:
            p.add_argument("--solver", default="pp-mcg-ils",
                           help=f"one of {', '.join(sorted(SOLVERS))}")
            p.add_argument("--init", default="uniform",
                           help="uniform | heuristic | explicit:v1,v2,...")
        p.add_argument("--out", default=None, help="output directory for CSV/JSON")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override, e.g. constraints.delta_l_sq=100 or "
                            "solver.mu_1=1e3; a comma list defines a sweep")

    common(sub.add_parser("run", help="single solve, write trace CSV and summary JSON"))
    common(sub.add_parser("sweep", help="sweep one override key over a value list"))
    cmp_p = sub.add_parser("compare", help="run several solvers on one scenario")
    common(cmp_p, solver=False)
    cmp_p.add_argument("--solvers", default=",".join(DEFAULT_COMPARE),
                       help="comma-separated solver names")
    cmp_p.add_argument("--init", default="uniform")
    val_p = sub.add_parser("validate", help="run the invariant suite on a scenario")
    val_p.add_argument("--scenario", required=True)
    return parser


def _spec_kwargs(args):
    overrides, sweep = _split_sets(_parse_set(args.set))
    init, init_rho = _parse_init(args.init)
    kwargs = dict(scenario=args.scenario, init=init, init_rho=init_rho,
                  overrides=overrides, output_dir=args.out)
    return kwargs, sweep


def _print_summary(summary):
    print(f"{summary.solver} on {summary.scenario}: "
          f"{'converged' if summary.converged else 'FAILED (' + summary.termination + ')'} "
          f"after {summary.inner_iterations} iterations")
    print(f"  sinr {summary.final_sinr:.4f}  trace_l {summary.final_trace_l:.4f}  "
          f"trace_v {summary.final_trace_v:.6f}  total power {summary.final_total_power:.4f}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            kwargs, sweep = _spec_kwargs(args)
            if sweep is not None:
                raise ConfigError("run takes scalar --set values; use the sweep subcommand")
            summary = run_experiment(ExperimentSpec(solver=args.solver, **kwargs))
            _print_summary(summary)
            return EXIT_OK if summary.converged else EXIT_SOLVER_FAILURE

        if args.command == "sweep":
            kwargs, sweep = _spec_kwargs(args)
            if sweep is None:
                raise ConfigError("sweep needs one --set key with a comma list of values")
            spec = ExperimentSpec(solver=args.solver, sweep_parameter=sweep[0],
                                  sweep_values=sweep[1], **kwargs)
            summaries = run_sweep(spec)
            for value, summary in zip(sweep[1], summaries):
                print(f"{sweep[0]}={value:g}: sinr {summary.final_sinr:.4f}  "
                      f"converged {summary.converged}")
            return EXIT_OK if all(s.converged for s in summaries) else EXIT_SOLVER_FAILURE

        if args.command == "compare":
            kwargs, sweep = _spec_kwargs(args)
            if sweep is not None:
                raise ConfigError("compare takes scalar --set values only")
            solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
            if not solvers:
                raise ConfigError("--solvers must name at least one solver")
            table = compare_solvers([ExperimentSpec(solver=s, **kwargs) for s in solvers])
            print(table.format())
            return EXIT_OK if all(r.converged for r in table.rows) else EXIT_SOLVER_FAILURE

        ok, lines = run_validation(args.scenario)
        print("\n".join(lines))
        return EXIT_OK if ok else EXIT_SOLVER_FAILURE
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
