"""CRLB-constrained power allocation for cell-free MIMO ISAC networks."""

from .scene import (SPEED_OF_LIGHT, GeometryError, Scenario, SpreadParams,
                    comm_sinr, doppler_shift, propagation_delay, spread_params)
from .waveform import (QuadratureError, WaveformMoments, WaveformSpec,
                       abd_coefficients, moments, sample_waveform)
from .crlb import (CrlbPair, EstimationInfeasibleError, FimBlocks, FimWeights,
                   blocks_from_weights, crlb_direct, crlb_reformulated,
                   crlb_traces, crlb_traces_and_grad, extract_weights, fim_blocks)
from .optimizer import (Constraints, LineSearchStagnation, SolveTrace, SolverConfig,
                        SOLVERS, ils_step, mcg_direction, penalty_isac,
                        penalty_sensing, projection_matrix, solve_p_ncg_ils,
                        solve_pp_mcg_ils, solve_pp_msd_ils, solve_pp_ncg,
                        solve_pp_nsd, step_bound)
from .harness import (ComparisonTable, ConfigError, ExperimentSpec, RunSummary,
                      ScenarioBundle, bundled_scenario_path, compare_solvers,
                      default_solver_config, load_scenario, run_experiment,
                      run_sweep, run_validation, write_trace_csv)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
