#!/usr/bin/env python3
"""Two experiments around the sensing constraints.

First a sweep of the location threshold: relaxing it buys communication
SINR until the velocity constraint takes over and the curve saturates.
Then the pure-sensing mode: with no data to serve, the solver sheds power
until both bounds ride their thresholds.
"""

from pathlib import Path

from cfisac import ExperimentSpec, run_experiment, run_sweep

OUT = Path(__file__).parent / "out"

print("location-threshold sweep (delta_v^2 fixed at 0.13):")
summaries = run_sweep(ExperimentSpec(
    scenario="paper-isac",
    sweep_parameter="constraints.delta_l_sq",
    sweep_values=(50.0, 100.0, 250.0, 500.0, 1000.0),
    output_dir=str(OUT), label="threshold-sweep"))
for value, s in zip((50, 100, 250, 500, 1000), summaries):
    print(f"  delta_l^2 = {value:>5}  ->  SINR {s.final_sinr:7.4f}   "
          f"tr C_L {s.final_trace_l:8.3f}   tr C_V {s.final_trace_v:.5f}")

print("\npure sensing (minimize total power subject to the same bounds):")
sensing = run_experiment(ExperimentSpec(scenario="paper-isac", solver="p-ncg-ils",
                                        output_dir=str(OUT)))
print(f"  total power {sensing.final_total_power:.4f} of the ISAC budget 1.0")
print(f"  tr C_L {sensing.final_trace_l:.2f} (threshold 250), "
      f"tr C_V {sensing.final_trace_v:.5f} (threshold 0.13)")
print(f"\ntrace files written to {OUT}/")
