"""Shared fixtures: the bundled scenarios, one set of solver runs reused by
the cross-cutting tests, and a random-scenario factory."""

import time

import numpy as np
import pytest

from cfisac import (SOLVERS, WaveformSpec, Scenario, default_solver_config,
                    extract_weights, load_scenario)

# Small pool of waveform settings so the cached quadrature moments are
# computed once per (M, T) pair rather than per random draw.
WAVEFORM_POOL = (
    WaveformSpec(n_chirps=1, pulse_scale=1e-2),
    WaveformSpec(n_chirps=4, pulse_scale=1e-2),
    WaveformSpec(n_chirps=16, pulse_scale=1e-3),
)


def random_scenario(rng, n_tx=None, n_rx=None):
    """Well-conditioned random geometry around a central target."""
    n = n_tx or int(rng.integers(3, 8))
    k = n_rx or int(rng.integers(1, 4))
    angles_tx = rng.uniform(0, 2 * np.pi, n)
    angles_rx = rng.uniform(0, 2 * np.pi, k)
    r_tx = rng.uniform(300.0, 3000.0, n)
    r_rx = rng.uniform(300.0, 3000.0, k)
    return Scenario(
        tx_positions=np.c_[r_tx * np.cos(angles_tx), r_tx * np.sin(angles_tx)],
        rx_positions=np.c_[r_rx * np.cos(angles_rx), r_rx * np.sin(angles_rx)],
        target_location=rng.uniform(-50.0, 50.0, 2),
        target_velocity=rng.uniform(-30.0, 30.0, 2),
        rcs_sq=rng.uniform(0.1, 3.0, (n, k)),
        channel_gain=rng.uniform(0.1, 15.0, n),
        total_power=1.0,
        noise_var_comm=1.0,
        noise_var_clutter=float(rng.uniform(1e-4, 1e-2)),
        sample_rate=1000.0,
    )


def random_weights(rng):
    scenario = random_scenario(rng)
    spec = WAVEFORM_POOL[int(rng.integers(len(WAVEFORM_POOL)))]
    return extract_weights(scenario, spec=spec), scenario, spec


@pytest.fixture(scope="session")
def paper_bundle():
    return load_scenario("paper-isac")


@pytest.fixture(scope="session")
def paper_weights(paper_bundle):
    return extract_weights(paper_bundle.scenario, spec=paper_bundle.waveform)


@pytest.fixture(scope="session")
def radar_bundle():
    return load_scenario("paper-radar-4x3")


@pytest.fixture(scope="session")
def paper_runs(paper_bundle, paper_weights):
    """One solve per algorithm on the reference scenario, with wall times."""
    n = paper_bundle.scenario.n_tx
    rho0 = np.full(n, 1.0 / n)
    traces = {}
    elapsed = {}
    for name in ("pp-mcg-ils", "pp-msd-ils", "pp-ncg", "pp-nsd", "p-ncg-ils"):
        start = time.perf_counter()
        traces[name] = SOLVERS[name](paper_weights, paper_bundle.constraints,
                                     config=default_solver_config(name),
                                     rho_init=rho0)
        elapsed[name] = time.perf_counter() - start
    return {"traces": traces, "elapsed": elapsed}
