"""Top-level acceptance gates.

Each test covers one release criterion at its stated tolerance and prints
one [PASS]/[FAIL] line so the run log doubles as the acceptance report.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest
from scipy.integrate import quad

from cfisac import (WaveformSpec, blocks_from_weights, comm_sinr, crlb_direct,
                    crlb_reformulated, crlb_traces, crlb_traces_and_grad,
                    moments, penalty_isac, sample_waveform, Constraints,
                    run_sweep, ExperimentSpec)
from conftest import random_weights
from test_optimizer import _quadratic_cg_run

DELTA_L_SQ = 250.0
DELTA_V_SQ = 0.13


@pytest.fixture
def report(capsys):
    @contextmanager
    def _report(name):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"[FAIL] {name}")
            raise
        with capsys.disabled():
            print(f"[PASS] {name}")
    return _report


def test_crlb_reformulation_oracle(report):
    with report("CRLB reformulation matches direct inversion (100 draws, <5 s)"):
        rng = np.random.default_rng(100)
        start = time.perf_counter()
        accepted = 0
        while accepted < 100:
            weights, s, _ = random_weights(rng)
            rho = rng.dirichlet(np.ones(s.n_tx))
            direct = crlb_direct(blocks_from_weights(weights, rho))
            # a nearly unidentifiable geometry (huge bounds) amplifies the
            # 2x2 cancellation past what double precision supports at 1e-8;
            # the tolerance is meaningful only for identifiable draws
            if direct.trace_l > 1e5 or direct.trace_v > 1e4:
                continue
            accepted += 1
            reform = crlb_reformulated(weights, rho)
            assert abs(reform.trace_l - direct.trace_l) <= 1e-8 * abs(direct.trace_l)
            assert abs(reform.trace_v - direct.trace_v) <= 1e-8 * abs(direct.trace_v)
        assert time.perf_counter() - start < 5.0


def test_gradient_correctness(report, paper_weights):
    with report("analytic trace and penalty gradients match finite differences (<10 s)"):
        rng = np.random.default_rng(101)
        n = paper_weights.n_tx
        # thresholds below the attainable traces keep both CRLB hinges active
        constraints = Constraints(rho_min=np.full(n, 0.01), rho_max=np.full(n, 0.30),
                                  delta_l_sq=50.0, delta_v_sq=0.01)
        start = time.perf_counter()
        h = 1e-6
        for _ in range(20):
            rho = rng.dirichlet(np.ones(n)) * 0.8 + 0.2 / n
            _, _, gl, gv = crlb_traces_and_grad(paper_weights, rho)
            _, grad_pen = penalty_isac(rho, paper_weights, constraints)
            for j in range(n):
                e = np.zeros(n)
                e[j] = h
                tp = crlb_traces(paper_weights, rho + e)
                tm = crlb_traces(paper_weights, rho - e)
                fd_l = (tp[0] - tm[0]) / (2 * h)
                fd_v = (tp[1] - tm[1]) / (2 * h)
                assert abs(fd_l - gl[j]) <= 1e-5 * max(abs(fd_l), abs(gl[j]))
                assert abs(fd_v - gv[j]) <= 1e-5 * max(abs(fd_v), abs(gv[j]))
                pp = penalty_isac(rho + e, paper_weights, constraints)[0]
                pm = penalty_isac(rho - e, paper_weights, constraints)[0]
                fd_pen = (pp - pm) / (2 * h)
                assert abs(fd_pen - grad_pen[j]) <= 1e-5 * max(abs(fd_pen),
                                                               abs(grad_pen[j]), 1e-9)
        assert time.perf_counter() - start < 10.0


def test_homogeneity_law(report):
    with report("CRLB traces scale as 1/s with the power level (rel err 1e-10)"):
        rng = np.random.default_rng(102)
        for _ in range(10):
            weights, s, _ = random_weights(rng)
            rho = rng.dirichlet(np.ones(s.n_tx))
            tl, tv = crlb_traces(weights, rho)
            for scale in (0.5, 2.0, 10.0):
                sl, sv = crlb_traces(weights, scale * rho)
                assert abs(sl - tl / scale) <= 1e-10 * abs(tl / scale)
                assert abs(sv - tv / scale) <= 1e-10 * abs(tv / scale)


def test_waveform_moment_oracles(report):
    with report("pulse moments match closed forms; unit energy across the grid"):
        for t_scale in (1e-3, 1e-2):
            m = moments(WaveformSpec(n_chirps=1, pulse_scale=t_scale))
            assert abs(m.setw - t_scale**2 / (4 * np.pi)) <= 1e-6 * m.setw
            assert abs(m.sebw - 1 / (4 * np.pi * t_scale**2)) <= 1e-6 * m.sebw
        for n_chirps in (1, 4, 16):
            for t_scale in (1e-3, 1e-2):
                spec = WaveformSpec(n_chirps=n_chirps, pulse_scale=t_scale)
                energy, _ = quad(lambda t: abs(sample_waveform(spec, 1, t)) ** 2,
                                 -8 * t_scale, 8 * t_scale, limit=200)
                assert abs(energy - 1.0) <= 1e-8


def test_solver_invariant_suite(report, paper_runs):
    with report("solver invariants hold at every iterate (<60 s)"):
        pp_names = ("pp-mcg-ils", "pp-msd-ils", "pp-ncg", "pp-nsd")
        for name in pp_names:
            trace = paper_runs["traces"][name]
            for r in trace.records:
                assert abs(r.rho.sum() - 1.0) <= 1e-12
                assert np.all(r.rho >= 0)
                assert abs(r.direction_sum) <= 1e-10
                if r.deflection != 0.0:
                    assert r.deflection_ok
            if name.endswith("-ils"):
                margins = [r.armijo_margin for r in trace.records]
                assert max(margins) <= 1e-9
            if trace.converged:
                assert trace.final_penalty < 1e-3
        assert sum(paper_runs["elapsed"][n] for n in pp_names) < 60.0


def test_cross_solver_agreement(report, paper_runs, paper_bundle):
    with report("all four ISAC solvers land on one allocation; MCG is fastest"):
        names = ("pp-mcg-ils", "pp-msd-ils", "pp-ncg", "pp-nsd")
        finals = [paper_runs["traces"][n].rho for n in names]
        for i in range(len(finals)):
            for j in range(i + 1, len(finals)):
                assert np.max(np.abs(finals[i] - finals[j])) <= 1e-2
        sinrs = [comm_sinr(paper_bundle.scenario, rho, paper_bundle.waveform.t_eff)
                 for rho in finals]
        assert (max(sinrs) - min(sinrs)) / min(sinrs) <= 1e-3
        iters = {n: paper_runs["traces"][n].inner_iterations for n in names}
        assert iters["pp-mcg-ils"] == min(iters.values())


def test_reference_scenario_allocation(report, paper_runs, paper_weights):
    with report("reference allocation: caps on tx 2/9, bulk on tx 10, floors held"):
        rho = paper_runs["traces"]["pp-mcg-ils"].rho
        assert rho[1] == pytest.approx(0.30, abs=5e-3)
        assert rho[8] == pytest.approx(0.30, abs=5e-3)
        uncapped = [x for i, x in enumerate(rho) if i not in (1, 8)]
        assert rho[9] == max(uncapped) and rho[9] >= 0.2
        assert np.sum(np.abs(rho - 0.01) <= 5e-3) >= 5
        tl, tv = crlb_traces(paper_weights, rho)
        assert tl <= DELTA_L_SQ * 1.01
        assert tv <= DELTA_V_SQ * 1.01


def test_threshold_tradeoff(report):
    with report("steady-state SINR grows with the location threshold, then saturates"):
        summaries = run_sweep(ExperimentSpec(
            scenario="paper-isac", sweep_parameter="constraints.delta_l_sq",
            sweep_values=(50.0, 100.0, 250.0, 500.0, 1000.0)))
        sinrs = np.array([s.final_sinr for s in summaries])
        assert all(s.converged for s in summaries)
        assert np.all(np.diff(sinrs) >= -1e-9 * sinrs[:-1])
        assert abs(sinrs[-1] - sinrs[-2]) <= 1e-2 * sinrs[-2]


def test_pure_sensing_power_minimization(report, paper_runs, paper_weights):
    with report("pure sensing: less power than ISAC, bounds ride the thresholds"):
        trace = paper_runs["traces"]["p-ncg-ils"]
        assert trace.converged and trace.final_penalty < 1e-6
        total = trace.rho.sum()
        assert total < 1.0
        assert total < paper_runs["traces"]["pp-mcg-ils"].rho.sum()
        tl, tv = crlb_traces(paper_weights, trace.rho)
        assert abs(tl - DELTA_L_SQ) <= 0.05 * DELTA_L_SQ
        assert abs(tv - DELTA_V_SQ) <= 0.05 * DELTA_V_SQ


def test_cg_finite_termination(report):
    with report("conjugate directions finish quadratics within the dimension"):
        rng = np.random.default_rng(103)
        for _ in range(50):
            n = int(rng.integers(3, 11))
            assert _quadratic_cg_run(rng, n) is not None
