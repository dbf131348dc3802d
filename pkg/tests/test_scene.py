"""Geometry, delay/Doppler and SINR behavior."""

import numpy as np
import pytest

from cfisac import (SPEED_OF_LIGHT, GeometryError, Scenario, comm_sinr,
                    doppler_shift, propagation_delay, spread_params)
from conftest import random_scenario


def make_scenario(tx, rx, target=(0.0, 0.0), velocity=(0.0, 0.0), **kw):
    tx = np.atleast_2d(np.asarray(tx, dtype=float))
    rx = np.atleast_2d(np.asarray(rx, dtype=float))
    n, k = tx.shape[0], rx.shape[0]
    defaults = dict(rcs_sq=np.ones((n, k)), channel_gain=np.ones(n))
    defaults.update(kw)
    return Scenario(tx_positions=tx, rx_positions=rx, target_location=target,
                    target_velocity=velocity, **defaults)


class TestPropagationDelay:
    def test_colocated_tx_rx(self):
        # both APs at the origin, target at (3, 4): round trip is 10 m
        s = make_scenario([(0, 0), (50, 0)], [(0, 0)], target=(3, 4))
        assert propagation_delay(s, 0, 0) == pytest.approx(10.0 / SPEED_OF_LIGHT, rel=1e-15)

    def test_target_on_midpoint(self):
        d = 120.0
        s = make_scenario([(-d, 0), (0, 77)], [(d, 0)])
        assert propagation_delay(s, 0, 0) == pytest.approx(2 * d / SPEED_OF_LIGHT, rel=1e-15)

    def test_matches_distance_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            s = random_scenario(rng)
            n = int(rng.integers(s.n_tx))
            k = int(rng.integers(s.n_rx))
            expected = (np.linalg.norm(s.tx_positions[n] - s.target_location)
                        + np.linalg.norm(s.rx_positions[k] - s.target_location)) / SPEED_OF_LIGHT
            assert propagation_delay(s, n, k) == pytest.approx(expected, rel=1e-14)

    def test_tx_rx_swap_symmetry(self):
        a, b = (300.0, -40.0), (-150.0, 500.0)
        s1 = make_scenario([a, (999, 0)], [b], target=(10, -5))
        s2 = make_scenario([b, (999, 0)], [a], target=(10, -5))
        assert propagation_delay(s1, 0, 0) == propagation_delay(s2, 0, 0)

    def test_degenerate_geometry_rejected(self):
        with pytest.raises(GeometryError):
            make_scenario([(3, 4), (50, 0)], [(0, 0)], target=(3, 4))


class TestDopplerShift:
    def test_zero_velocity(self):
        s = make_scenario([(100, 0), (0, 100)], [(50, 50)])
        assert doppler_shift(s, 0, 0) == 0.0

    def test_orthogonal_velocity(self):
        # both lines of sight along +x, velocity along +y
        s = make_scenario([(100, 0), (0, 500)], [(400, 0)], velocity=(0, 7))
        assert doppler_shift(s, 0, 0) == pytest.approx(0.0, abs=1e-12)

    def test_monostatic_radial(self):
        s = make_scenario([(200, 0), (0, 900)], [(200, 0)], velocity=(-6, 0))
        assert abs(doppler_shift(s, 0, 0)) == pytest.approx(2 * 6.0 / s.wavelength, rel=1e-12)

    def test_linear_in_velocity(self):
        rng = np.random.default_rng(7)
        s = random_scenario(rng)
        base = doppler_shift(s, 0, 0)
        from dataclasses import replace
        for scale in (0.5, -2.0, 10.0):
            scaled = replace(s, target_velocity=scale * s.target_velocity)
            assert doppler_shift(scaled, 0, 0) == pytest.approx(scale * base, rel=1e-12)


class TestSpreadParams:
    def _fd(self, f, s, field, idx, h):
        from dataclasses import replace
        base = np.array(getattr(s, field), dtype=float)
        lo, hi = base.copy(), base.copy()
        hi[idx] += h
        lo[idx] -= h
        return (f(replace(s, **{field: hi})) - f(replace(s, **{field: lo}))) / (2 * h)

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(42)
        for _ in range(5):
            s = random_scenario(rng, n_tx=3, n_rx=2)
            sp = spread_params(s)
            for n in range(s.n_tx):
                for k in range(s.n_rx):
                    delay = lambda sc: propagation_delay(sc, n, k)
                    dopp = lambda sc: doppler_shift(sc, n, k)
                    checks = [
                        (sp.beta[n, k], self._fd(delay, s, "target_location", 0, 1e-3)),
                        (sp.zeta[n, k], self._fd(delay, s, "target_location", 1, 1e-3)),
                        (sp.eta[n, k], self._fd(dopp, s, "target_location", 0, 1e-3)),
                        (sp.kappa[n, k], self._fd(dopp, s, "target_location", 1, 1e-3)),
                        (sp.xi[n, k], self._fd(dopp, s, "target_velocity", 0, 1e-3)),
                        (sp.varrho[n, k], self._fd(dopp, s, "target_velocity", 1, 1e-3)),
                    ]
                    for analytic, fd in checks:
                        scale = max(abs(analytic), abs(fd))
                        assert abs(analytic - fd) <= 1e-6 * scale

    def test_position_doppler_partials_vanish_at_zero_velocity(self):
        s = make_scenario([(100, 50), (-300, 10)], [(20, -400)])
        sp = spread_params(s)
        assert np.all(sp.eta == 0) and np.all(sp.kappa == 0)

    def test_velocity_partials_from_unit_vectors(self):
        s = make_scenario([(500, 0), (0, 800)], [(0, -600)], velocity=(3, -2))
        sp = spread_params(s)
        u_tx = s.tx_positions[0] / np.linalg.norm(s.tx_positions[0])
        u_rx = s.rx_positions[0] / np.linalg.norm(s.rx_positions[0])
        assert sp.xi[0, 0] == pytest.approx((u_tx[0] + u_rx[0]) / s.wavelength, rel=1e-12)
        assert sp.varrho[0, 0] == pytest.approx((u_tx[1] + u_rx[1]) / s.wavelength, rel=1e-12)


class TestCommSinr:
    def test_uniform_allocation(self):
        rng = np.random.default_rng(3)
        s = random_scenario(rng, n_tx=6)
        delta = s.total_power / (2.0 * s.noise_var_comm)
        got = comm_sinr(s, np.full(6, 1 / 6), t_eff=2.0)
        assert got == pytest.approx(delta * s.channel_gain.mean(), rel=1e-14)

    def test_basis_vector(self):
        rng = np.random.default_rng(4)
        s = random_scenario(rng, n_tx=5)
        e = np.zeros(5)
        e[3] = 1.0
        delta = s.total_power / s.noise_var_comm
        assert comm_sinr(s, e, t_eff=1.0) == pytest.approx(delta * s.channel_gain[3], rel=1e-14)

    def test_linear_and_monotone(self):
        rng = np.random.default_rng(5)
        s = random_scenario(rng, n_tx=5)
        r1 = rng.dirichlet(np.ones(5))
        r2 = rng.dirichlet(np.ones(5))
        lhs = comm_sinr(s, 0.3 * r1 + 0.7 * r2, 1.0)
        rhs = 0.3 * comm_sinr(s, r1, 1.0) + 0.7 * comm_sinr(s, r2, 1.0)
        assert lhs == pytest.approx(rhs, rel=1e-12)
        from dataclasses import replace
        bumped = np.array(s.channel_gain)
        bumped[2] += 1.0
        assert comm_sinr(replace(s, channel_gain=bumped), r1, 1.0) > comm_sinr(s, r1, 1.0)


class TestScenarioValidation:
    def test_needs_two_transmitters(self):
        with pytest.raises(ValueError):
            make_scenario([(100, 0)], [(0, 100)])

    def test_negative_gain_rejected(self):
        with pytest.raises(ValueError):
            make_scenario([(100, 0), (0, 100)], [(50, 50)], channel_gain=np.array([1.0, -0.1]))

    def test_rcs_shape_enforced(self):
        with pytest.raises(ValueError):
            make_scenario([(100, 0), (0, 100)], [(50, 50)], rcs_sq=np.ones((3, 1)))

    def test_arrays_are_frozen(self):
        s = make_scenario([(100, 0), (0, 100)], [(50, 50)])
        with pytest.raises(ValueError):
            s.tx_positions[0, 0] = 1.0
