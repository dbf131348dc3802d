"""Geometry and signal-level quantities for the cell-free MIMO network.

Bistatic propagation delays, Doppler shifts, their partial derivatives with
respect to the target state (the geometric spread parameters), and the
communication SINR.  Everything here is a pure function of an immutable
Scenario, so concurrent evaluation needs no coordination.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0
DEFAULT_CARRIER_HZ = 3e9

# Target closer than this to any AP makes the bistatic geometry degenerate.
MIN_AP_DISTANCE_M = 1e-6


class GeometryError(ValueError):
    """Raised when the target (nearly) coincides with an AP."""


def _as_points(x, name, dim2=True) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(x, dtype=float)) if dim2 else np.asarray(x, dtype=float)
    return arr


@dataclass(frozen=True)
class Scenario:
    """Static description of one sensing/communication snapshot.

    Positions are 2-D points in meters; ``rcs_sq`` holds the squared RCS
    magnitudes per (transmitter, receiver) path and ``channel_gain`` the
    squared communication channel gains per transmitter.
    """

    tx_positions: np.ndarray          # (N, 2) m
    rx_positions: np.ndarray          # (K, 2) m
    target_location: np.ndarray       # (2,) m
    target_velocity: np.ndarray       # (2,) m/s
    rcs_sq: np.ndarray                # (N, K), |alpha|^2
    channel_gain: np.ndarray          # (N,), |g|^2
    wavelength: float = SPEED_OF_LIGHT / DEFAULT_CARRIER_HZ
    total_power: float = 1.0          # W
    noise_var_comm: float = 1.0       # sigma_z^2, W
    noise_var_clutter: float = 1.0    # sigma_cn^2, W
    sample_rate: float = 1e3          # f_s, Hz

    def __post_init__(self):
        object.__setattr__(self, "tx_positions", _as_points(self.tx_positions, "tx_positions"))
        object.__setattr__(self, "rx_positions", _as_points(self.rx_positions, "rx_positions"))
        object.__setattr__(self, "target_location", np.asarray(self.target_location, dtype=float).reshape(2))
        object.__setattr__(self, "target_velocity", np.asarray(self.target_velocity, dtype=float).reshape(2))
        object.__setattr__(self, "rcs_sq", np.asarray(self.rcs_sq, dtype=float))
        object.__setattr__(self, "channel_gain", np.asarray(self.channel_gain, dtype=float).reshape(-1))
        for arr in (self.tx_positions, self.rx_positions):
            if arr.ndim != 2 or arr.shape[1] != 2:
                raise ValueError("AP positions must be arrays of 2-D points")
        if self.n_tx < 2:
            raise ValueError("need at least 2 transmitters")
        if self.n_rx < 1:
            raise ValueError("need at least 1 receiver")
        if self.rcs_sq.shape != (self.n_tx, self.n_rx):
            raise ValueError(f"rcs_sq must have shape {(self.n_tx, self.n_rx)}, got {self.rcs_sq.shape}")
        if self.channel_gain.shape != (self.n_tx,):
            raise ValueError(f"channel_gain must have length {self.n_tx}")
        if np.any(self.rcs_sq < 0) or np.any(self.channel_gain < 0):
            raise ValueError("rcs_sq and channel_gain entries must be nonnegative")
        for name, val in (("wavelength", self.wavelength), ("total_power", self.total_power),
                          ("noise_var_comm", self.noise_var_comm),
                          ("noise_var_clutter", self.noise_var_clutter),
                          ("sample_rate", self.sample_rate)):
            if not val > 0:
                raise ValueError(f"{name} must be positive")
        all_aps = np.vstack([self.tx_positions, self.rx_positions])
        dists = np.linalg.norm(all_aps - self.target_location, axis=1)
        if np.any(dists <= MIN_AP_DISTANCE_M):
            raise GeometryError("target coincides with an AP position; CRLBs are undefined there")
        self.tx_positions.setflags(write=False)
        self.rx_positions.setflags(write=False)
        self.rcs_sq.setflags(write=False)
        self.channel_gain.setflags(write=False)

    @property
    def n_tx(self) -> int:
        return self.tx_positions.shape[0]

    @property
    def n_rx(self) -> int:
        return self.rx_positions.shape[0]

    def __hash__(self):
        return hash((self.tx_positions.tobytes(), self.rx_positions.tobytes(),
                     self.target_location.tobytes(), self.target_velocity.tobytes(),
                     self.rcs_sq.tobytes(), self.channel_gain.tobytes(),
                     self.wavelength, self.total_power, self.noise_var_comm,
                     self.noise_var_clutter, self.sample_rate))


@dataclass(frozen=True)
class SpreadParams:
    """Partial derivatives of delay and Doppler w.r.t. the target state.

    All arrays are (N, K).  beta/zeta are d(tau)/dx and d(tau)/dy in s/m,
    eta/kappa are d(f)/dx and d(f)/dy in Hz/m, xi/varrho are d(f)/dv_x and
    d(f)/dv_y in Hz per m/s.
    """

    beta: np.ndarray
    zeta: np.ndarray
    eta: np.ndarray
    kappa: np.ndarray
    xi: np.ndarray
    varrho: np.ndarray


def _unit_vectors(scenario: Scenario):
    """Unit vectors from the target towards each AP, plus distances."""
    d_tx = scenario.tx_positions - scenario.target_location      # (N, 2)
    d_rx = scenario.rx_positions - scenario.target_location      # (K, 2)
    r_tx = np.linalg.norm(d_tx, axis=1)
    r_rx = np.linalg.norm(d_rx, axis=1)
    if np.any(r_tx <= MIN_AP_DISTANCE_M) or np.any(r_rx <= MIN_AP_DISTANCE_M):
        raise GeometryError("degenerate geometry: zero target-AP distance")
    return d_tx / r_tx[:, None], d_rx / r_rx[:, None], r_tx, r_rx


def propagation_delay(scenario: Scenario, n: int, k: int) -> float:
    """Bistatic delay tau_{n,k} = (||l_n - l|| + ||l_k - l||) / c in seconds."""
    r_n = np.linalg.norm(scenario.tx_positions[n] - scenario.target_location)
    r_k = np.linalg.norm(scenario.rx_positions[k] - scenario.target_location)
    if r_n <= MIN_AP_DISTANCE_M or r_k <= MIN_AP_DISTANCE_M:
        raise GeometryError("degenerate geometry: zero target-AP distance")
    return (r_n + r_k) / SPEED_OF_LIGHT


def doppler_shift(scenario: Scenario, n: int, k: int) -> float:
    """Bistatic Doppler shift in Hz for the (n, k) path.

    f_{n,k} = (1/lambda) v^T (u_n + u_k) with u the unit vectors from the
    target towards transmitter n and receiver k.
    """
    u_tx, u_rx, _, _ = _unit_vectors(scenario)
    return float(scenario.target_velocity @ (u_tx[n] + u_rx[k])) / scenario.wavelength


def spread_params(scenario: Scenario) -> SpreadParams:
    """Analytic partials of delay and Doppler for every (n, k) path.

    The Doppler is linear in the target velocity, so xi and varrho depend
    on geometry only, and eta/kappa vanish at zero velocity.
    """
    u_tx, u_rx, r_tx, r_rx = _unit_vectors(scenario)
    lam = scenario.wavelength
    v = scenario.target_velocity

    # d||l_ap - l||/dl = -u, hence dtau/dl = -(u_n + u_k)/c.
    sum_x = u_tx[:, None, 0] + u_rx[None, :, 0]      # (N, K)
    sum_y = u_tx[:, None, 1] + u_rx[None, :, 1]
    beta = -sum_x / SPEED_OF_LIGHT
    zeta = -sum_y / SPEED_OF_LIGHT

    xi = sum_x / lam
    varrho = sum_y / lam

    # du/dl = -(I - u u^T)/r, so df/dl = -(1/lam) sum of (I - u u^T) v / r.
    def _pos_grad(u, r):
        proj = v - u * (u @ v)[:, None]              # (I - u u^T) v per AP
        return -proj / r[:, None]

    g_tx = _pos_grad(u_tx, r_tx)                     # (N, 2)
    g_rx = _pos_grad(u_rx, r_rx)                     # (K, 2)
    eta = (g_tx[:, None, 0] + g_rx[None, :, 0]) / lam
    kappa = (g_tx[:, None, 1] + g_rx[None, :, 1]) / lam

    return SpreadParams(beta=beta, zeta=zeta, eta=eta, kappa=kappa, xi=xi, varrho=varrho)


def comm_sinr(scenario: Scenario, rho: np.ndarray, t_eff: float) -> float:
    """User-terminal SINR delta * rho^T g under conjugate beamforming."""
    rho = np.asarray(rho, dtype=float)
    delta = scenario.total_power / (t_eff * scenario.noise_var_comm)
    return float(delta * (rho @ scenario.channel_gain))
