"""OCDM chirp waveform and its second-moment quantities.

The lowpass equivalent per transmitter n is a Gaussian pulse carrying a
quadratic chirp phase,

    s_n(t) = (2/T^2)^(1/4) exp(-pi t^2 / T^2) exp(j pi (M/T^2) (t - t_n)^2),

with chirp offset t_n = (n-1) T / M.  The squared effective bandwidth,
squared effective time width, time-frequency cross term and the average
time/frequency are evaluated by adaptive quadrature on [-8T, 8T]; the
Gaussian envelope truncation beyond 8T is below 1e-20 relative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

QUAD_REL_TOL = 1e-9
ENERGY_TOL = 1e-8


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class WaveformSpec:
    """OCDM waveform parameters.

    ``t_eff`` is the effective time width entering the SINR/SCNR scalars;
    it is a configuration input, not derived from the pulse.
    """

    n_chirps: int = 1            # M
    pulse_scale: float = 1e-2    # T, seconds
    carrier: float = 3e9         # Hz
    sample_rate: float = 1e3     # Hz
    t_eff: float = 1.0           # seconds

    def __post_init__(self):
        if self.n_chirps < 1:
            raise ValueError("n_chirps must be >= 1")
        for name in ("pulse_scale", "carrier", "sample_rate", "t_eff"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class WaveformMoments:
    sebw: float            # Hz^2
    setw: float            # s^2
    cross_term: complex    # time-frequency mixed moment
    avg_freq: float        # Hz
    avg_time: float        # s

    def __post_init__(self):
        if not (self.sebw > 0 and self.setw > 0):
            raise ValueError("sebw and setw must be positive")
        # Uncertainty-type lower bound for unit-energy pulses; allow a hair
        # of quadrature slack since M=1 attains it with equality.
        if self.sebw * self.setw < (1.0 - 1e-9) / (16 * np.pi**2):
            raise ValueError("sebw * setw below the uncertainty bound")


def chirp_offset(spec: WaveformSpec, n: int) -> float:
    return (n - 1) * spec.pulse_scale / spec.n_chirps


def sample_waveform(spec: WaveformSpec, n: int, t) -> np.ndarray:
    """Complex lowpass amplitude of transmitter n's pulse at time(s) t.

    The degenerate M = 1 case is the plain (real, symmetric) Gaussian
    pulse; the quadratic chirp phase only enters for M >= 2.
    """
    t = np.asarray(t, dtype=float)
    T = spec.pulse_scale
    amp = (2.0 / T**2) ** 0.25
    envelope = amp * np.exp(-np.pi * t**2 / T**2)
    if spec.n_chirps == 1:
        return envelope.astype(complex)
    t_n = chirp_offset(spec, n)
    return envelope * np.exp(1j * np.pi * spec.n_chirps / T**2 * (t - t_n) ** 2)


def waveform_derivative(spec: WaveformSpec, n: int, t) -> np.ndarray:
    """Time derivative ds_n/dt (analytic)."""
    t = np.asarray(t, dtype=float)
    T = spec.pulse_scale
    log_deriv = -2 * np.pi * t / T**2 + 0j
    if spec.n_chirps > 1:
        t_n = chirp_offset(spec, n)
        log_deriv = log_deriv + 2j * np.pi * spec.n_chirps * (t - t_n) / T**2
    return sample_waveform(spec, n, t) * log_deriv


def _quad(f, lo, hi, scale):
    """Adaptive quadrature with a convergence check against ``scale``,
    the natural magnitude of the integral (near-zero results are judged
    against it rather than against themselves)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, err = quad(f, lo, hi, epsabs=0.0, epsrel=QUAD_REL_TOL, limit=200)
    if err > max(QUAD_REL_TOL * abs(val), 1e-9 * scale):
        raise QuadratureError(f"quadrature error {err:.3e} for value {val:.6e} on [{lo}, {hi}]")
    return val


@lru_cache(maxsize=None)
def moments(spec: WaveformSpec, n: int = 1) -> WaveformMoments:
    """Second-moment quantities of s_n by adaptive quadrature.

    The SEBW uses the time-domain derivative identity
    (1/4 pi^2) int |ds/dt|^2 dt, equal to int f^2 |S(f)|^2 df.
    """
    T = spec.pulse_scale
    M = spec.n_chirps
    lo, hi = -8 * T, 8 * T

    def env2(t):
        return np.abs(sample_waveform(spec, n, t)) ** 2

    energy = _quad(env2, lo, hi, 1.0)
    if abs(energy - 1.0) > ENERGY_TOL:
        raise ValueError(f"waveform energy {energy!r} deviates from 1 beyond {ENERGY_TOL}")

    setw = _quad(lambda t: t**2 * env2(t), lo, hi, T**2)
    avg_time = _quad(lambda t: t * env2(t), lo, hi, T)

    def deriv2(t):
        return np.abs(waveform_derivative(spec, n, t)) ** 2

    sebw = _quad(deriv2, lo, hi, (2 * np.pi * M / T) ** 2) / (4 * np.pi**2)

    # int s* s' dt: real part integrates d|s|^2/dt / 2 -> 0; imaginary part
    # carries the average frequency, avg_f = Im{int s* s'}/(2 pi).
    def ss_im(t):
        return (np.conj(sample_waveform(spec, n, t)) * waveform_derivative(spec, n, t)).imag

    avg_freq = _quad(ss_im, lo, hi, 2 * np.pi * M / T) / (2 * np.pi)

    # sigma_tf = int t s*(t - tau) d s(t - tau)/d tau dt at reference tau = 0,
    # and d/d tau = -d/dt.
    def cross_re(t):
        return (-t * np.conj(sample_waveform(spec, n, t)) * waveform_derivative(spec, n, t)).real

    def cross_im(t):
        return (-t * np.conj(sample_waveform(spec, n, t)) * waveform_derivative(spec, n, t)).imag

    cross = complex(_quad(cross_re, lo, hi, M), _quad(cross_im, lo, hi, M))

    return WaveformMoments(sebw=sebw, setw=setw, cross_term=cross,
                           avg_freq=avg_freq, avg_time=avg_time)


def abd_coefficients(spec: WaveformSpec, scenario, rho) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Waveform-related FIM coefficients a, b, d as (N, K) matrices.

    a and d scale with the SEBW and SETW, b with the imaginary part of the
    time-frequency cross term; all are linear in rho_n and in the total
    power, and use the sensing-path clutter-plus-noise variance.
    """
    rho = np.asarray(rho, dtype=float)
    n_tx, _ = scenario.rcs_sq.shape
    if rho.shape != (n_tx,):
        raise ValueError(f"rho must have length {n_tx}")
    if np.any(rho < 0):
        raise ValueError("rho entries must be nonnegative")

    sebw = np.empty(n_tx)
    setw = np.empty(n_tx)
    cross_im = np.empty(n_tx)
    for i in range(n_tx):
        m = moments(spec, i + 1)
        sebw[i], setw[i], cross_im[i] = m.sebw, m.setw, m.cross_term.imag

    scale = scenario.rcs_sq * (scenario.sample_rate * scenario.total_power
                               / scenario.noise_var_clutter) * rho[:, None]
    a = 8 * np.pi**2 * scale * sebw[:, None]
    b = 4 * np.pi * scale * cross_im[:, None]
    d = 8 * np.pi**2 * scale * setw[:, None]
    return a, b, d
