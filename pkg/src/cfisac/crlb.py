"""Fisher information blocks and CRLB matrices for joint location/velocity.

Two evaluation routes are kept deliberately separate:

* the direct route assembles the 2x2 blocks P, V, Y by double sums over all
  (transmitter, receiver) paths and inverts the Schur complements;
* the reformulated route expresses every block entry as a weighted sum of
  the power allocation vector and evaluates the CRLB entries as rational
  functions of quadratic forms in rho.

Both must agree; tests rely on that redundancy.  Gradients of the CRLB
traces are assembled analytically from the weight vectors via the matrix
differential d tr(X^{-1}) = -tr(X^{-1} dX X^{-1}).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scene import Scenario, SpreadParams, spread_params
from .waveform import WaveformSpec, abd_coefficients

COND_LIMIT = 1e12


class EstimationInfeasibleError(ArithmeticError):
    """FIM is singular or ill-conditioned: geometry/power make the target
    unidentifiable, so no meaningful CRLB exists."""


@dataclass(frozen=True)
class FimBlocks:
    p: np.ndarray   # 2x2 location block
    v: np.ndarray   # 2x2 cross block
    y: np.ndarray   # 2x2 velocity block


@dataclass(frozen=True)
class CrlbPair:
    c_l: np.ndarray      # 2x2, m^2
    c_v: np.ndarray      # 2x2, (m/s)^2
    trace_l: float
    trace_v: float


def fim_blocks(spread: SpreadParams, abd) -> FimBlocks:
    """Exact double sums of Eq.-level FIM entries over all paths."""
    a, b, d = abd
    be, ze, et, ka = spread.beta, spread.zeta, spread.eta, spread.kappa
    xi, vr = spread.xi, spread.varrho

    p11 = np.sum(be**2 * a + 2 * be * et * b + et**2 * d)
    p12 = np.sum(be * ze * a + (be * ka + ze * et) * b + et * ka * d)
    p22 = np.sum(ze**2 * a + 2 * ze * ka * b + ka**2 * d)

    v11 = np.sum(be * xi * b + et * xi * d)
    v12 = np.sum(be * vr * b + et * vr * d)
    v21 = np.sum(ze * xi * b + ka * xi * d)
    v22 = np.sum(ze * vr * b + ka * vr * d)

    y11 = np.sum(xi**2 * d)
    y12 = np.sum(xi * vr * d)
    y22 = np.sum(vr**2 * d)

    return FimBlocks(p=np.array([[p11, p12], [p12, p22]]),
                     v=np.array([[v11, v12], [v21, v22]]),
                     y=np.array([[y11, y12], [y12, y22]]))


@dataclass(frozen=True)
class FimWeights:
    """Per-transmitter weight vectors making the FIM entries linear in rho.

    ``wp``, ``wv``, ``wy`` have shape (2, 2, N) with entry [i, j] the weight
    vector of the corresponding block element.  The N x N matrices express
    the block determinants and cofactor mixes as quadratic forms in rho.
    """

    wp: np.ndarray
    wv: np.ndarray
    wy: np.ndarray
    w_y: np.ndarray         # |Y| = rho^T w_y rho
    w12_y: np.ndarray
    w22_y: np.ndarray
    w11_y_breve: np.ndarray
    w21_y_breve: np.ndarray
    w_p: np.ndarray         # |P| = rho^T w_p rho
    w12_p: np.ndarray
    w22_p: np.ndarray
    w11_p_breve: np.ndarray
    w21_p_breve: np.ndarray
    channel_gain: np.ndarray

    @property
    def n_tx(self) -> int:
        return self.wp.shape[2]


def extract_weights(scenario: Scenario, spread: SpreadParams | None = None,
                    spec: WaveformSpec | None = None) -> FimWeights:
    """Factor the power allocation out of every FIM entry.

    Evaluates the per-path coefficients at unit allocation and reduces over
    receivers only, leaving N-vectors whose inner product with rho
    reproduces the direct block entries.
    """
    if spread is None:
        spread = spread_params(scenario)
    if spec is None:
        spec = WaveformSpec(sample_rate=scenario.sample_rate)
    ones = np.ones(scenario.n_tx)
    a, b, d = abd_coefficients(spec, scenario, ones)
    be, ze, et, ka = spread.beta, spread.zeta, spread.eta, spread.kappa
    xi, vr = spread.xi, spread.varrho

    def rowsum(x):
        return np.sum(x, axis=1)

    wp = np.empty((2, 2, scenario.n_tx))
    wv = np.empty((2, 2, scenario.n_tx))
    wy = np.empty((2, 2, scenario.n_tx))

    wp[0, 0] = rowsum(be**2 * a + 2 * be * et * b + et**2 * d)
    wp[0, 1] = rowsum(be * ze * a + (be * ka + ze * et) * b + et * ka * d)
    wp[1, 0] = wp[0, 1]
    wp[1, 1] = rowsum(ze**2 * a + 2 * ze * ka * b + ka**2 * d)

    wv[0, 0] = rowsum(be * xi * b + et * xi * d)
    wv[0, 1] = rowsum(be * vr * b + et * vr * d)
    wv[1, 0] = rowsum(ze * xi * b + ka * xi * d)
    wv[1, 1] = rowsum(ze * vr * b + ka * vr * d)

    wy[0, 0] = rowsum(xi**2 * d)
    wy[0, 1] = rowsum(xi * vr * d)
    wy[1, 0] = wy[0, 1]
    wy[1, 1] = rowsum(vr**2 * d)

    def outer(u, v):
        return np.outer(u, v)

    w_y = outer(wy[0, 0], wy[1, 1]) - outer(wy[0, 1], wy[1, 0])
    w12_y = outer(wv[0, 0], wy[1, 1]) - outer(wv[0, 1], wy[1, 0])
    w22_y = outer(wv[1, 0], wy[1, 1]) - outer(wv[1, 1], wy[1, 0])
    w11_y_breve = outer(wv[0, 1], wy[0, 0]) - outer(wv[0, 0], wy[0, 1])
    w21_y_breve = outer(wv[1, 1], wy[0, 0]) - outer(wv[1, 0], wy[0, 1])

    w_p = outer(wp[0, 0], wp[1, 1]) - outer(wp[0, 1], wp[1, 0])
    w12_p = outer(wv[0, 0], wp[1, 1]) - outer(wv[1, 0], wp[1, 0])
    w22_p = outer(wv[0, 1], wp[1, 1]) - outer(wv[1, 1], wp[1, 0])
    w11_p_breve = outer(wv[1, 0], wp[0, 0]) - outer(wv[0, 0], wp[0, 1])
    w21_p_breve = outer(wv[1, 1], wp[0, 0]) - outer(wv[0, 1], wp[0, 1])

    return FimWeights(wp=wp, wv=wv, wy=wy,
                      w_y=w_y, w12_y=w12_y, w22_y=w22_y,
                      w11_y_breve=w11_y_breve, w21_y_breve=w21_y_breve,
                      w_p=w_p, w12_p=w12_p, w22_p=w22_p,
                      w11_p_breve=w11_p_breve, w21_p_breve=w21_p_breve,
                      channel_gain=np.array(scenario.channel_gain))


def blocks_from_weights(weights: FimWeights, rho: np.ndarray) -> FimBlocks:
    rho = np.asarray(rho, dtype=float)
    return FimBlocks(p=weights.wp @ rho, v=weights.wv @ rho, y=weights.wy @ rho)


def _inv2(m: np.ndarray, label: str) -> tuple[np.ndarray, float]:
    """Adjugate/determinant inverse of a 2x2 with conditioning guard."""
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    scale = np.max(np.abs(m))
    if scale == 0.0 or abs(det) < scale**2 / COND_LIMIT:
        raise EstimationInfeasibleError(f"{label} is singular or ill-conditioned")
    inv = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / det
    return inv, det


def _check_pd(m: np.ndarray, label: str):
    if not (m[0, 0] > 0 and m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0] > 0):
        raise EstimationInfeasibleError(f"{label} is not positive definite")


def crlb_direct(blocks: FimBlocks) -> CrlbPair:
    """CRLB matrices by Schur-complement inversion of the 4x4 FIM."""
    inv_y, _ = _inv2(blocks.y, "Y")
    u = blocks.p - blocks.v @ inv_y @ blocks.v.T
    _check_pd(u, "location Schur complement")
    c_l, _ = _inv2(u, "location Schur complement")

    inv_p, _ = _inv2(blocks.p, "P")
    h = blocks.y - blocks.v.T @ inv_p @ blocks.v
    _check_pd(h, "velocity Schur complement")
    c_v, _ = _inv2(h, "velocity Schur complement")

    return CrlbPair(c_l=c_l, c_v=c_v,
                    trace_l=float(np.trace(c_l)), trace_v=float(np.trace(c_v)))


def crlb_reformulated(weights: FimWeights, rho) -> CrlbPair:
    """CRLB matrices from the rho-weighted rational form.

    Every u_ij / h_ij is built from quadratic forms in rho through the
    precomputed weight matrices; must coincide with crlb_direct.
    """
    rho = np.asarray(rho, dtype=float)
    p = weights.wp @ rho
    v = weights.wv @ rho
    y = weights.wy @ rho

    det_y = rho @ weights.w_y @ rho
    scale_y = np.max(np.abs(y))
    if scale_y == 0.0 or abs(det_y) < scale_y**2 / COND_LIMIT:
        raise EstimationInfeasibleError("|Y| quadratic form vanishes")

    q = lambda w: rho @ w @ rho
    u11 = p[0, 0] - (v[0, 0] * q(weights.w12_y) + v[0, 1] * q(weights.w11_y_breve)) / det_y
    u12 = p[0, 1] - (v[1, 0] * q(weights.w12_y) + v[1, 1] * q(weights.w11_y_breve)) / det_y
    u21 = p[1, 0] - (v[1, 0] * q(weights.w12_y) + v[1, 1] * q(weights.w11_y_breve)) / det_y
    u22 = p[1, 1] - (v[1, 0] * q(weights.w22_y) + v[1, 1] * q(weights.w21_y_breve)) / det_y
    det_u = u11 * u22 - u12 * u21
    scale_u = max(abs(u11), abs(u12), abs(u21), abs(u22))
    if scale_u == 0.0 or abs(det_u) < scale_u**2 / COND_LIMIT or not (u11 > 0 and det_u > 0):
        raise EstimationInfeasibleError("|U| quadratic form vanishes or U not PD")
    c_l = np.array([[u22, -u12], [-u21, u11]]) / det_u

    det_p = rho @ weights.w_p @ rho
    scale_p = np.max(np.abs(p))
    if scale_p == 0.0 or abs(det_p) < scale_p**2 / COND_LIMIT:
        raise EstimationInfeasibleError("|P| quadratic form vanishes")

    h11 = y[0, 0] - (v[0, 0] * q(weights.w12_p) + v[1, 0] * q(weights.w11_p_breve)) / det_p
    h12 = y[0, 1] - (v[0, 1] * q(weights.w12_p) + v[1, 1] * q(weights.w11_p_breve)) / det_p
    h21 = y[1, 0] - (v[0, 1] * q(weights.w12_p) + v[1, 1] * q(weights.w11_p_breve)) / det_p
    h22 = y[1, 1] - (v[0, 1] * q(weights.w22_p) + v[1, 1] * q(weights.w21_p_breve)) / det_p
    det_h = h11 * h22 - h12 * h21
    scale_h = max(abs(h11), abs(h12), abs(h21), abs(h22))
    if scale_h == 0.0 or abs(det_h) < scale_h**2 / COND_LIMIT or not (h11 > 0 and det_h > 0):
        raise EstimationInfeasibleError("|H| quadratic form vanishes or H not PD")
    c_v = np.array([[h22, -h12], [-h21, h11]]) / det_h

    return CrlbPair(c_l=c_l, c_v=c_v,
                    trace_l=float(c_l[0, 0] + c_l[1, 1]),
                    trace_v=float(c_v[0, 0] + c_v[1, 1]))


def crlb_traces(weights: FimWeights, rho) -> tuple[float, float]:
    """Fast trace-only evaluation used inside penalty line searches."""
    pair = crlb_direct(blocks_from_weights(weights, rho))
    return pair.trace_l, pair.trace_v


def crlb_traces_and_grad(weights: FimWeights, rho):
    """Traces of C_L, C_V and their analytic gradients w.r.t. rho.

    Uses d tr(X^{-1}) = -tr(X^{-2} dX) with the per-transmitter block
    differentials read off the weight vectors.
    """
    rho = np.asarray(rho, dtype=float)
    blocks = blocks_from_weights(weights, rho)
    p, v, y = blocks.p, blocks.v, blocks.y

    inv_y, _ = _inv2(y, "Y")
    u = p - v @ inv_y @ v.T
    _check_pd(u, "location Schur complement")
    inv_u, _ = _inv2(u, "location Schur complement")

    inv_p, _ = _inv2(p, "P")
    h = y - v.T @ inv_p @ v
    _check_pd(h, "velocity Schur complement")
    inv_h, _ = _inv2(h, "velocity Schur complement")

    trace_l = float(np.trace(inv_u))
    trace_v = float(np.trace(inv_h))

    # d tr(U^-1) = -tr(U^-2 dU) with dU = dP - dV A^T - A dV^T + A dY A^T,
    # A = V Y^-1.  Folding the fixed 2x2 factors into the trace leaves one
    # contraction per block against the (2, 2, N) weight slices; the two dV
    # terms are transposes of each other, hence the factor 2.
    viy = v @ inv_y                       # V Y^-1
    vip = inv_p @ v                       # P^-1 V
    inv_u2 = inv_u @ inv_u
    inv_h2 = inv_h @ inv_h

    m_v = viy.T @ inv_u2
    grad_l = -(np.einsum("ij,jin->n", inv_u2, weights.wp)
               - 2.0 * np.einsum("ij,jin->n", m_v, weights.wv)
               + np.einsum("ij,jin->n", m_v @ viy, weights.wy))
    m_h = inv_h2 @ vip.T
    grad_v = -(np.einsum("ij,jin->n", inv_h2, weights.wy)
               - 2.0 * np.einsum("ij,jin->n", m_h, weights.wv)
               + np.einsum("ij,jin->n", vip @ m_h, weights.wp))
    return trace_l, trace_v, grad_l, grad_v
