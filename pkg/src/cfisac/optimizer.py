"""Constrained power-allocation solvers.

The ISAC problem maximizes the communication SINR subject to CRLB, box and
total-power constraints.  The equality constraint is handled by projecting
search directions onto the tangent space of the simplex; the inequality
constraints enter through a squared-hinge penalty whose factor grows
geometrically across outer loops.  Search directions come from a modified
Hestenes-Stiefel conjugate gradient with positivity safeguards, and steps
from an Armijo backtracking line search capped so iterates never leave the
nonnegative orthant.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np

from .crlb import EstimationInfeasibleError, FimWeights, crlb_traces, crlb_traces_and_grad

# Surrogate scale for CRLB terms when the FIM is not invertible at an
# intermediate iterate: a large finite violation keeps the line search
# defined while the step cap keeps rho nonnegative.
INFEASIBLE_SURROGATE = 1e6

MAX_BACKTRACKS = 200
DIRECTION_TOL = 1e-10
STEP_TOL = 1e-16


class LineSearchStagnation(RuntimeError):
    """Backtracking exceeded its budget; the iterate sits in a
    Lipschitz-discontinuity neighborhood and cannot make progress."""


@dataclass(frozen=True)
class Constraints:
    rho_min: np.ndarray
    rho_max: np.ndarray
    delta_l_sq: float    # m^2
    delta_v_sq: float    # (m/s)^2

    def __post_init__(self):
        object.__setattr__(self, "rho_min", np.asarray(self.rho_min, dtype=float))
        object.__setattr__(self, "rho_max", np.asarray(self.rho_max, dtype=float))
        if self.rho_min.shape != self.rho_max.shape:
            raise ValueError("rho_min and rho_max must have equal length")
        if np.any(self.rho_min < 0) or np.any(self.rho_min >= self.rho_max):
            raise ValueError("need 0 <= rho_min < rho_max elementwise")
        if self.rho_min.sum() > 1.0 or self.rho_max.sum() < 1.0:
            raise ValueError("box bounds do not intersect the unit simplex")
        if not (self.delta_l_sq > 0 and self.delta_v_sq > 0):
            raise ValueError("CRLB thresholds must be positive")


@dataclass(frozen=True)
class SolverConfig:
    eps_mu: float = 1e-3          # penalty stop threshold
    eps_th: float = 1e-11         # normalized termination
    eps_l: float = 1e-3           # ILS sufficient-decrease control
    eps_upsilon: float = 0.9      # initial-step fraction of the bound
    sigma_upsilon: float = 0.5    # backtracking factor
    mu_1: float = 1e4             # initial penalty factor
    phi: float = 10.0             # penalty scaling
    upsilon_0: float = 2e-5       # fixed step for the normalized benchmarks
    eps_d: float = 1e-12          # direction normalization guard
    max_outer: int = 30
    max_inner: int = 200_000
    window_s: int = 20            # penalty window for the fixed-step solvers
    iter_cap: int = 400_000       # hard iteration cap I for the fixed-step solvers

    def __post_init__(self):
        if not 0 < self.eps_l < 1:
            raise ValueError("eps_l must lie in (0, 1)")
        if not 0 < self.sigma_upsilon < 1:
            raise ValueError("sigma_upsilon must lie in (0, 1)")
        if not self.phi > 1:
            raise ValueError("phi must exceed 1")
        if not 0 < self.eps_upsilon <= 1:
            raise ValueError("eps_upsilon must lie in (0, 1]")


@dataclass
class IterationRecord:
    iteration: int
    mu: float
    objective: float
    sinr_gain: float        # rho^T g (SINR up to the delta scalar)
    trace_l: float
    trace_v: float
    penalty: float          # mu * alpha
    step: float
    deflection: float
    restarted: bool
    rho: np.ndarray
    direction_sum: float
    armijo_margin: float    # L_next - L - eps_l * step * d^T grad, <= 0 when accepted
    deflection_ok: bool     # all positivity conditions held when deflection != 0


@dataclass
class SolveTrace:
    solver: str
    records: list[IterationRecord]
    rho: np.ndarray
    converged: bool
    inner_iterations: int
    outer_iterations: int
    final_mu: float
    final_penalty: float
    termination: str

    @property
    def final_record(self) -> IterationRecord:
        return self.records[-1]


def projection_matrix(n: int) -> np.ndarray:
    """Theta = I - 11^T/N, projector onto the zero space of the ones vector."""
    if n < 2:
        raise ValueError("projection needs dimension >= 2")
    return np.eye(n) - np.full((n, n), 1.0 / n)


def _project(vec: np.ndarray) -> np.ndarray:
    """Apply Theta without materializing it."""
    return vec - vec.mean()


def _hinge_terms(rho, constraints):
    lo = np.minimum(rho - constraints.rho_min, 0.0)
    hi = np.maximum(rho - constraints.rho_max, 0.0)
    return lo, hi


def _penalty_isac_terms(rho, weights: FimWeights, constraints: Constraints):
    """alpha, gradient and the CRLB traces (NaN when the FIM degenerates)."""
    rho = np.asarray(rho, dtype=float)
    lo, hi = _hinge_terms(rho, constraints)
    alpha = float(np.sum(lo**2) + np.sum(hi**2))
    grad = 2.0 * (lo + hi)

    try:
        trace_l, trace_v, grad_l, grad_v = crlb_traces_and_grad(weights, rho)
    except EstimationInfeasibleError:
        alpha += (INFEASIBLE_SURROGATE * constraints.delta_l_sq) ** 2
        alpha += (INFEASIBLE_SURROGATE * constraints.delta_v_sq) ** 2
        return alpha, grad, np.nan, np.nan
    f_l = trace_l - constraints.delta_l_sq
    f_v = trace_v - constraints.delta_v_sq
    if f_l > 0:
        alpha += f_l**2
        grad = grad + 2.0 * f_l * grad_l
    if f_v > 0:
        alpha += f_v**2
        grad = grad + 2.0 * f_v * grad_v
    return alpha, grad, trace_l, trace_v


def penalty_isac(rho, weights: FimWeights, constraints: Constraints):
    """Squared-hinge penalty alpha(rho) and its gradient (exponent q = 2).

    Infeasibility is reported through the value, never through errors: a
    non-invertible FIM maps the CRLB terms to a large finite surrogate with
    no gradient contribution.
    """
    alpha, grad, _, _ = _penalty_isac_terms(rho, weights, constraints)
    return alpha, grad


def penalty_isac_value(rho, weights: FimWeights, constraints: Constraints) -> float:
    """Value-only penalty used inside line-search backtracking."""
    rho = np.asarray(rho, dtype=float)
    lo, hi = _hinge_terms(rho, constraints)
    alpha = float(np.sum(lo**2) + np.sum(hi**2))
    try:
        trace_l, trace_v = crlb_traces(weights, rho)
    except EstimationInfeasibleError:
        return (alpha + (INFEASIBLE_SURROGATE * constraints.delta_l_sq) ** 2
                + (INFEASIBLE_SURROGATE * constraints.delta_v_sq) ** 2)
    alpha += max(trace_l - constraints.delta_l_sq, 0.0) ** 2
    alpha += max(trace_v - constraints.delta_v_sq, 0.0) ** 2
    return alpha


def _penalty_sensing_terms(rho, weights, constraints):
    alpha, grad, trace_l, trace_v = _penalty_isac_terms(rho, weights, constraints)
    excess = max(float(np.sum(rho)) - 1.0, 0.0)
    if excess > 0:
        alpha += excess**2
        grad = grad + 2.0 * excess
    return alpha, grad, trace_l, trace_v


def penalty_sensing(rho, weights, constraints):
    """Pure-sensing penalty: ISAC hinges plus the total-power budget hinge."""
    alpha, grad, _, _ = _penalty_sensing_terms(rho, weights, constraints)
    return alpha, grad


def penalty_sensing_value(rho, weights, constraints):
    alpha = penalty_isac_value(rho, weights, constraints)
    return alpha + max(float(np.sum(rho)) - 1.0, 0.0) ** 2


def step_bound(rho: np.ndarray, d: np.ndarray) -> float:
    """Largest step keeping rho + step*d nonnegative; inf if d >= 0."""
    neg = d < 0
    if not np.any(neg):
        return np.inf
    return float(np.min(rho[neg] / -d[neg]))


def ils_step(rho, d, objective, l_current, grad_current, config: SolverConfig,
             upsilon_init: float | None = None):
    """Armijo backtracking with the nonnegativity step cap.

    ``objective`` maps rho to L; the slope uses the gradient at the current
    iterate.  Returns (step, rho_next, L_next).  Raises LineSearchStagnation
    after the backtrack budget is exhausted.
    """
    rho = np.asarray(rho, dtype=float)
    d = np.asarray(d, dtype=float)
    slope = float(d @ grad_current)
    if slope > 0:
        raise ValueError("search direction is not a descent direction")
    bound = step_bound(rho, d)
    if bound == 0.0:
        raise LineSearchStagnation("a zero component blocks the search direction")
    if upsilon_init is None:
        if not np.isfinite(bound):
            raise ValueError("projected direction has no negative entry; cannot bound the step")
        upsilon = config.eps_upsilon * bound
    else:
        upsilon = min(config.eps_upsilon * bound, upsilon_init)
    for _ in range(MAX_BACKTRACKS):
        rho_next = rho + upsilon * d
        l_next = objective(rho_next)
        if l_next - l_current <= config.eps_l * upsilon * slope:
            return upsilon, rho_next, l_next
        upsilon *= config.sigma_upsilon
    raise LineSearchStagnation(
        f"no acceptable step within {MAX_BACKTRACKS} backtracks (last step {upsilon:.3e})")


def mcg_direction(prev_d, grad_prev, grad_next, restart_counter: int, n_force: int,
                  project: bool = True):
    """Modified HS conjugate direction with safeguards.

    Returns (d_next, deflection, restart_counter, deflection_ok).  The
    deflection is used only when the HS numerator and denominator and the
    bound margin are all positive; degenerate denominators and the forced
    restart after ``n_force`` consecutive deflected steps route to the
    steepest-descent restart.
    """
    prev_d = np.asarray(prev_d, dtype=float)
    grad_next = np.asarray(grad_next, dtype=float)
    g_proj = _project(grad_next) if project else grad_next
    q = g_proj - (_project(grad_prev) if project else np.asarray(grad_prev, dtype=float))

    num = float(grad_next @ q)
    den = float(prev_d @ q)
    ok = False
    deflection = 0.0
    if num > 0 and den > 0:
        hs = num / den
        den_b = float(prev_d @ grad_next)
        gtg = float(grad_next @ g_proj)
        bound_abs = np.inf if den_b == 0.0 else abs(gtg / den_b)
        if bound_abs - hs > 0:
            deflection = hs
            ok = True

    if ok:
        restart_counter += 1
        if restart_counter >= n_force:
            deflection = 0.0
            restart_counter = 0
            ok = False
    else:
        restart_counter = 0

    d_next = -g_proj + deflection * prev_d
    # Numerical safety: a non-descent direction forces a restart.
    if float(d_next @ grad_next) > 0:
        d_next = -g_proj
        deflection = 0.0
        ok = False
        restart_counter = 0
    return d_next, deflection, restart_counter, ok


def _renormalize(rho: np.ndarray) -> np.ndarray:
    """Pull roundoff drift out of the simplex iterate.

    The update preserves the sum and nonnegativity in exact arithmetic;
    this only removes accumulation at the 1e-16 level.
    """
    rho = rho.copy()
    rho[rho < 0] = np.where(rho[rho < 0] > -1e-13, 0.0, rho[rho < 0])
    if np.any(rho < 0):
        raise RuntimeError("iterate left the nonnegative orthant")
    drift = rho.sum() - 1.0
    if drift != 0.0:
        rho[np.argmax(rho)] -= drift
    return rho


def _make_record(i, mu, l_val, rho, weights, constraints, step, deflection,
                 restarted, d_sum, armijo_margin, deflection_ok, alpha,
                 trace_l, trace_v):
    gain = float(rho @ weights.channel_gain)
    return IterationRecord(iteration=i, mu=mu, objective=l_val, sinr_gain=gain,
                           trace_l=trace_l, trace_v=trace_v, penalty=mu * alpha,
                           step=step, deflection=deflection, restarted=restarted,
                           rho=rho.copy(), direction_sum=d_sum,
                           armijo_margin=armijo_margin, deflection_ok=deflection_ok)


def _validate_init(rho_init, n):
    rho = np.asarray(rho_init, dtype=float)
    if rho.shape != (n,):
        raise ValueError(f"rho_init must have length {n}")
    if abs(rho.sum() - 1.0) > 1e-9:
        raise ValueError("rho_init must sum to 1")
    if np.any(rho <= 0):
        raise ValueError("rho_init must be strictly positive")
    return rho


def _solve_projected_ils(weights, constraints, config, rho_init,
                         use_hs: bool, name: str) -> SolveTrace:
    """Shared engine for PP-MCG-ILS (use_hs) and PP-MSD-ILS."""
    g = weights.channel_gain
    n = weights.n_tx
    rho = _validate_init(rho_init, n)
    mu = config.mu_1
    records: list[IterationRecord] = []
    total_iter = 0
    converged = False
    termination = "max_outer"

    def evaluate(r, mu):
        alpha, grad_alpha, tl, tv = _penalty_isac_terms(r, weights, constraints)
        l_val = -float(r @ g) + mu * alpha
        return l_val, -g + mu * grad_alpha, alpha, tl, tv

    l_cur, grad_cur, alpha_cur, tl_cur, tv_cur = evaluate(rho, mu)
    d = -_project(grad_cur)
    counter = 0
    records.append(_make_record(0, mu, l_cur, rho, weights, constraints, 0.0, 0.0,
                                True, float(d.sum()), 0.0, False, alpha_cur,
                                tl_cur, tv_cur))

    for outer in range(1, config.max_outer + 1):
        objective = lambda r: -float(r @ g) + mu * penalty_isac_value(r, weights, constraints)
        stagnated = False
        restart_tried = False
        for _ in range(config.max_inner):
            if np.linalg.norm(d) <= DIRECTION_TOL:
                break
            try:
                step, rho_next, l_next = ils_step(rho, d, objective, l_cur, grad_cur, config)
            except LineSearchStagnation:
                if restart_tried:
                    stagnated = True
                    break
                # Retry once from steepest descent before giving up on this mu.
                d = -_project(grad_cur)
                counter = 0
                restart_tried = True
                continue
            restart_tried = False
            rho_next = _renormalize(rho_next)
            total_iter += 1
            margin = l_next - l_cur - config.eps_l * step * float(d @ grad_cur)
            terminate = abs(l_next - l_cur) <= config.eps_th * abs(l_next)

            grad_prev = grad_cur
            l_cur, grad_cur, alpha_cur, tl_cur, tv_cur = evaluate(rho_next, mu)
            if use_hs and not terminate:
                d, deflection, counter, ok = mcg_direction(d, grad_prev, grad_cur, counter, n)
            else:
                d, deflection, ok = -_project(grad_cur), 0.0, False
                counter = 0
            records.append(_make_record(total_iter, mu, l_cur, rho_next, weights,
                                        constraints, step, deflection, deflection == 0.0,
                                        float(d.sum()), margin, ok, alpha_cur,
                                        tl_cur, tv_cur))
            rho = rho_next
            if terminate:
                break
        # Exhausting the inner budget also counts as inner termination; the
        # penalty test decides whether another (stiffer) round is needed.
        if mu * alpha_cur < config.eps_mu:
            converged = True
            termination = "penalty_converged"
            break
        if outer == config.max_outer:
            termination = "line_search_stagnation" if stagnated else "max_outer"
            break
        mu *= config.phi
        l_cur, grad_cur, alpha_cur, tl_cur, tv_cur = evaluate(rho, mu)
        d = -_project(grad_cur)
        counter = 0

    return SolveTrace(solver=name, records=records, rho=rho.copy(), converged=converged,
                      inner_iterations=total_iter, outer_iterations=outer,
                      final_mu=mu, final_penalty=mu * alpha_cur, termination=termination)


def solve_pp_mcg_ils(weights, constraints, config=None, rho_init=None) -> SolveTrace:
    """Penalty + projection modified CG with inexact line search (Algorithm-1 style)."""
    config = config or SolverConfig()
    if rho_init is None:
        rho_init = np.full(weights.n_tx, 1.0 / weights.n_tx)
    return _solve_projected_ils(weights, constraints, config, rho_init,
                                use_hs=True, name="pp-mcg-ils")


def solve_pp_msd_ils(weights, constraints, config=None, rho_init=None) -> SolveTrace:
    """Steepest-descent variant: deflection identically zero."""
    config = config or SolverConfig()
    if rho_init is None:
        rho_init = np.full(weights.n_tx, 1.0 / weights.n_tx)
    return _solve_projected_ils(weights, constraints, config, rho_init,
                                use_hs=False, name="pp-msd-ils")


def _solve_projected_fixed(weights, constraints, config, rho_init, use_hs: bool,
                           name: str) -> SolveTrace:
    """Fixed-step normalized benchmarks PP-NCG / PP-NSD."""
    g = weights.channel_gain
    n = weights.n_tx
    rho = _validate_init(rho_init, n)
    mu = config.mu_1
    records: list[IterationRecord] = []
    total_iter = 0
    converged = False
    termination = "max_outer"

    def evaluate(r, mu):
        alpha, grad_alpha, tl, tv = _penalty_isac_terms(r, weights, constraints)
        l_val = -float(r @ g) + mu * alpha
        return l_val, -g + mu * grad_alpha, alpha, tl, tv

    def normalize(vec):
        return vec / (np.linalg.norm(vec) + config.eps_d)

    l_cur, grad_cur, alpha_cur, tl_cur, tv_cur = evaluate(rho, mu)
    d = normalize(-_project(grad_cur))
    counter = 0
    # Rolling window of (alpha, rho) over the last S iterates; fixed steps
    # orbit the minimizer, so the stop test uses the best point seen lately.
    window = deque([(alpha_cur, rho.copy())], maxlen=config.window_s)
    records.append(_make_record(0, mu, l_cur, rho, weights, constraints, 0.0, 0.0,
                                True, float(d.sum()), 0.0, False, alpha_cur,
                                tl_cur, tv_cur))

    outer = 0
    while outer < config.max_outer:
        outer += 1
        best_l = l_cur
        stall = 0
        for _ in range(config.max_inner):
            if total_iter >= config.iter_cap:
                break
            step = min(config.eps_upsilon * step_bound(rho, d), config.upsilon_0)
            rho_next = _renormalize(rho + step * d)
            total_iter += 1
            l_prev = l_cur
            grad_prev = grad_cur
            l_cur, grad_cur, alpha_cur, tl_cur, tv_cur = evaluate(rho_next, mu)
            # The fixed step cannot shrink, so the iterate eventually orbits
            # the minimizer without the successive-difference test firing;
            # a long stretch with no new best objective ends the phase too.
            if l_cur < best_l - config.eps_th * abs(best_l):
                best_l = l_cur
                stall = 0
            else:
                stall += 1
            terminate = (abs(l_cur - l_prev) <= config.eps_th * abs(l_cur)
                         or stall >= 10 * config.window_s)
            window.append((alpha_cur, rho_next))
            if use_hs and not terminate:
                raw, deflection, counter, ok = mcg_direction(d, grad_prev, grad_cur, counter, n)
                d = normalize(raw)
            else:
                d, deflection, ok = normalize(-_project(grad_cur)), 0.0, False
                counter = 0
            records.append(_make_record(total_iter, mu, l_cur, rho_next, weights,
                                        constraints, step, deflection, deflection == 0.0,
                                        float(d.sum()), 0.0, ok, alpha_cur,
                                        tl_cur, tv_cur))
            rho = rho_next
            if terminate:
                break
        # Budget exhaustion counts as inner termination too; the windowed
        # penalty test decides whether to stop or stiffen the penalty.
        best_alpha, best_rho = min(window, key=lambda item: item[0])
        if mu * best_alpha < config.eps_mu:
            converged = True
            termination = "penalty_converged"
            break
        if total_iter >= config.iter_cap:
            termination = "iter_cap"
            rho = best_rho
            break
        mu *= config.phi
        l_cur, grad_cur, alpha_cur, tl_cur, tv_cur = evaluate(rho, mu)
        d = normalize(-_project(grad_cur))
        counter = 0

    return SolveTrace(solver=name, records=records, rho=rho.copy(), converged=converged,
                      inner_iterations=total_iter, outer_iterations=outer,
                      final_mu=mu, final_penalty=mu * alpha_cur, termination=termination)


def solve_pp_ncg(weights, constraints, config=None, rho_init=None) -> SolveTrace:
    config = config or SolverConfig()
    if rho_init is None:
        rho_init = np.full(weights.n_tx, 1.0 / weights.n_tx)
    return _solve_projected_fixed(weights, constraints, config, rho_init,
                                  use_hs=True, name="pp-ncg")


def solve_pp_nsd(weights, constraints, config=None, rho_init=None) -> SolveTrace:
    config = config or SolverConfig()
    if rho_init is None:
        rho_init = np.full(weights.n_tx, 1.0 / weights.n_tx)
    return _solve_projected_fixed(weights, constraints, config, rho_init,
                                  use_hs=False, name="pp-nsd")


def solve_p_ncg_ils(weights, constraints, config=None, rho_init=None) -> SolveTrace:
    """Pure-sensing total-power minimization (normalized CG + ILS).

    The total-power equality relaxes to an inequality handled by its own
    hinge; directions are unprojected, l2-normalized negative gradients
    with the HS deflection.
    """
    config = config or SolverConfig()
    n = weights.n_tx
    if rho_init is None:
        rho_init = np.full(n, 1.0 / n)
    rho = _validate_init(rho_init, n)
    mu = config.mu_1
    records: list[IterationRecord] = []
    total_iter = 0
    converged = False
    termination = "max_outer"

    def evaluate(r, mu):
        alpha, grad_alpha, tl, tv = _penalty_sensing_terms(r, weights, constraints)
        l_val = float(np.sum(r)) + mu * alpha
        return l_val, 1.0 + mu * grad_alpha, alpha, tl, tv

    def normalize(vec):
        return vec / (np.linalg.norm(vec) + config.eps_d)

    l_cur, grad_cur, alpha_cur, tl_cur, tv_cur = evaluate(rho, mu)
    d = normalize(-grad_cur)
    counter = 0
    records.append(_make_record(0, mu, l_cur, rho, weights, constraints, 0.0, 0.0,
                                True, float(d.sum()), 0.0, False, alpha_cur,
                                tl_cur, tv_cur))

    for outer in range(1, config.max_outer + 1):
        objective = lambda r: float(np.sum(r)) + mu * penalty_sensing_value(r, weights, constraints)
        stagnated = False
        restart_tried = False
        for _ in range(config.max_inner):
            if np.linalg.norm(d) <= DIRECTION_TOL:
                break
            try:
                step, rho_next, l_next = ils_step(rho, d, objective, l_cur, grad_cur,
                                                  config, upsilon_init=config.upsilon_0)
            except LineSearchStagnation:
                if restart_tried:
                    stagnated = True
                    break
                d = normalize(-grad_cur)
                counter = 0
                restart_tried = True
                continue
            restart_tried = False
            rho_next = np.maximum(rho_next, 0.0)
            total_iter += 1
            margin = l_next - l_cur - config.eps_l * step * float(d @ grad_cur)
            terminate = abs(l_next - l_cur) <= config.eps_th * abs(l_next)

            grad_prev = grad_cur
            l_cur, grad_cur, alpha_cur, tl_cur, tv_cur = evaluate(rho_next, mu)
            if not terminate:
                raw, deflection, counter, ok = mcg_direction(d, grad_prev, grad_cur,
                                                             counter, n, project=False)
                d = normalize(raw)
            else:
                d, deflection, ok = normalize(-grad_cur), 0.0, False
                counter = 0
            records.append(_make_record(total_iter, mu, l_cur, rho_next, weights,
                                        constraints, step, deflection, deflection == 0.0,
                                        float(d.sum()), margin, ok, alpha_cur,
                                        tl_cur, tv_cur))
            rho = rho_next
            if terminate:
                break
        if mu * alpha_cur < config.eps_mu:
            converged = True
            termination = "penalty_converged"
            break
        if outer == config.max_outer:
            termination = "line_search_stagnation" if stagnated else "max_outer"
            break
        mu *= config.phi
        l_cur, grad_cur, alpha_cur, tl_cur, tv_cur = evaluate(rho, mu)
        d = normalize(-grad_cur)
        counter = 0

    return SolveTrace(solver="p-ncg-ils", records=records, rho=rho.copy(),
                      converged=converged, inner_iterations=total_iter,
                      outer_iterations=outer, final_mu=mu,
                      final_penalty=mu * alpha_cur, termination=termination)


SOLVERS = {
    "pp-mcg-ils": solve_pp_mcg_ils,
    "pp-msd-ils": solve_pp_msd_ils,
    "pp-ncg": solve_pp_ncg,
    "pp-nsd": solve_pp_nsd,
    "p-ncg-ils": solve_p_ncg_ils,
}
