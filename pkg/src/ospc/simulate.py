"""Matrix-free time-domain integrators.

These loops advance actual state vectors with the same predictor and
corrector sweeps that the matrix modules encode, and exist to
cross-validate the assembled propagators (one step here must equal G z)
and to estimate empirical growth rates. A monodomain stepper with an
inhomogeneous right-boundary signal is included for temporal-order
studies.

Each trajectory runs single-threaded; independent trajectories share no
mutable state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .coeffs import SchemeSpec, bdf_weights, ext_weights, multirate_weights
from .discretize import GridSpec, coupling_matrices, second_difference
from .growth import blend_applies
from .multirate import COARSE, FINE, MultirateSpec, multirate_labels

OVERFLOW_LIMIT = 1e100

# time-dependent boundary value imposed at the right end of the monodomain grid
BoundarySignal = Callable[[float], float]


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Per-step times and max-norms of the full stacked state; the final
    state is the last finite one when the overflow guard trips."""

    times: np.ndarray
    norms: np.ndarray
    final_state: np.ndarray
    overflowed: bool = False


def monodomain_step(history, A, dx, nu, dt, k, gamma_fn, t, factor=None):
    """One BDFk step of u_t = nu u_xx on the monodomain grid, with
    u = gamma_fn(t) imposed at the right boundary.

    history holds the k most recent states, newest first. The boundary
    value enters through the eliminated column of the second-difference
    operator, i.e. as nu dt gamma(t)/dx^2 on the last dof.
    """
    beta = bdf_weights(k).beta
    if len(history) < k:
        raise ValueError(f"need {k} history levels, got {len(history)}")
    if factor is None:
        H = beta[0] * np.eye(A.shape[0]) + nu * dt * A
        factor = cho_factor(H)
    rhs = -sum(beta[l] * np.asarray(history[l - 1], dtype=float) for l in range(1, k + 1))
    rhs[-1] += nu * dt * gamma_fn(t) / dx**2
    return cho_solve(factor, rhs)


def run_monodomain(M, nu, dt, k, gamma_fn, history0, steps, t0=0.0):
    """Advance the monodomain problem `steps` steps from t0; history0
    holds u at t0, t0-dt, ... (newest first, k levels)."""
    dx = 1.0 / (M + 1)
    A = second_difference(M, dx)
    H = bdf_weights(k).beta[0] * np.eye(M) + nu * dt * A
    factor = cho_factor(H)
    hist = [np.asarray(h, dtype=float) for h in history0[:k]]
    times, norms = [], []
    for n in range(1, steps + 1):
        t = t0 + n * dt
        u = monodomain_step(hist, A, dx, nu, dt, k, gamma_fn, t, factor=factor)
        hist = [u] + hist[: k - 1]
        times.append(t)
        norms.append(float(np.max(np.abs(u))))
    return Trajectory(
        times=np.array(times), norms=np.array(norms), final_state=hist[0]
    )


def replicated_state(u_c, u_f, eta: int) -> np.ndarray:
    """Stacked state with every history level of each subdomain seeded by
    the same vector (eta=1 gives the singlerate 8-block layout)."""
    u_c = np.asarray(u_c, dtype=float)
    u_f = np.asarray(u_f, dtype=float)
    parts = [u_c if d == COARSE else u_f for d, _ in multirate_labels(eta)]
    return np.concatenate(parts)


def _check_norm(norm: float, step: int) -> bool:
    """True when the overflow guard should trip."""
    if np.isnan(norm):
        raise FloatingPointError(f"state became NaN at step {step}")
    return norm > OVERFLOW_LIMIT


def run_singlerate(scheme: SchemeSpec, grid: GridSpec, dt: float, z0, steps: int) -> Trajectory:
    """Explicit predictor + Q-corrector loop on the 8-block singlerate
    state; z0 is the converged state at the starting level."""
    if steps < 1:
        raise ValueError(f"steps={steps} must be >= 1")
    N = grid.N
    z0 = np.asarray(z0, dtype=float)
    if z0.shape != (8 * N,):
        raise ValueError(f"state length {z0.shape} does not match 8N={8 * N}")
    ops = coupling_matrices(grid, dt, bdf_weights(scheme.k).beta[0])
    beta = bdf_weights(scheme.k).padded(3)
    alpha = ext_weights(scheme.m).padded(3)
    Q, gamma = scheme.Q, scheme.gamma_blend

    u1 = [z0[2 * l * N : (2 * l + 1) * N].copy() for l in range(4)]
    u2 = [z0[(2 * l + 1) * N : (2 * l + 2) * N].copy() for l in range(4)]
    times, norms = [], []
    overflowed = False
    for n in range(1, steps + 1):
        bdf1 = -(beta[0] * u1[0] + beta[1] * u1[1] + beta[2] * u1[2])
        bdf2 = -(beta[0] * u2[0] + beta[1] * u2[1] + beta[2] * u2[2])
        p1 = ops.solve1(bdf1 + ops.J12 @ (alpha[0] * u2[0] + alpha[1] * u2[1] + alpha[2] * u2[2]))
        p2 = ops.solve2(bdf2 + ops.J21 @ (alpha[0] * u1[0] + alpha[1] * u1[1] + alpha[2] * u1[2]))
        iterates = [(p1, p2)]
        for q in range(1, Q + 1):
            if q == Q and blend_applies(Q, gamma):
                a1, a2 = iterates[-1]
                b1, b2 = iterates[-2]
                s1, s2 = gamma * a1 + (1 - gamma) * b1, gamma * a2 + (1 - gamma) * b2
            else:
                s1, s2 = iterates[-1]
            c1 = ops.solve1(bdf1 + ops.J12 @ s2)
            c2 = ops.solve2(bdf2 + ops.J21 @ s1)
            iterates.append((c1, c2))
        new1, new2 = iterates[-1]
        u1 = [new1] + u1[:3]
        u2 = [new2] + u2[:3]
        state = np.concatenate([v for pair in zip(u1, u2) for v in pair])
        norm = float(np.max(np.abs(state)))
        times.append(n * dt)
        norms.append(norm)
        if _check_norm(norm, n):
            overflowed = True
            break
    return Trajectory(
        times=np.array(times), norms=np.array(norms),
        final_state=np.concatenate([v for pair in zip(u1, u2) for v in pair]),
        overflowed=overflowed,
    )


def run_multirate(spec: MultirateSpec, z0, steps: int) -> Trajectory:
    """Explicit multirate loop: per coarse step, eta fine predictor
    sub-steps and one coarse solve, then Q corrector sweeps over all eta
    stages (matching the staged matrix composition)."""
    if steps < 1:
        raise ValueError(f"steps={steps} must be >= 1")
    eta, N = spec.eta, spec.grid.N
    labels = multirate_labels(eta)
    z0 = np.asarray(z0, dtype=float)
    if z0.shape != (len(labels) * N,):
        raise ValueError(f"state length {z0.shape} does not match {len(labels) * N}")
    beta0 = bdf_weights(spec.scheme.k).beta[0]
    ops = coupling_matrices(spec.grid, spec.dt_c, beta0, dt2=spec.dt_f)
    wt = multirate_weights(eta, spec.scheme.m)
    beta = bdf_weights(spec.scheme.k).padded(3)
    m, Q, gamma = spec.scheme.m, spec.scheme.Q, spec.scheme.gamma_blend

    state = {lab: z0[i * N : (i + 1) * N].copy() for i, lab in enumerate(labels)}
    times, norms = [], []
    overflowed = False

    def hist(d, off):
        # offsets relative to the step target t^n; off <= -1 lives in the
        # previous-level state, whose own labels sit one coarse step later
        return state[(d, off + 1)]

    for n in range(1, steps + 1):
        cur: dict = {}

        def fine_at(work, off):
            return work[(FINE, off)] if off > -1 else hist(FINE, off)

        def fine_bdf(work, tau):
            return -sum(beta[l - 1] * fine_at(work, tau - Fraction(l, eta)) for l in range(1, 4))

        # predictor: intermediate sub-steps, then the t^n fine and coarse solves
        for i in range(1, eta):
            tau = Fraction(i, eta) - 1
            coup = sum(wt.pred_fine[i - 1, l - 1] * hist(COARSE, Fraction(-l)) for l in range(1, m + 1))
            cur[(FINE, tau)] = ops.solve2(fine_bdf(cur, tau) + ops.J21 @ coup)
        coarse_bdf = -sum(beta[l - 1] * hist(COARSE, Fraction(-l)) for l in range(1, 4))
        coup_c = sum(wt.pred_coarse[l - 1] * hist(FINE, -1 - Fraction(l - 1, eta)) for l in range(1, m + 1))
        coup_f = sum(wt.pred_fine[eta - 1, l - 1] * hist(COARSE, Fraction(-l)) for l in range(1, m + 1))
        cur[(COARSE, Fraction(0))] = ops.solve1(coarse_bdf + ops.J12 @ coup_c)
        cur[(FINE, Fraction(0))] = ops.solve2(fine_bdf(cur, Fraction(0)) + ops.J21 @ coup_f)

        iterates = [cur]
        for q in range(1, Q + 1):
            if q == Q and blend_applies(Q, gamma):
                a, b = iterates[-1], iterates[-2]
                src = {lab: gamma * a[lab] + (1 - gamma) * b[lab] for lab in a}
            else:
                src = iterates[-1]
            work = dict(src)
            for i in range(1, eta):
                tau = Fraction(i, eta) - 1
                coup = (
                    wt.corr_fine[i - 1, 0] * work[(COARSE, Fraction(0))]
                    + wt.corr_fine[i - 1, 1] * hist(COARSE, Fraction(-1))
                    + wt.corr_fine[i - 1, 2] * hist(COARSE, Fraction(-2))
                )
                work[(FINE, tau)] = ops.solve2(fine_bdf(work, tau) + ops.J21 @ coup)
            c_old = work[(COARSE, Fraction(0))]
            f_old = work[(FINE, Fraction(0))]
            c_new = ops.solve1(coarse_bdf + ops.J12 @ f_old)
            f_new = ops.solve2(fine_bdf(work, Fraction(0)) + ops.J21 @ c_old)
            work[(COARSE, Fraction(0))] = c_new
            work[(FINE, Fraction(0))] = f_new
            iterates.append(work)

        final = iterates[-1]
        state = {
            (d, off): final[(d, off)] if off > -1 else state[(d, off + 1)]
            for d, off in labels
        }
        flat = np.concatenate([state[lab] for lab in labels])
        norm = float(np.max(np.abs(flat)))
        times.append(n * spec.dt_c)
        norms.append(norm)
        if _check_norm(norm, n):
            overflowed = True
            break
    return Trajectory(
        times=np.array(times), norms=np.array(norms),
        final_state=np.concatenate([state[lab] for lab in labels]),
        overflowed=overflowed,
    )


def empirical_growth_rate(traj: Trajectory, window: int) -> float:
    """Per-step growth factor (norm[-1]/norm[-1-window])^(1/window); for a
    trajectory dominated by one eigenvalue modulus this approaches the
    spectral radius of the propagator."""
    if window < 1:
        raise ValueError(f"window={window} must be >= 1")
    norms = traj.norms
    if len(norms) < window + 1:
        raise ValueError(f"trajectory too short ({len(norms)} norms) for window {window}")
    a, b = norms[-1 - window], norms[-1]
    if a == 0.0 or b == 0.0:
        raise ValueError("zero norm on the estimation window")
    if not (np.isfinite(a) and np.isfinite(b)):
        raise ValueError("non-finite norm on the estimation window")
    return float((b / a) ** (1.0 / window))
