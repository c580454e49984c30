"""Stability sweeps over the nondimensional timestep s = nu dt_c / dx^2.

The propagator depends on nu and dx only through s and the grid shape,
so assembly fixes nu = 1 and derives dt_c = s dx^2. Sweep points are
evaluated by a worker pool and written in a deterministic order
(lexicographic over (k, m, Q, gamma, eta, N, K), then ascending s), so
identical invocations produce byte-identical CSV files regardless of the
worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .coeffs import SchemeSpec, bdf_weights
from .discretize import GridSpec, coupling_matrices
from .multirate import MultirateSpec, corrector_matrix_multirate, predictor_matrix_multirate
from .singlerate import corrector_matrix, predictor_matrix
from .spectral import STABILITY_MARGIN, spectral_radius

CSV_COLUMNS = ("k", "m", "Q", "gamma", "eta", "N", "K", "s", "rho", "stable")


@dataclass(frozen=True)
class SweepSpec:
    """Parameter grid for one sweep: (k, m) scheme pairs, corrector
    counts, blend weights, timestep ratios, (N, K) grids, and the
    log-spaced s range."""

    schemes: tuple[tuple[int, int], ...]
    q_values: tuple[int, ...]
    gammas: tuple[float, ...] = (1.0,)
    etas: tuple[int, ...] = (1,)
    grids: tuple[tuple[int, int], ...] = ((32, 5),)
    s_min: float = 1e-2
    s_max: float = 1e6
    points: int = 200

    def __post_init__(self):
        if not self.s_min > 0:
            raise ValueError(f"s_min={self.s_min} must be positive")
        if not self.s_max > self.s_min:
            raise ValueError(f"s_max={self.s_max} must exceed s_min={self.s_min}")
        if self.points < 2:
            raise ValueError(f"points={self.points} must be >= 2")
        if not self.schemes:
            raise ValueError("at least one (k, m) scheme required")
        if not self.q_values:
            raise ValueError("at least one corrector count required")
        if any(q < 0 for q in self.q_values):
            raise ValueError("corrector counts must be >= 0")
        if any(eta < 1 for eta in self.etas):
            raise ValueError("timestep ratios must be >= 1")
        for k, m in self.schemes:
            SchemeSpec(k=k, m=m, Q=0)  # validates orders
        for N, K in self.grids:
            GridSpec(N=N, K=K)

    def s_values(self) -> np.ndarray:
        return np.logspace(math.log10(self.s_min), math.log10(self.s_max), self.points)


def growth_iterates(k: int, m: int, eta: int, N: int, K: int, s: float, max_q: int):
    """(plain, C): plain[q] = C^q P for q = 0..max_q, for the scheme and
    grid at nondimensional timestep s."""
    grid = GridSpec(N=N, K=K, nu=1.0)
    dt_c = s * grid.dx**2
    scheme = SchemeSpec(k=k, m=m, Q=0)
    if eta == 1:
        ops = coupling_matrices(grid, dt_c, bdf_weights(k).beta[0])
        P = predictor_matrix(scheme, grid, dt_c, ops)
        C = corrector_matrix(scheme, grid, dt_c, ops)
    else:
        mspec = MultirateSpec(scheme=scheme, grid=grid, eta=eta, dt_c=dt_c)
        P = predictor_matrix_multirate(mspec)
        C = corrector_matrix_multirate(mspec)
    plain = [P]
    for _ in range(max_q):
        plain.append(C @ plain[-1])
    return plain, C


def rho_from_iterates(plain: list, C: np.ndarray, Q: int, gamma: float) -> float:
    """Spectral radius of C^Q P, or of the blended-final-sweep variant
    C (gamma C^(Q-1) + (1-gamma) C^(Q-2)) P for even Q with gamma < 1."""
    if Q == 0:
        G = plain[0]
    elif gamma == 1.0 or Q % 2 == 1:
        G = plain[Q]
    else:
        G = C @ (gamma * plain[Q - 1] + (1.0 - gamma) * plain[Q - 2])
    return spectral_radius(G)


def _eval_task(args) -> tuple[float, ...]:
    k, m, gamma, eta, N, K, s, q_values = args
    plain, C = growth_iterates(k, m, eta, N, K, s, max(q_values))
    return tuple(rho_from_iterates(plain, C, Q, gamma) for Q in q_values)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[tuple]:
    """Evaluate the sweep and return CSV rows
    (k, m, Q, gamma, eta, N, K, s, rho, stable) in deterministic order."""
    s_values = [float(s) for s in spec.s_values()]
    q_values = tuple(sorted(set(spec.q_values)))
    panels = sorted(
        (k, m, float(g), eta, N, K)
        for (k, m) in set(spec.schemes)
        for g in set(spec.gammas)
        for eta in set(spec.etas)
        for (N, K) in set(spec.grids)
    )
    tasks = [(k, m, g, eta, N, K, s, q_values) for (k, m, g, eta, N, K) in panels for s in s_values]
    if workers > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_eval_task, tasks, chunksize=chunk))
    else:
        results = [_eval_task(t) for t in tasks]

    rows = []
    for (k, m, g, eta, N, K, s, _), rhos in zip(tasks, results):
        for Q, rho in zip(q_values, rhos):
            stable = int(rho < 1.0 - STABILITY_MARGIN)
            rows.append((k, m, Q, g, eta, N, K, s, rho, stable))
    rows.sort(key=lambda r: r[:8])
    return rows


def format_row(row: tuple) -> str:
    k, m, Q, gamma, eta, N, K, s, rho, stable = row
    return f"{k},{m},{Q},{gamma!r},{eta},{N},{K},{s!r},{rho!r},{stable}"


def write_csv(rows: list[tuple], path, version: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"# ospc {version}\n")
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            fh.write(format_row(row) + "\n")
