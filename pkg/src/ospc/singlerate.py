"""Predictor, corrector, and growth matrices for singlerate stepping.

Both subdomains advance with the same timestep. The stacked state holds
four time levels of both subdomain solutions,

    z = [u1^n, u2^n, u1^{n-1}, u2^{n-1}, u1^{n-2}, u2^{n-2}, u1^{n-3}, u2^{n-3}],

so every matrix here is 8N x 8N regardless of the BDF order; weights for
unused history levels enter as exact zero blocks. The predictor row uses
extrapolated neighbor data from previous steps and shifts the history
down one level; each corrector row re-solves with neighbor data from the
latest iterate and maps the history blocks identically.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .coeffs import SchemeSpec, bdf_weights, ext_weights
from .discretize import CouplingSet, GridSpec, coupling_matrices
from .growth import BlockLayout, GrowthMatrix, compose_growth

HISTORY_LEVELS = 4
NUM_BLOCKS = 2 * HISTORY_LEVELS


def singlerate_layout(N: int) -> BlockLayout:
    blocks = tuple((d, Fraction(-l)) for l in range(HISTORY_LEVELS) for d in (1, 2))
    return BlockLayout(block_size=N, blocks=blocks)


def _operators(scheme: SchemeSpec, grid: GridSpec, dt: float) -> CouplingSet:
    beta0 = bdf_weights(scheme.k).beta[0]
    return coupling_matrices(grid, dt, beta0)


def _weight_arrays(scheme: SchemeSpec) -> tuple[np.ndarray, np.ndarray]:
    beta = bdf_weights(scheme.k).padded(HISTORY_LEVELS - 1)
    alpha = ext_weights(scheme.m).padded(HISTORY_LEVELS - 1)
    return beta, alpha


def predictor_matrix(scheme: SchemeSpec, grid: GridSpec, dt: float, ops: CouplingSet | None = None) -> np.ndarray:
    """8N x 8N predictor: BDF on own history, extrapolated coupling on the
    neighbor history, and a one-level history shift. The coupling column of
    the oldest level is zero."""
    if ops is None:
        ops = _operators(scheme, grid, dt)
    N = grid.N
    beta, alpha = _weight_arrays(scheme)
    P = np.zeros((NUM_BLOCKS * N, NUM_BLOCKS * N))

    def blk(r, c, val):
        P[r * N : (r + 1) * N, c * N : (c + 1) * N] = val

    for l in range(1, HISTORY_LEVELS):  # input column blocks hold u^{n-l}, l = 1..4
        own = 2 * (l - 1)
        blk(0, own, -beta[l - 1] * ops.Hinv1)
        blk(0, own + 1, alpha[l - 1] * ops.HinvJ12)
        blk(1, own + 1, -beta[l - 1] * ops.Hinv2)
        blk(1, own, alpha[l - 1] * ops.HinvJ21)
    eye = np.eye(N)
    for r in range(2, NUM_BLOCKS):
        blk(r, r - 2, eye)
    return P


def corrector_matrix(scheme: SchemeSpec, grid: GridSpec, dt: float, ops: CouplingSet | None = None) -> np.ndarray:
    """8N x 8N corrector: neighbor coupling from the latest iterate, BDF on
    the converged history, identity on the history blocks."""
    if ops is None:
        ops = _operators(scheme, grid, dt)
    N = grid.N
    beta, _ = _weight_arrays(scheme)
    C = np.zeros((NUM_BLOCKS * N, NUM_BLOCKS * N))

    def blk(r, c, val):
        C[r * N : (r + 1) * N, c * N : (c + 1) * N] = val

    blk(0, 1, ops.HinvJ12)
    blk(1, 0, ops.HinvJ21)
    for l in range(1, HISTORY_LEVELS):
        blk(0, 2 * l, -beta[l - 1] * ops.Hinv1)
        blk(1, 2 * l + 1, -beta[l - 1] * ops.Hinv2)
    eye = np.eye(N)
    for r in range(2, NUM_BLOCKS):
        blk(r, r, eye)
    return C


def growth_matrix_singlerate(scheme: SchemeSpec, grid: GridSpec, dt: float) -> GrowthMatrix:
    """One-step propagator G = C^Q P (blended final corrector for even Q
    with gamma_blend < 1)."""
    ops = _operators(scheme, grid, dt)
    P = predictor_matrix(scheme, grid, dt, ops)
    C = corrector_matrix(scheme, grid, dt, ops)
    G = compose_growth(P, C, scheme.Q, scheme.gamma_blend)
    return GrowthMatrix(
        G=G,
        layout=singlerate_layout(grid.N),
        meta={"scheme": scheme, "grid": grid, "dt": dt},
    )
