"""Spectral radius computation and the analytic tridiagonal eigenvalue oracle.

The propagator assembled elsewhere is dense, nonsymmetric, and carries
dominant complex-conjugate eigenvalue pairs, so the spectral radius is
taken over the full eigenvalue set (LAPACK: balance, Hessenberg
reduction, shifted QR) rather than by power iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# rho within this margin of 1 classifies as unstable, so rounding noise
# near the neutral circle is never reported as stable
STABILITY_MARGIN = 1e-10

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class StabilityPoint:
    """One point of a stability curve: nondimensional timestep s = nu dt_c / dx^2,
    spectral radius rho, and the strict stability classification."""

    s: float
    rho: float
    stable: bool

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError(f"rho={self.rho} must be nonnegative")
        if self.stable != (self.rho < 1.0 - STABILITY_MARGIN):
            raise ValueError("stable flag inconsistent with rho")


def classify(s: float, rho: float) -> StabilityPoint:
    return StabilityPoint(s=s, rho=rho, stable=bool(rho < 1.0 - STABILITY_MARGIN))


def spectral_radius(G: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """max |lambda| over all eigenvalues of the square matrix G.

    Relative accuracy is far below `tol` for these problem sizes; the
    parameter exists to reject nonsensical requests and document intent.
    """
    if not tol > 0:
        raise ValueError(f"tol={tol} must be positive")
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {G.shape}")
    if not np.all(np.isfinite(G)):
        raise ValueError("matrix contains non-finite entries")
    try:
        eigs = np.linalg.eigvals(G)
    except np.linalg.LinAlgError as exc:  # QR iteration did not converge
        raise np.linalg.LinAlgError(f"eigenvalue iteration failed: {exc}") from exc
    return float(np.max(np.abs(eigs)))


def tridiag_eigenvalues(M: int, dx: float) -> np.ndarray:
    """Eigenvalues (4/dx^2) sin^2(j pi / (2(M+1))), j = 1..M, ascending.

    Exact spectrum of the Dirichlet second-difference operator; serves as
    an independent oracle for the assembled matrix.
    """
    if M < 1:
        raise ValueError(f"M={M} must be >= 1")
    j = np.arange(1, M + 1)
    return (4.0 / dx**2) * np.sin(j * np.pi / (2.0 * (M + 1))) ** 2


def gelfand_estimate(G: np.ndarray, doublings: int = 12) -> float:
    """||G^(2^doublings)||_2^(1/2^doublings) via repeated squaring with
    renormalization (test-side cross-check for spectral_radius)."""
    A = np.asarray(G, dtype=float)
    log_scale = 0.0
    for _ in range(doublings):
        norm = np.linalg.norm(A, 2)
        if norm == 0.0:
            return 0.0
        A = A / norm
        log_scale = 2.0 * (log_scale + np.log(norm))
        A = A @ A
    log_scale += np.log(np.linalg.norm(A, 2))
    return float(np.exp(log_scale / 2.0**doublings))
