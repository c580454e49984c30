"""Spatial discretization on the monodomain and overlapping grids.

The unit interval is discretized with M interior degrees of freedom and
homogeneous Dirichlet ends. Two overlapping subdomains with N dofs each
share K coincident points, so M = 2N - K + 1. This module builds the
second-difference operator, the restriction matrices onto each
subdomain, the pick operator that transfers interdomain boundary values
between subdomains, and the per-step Helmholtz/coupling matrices.

All constructors are pure; a CouplingSet is immutable after assembly and
may be shared read-only across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import cho_factor, cho_solve


@dataclass(frozen=True)
class GridSpec:
    """Two overlapping subdomains with N dofs each and K shared points."""

    N: int
    K: int
    nu: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N={self.N} must be >= 1")
        if not 1 <= self.K <= self.N:
            raise ValueError(f"overlap K={self.K} outside 1..N={self.N}")
        if not self.nu > 0:
            raise ValueError(f"diffusivity nu={self.nu} must be positive")

    @property
    def M(self) -> int:
        """Global dof count of the underlying monodomain grid."""
        return 2 * self.N - self.K + 1

    @property
    def dx(self) -> float:
        return 1.0 / (self.M + 1)

    @property
    def overlap_width(self) -> float:
        return self.K * self.dx


def second_difference(M: int, dx: float) -> np.ndarray:
    """Dirichlet-restricted central second-difference operator (M x M).

    Diagonal 2/dx^2, off-diagonals -1/dx^2; this is the interior part of
    the (M+1) x (M+1) operator with its boundary column removed.
    """
    if M < 1:
        raise ValueError(f"M={M} must be >= 1")
    if not dx > 0:
        raise ValueError(f"dx={dx} must be positive")
    A = np.zeros((M, M))
    np.fill_diagonal(A, 2.0 / dx**2)
    idx = np.arange(M - 1)
    A[idx, idx + 1] = -1.0 / dx**2
    A[idx + 1, idx] = -1.0 / dx**2
    return A


def restrictions(spec: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """R1 = [I_N | 0] and R2 = [0 | I_N], each N x M."""
    N, M = spec.N, spec.M
    R1 = np.zeros((N, M))
    R1[:, :N] = np.eye(N)
    R2 = np.zeros((N, M))
    R2[:, M - N :] = np.eye(N)
    return R1, R2


def pick_operator(spec: GridSpec, i: int) -> np.ndarray:
    """B_ij = (I - R_i^T R_i) R_j^T, the M x N operator placing subdomain
    j's values at the global positions outside subdomain i's dof range."""
    if i not in (1, 2):
        raise ValueError(f"subdomain index i={i} must be 1 or 2")
    R1, R2 = restrictions(spec)
    Ri, Rj = (R1, R2) if i == 1 else (R2, R1)
    return (np.eye(spec.M) - Ri.T @ Ri) @ Rj.T


@dataclass(frozen=True, eq=False)
class CouplingSet:
    """Assembled operators for one step of the coupled two-subdomain solve.

    H_i = beta0 I + nu dt_i A_i and J_ij = -nu dt_i R_i A B_ij, where dt_1
    and dt_2 may differ (they coincide for singlerate stepping). J12 and
    J21 each have exactly one nonzero entry because the grids coincide on
    the overlap.
    """

    spec: GridSpec
    dt1: float
    dt2: float
    beta0: float
    A: np.ndarray
    R1: np.ndarray
    R2: np.ndarray
    A1: np.ndarray
    A2: np.ndarray
    B12: np.ndarray
    B21: np.ndarray
    H1: np.ndarray
    H2: np.ndarray
    J12: np.ndarray
    J21: np.ndarray

    @cached_property
    def _chol1(self):
        return cho_factor(self.H1)

    @cached_property
    def _chol2(self):
        return cho_factor(self.H2)

    def solve1(self, rhs: np.ndarray) -> np.ndarray:
        """H1^{-1} rhs via the cached factorization."""
        return cho_solve(self._chol1, rhs)

    def solve2(self, rhs: np.ndarray) -> np.ndarray:
        return cho_solve(self._chol2, rhs)

    @cached_property
    def Hinv1(self) -> np.ndarray:
        return self.solve1(np.eye(self.spec.N))

    @cached_property
    def Hinv2(self) -> np.ndarray:
        return self.solve2(np.eye(self.spec.N))

    @cached_property
    def HinvJ12(self) -> np.ndarray:
        return self.solve1(self.J12)

    @cached_property
    def HinvJ21(self) -> np.ndarray:
        return self.solve2(self.J21)


def coupling_matrices(spec: GridSpec, dt: float, beta0: float, dt2: float | None = None) -> CouplingSet:
    """Assemble the CouplingSet for timestep dt (subdomain 1) and dt2
    (subdomain 2, defaults to dt)."""
    if not dt > 0:
        raise ValueError(f"dt={dt} must be positive")
    if dt2 is None:
        dt2 = dt
    elif not dt2 > 0:
        raise ValueError(f"dt2={dt2} must be positive")
    if not beta0 > 0:
        raise ValueError(f"beta0={beta0} must be positive")

    N, nu = spec.N, spec.nu
    A = second_difference(spec.M, spec.dx)
    R1, R2 = restrictions(spec)
    B12 = pick_operator(spec, 1)
    B21 = pick_operator(spec, 2)
    A1 = R1 @ A @ R1.T
    A2 = R2 @ A @ R2.T
    H1 = beta0 * np.eye(N) + nu * dt * A1
    H2 = beta0 * np.eye(N) + nu * dt2 * A2
    J12 = -nu * dt * (R1 @ A @ B12)
    J21 = -nu * dt2 * (R2 @ A @ B21)
    return CouplingSet(
        spec=spec, dt1=dt, dt2=dt2, beta0=beta0,
        A=A, R1=R1, R2=R2, A1=A1, A2=A2, B12=B12, B21=B21,
        H1=H1, H2=H2, J12=J12, J21=J21,
    )
