"""Temporal-scheme coefficients.

Backward-difference (BDFk) weights, polynomial extrapolation (EXTm)
weights, generic Lagrange interpolation/extrapolation weights at
arbitrary nodes, and the predictor/corrector weight tables used when the
two subdomains advance with different timestep sizes.

All weight generators are pure functions of their integer/real inputs
and are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MAX_ORDER = 3

# BDFk weights beta_0..beta_k: beta_0 u^n + sum_l beta_l u^{n-l} = dt u_t + O(dt^{k+1}).
_BDF_TABLE = {
    1: (1.0, -1.0),
    2: (1.5, -2.0, 0.5),
    3: (11.0 / 6.0, -3.0, 1.5, -1.0 / 3.0),
}


@dataclass(frozen=True)
class SchemeSpec:
    """Temporal scheme selection.

    k: BDF order, m: extrapolation order for interdomain boundary data at
    the predictor step, Q: number of corrector sweeps per step,
    gamma_blend: weight of the most recent iterate in the final corrector
    when Q is even (1.0 recovers the plain scheme).
    """

    k: int
    m: int
    Q: int
    gamma_blend: float = 1.0

    def __post_init__(self):
        if not 1 <= self.k <= MAX_ORDER:
            raise ValueError(f"BDF order k={self.k} outside 1..{MAX_ORDER}")
        if not 1 <= self.m <= self.k:
            raise ValueError(f"extrapolation order m={self.m} outside 1..k={self.k}")
        if self.Q < 0:
            raise ValueError(f"corrector count Q={self.Q} must be >= 0")
        if not 0.0 <= self.gamma_blend <= 1.0:
            raise ValueError(f"gamma_blend={self.gamma_blend} outside [0, 1]")


@dataclass(frozen=True, eq=False)
class BdfWeights:
    """beta[0..k]; beta[0] multiplies the unknown u^n."""

    beta: np.ndarray

    @property
    def k(self) -> int:
        return len(self.beta) - 1

    def padded(self, levels: int) -> np.ndarray:
        """beta[1..k] extended with exact zeros up to `levels` history terms."""
        out = np.zeros(levels)
        out[: self.k] = self.beta[1:]
        return out


@dataclass(frozen=True, eq=False)
class ExtWeights:
    """alpha[1..m] extrapolating u^{n-1},...,u^{n-m} to t^n."""

    alpha: np.ndarray

    @property
    def m(self) -> int:
        return len(self.alpha)

    def padded(self, levels: int) -> np.ndarray:
        out = np.zeros(levels)
        out[: self.m] = self.alpha
        return out


def bdf_weights(k: int) -> BdfWeights:
    """BDFk weights (exact rationals rounded once to double)."""
    if k not in _BDF_TABLE:
        raise ValueError(f"BDF order k={k} outside 1..{MAX_ORDER}")
    return BdfWeights(beta=np.array(_BDF_TABLE[k]))


def ext_weights(m: int) -> ExtWeights:
    """EXTm weights: extrapolate the m most recent equispaced levels to t^n."""
    if not 1 <= m <= MAX_ORDER:
        raise ValueError(f"extrapolation order m={m} outside 1..{MAX_ORDER}")
    nodes = [-(l + 1) for l in range(m)]
    return ExtWeights(alpha=lagrange_weights(nodes, 0.0))


def lagrange_weights(nodes, target) -> np.ndarray:
    """Interpolation weights w with sum_j w_j p(nodes[j]) = p(target).

    Exact for every polynomial p of degree < len(nodes). Evaluated in
    barycentric form, stable for the short stencils used here.
    """
    x = np.asarray(nodes, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("nodes must be a nonempty 1-D sequence")
    t = float(target)
    n = x.size
    if n > 1:
        xs = np.sort(x)
        spread = xs[-1] - xs[0]
        if np.min(np.diff(xs)) <= 1e-12 * spread:
            raise ValueError(f"duplicate interpolation nodes in {nodes!r}")
    hit = np.nonzero(x == t)[0]
    if hit.size:
        w = np.zeros(n)
        w[hit[0]] = 1.0
        return w
    lam = np.array([1.0 / np.prod([x[j] - x[i] for i in range(n) if i != j]) for j in range(n)])
    r = lam / (t - x)
    return r / r.sum()


@dataclass(frozen=True, eq=False)
class MultirateWeightTable:
    """Boundary-data weights when the fine subdomain takes eta sub-steps
    per coarse step.

    pred_fine[i-1]: extrapolation from the m coarse levels t^{n-1..n-m} to
    the fine sub-time t^{n-1+i/eta} (predictor, i = 1..eta).
    pred_coarse: extrapolation from the m most recent fine sub-levels
    t^{n-1-(j-1)/eta} to t^n (coarse predictor).
    corr_fine[i-1]: interpolation weights over (t^n, t^{n-1}, t^{n-2}) at
    t^{n-1+i/eta} (corrector); linear through t^n, t^{n-1} for m <= 2,
    quadratic for m = 3. Row eta is always (1, 0, 0).
    """

    eta: int
    m: int
    pred_fine: np.ndarray
    pred_coarse: np.ndarray
    corr_fine: np.ndarray


def multirate_weights(eta: int, m: int) -> MultirateWeightTable:
    """Weight tables for timestep ratio eta and extrapolation order m."""
    if eta < 1:
        raise ValueError(f"timestep ratio eta={eta} must be >= 1")
    if not 1 <= m <= MAX_ORDER:
        raise ValueError(f"extrapolation order m={m} outside 1..{MAX_ORDER}")

    coarse_nodes = [-l for l in range(m)]  # t^{n-1}, t^{n-2}, ... in coarse units, origin t^{n-1}
    pred_fine = np.vstack(
        [lagrange_weights(coarse_nodes, Fraction(i, eta)) for i in range(1, eta + 1)]
    )
    # fine history nodes t^{n-1-(j-1)/eta} in fine-step units, origin t^{n-1}; target t^n
    fine_nodes = [-j for j in range(m)]
    pred_coarse = lagrange_weights(fine_nodes, eta)

    corr_fine = np.zeros((eta, 3))
    for i in range(1, eta + 1):
        tau = Fraction(i, eta) - 1  # sub-time relative to t^n, in coarse units
        if m == 3:
            corr_fine[i - 1] = lagrange_weights([0, -1, -2], tau)
        else:
            corr_fine[i - 1, 0] = float(Fraction(i, eta))
            corr_fine[i - 1, 1] = float(1 - Fraction(i, eta))
    return MultirateWeightTable(
        eta=eta, m=m, pred_fine=pred_fine, pred_coarse=pred_coarse, corr_fine=corr_fine
    )
