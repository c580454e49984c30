"""Staged predictor/corrector matrices for multirate stepping.

Subdomain 1 ("c") advances once per step with dt_c while subdomain 2
("f") takes eta sub-steps of dt_f = dt_c/eta. The stacked state carries,
for each of the three most recent coarse levels, the coarse value, the
fine value, and the eta-1 intermediate fine sub-levels, plus one older
coarse/fine pair:

    (c,n), (f,n), (f,n-1/eta), ..., (f,n-(eta-1)/eta),
    (c,n-1), (f,n-1), (f,n-1-1/eta), ...,
    (c,n-2), (f,n-2), ...,
    (c,n-3), (f,n-3)

for 3(eta+1)+2 blocks in total; eta = 1 reproduces the singlerate layout
with (c, f) = (subdomain 1, subdomain 2).

The predictor is a product of eta stages: stage i computes the fine
sub-step value at t^{n-1+i/eta} from fine history and extrapolated
coarse data; the last stage also computes the coarse value at t^n from
coarse history and extrapolated fine data, and shifts the history. Each
stage is kept square by carrying every still-needed block with identity
rows and dropping the tail block(s) that no later stage reads, so the
stages compose on a fixed-dimension space. Corrector stages re-solve the
same rows with interpolated data from the latest iterate and are
identity elsewhere; one corrector sweep applies all eta stages in order,
so sub-level history within the step is always at the current iterate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coeffs import MultirateWeightTable, SchemeSpec, bdf_weights, multirate_weights
from .discretize import CouplingSet, GridSpec, coupling_matrices
from .growth import BlockLayout, GrowthMatrix, Label, compose_growth

COARSE, FINE = "c", "f"


@dataclass(frozen=True)
class MultirateSpec:
    """Scheme and grid plus the integer timestep ratio eta = dt_c / dt_f."""

    scheme: SchemeSpec
    grid: GridSpec
    eta: int
    dt_c: float

    def __post_init__(self):
        if self.eta < 1:
            raise ValueError(f"timestep ratio eta={self.eta} must be >= 1")
        if not self.dt_c > 0:
            raise ValueError(f"dt_c={self.dt_c} must be positive")

    @property
    def dt_f(self) -> float:
        return self.dt_c / self.eta


def multirate_labels(eta: int) -> tuple[Label, ...]:
    """Block ordering of the stacked multirate state (offsets relative to
    the state's own newest level, in coarse steps)."""
    if eta < 1:
        raise ValueError(f"timestep ratio eta={eta} must be >= 1")
    blocks: list[Label] = []
    for j in range(3):
        blocks.append((COARSE, Fraction(-j)))
        blocks.append((FINE, Fraction(-j)))
        blocks.extend((FINE, Fraction(-j) - Fraction(i, eta)) for i in range(1, eta))
    blocks.append((COARSE, Fraction(-3)))
    blocks.append((FINE, Fraction(-3)))
    return tuple(blocks)


def multirate_layout(eta: int, N: int) -> BlockLayout:
    return BlockLayout(block_size=N, blocks=multirate_labels(eta))


def stage_labels(eta: int, i: int) -> tuple[tuple[Label, ...], tuple[Label, ...]]:
    """(input, output) block labels of predictor stage i, offsets relative
    to the step target t^n. Stage 1 consumes the previous-level state;
    stage eta emits the full next-level state."""
    if not 1 <= i <= eta:
        raise ValueError(f"stage index i={i} outside 1..eta={eta}")
    cur = tuple((d, off - 1) for d, off in multirate_labels(eta))
    for j in range(1, eta + 1):
        if j < eta:
            out = ((FINE, Fraction(j, eta) - 1),) + cur[:-1]
        else:
            out = ((COARSE, Fraction(0)), (FINE, Fraction(0))) + cur[:-2]
        if j == i:
            return cur, out
        cur = out
    raise AssertionError("unreachable")


def _mr_operators(spec: MultirateSpec) -> CouplingSet:
    beta0 = bdf_weights(spec.scheme.k).beta[0]
    return coupling_matrices(spec.grid, spec.dt_c, beta0, dt2=spec.dt_f)


def _bdf_padded(spec: MultirateSpec) -> np.ndarray:
    return bdf_weights(spec.scheme.k).padded(3)


def predictor_stage(
    spec: MultirateSpec,
    i: int,
    ops: CouplingSet | None = None,
    wt: MultirateWeightTable | None = None,
) -> np.ndarray:
    """Square stage matrix mapping the stage-(i-1) block layout to the
    stage-i layout; see stage_labels for the orderings."""
    eta, m = spec.eta, spec.scheme.m
    if ops is None:
        ops = _mr_operators(spec)
    if wt is None:
        wt = multirate_weights(eta, m)
    in_labels, out_labels = stage_labels(eta, i)
    N = spec.grid.N
    beta = _bdf_padded(spec)
    pos = {lab: idx for idx, lab in enumerate(in_labels)}
    S = np.zeros((len(out_labels) * N, len(in_labels) * N))

    def blk(r: int, lab: Label, val: np.ndarray) -> None:
        c = pos[lab]
        S[r * N : (r + 1) * N, c * N : (c + 1) * N] = val

    def fine_row(r: int, sub: int) -> None:
        tau = Fraction(sub, eta) - 1
        for l in range(1, 4):
            blk(r, (FINE, tau - Fraction(l, eta)), -beta[l - 1] * ops.Hinv2)
        for l in range(1, m + 1):
            blk(r, (COARSE, Fraction(-l)), wt.pred_fine[sub - 1, l - 1] * ops.HinvJ21)

    eye = np.eye(N)
    if i < eta:
        fine_row(0, i)
        carried = out_labels[1:]
    else:
        for l in range(1, 4):
            blk(0, (COARSE, Fraction(-l)), -beta[l - 1] * ops.Hinv1)
        for l in range(1, m + 1):
            blk(0, (FINE, -1 - Fraction(l - 1, eta)), wt.pred_coarse[l - 1] * ops.HinvJ12)
        fine_row(1, eta)
        carried = out_labels[2:]
    for lab in carried:
        blk(out_labels.index(lab), lab, eye)
    return S


def corrector_stage(
    spec: MultirateSpec,
    i: int,
    ops: CouplingSet | None = None,
    wt: MultirateWeightTable | None = None,
) -> np.ndarray:
    """Square corrector stage on the full state layout: stage i < eta
    re-solves the fine sub-level t^{n-1+i/eta}; stage eta re-solves the
    t^n coarse and fine values; identity on every other block."""
    eta, m = spec.eta, spec.scheme.m
    if not 1 <= i <= eta:
        raise ValueError(f"stage index i={i} outside 1..eta={eta}")
    if ops is None:
        ops = _mr_operators(spec)
    if wt is None:
        wt = multirate_weights(eta, m)
    labels = multirate_labels(eta)
    N = spec.grid.N
    beta = _bdf_padded(spec)
    pos = {lab: idx for idx, lab in enumerate(labels)}
    S = np.zeros((len(labels) * N, len(labels) * N))

    def blk(r_lab: Label, c_lab: Label, val: np.ndarray) -> None:
        r, c = pos[r_lab], pos[c_lab]
        S[r * N : (r + 1) * N, c * N : (c + 1) * N] = val

    if i < eta:
        target = (FINE, Fraction(i, eta) - 1)
        for l in range(1, 4):
            blk(target, (FINE, Fraction(i - l, eta) - 1), -beta[l - 1] * ops.Hinv2)
        for col, lab in enumerate([(COARSE, Fraction(0)), (COARSE, Fraction(-1)), (COARSE, Fraction(-2))]):
            blk(target, lab, wt.corr_fine[i - 1, col] * ops.HinvJ21)
        replaced = {target}
    else:
        for l in range(1, 4):
            blk((COARSE, Fraction(0)), (COARSE, Fraction(-l)), -beta[l - 1] * ops.Hinv1)
        blk((COARSE, Fraction(0)), (FINE, Fraction(0)), ops.HinvJ12)
        for l in range(1, 4):
            blk((FINE, Fraction(0)), (FINE, Fraction(-l, eta)), -beta[l - 1] * ops.Hinv2)
        blk((FINE, Fraction(0)), (COARSE, Fraction(0)), ops.HinvJ21)
        replaced = {(COARSE, Fraction(0)), (FINE, Fraction(0))}
    eye = np.eye(N)
    for lab in labels:
        if lab not in replaced:
            blk(lab, lab, eye)
    return S


def predictor_matrix_multirate(spec: MultirateSpec, ops: CouplingSet | None = None,
                               wt: MultirateWeightTable | None = None) -> np.ndarray:
    """P = P_eta ... P_1."""
    if ops is None:
        ops = _mr_operators(spec)
    if wt is None:
        wt = multirate_weights(spec.eta, spec.scheme.m)
    P = predictor_stage(spec, 1, ops, wt)
    for i in range(2, spec.eta + 1):
        P = predictor_stage(spec, i, ops, wt) @ P
    return P


def corrector_matrix_multirate(spec: MultirateSpec, ops: CouplingSet | None = None,
                               wt: MultirateWeightTable | None = None) -> np.ndarray:
    """C = C_eta ... C_1 (one full corrector sweep)."""
    if ops is None:
        ops = _mr_operators(spec)
    if wt is None:
        wt = multirate_weights(spec.eta, spec.scheme.m)
    C = corrector_stage(spec, 1, ops, wt)
    for i in range(2, spec.eta + 1):
        C = corrector_stage(spec, i, ops, wt) @ C
    return C


def growth_matrix_multirate(spec: MultirateSpec) -> GrowthMatrix:
    """G = (C_eta ... C_1)^Q (P_eta ... P_1), with the blended final sweep
    for even Q when gamma_blend < 1 (the composed corrector leaves all
    history blocks unchanged, so the singlerate blend rule carries over)."""
    ops = _mr_operators(spec)
    wt = multirate_weights(spec.eta, spec.scheme.m)
    P = predictor_matrix_multirate(spec, ops, wt)
    C = corrector_matrix_multirate(spec, ops, wt)
    G = compose_growth(P, C, spec.scheme.Q, spec.scheme.gamma_blend)
    return GrowthMatrix(
        G=G,
        layout=multirate_layout(spec.eta, spec.grid.N),
        meta={"scheme": spec.scheme, "grid": spec.grid, "dt_c": spec.dt_c, "eta": spec.eta},
    )
