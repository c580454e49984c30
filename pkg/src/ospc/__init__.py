"""Stability analysis of predictor-corrector timestepping for the 1D
heat equation on two overlapping grids: discrete operators, singlerate
and multirate growth matrices, spectral-radius classification, and
matrix-free simulators for cross-validation."""

__version__ = "0.1.0"

from .coeffs import (
    BdfWeights,
    ExtWeights,
    MultirateWeightTable,
    SchemeSpec,
    bdf_weights,
    ext_weights,
    lagrange_weights,
    multirate_weights,
)
from .discretize import (
    CouplingSet,
    GridSpec,
    coupling_matrices,
    pick_operator,
    restrictions,
    second_difference,
)
from .growth import BlockLayout, GrowthMatrix, compose_growth
from .multirate import (
    MultirateSpec,
    corrector_stage,
    growth_matrix_multirate,
    multirate_labels,
    multirate_layout,
    predictor_stage,
)
from .simulate import (
    Trajectory,
    empirical_growth_rate,
    monodomain_step,
    replicated_state,
    run_monodomain,
    run_multirate,
    run_singlerate,
)
from .singlerate import (
    corrector_matrix,
    growth_matrix_singlerate,
    predictor_matrix,
    singlerate_layout,
)
from .spectral import (
    STABILITY_MARGIN,
    StabilityPoint,
    classify,
    spectral_radius,
    tridiag_eigenvalues,
)
from .sweep import SweepSpec, run_sweep, write_csv

__all__ = [
    "BdfWeights", "ExtWeights", "MultirateWeightTable", "SchemeSpec",
    "bdf_weights", "ext_weights", "lagrange_weights", "multirate_weights",
    "CouplingSet", "GridSpec", "coupling_matrices", "pick_operator",
    "restrictions", "second_difference",
    "BlockLayout", "GrowthMatrix", "compose_growth",
    "MultirateSpec", "corrector_stage", "growth_matrix_multirate",
    "multirate_labels", "multirate_layout", "predictor_stage",
    "Trajectory", "empirical_growth_rate", "monodomain_step",
    "replicated_state", "run_monodomain", "run_multirate", "run_singlerate",
    "corrector_matrix", "growth_matrix_singlerate", "predictor_matrix",
    "singlerate_layout",
    "STABILITY_MARGIN", "StabilityPoint", "classify", "spectral_radius",
    "tridiag_eigenvalues",
    "SweepSpec", "run_sweep", "write_csv",
    "__version__",
]
