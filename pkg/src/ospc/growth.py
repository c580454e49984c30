"""Growth-matrix container and corrector-composition rules.

One step of the predictor-corrector scheme advances the stacked history
state z by the propagator G = C^Q P. When Q is even and the final-sweep
blend weight gamma is below 1, the last corrector acts on the blend of
the two most recent iterates; because every corrector leaves the history
blocks untouched, that scheme collapses to the closed form
G = C (gamma C + (1-gamma) I) C^(Q-2) P.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

Label = tuple[Any, Fraction]  # (domain tag, time offset in coarse steps)


@dataclass(frozen=True)
class BlockLayout:
    """Ordering of the N-sized blocks inside a stacked state vector."""

    block_size: int
    blocks: tuple[Label, ...]

    @property
    def dim(self) -> int:
        return self.block_size * len(self.blocks)

    def index(self, label: Label) -> int:
        return self.blocks.index(label)

    def slice(self, label: Label) -> slice:
        i = self.index(label) * self.block_size
        return slice(i, i + self.block_size)


@dataclass(frozen=True, eq=False)
class GrowthMatrix:
    """Square one-step propagator with its block layout and parameters."""

    G: np.ndarray
    layout: BlockLayout
    meta: dict

    def __post_init__(self):
        if self.G.shape != (self.layout.dim, self.layout.dim):
            raise ValueError(
                f"propagator shape {self.G.shape} does not match layout dim {self.layout.dim}"
            )


def blend_applies(Q: int, gamma: float) -> bool:
    """The modified final corrector engages only for even Q >= 2 with gamma < 1;
    odd Q (and Q <= 1) always runs the plain scheme."""
    return Q >= 2 and Q % 2 == 0 and gamma < 1.0


def compose_growth(P: np.ndarray, C: np.ndarray, Q: int, gamma: float) -> np.ndarray:
    """G = C^Q P, with the blended final corrector when it applies."""
    if Q == 0:
        return P.copy()
    if not blend_applies(Q, gamma):
        G = P
        for _ in range(Q):
            G = C @ G
        return G
    G = P
    for _ in range(Q - 2):
        G = C @ G
    G = gamma * (C @ G) + (1.0 - gamma) * G
    return C @ G
