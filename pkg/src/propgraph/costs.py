"""Alignment cost models: state-pair costs plus gap handling."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Callable

import numpy as np

WARPING = "warping"
GAP = "gap"


def _abs_diff(x: float, y: float) -> float:
    return abs(x - y)


def _abs_diff_matrix(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.abs(x[:, None] - y[None, :])


def _mismatch(x: float, y: float, alpha: float) -> float:
    return 0.0 if x == y else alpha


def _mismatch_matrix(x: np.ndarray, y: np.ndarray, alpha: float) -> np.ndarray:
    return np.where(x[:, None] == y[None, :], 0.0, alpha)


def _silence_gap(x: float) -> float:
    return 1.0 if x == 0.0 else math.inf


def _silence_gap_vector(x: np.ndarray) -> np.ndarray:
    return np.where(x == 0.0, 1.0, np.inf)


@dataclass(frozen=True)
class CostModel:
    """A state-pair cost function together with the alignment flavor it serves.

    ``warping`` mode charges unmatched columns by repeating the most recent
    state of the lagging sequence; ``gap`` mode charges each unmatched state
    against a gap symbol through ``gap_cost`` (a gap never faces a gap, which
    amounts to an infinite gap-gap cost).  ``equality_tolerance`` is the
    absolute slack used to decide which dynamic-programming predecessors
    attain the minimum; exact equality is unreliable for real-valued costs.

    ``pair_cost_matrix`` / ``gap_cost_vector`` are optional vectorized
    equivalents used to build whole cost tables at once; when absent the
    scalar callables are applied elementwise.
    """

    mode: str
    pair_cost: Callable[[float, float], float]
    gap_cost: Callable[[float], float] | None = None
    equality_tolerance: float = 1e-9
    pair_cost_matrix: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    gap_cost_vector: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self) -> None:
        if self.mode not in (WARPING, GAP):
            raise ValueError(f"unknown alignment mode {self.mode!r}")
        if self.mode == GAP and self.gap_cost is None:
            raise ValueError("gap mode requires a gap_cost function")
        if self.equality_tolerance < 0:
            raise ValueError("equality_tolerance must be non-negative")

    def pair_matrix(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.pair_cost_matrix is not None:
            return np.asarray(self.pair_cost_matrix(x, y), dtype=np.float64)
        out = np.empty((len(x), len(y)), dtype=np.float64)
        for a, xa in enumerate(x):
            for b, yb in enumerate(y):
                out[a, b] = self.pair_cost(xa, yb)
        return out

    def gap_vector(self, x: np.ndarray) -> np.ndarray:
        assert self.gap_cost is not None
        if self.gap_cost_vector is not None:
            return np.asarray(self.gap_cost_vector(x), dtype=np.float64)
        return np.asarray([self.gap_cost(v) for v in x], dtype=np.float64)


def absolute_difference(tolerance: float = 1e-9) -> CostModel:
    """Warping-mode model with w(x, y) = |x - y|, the real-valued default."""
    return CostModel(
        mode=WARPING,
        pair_cost=_abs_diff,
        equality_tolerance=tolerance,
        pair_cost_matrix=_abs_diff_matrix,
    )


def binary_pulse_cost(alpha: float = 3.0, tolerance: float = 1e-9) -> CostModel:
    """Gap-mode model for binary pulse trains.

    Equal states cost 0, mismatched states cost ``alpha``, a silent state (0)
    against a gap costs 1, and a pulse (1) against a gap is forbidden
    (infinite), so pulses must pair up unless they are too far apart.
    """
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    return CostModel(
        mode=GAP,
        pair_cost=partial(_mismatch, alpha=alpha),
        gap_cost=_silence_gap,
        equality_tolerance=tolerance,
        pair_cost_matrix=partial(_mismatch_matrix, alpha=alpha),
        gap_cost_vector=_silence_gap_vector,
    )
