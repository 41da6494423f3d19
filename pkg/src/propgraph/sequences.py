"""State sequences: one individual's observed states over time."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class StateSequence:
    """An ordered run of real-valued states for one individual.

    Binary sequences are the special case with values in {0, 1}.  All values
    must be finite; empty sequences are legal only for gap-based alignment.
    """

    values: tuple[float, ...]
    id: str = ""

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        if any(not math.isfinite(v) for v in vals):
            raise ValueError(f"sequence {self.id!r} contains non-finite values")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.asarray(self.values, dtype=np.float64)
        arr.flags.writeable = False
        return arr


def make_sequences(rows: Iterable[Iterable[float]], ids: Iterable[str] | None = None) -> list[StateSequence]:
    """Wrap raw value rows into StateSequence objects with 1-based default ids."""
    rows = list(rows)
    if ids is None:
        ids = [str(k + 1) for k in range(len(rows))]
    return [StateSequence(tuple(row), id=i) for row, i in zip(rows, ids, strict=True)]
