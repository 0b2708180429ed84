"""Probability distributions over integer walker positions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Distribution"]


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability mass over a contiguous window of integer positions.

    ``probs[i]`` is the probability at position ``offset + i``; positions
    outside the stored window carry exactly zero mass.  ``total`` may fall
    below 1 for open-system data, in which case the deficit is reported as
    ``loss``.
    """

    offset: int
    probs: np.ndarray
    step: int = 0

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a non-empty 1-D array")
        if probs.min() < -1e-10:
            raise ValueError(f"negative probability: {probs.min():.3e}")
        # clip sub-epsilon negatives produced by floating-point round-off
        object.__setattr__(self, "probs", np.maximum(probs, 0.0))
        object.__setattr__(self, "offset", int(self.offset))
        object.__setattr__(self, "step", int(self.step))

    @property
    def total(self) -> float:
        return float(self.probs.sum())

    @property
    def loss(self) -> float:
        """Mass missing from the window (1 - total)."""
        return 1.0 - self.total

    def positions(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.probs.size)

    def prob(self, x: int) -> float:
        i = int(x) - self.offset
        if 0 <= i < self.probs.size:
            return float(self.probs[i])
        return 0.0

    def argmax(self) -> int:
        return int(self.offset + int(np.argmax(self.probs)))

    def as_dict(self) -> dict[int, float]:
        return {int(x): float(p) for x, p in zip(self.positions(), self.probs)}

    def on_range(self, lo: int, hi: int) -> np.ndarray:
        """Probabilities on [lo, hi] inclusive, zero outside the window."""
        if hi < lo:
            raise ValueError("empty range")
        out = np.zeros(hi - lo + 1)
        a = max(lo, self.offset)
        b = min(hi, self.offset + self.probs.size - 1)
        if a <= b:
            out[a - lo : b - lo + 1] = self.probs[a - self.offset : b - self.offset + 1]
        return out
