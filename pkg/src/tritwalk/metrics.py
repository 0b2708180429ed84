"""Scalar diagnostics over position distributions."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .distribution import Distribution

__all__ = ["diffusion_distance", "similarity", "series"]


def diffusion_distance(dist: Distribution) -> float:
    """Root mean square position about x = 0: ``sqrt(sum_x x^2 p(x))``.

    Requires a normalized distribution (the formula presumes probabilities).
    """
    if abs(dist.total - 1.0) > 1e-6:
        raise ValueError(
            f"sub-normalized distribution: total = {dist.total:.9f}"
        )
    xs = dist.positions().astype(float)
    return math.sqrt(float((xs * xs * dist.probs).sum()))


def similarity(p: Distribution, q: Distribution) -> float:
    """Squared Bhattacharyya coefficient ``[sum_x sqrt(p(x) q(x))]^2``.

    Evaluated on the union of the two windows with implicit zeros.  Equals 1
    iff the (normalized) distributions coincide and 0 for disjoint supports;
    sub-normalized inputs are allowed, in which case the value underestimates
    the agreement.
    """
    lo = min(p.offset, q.offset)
    hi = max(p.offset + p.probs.size, q.offset + q.probs.size) - 1
    a = p.on_range(lo, hi)
    b = q.on_range(lo, hi)
    coeff = float(np.sqrt(a * b).sum())
    return coeff * coeff


def series(
    dists: Sequence[Distribution], metric: Callable[[Distribution], float]
) -> list[tuple[int, float]]:
    """Apply ``metric`` per step; steps must be strictly increasing."""
    steps = [d.step for d in dists]
    if any(b <= a for a, b in zip(steps, steps[1:])):
        raise ValueError("steps must be strictly increasing")
    return [(d.step, metric(d)) for d in dists]
