"""Independent reference implementations used to pin expected values.

These deliberately avoid the package's windowed-state machinery: the walk
oracle builds the one-step operator as a dense matrix on a fixed truncated
basis and evolves plain vectors.  Callers must pick the half-width beyond
the light cone so no amplitude reaches the truncation edge.
"""

from __future__ import annotations

import math

import numpy as np


def coin_block(theta: float, axis: float = 0.0) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    ph = np.exp(-1j * axis)
    return np.array([[c, 1j * s * ph], [1j * s * np.conj(ph), c]])


def dense_step_operator(theta_of, axis: float, kind: str, half_width: int) -> np.ndarray:
    """One-step operator on positions -half_width..half_width.

    Basis index is ``(x + half_width) * 2 + coin``.  ``kind`` is ``"uni"``
    or ``"bi"``; amplitudes shifted past the edge are dropped, so the matrix
    is unitary only away from the truncation boundary.
    """
    n = 2 * half_width + 1
    dim = 2 * n
    rot = np.zeros((dim, dim), dtype=complex)
    for ix in range(n):
        x = ix - half_width
        rot[2 * ix : 2 * ix + 2, 2 * ix : 2 * ix + 2] = coin_block(theta_of(x), axis)
    shift = np.zeros((dim, dim), dtype=complex)
    for ix in range(n):
        tgt0 = ix if kind == "uni" else ix - 1
        if 0 <= tgt0 < n:
            shift[2 * tgt0, 2 * ix] = 1.0
        if 0 <= ix + 1 < n:
            shift[2 * (ix + 1) + 1, 2 * ix + 1] = 1.0
    return shift @ rot


def dense_evolve(
    initial: dict[int, tuple[complex, complex]],
    theta_of_step,
    axis: float,
    kind: str,
    t: int,
    half_width: int,
) -> list[np.ndarray]:
    """Per-step state vectors for ``theta_of_step(step, x)`` angles."""
    n = 2 * half_width + 1
    vec = np.zeros(2 * n, dtype=complex)
    for x, (a0, a1) in initial.items():
        vec[2 * (x + half_width)] = a0
        vec[2 * (x + half_width) + 1] = a1
    out = [vec.copy()]
    for tau in range(1, t + 1):
        op = dense_step_operator(
            lambda x: theta_of_step(tau, x), axis, kind, half_width
        )
        vec = op @ vec
        out.append(vec.copy())
    return out


def vector_distribution(vec: np.ndarray, half_width: int) -> dict[int, float]:
    n = 2 * half_width + 1
    probs = np.abs(vec.reshape(n, 2)) ** 2
    return {
        ix - half_width: float(p)
        for ix, p in enumerate(probs.sum(axis=1))
        if p > 0.0
    }


def classical_stay_right_converted(t: int) -> dict[int, float]:
    """Binomial stay/right walk (p = 1/2) relabeled to two-way coordinates."""
    return {2 * k - t: math.comb(t, k) / 2.0**t for k in range(t + 1)}


def fit_power_law(ts, ys) -> float:
    """Exponent of y ~ t^a from a log-log least-squares fit."""
    lt = np.log(np.asarray(ts, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    a, _ = np.polyfit(lt, ly, 1)
    return float(a)


def linear_fit_r2(ts, ys) -> tuple[float, float, float]:
    """(slope, intercept, R^2) of an ordinary least-squares line."""
    ts = np.asarray(ts, dtype=float)
    ys = np.asarray(ys, dtype=float)
    a, b = np.polyfit(ts, ys, 1)
    resid = ys - (a * ts + b)
    ss_res = float((resid**2).sum())
    ss_tot = float(((ys - ys.mean()) ** 2).sum())
    return float(a), float(b), 1.0 - ss_res / ss_tot
