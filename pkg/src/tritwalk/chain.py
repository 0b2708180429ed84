"""Exact density-operator simulation of the qutrit chain with noise.

The walk circuits conserve total excitation number and amplitude damping
only removes excitations, so the dynamics closes on the zero- plus
one-excitation subspace: vacuum, one ``e`` or ``f`` excitation per qutrit,
or one ``e`` excitation per shift qubit (dimension ``3n`` for ``n``
qutrits).  Channel composition on that subspace is exact and cheap, with no
sampling error; an optional shot-sampling step draws readout outcomes from
the final populations.

Noise model:

* amplitude damping with per-class lifetimes, applied as Kraus channels
  with decay probability ``1 - exp(-duration/T1)`` per window; the ``f``
  level relaxes to ``e`` (applied first) and ``e`` relaxes to vacuum, the
  standard ladder pathway;
* coherent over-rotation: a fractional angle error on every coin-subspace
  gate and swap;
* swap amplitude error: probability that a swap leaves residual population
  behind (a coherent partial exchange);
* readout assignment error: per-qutrit misread probability, applied only in
  shot sampling.

All lifetimes default to infinity and all error knobs to zero, which makes
the simulation exactly unitary on the subspace.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .circuit import ChainLayout, Circuit, Gate, Layer
from .distribution import Distribution
from .walk import coin_matrix

__all__ = [
    "NoiseModel",
    "ChainState",
    "apply_gate",
    "simulate",
    "simulate_trajectory",
    "measure_positions",
    "populations",
    "sample_positions",
]


@dataclass(frozen=True)
class NoiseModel:
    """Hardware error parameters; defaults are ideal (no noise).

    Lifetimes are in microseconds (``inf`` disables the channel);
    probabilities lie in [0, 1].  ``over_rotation`` is the fractional angle
    error applied to coin-subspace gates and swaps.
    """

    t1_qutrit_e_us: float = math.inf
    t1_qutrit_f_us: float = math.inf
    t1_shift_qubit_us: float = math.inf
    over_rotation: float = 0.0
    swap_residual: float = 0.0
    readout_error: float = 0.0

    def __post_init__(self):
        for name in ("t1_qutrit_e_us", "t1_qutrit_f_us", "t1_shift_qubit_us"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive (or infinite)")
        for name in ("swap_residual", "readout_error"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")

    @property
    def is_ideal(self) -> bool:
        return (
            math.isinf(self.t1_qutrit_e_us)
            and math.isinf(self.t1_qutrit_f_us)
            and math.isinf(self.t1_shift_qubit_us)
            and self.over_rotation == 0.0
            and self.swap_residual == 0.0
            and self.readout_error == 0.0
        )

    def to_json(self) -> str:
        doc = {k: (None if math.isinf(v) else v) for k, v in asdict(self).items()}
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "NoiseModel":
        kwargs = {}
        for key, value in doc.items():
            if key not in cls.__dataclass_fields__:
                raise ValueError(f"unknown noise field: {key!r}")
            kwargs[key] = math.inf if value is None else float(value)
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> "NoiseModel":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class ChainState:
    """Density operator on the chain's zero/one-excitation basis."""

    rho: np.ndarray
    n_qutrits: int

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        d = 3 * self.n_qutrits
        if rho.shape != (d, d):
            raise ValueError(f"rho must be {d}x{d} for {self.n_qutrits} qutrits")
        object.__setattr__(self, "rho", rho)

    @classmethod
    def ground(cls, layout: ChainLayout) -> "ChainState":
        rho = np.zeros((layout.dim, layout.dim), dtype=complex)
        rho[0, 0] = 1.0
        return cls(rho, layout.n_qutrits)

    def trace(self) -> float:
        return float(np.trace(self.rho).real)

    def validate(self, atol: float = 1e-10) -> None:
        """Check hermiticity, positivity and unit trace."""
        if np.abs(self.rho - self.rho.conj().T).max() > atol:
            raise ValueError("state is not hermitian")
        if abs(self.trace() - 1.0) > 1e-12:
            raise ValueError(f"trace deviates from 1: {self.trace():.15f}")
        eigs = np.linalg.eigvalsh(self.rho)
        if eigs.min() < -atol:
            raise ValueError(f"state is not positive semidefinite: {eigs.min():.3e}")


def _slice_unitary(gate: Gate, noise: NoiseModel, layout: ChainLayout):
    """(i, j, U) such that the gate acts as U on basis rows (i, j)."""
    if gate.kind == "pi_ge":
        return 0, layout.e_index(gate.qutrit), coin_matrix(math.pi)
    if gate.kind == "su2_ef":
        theta = gate.theta * (1.0 + noise.over_rotation)
        u = coin_matrix(theta, gate.axis)
        return layout.f_index(gate.qutrit), layout.e_index(gate.qutrit), u
    # swaps: ideal exchange, composed with the coherent error knobs
    eps = noise.swap_residual
    a = math.sqrt(1.0 - eps)
    b = 1j * math.sqrt(eps)
    u = np.array([[b, a], [a, b]], dtype=complex)
    if noise.over_rotation:
        u = u @ coin_matrix(math.pi * noise.over_rotation)
    if gate.kind == "swap_in":
        return layout.e_index(gate.qutrit), layout.sq_index(gate.shift_qubit), u
    if gate.kind == "swap_out":
        return layout.sq_index(gate.shift_qubit), layout.e_index(gate.qutrit), u
    raise ValueError(f"unknown gate kind: {gate.kind!r}")


def _apply_unitary(rho: np.ndarray, i: int, j: int, u: np.ndarray) -> None:
    idx = [i, j]
    rho[idx, :] = u @ rho[idx, :]
    rho[:, idx] = rho[:, idx] @ u.conj().T


def _decay_probability(duration_ns: float, t1_us: float) -> float:
    if math.isinf(t1_us):
        return 0.0
    return 1.0 - math.exp(-duration_ns * 1e-3 / t1_us)


def _damp(rho: np.ndarray, hi: int, lo: int, p: float) -> None:
    """Amplitude-damping Kraus pair for the transition ``hi -> lo``."""
    if p <= 0.0:
        return
    keep = math.sqrt(1.0 - p)
    moved = p * rho[hi, hi]
    rho[hi, :] *= keep
    rho[:, hi] *= keep
    rho[lo, lo] += moved


def _apply_damping(
    rho: np.ndarray, noise: NoiseModel, layout: ChainLayout, duration_ns: float
) -> None:
    p_f = _decay_probability(duration_ns, noise.t1_qutrit_f_us)
    p_e = _decay_probability(duration_ns, noise.t1_qutrit_e_us)
    p_sq = _decay_probability(duration_ns, noise.t1_shift_qubit_us)
    if p_f == p_e == p_sq == 0.0:
        return
    for i in range(layout.n_qutrits):
        _damp(rho, layout.f_index(i), layout.e_index(i), p_f)
    for i in range(layout.n_qutrits):
        _damp(rho, layout.e_index(i), 0, p_e)
    for j in range(layout.n_shift_qubits):
        _damp(rho, layout.sq_index(j), 0, p_sq)


def apply_gate(
    state: ChainState, gate: Gate, noise: NoiseModel, layout: ChainLayout
) -> ChainState:
    """One gate: ideal unitary on its 2-dim slice, then amplitude damping on
    every excited element for the gate's duration.  Trace preserving."""
    if layout.n_qutrits != state.n_qutrits:
        raise ValueError("layout does not match state")
    rho = state.rho.copy()
    i, j, u = _slice_unitary(gate, noise, layout)
    _apply_unitary(rho, i, j, u)
    _apply_damping(rho, noise, layout, gate.duration_ns(layout))
    return ChainState(rho, state.n_qutrits)


def _apply_layer(
    rho: np.ndarray, layer: Layer, noise: NoiseModel, layout: ChainLayout
) -> None:
    for gate in layer.gates:
        i, j, u = _slice_unitary(gate, noise, layout)
        _apply_unitary(rho, i, j, u)
    _apply_damping(rho, noise, layout, layer.duration_ns(layout))


def simulate(
    circuit: Circuit, noise: NoiseModel, layout: ChainLayout
) -> ChainState:
    """Fold the circuit's layers over the ground chain.

    Gates within a layer run in parallel, so damping is applied once per
    layer for the layer's duration rather than once per gate (per-gate
    damping would overcount idle decay n-fold in an n-gate layer).
    Deterministic: density operators evolve exactly, no sampling.
    """
    if circuit.n_qutrits != layout.n_qutrits:
        raise ValueError("circuit was compiled for a different layout")
    rho = ChainState.ground(layout).rho
    for layer in circuit.layers:
        _apply_layer(rho, layer, noise, layout)
    return ChainState(rho, layout.n_qutrits)


def simulate_trajectory(
    circuit: Circuit, noise: NoiseModel, layout: ChainLayout
) -> list[ChainState]:
    """Chain state after initialization and after each walk step
    (``circuit.steps + 1`` entries)."""
    if circuit.n_qutrits != layout.n_qutrits:
        raise ValueError("circuit was compiled for a different layout")
    rho = ChainState.ground(layout).rho
    snapshots: list[ChainState] = []
    current_step = 0
    for layer in circuit.layers:
        if layer.step != current_step:
            snapshots.append(ChainState(rho.copy(), layout.n_qutrits))
            current_step = layer.step
        _apply_layer(rho, layer, noise, layout)
    snapshots.append(ChainState(rho, layout.n_qutrits))
    return snapshots


def measure_positions(
    state: ChainState, layout: ChainLayout, step: int = 0
) -> Distribution:
    """Walker position distribution in compact (chain) coordinates.

    ``p(x = i)`` sums the ``e`` and ``f`` populations of qutrit ``i``.  The
    distribution's ``loss`` (1 - total) is the vacuum population plus any
    residual population stranded on shift qubits.
    """
    diag = np.diag(state.rho).real
    probs = np.array(
        [
            diag[layout.e_index(i)] + diag[layout.f_index(i)]
            for i in range(layout.n_qutrits)
        ]
    )
    return Distribution(0, probs, step=step)


def populations(state: ChainState, layout: ChainLayout) -> dict:
    """Full population breakdown: vacuum, per-qutrit e/f, per-shift-qubit."""
    diag = np.diag(state.rho).real
    return {
        "vacuum": float(diag[0]),
        "e": np.array([diag[layout.e_index(i)] for i in range(layout.n_qutrits)]),
        "f": np.array([diag[layout.f_index(i)] for i in range(layout.n_qutrits)]),
        "shift_qubits": np.array(
            [diag[layout.sq_index(j)] for j in range(layout.n_shift_qubits)]
        ),
    }


def sample_positions(
    state: ChainState,
    layout: ChainLayout,
    shots: int,
    rng: np.random.Generator,
    noise: NoiseModel | None = None,
) -> tuple[np.ndarray, int]:
    """Draw readout outcomes from the final populations.

    Returns per-position counts plus the number of discarded shots (no or
    multiple excited readings).  With zero readout error the discarded count
    is exactly the number of vacuum/stranded draws.  Deterministic for a
    given generator state.
    """
    if shots <= 0:
        raise ValueError("shots must be positive")
    dist = measure_positions(state, layout)
    n = layout.n_qutrits
    p = np.append(dist.probs, max(0.0, 1.0 - dist.total))
    p = p / p.sum()
    outcome = rng.choice(n + 1, size=shots, p=p)
    pattern = np.zeros((shots, n), dtype=bool)
    rows = outcome < n
    pattern[np.nonzero(rows)[0], outcome[rows]] = True
    r = 0.0 if noise is None else noise.readout_error
    if r > 0.0:
        pattern ^= rng.random((shots, n)) < r
    excited = pattern.sum(axis=1)
    valid = excited == 1
    counts = np.bincount(pattern[valid].argmax(axis=1), minlength=n)
    return counts, int(shots - valid.sum())
