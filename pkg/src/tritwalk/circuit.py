"""Qutrit-chain layout and gate-schedule compilation.

The chain alternates qutrits ``Q0..Q{n-1}`` and tunable shift qubits
``SQ0..SQ{n-2}``.  A qutrit's ground state encodes an unoccupied walker
site; its two excited levels ``e`` and ``f`` encode an occupied site with
coin ``|1>`` and ``|0>`` respectively (``e`` is the level the shift moves).

A compiled walk starts with a ``pi_ge`` pulse on Q0 followed by one coin-
subspace SU(2) gate preparing the coin amplitudes.  Step ``n`` then applies
``n`` parallel coin gates on ``Q0..Q{n-1}`` and shifts via two swap
sublayers: every ``Qi -> SQi`` in parallel, then every ``SQi -> Q{i+1}`` in
parallel.  The shift qubits act as empty buffers between the sublayers, so
the parallel schedule realizes the exact one-site right shift of the
``e`` population.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .walk import CoinProfile, WalkState, initial_state, map_profile_bi_to_uni

__all__ = [
    "ChainLayout",
    "Gate",
    "Layer",
    "Circuit",
    "compile_walk",
    "coin_preparation_params",
    "circuit_to_json",
]


@dataclass(frozen=True)
class ChainLayout:
    """Chain geometry and per-gate-class durations.

    The default durations are configuration placeholders for a plausible
    device and are not calibrated values; override them when matching a
    particular chip.
    """

    n_qutrits: int = 10
    su2_ef_ns: float = 40.0
    swap_ns: float = 50.0
    pi_ge_ns: float = 40.0

    def __post_init__(self):
        if self.n_qutrits < 2:
            raise ValueError("chain needs at least two qutrits")
        for name in ("su2_ef_ns", "swap_ns", "pi_ge_ns"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")

    @property
    def n_shift_qubits(self) -> int:
        return self.n_qutrits - 1

    @property
    def dim(self) -> int:
        """Zero- plus one-excitation basis size: vacuum, e_i, f_i, sq_j."""
        return 1 + 2 * self.n_qutrits + self.n_shift_qubits

    def e_index(self, i: int) -> int:
        return 1 + 2 * i

    def f_index(self, i: int) -> int:
        return 2 + 2 * i

    def sq_index(self, j: int) -> int:
        return 1 + 2 * self.n_qutrits + j

    def qutrit_label(self, i: int) -> str:
        return f"Q{i}"

    def shift_qubit_label(self, j: int) -> str:
        return f"SQ{j}"


@dataclass(frozen=True)
class Gate:
    """One scheduled gate.

    ``kind`` is ``"pi_ge"``, ``"su2_ef"``, ``"swap_in"`` (qutrit to shift
    qubit) or ``"swap_out"`` (shift qubit to qutrit).  ``theta``/``axis``
    apply to ``su2_ef`` only.
    """

    kind: str
    qutrit: int | None = None
    shift_qubit: int | None = None
    theta: float = 0.0
    axis: float = 0.0

    def elements(self) -> tuple[tuple[str, int], ...]:
        """Chain elements the gate addresses (for disjointness checks)."""
        if self.kind in ("pi_ge", "su2_ef"):
            return (("q", self.qutrit),)
        return (("q", self.qutrit), ("sq", self.shift_qubit))

    def duration_ns(self, layout: ChainLayout) -> float:
        if self.kind == "pi_ge":
            return layout.pi_ge_ns
        if self.kind == "su2_ef":
            return layout.su2_ef_ns
        return layout.swap_ns


@dataclass(frozen=True)
class Layer:
    """Gates executed in parallel; ``step`` tags the walk step (0 = init)."""

    kind: str
    step: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        seen: set[tuple[str, int]] = set()
        for gate in self.gates:
            for el in gate.elements():
                if el in seen:
                    raise ValueError(
                        f"layer addresses element {el} twice"
                    )
                seen.add(el)

    def duration_ns(self, layout: ChainLayout) -> float:
        return max(g.duration_ns(layout) for g in self.gates)


@dataclass(frozen=True)
class Circuit:
    n_qutrits: int
    steps: int
    layers: tuple[Layer, ...]

    def gate_count(self, kind: str | None = None) -> int:
        return sum(
            1
            for layer in self.layers
            for g in layer.gates
            if kind is None or g.kind == kind
        )


def coin_preparation_params(coin0: complex, coin1: complex) -> tuple[float, float]:
    """(theta, axis) of the coin-subspace gate sending ``|1>`` to the given
    normalized coin pair, up to a global phase."""
    n = math.hypot(abs(coin0), abs(coin1))
    if n == 0.0:
        raise ValueError("cannot normalize a zero coin state")
    c0 = complex(coin0) / n
    c1 = complex(coin1) / n
    gamma = cmath.phase(c1) if abs(c1) > 1e-15 else 0.0
    c0p = c0 * cmath.exp(-1j * gamma)
    theta = 2.0 * math.atan2(abs(c0), abs(c1))
    axis = (math.pi / 2.0 - cmath.phase(c0p)) if abs(c0) > 1e-15 else 0.0
    return theta, axis


def _resolve_initial_coin(
    initial: str | Sequence[complex] | WalkState,
) -> tuple[complex, complex]:
    if isinstance(initial, str):
        state = initial_state(initial)
        pair = state.amplitude(0)
        return complex(pair[0]), complex(pair[1])
    if isinstance(initial, WalkState):
        pair = initial.amplitude(0)
        return complex(pair[0]), complex(pair[1])
    c0, c1 = initial
    return complex(c0), complex(c1)


def compile_walk(
    t: int,
    profile: CoinProfile,
    initial: str | Sequence[complex],
    layout: ChainLayout,
) -> Circuit:
    """Compile a t-step walk into the chain's layered gate schedule.

    ``profile`` is given in conventional (bidirectional) coordinates for the
    homogeneous and two-domain kinds and is mapped onto the chain's compact
    coordinates internally; a per-step-table profile is taken as explicit
    compact-walk angles.  ``initial`` is a named interface state or a coin
    amplitude pair prepared on Q0.
    """
    if t < 0:
        raise ValueError("step count must be non-negative")
    if t > layout.n_qutrits - 1:
        raise ValueError(
            f"chain too short: {t}-step walk needs {t + 1} qutrits, "
            f"layout has {layout.n_qutrits}"
        )
    if profile.kind == "per-step-table":
        uni = profile
    else:
        uni = map_profile_bi_to_uni(profile, t)

    c0, c1 = _resolve_initial_coin(initial)
    theta0, axis0 = coin_preparation_params(c0, c1)

    layers = [
        Layer("init_position", 0, (Gate("pi_ge", qutrit=0),)),
        Layer("init_coin", 0, (Gate("su2_ef", qutrit=0, theta=theta0, axis=axis0),)),
    ]
    for n in range(1, t + 1):
        coin_gates = tuple(
            Gate("su2_ef", qutrit=i, theta=uni.angle(i, n), axis=uni.axis)
            for i in range(n)
        )
        swap_in = tuple(
            Gate("swap_in", qutrit=i, shift_qubit=i) for i in range(n)
        )
        swap_out = tuple(
            Gate("swap_out", qutrit=i + 1, shift_qubit=i) for i in range(n)
        )
        layers.append(Layer("coin", n, coin_gates))
        layers.append(Layer("swap_in", n, swap_in))
        layers.append(Layer("swap_out", n, swap_out))
    return Circuit(n_qutrits=layout.n_qutrits, steps=t, layers=tuple(layers))


def circuit_to_json(circuit: Circuit) -> str:
    """Deterministic JSON dump of the layered schedule."""
    doc = {
        "n_qutrits": circuit.n_qutrits,
        "steps": circuit.steps,
        "layers": [
            {
                "kind": layer.kind,
                "step": layer.step,
                "gates": [
                    {
                        "kind": g.kind,
                        "qutrit": g.qutrit,
                        "shift_qubit": g.shift_qubit,
                        "theta": g.theta,
                        "axis": g.axis,
                    }
                    for g in layer.gates
                ],
            }
            for layer in circuit.layers
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
