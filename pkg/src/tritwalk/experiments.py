"""Experiment configuration, run records, and CSV emission.

Configs are JSON documents; angles accept plain radians or fraction
literals such as ``"pi/4"`` and ``"-3*pi/4"``.  A run produces a
:class:`RunRecord` whose canonical JSON form is byte-deterministic for a
given config (and seed): probabilities are rounded to 12 significant digits
before storage and the wall-clock duration is kept out of the canonical
serialization (it is reported on stderr by the command-line tool).
"""

from __future__ import annotations

import json
import math
import os
import re
import time
from dataclasses import dataclass, replace
from typing import Any, Sequence

import numpy as np

from . import __version__
from .chain import (
    NoiseModel,
    measure_positions,
    sample_positions,
    simulate_trajectory,
)
from .circuit import ChainLayout, compile_walk
from .distribution import Distribution
from .metrics import diffusion_distance, similarity
from .topology import SweepPlan, SweepPoint, domain_profile, p_edge, run_sweep
from .walk import (
    CoinProfile,
    WalkKind,
    convert_uni_to_bi,
    evolve,
    initial_state,
    map_profile_bi_to_uni,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "RunRecord",
    "parse_angle",
    "run_walk",
    "run_sweep_config",
    "compare_records",
    "walk_csv",
    "sweep_csv",
    "similarity_csv",
]

ENGINES = ("ideal-uni", "ideal-bi", "qutrit")
FORMATS = ("csv", "json", "svg-heatmap")
DEFAULT_SHOTS = 4096

_PI_LITERAL = re.compile(
    r"^\s*([+-]?)\s*(\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d+)?))?\s*$",
    re.IGNORECASE,
)


class ConfigError(ValueError):
    """Invalid configuration; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def parse_angle(value: Any, path: str = "angle") -> float:
    """Radians from a number or a ``pi``-fraction literal."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str):
        m = _PI_LITERAL.match(value)
        if m:
            sign = -1.0 if m.group(1) == "-" else 1.0
            num = float(m.group(2)) if m.group(2) else 1.0
            den = float(m.group(3)) if m.group(3) else 1.0
            return sign * num * math.pi / den
        try:
            return float(value)
        except ValueError:
            pass
    raise ConfigError(path, f"expected an angle in radians or a pi fraction, got {value!r}")


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _parse_complex(value: Any, path: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ConfigError(path, f"expected a number or [re, im] pair, got {value!r}")


def _parse_profile(doc: Any, path: str = "profile") -> CoinProfile:
    if not isinstance(doc, dict):
        raise ConfigError(path, "expected an object")
    kind = doc.get("kind", "two-domain")
    axis = parse_angle(doc.get("axis", 0.0), f"{path}.axis")
    try:
        if kind == "homogeneous":
            return CoinProfile.homogeneous(
                parse_angle(doc.get("theta", 0.0), f"{path}.theta"), axis=axis
            )
        if kind == "two-domain":
            return CoinProfile.two_domain(
                parse_angle(doc.get("theta_minus", 0.0), f"{path}.theta_minus"),
                parse_angle(doc.get("theta_plus", 0.0), f"{path}.theta_plus"),
                boundary=int(doc.get("boundary", 0)),
                axis=axis,
            )
        if kind == "per-step-table":
            rows = doc.get("table")
            if not isinstance(rows, list):
                raise ConfigError(f"{path}.table", "expected a list of [step, position, angle]")
            table = {}
            for k, row in enumerate(rows):
                if not (isinstance(row, (list, tuple)) and len(row) == 3):
                    raise ConfigError(f"{path}.table[{k}]", "expected [step, position, angle]")
                table[(int(row[0]), int(row[1]))] = parse_angle(
                    row[2], f"{path}.table[{k}].angle"
                )
            return CoinProfile.from_table(table, axis=axis)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from None
    raise ConfigError(f"{path}.kind", f"unknown profile kind {kind!r}")


def _profile_doc(profile: CoinProfile) -> dict:
    if profile.kind == "homogeneous":
        return {"kind": "homogeneous", "theta": profile.theta_plus, "axis": profile.axis}
    if profile.kind == "two-domain":
        return {
            "kind": "two-domain",
            "theta_minus": profile.theta_minus,
            "theta_plus": profile.theta_plus,
            "boundary": profile.boundary,
            "axis": profile.axis,
        }
    rows = [[s, x, theta] for (s, x), theta in sorted(profile.table.items())]
    return {"kind": "per-step-table", "table": rows, "axis": profile.axis}


def _parse_initial(doc: Any, path: str = "initial"):
    if isinstance(doc, str):
        if doc not in ("phi_co", "phi_ce"):
            raise ConfigError(path, f"unknown initial state name {doc!r}")
        return doc
    if isinstance(doc, list):
        entries = []
        for k, row in enumerate(doc):
            if not (isinstance(row, (list, tuple)) and len(row) == 3):
                raise ConfigError(f"{path}[{k}]", "expected [position, coin0, coin1]")
            entries.append(
                (
                    int(row[0]),
                    _parse_complex(row[1], f"{path}[{k}].coin0"),
                    _parse_complex(row[2], f"{path}[{k}].coin1"),
                )
            )
        return entries
    raise ConfigError(path, "expected a state name or a list of amplitude triples")


def _initial_doc(initial) -> Any:
    if isinstance(initial, str):
        return initial
    return [
        [x, [a0.real, a0.imag], [a1.real, a1.imag]] for x, a0, a1 in initial
    ]


def _parse_layout(doc: Any, path: str = "layout") -> ChainLayout:
    if doc is None:
        return ChainLayout()
    if not isinstance(doc, dict):
        raise ConfigError(path, "expected an object")
    try:
        return ChainLayout(
            n_qutrits=int(doc.get("n_qutrits", 10)),
            su2_ef_ns=float(doc.get("su2_ef_ns", 40.0)),
            swap_ns=float(doc.get("swap_ns", 50.0)),
            pi_ge_ns=float(doc.get("pi_ge_ns", 40.0)),
        )
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from None


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated walk-run configuration."""

    engine: str
    steps: int
    profile: CoinProfile
    initial: Any = "phi_co"
    noise: NoiseModel = NoiseModel()
    layout: ChainLayout = ChainLayout()
    seed: int | None = None
    shots: int = DEFAULT_SHOTS
    convert: bool = True
    output_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ConfigError("engine", f"must be one of {ENGINES}, got {self.engine!r}")
        if self.steps < 0:
            raise ConfigError("steps", "must be non-negative")
        if self.output_format not in FORMATS:
            raise ConfigError("output.format", f"must be one of {FORMATS}")
        if self.engine != "qutrit":
            if not self.noise.is_ideal:
                raise ConfigError("noise", "only valid for engine 'qutrit'")
            if self.seed is not None:
                raise ConfigError("seed", "sampling applies to the qutrit engine only")
        if self.shots <= 0:
            raise ConfigError("shots", "must be positive")
        if self.engine == "qutrit" and self.steps > self.layout.n_qutrits - 1:
            raise ConfigError(
                "steps",
                f"chain too short: {self.steps}-step walk needs "
                f"{self.steps + 1} qutrits, layout has {self.layout.n_qutrits}",
            )

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        if not isinstance(doc, dict):
            raise ConfigError("", "config must be a JSON object")
        known = {
            "engine", "steps", "profile", "initial", "noise", "layout",
            "seed", "shots", "convert", "output",
        }
        for key in doc:
            if key not in known:
                raise ConfigError(key, "unknown config field")
        if "engine" not in doc:
            raise ConfigError("engine", "required")
        if "steps" not in doc:
            raise ConfigError("steps", "required")
        if "profile" not in doc:
            raise ConfigError("profile", "required")
        try:
            noise = NoiseModel.from_dict(doc.get("noise", {}) or {})
        except ValueError as exc:
            raise ConfigError("noise", str(exc)) from None
        output = doc.get("output", {}) or {}
        if not isinstance(output, dict):
            raise ConfigError("output", "expected an object")
        seed = doc.get("seed")
        return cls(
            engine=doc["engine"],
            steps=int(doc["steps"]),
            profile=_parse_profile(doc["profile"]),
            initial=_parse_initial(doc.get("initial", "phi_co")),
            noise=noise,
            layout=_parse_layout(doc.get("layout")),
            seed=None if seed is None else int(seed),
            shots=int(doc.get("shots", DEFAULT_SHOTS)),
            convert=bool(doc.get("convert", True)),
            output_path=output.get("path"),
            output_format=output.get("format", "csv"),
        )

    def canonical_dict(self) -> dict:
        """Config echo with all angles resolved to radians."""
        doc: dict[str, Any] = {
            "engine": self.engine,
            "steps": self.steps,
            "profile": _profile_doc(self.profile),
            "initial": _initial_doc(self.initial),
            "convert": self.convert,
        }
        if self.engine == "qutrit":
            doc["noise"] = json.loads(self.noise.to_json())
            doc["layout"] = {
                "n_qutrits": self.layout.n_qutrits,
                "su2_ef_ns": self.layout.su2_ef_ns,
                "swap_ns": self.layout.swap_ns,
                "pi_ge_ns": self.layout.pi_ge_ns,
            }
            if self.seed is not None:
                doc["seed"] = self.seed
                doc["shots"] = self.shots
        return doc


@dataclass(frozen=True)
class RunRecord:
    """Result of one walk run.

    ``distributions`` rows are ``(step, offset, probabilities)``;
    ``diffusion`` rows are ``(step, value)`` with ``None`` where the
    distribution is sub-normalized and the metric is undefined.
    ``duration_s`` is excluded from the canonical JSON so that identical
    configs serialize byte-identically.
    """

    config: dict
    distributions: tuple
    diffusion: tuple
    version: str = __version__
    duration_s: float | None = None

    def distribution_objects(self) -> list[Distribution]:
        return [
            Distribution(offset, np.array(probs), step=step)
            for step, offset, probs in self.distributions
        ]

    def steps(self) -> list[int]:
        return [row[0] for row in self.distributions]

    def canonical(self) -> "RunRecord":
        return replace(self, duration_s=None)

    def to_json(self) -> str:
        doc = {
            "config": self.config,
            "distributions": [
                {"step": s, "offset": o, "probs": list(p)}
                for s, o, p in self.distributions
            ],
            "diffusion_distance": [[s, v] for s, v in self.diffusion],
            "version": self.version,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunRecord":
        doc = json.loads(text)
        return cls(
            config=doc["config"],
            distributions=tuple(
                (row["step"], row["offset"], tuple(float(p) for p in row["probs"]))
                for row in doc["distributions"]
            ),
            diffusion=tuple(
                (s, None if v is None else float(v))
                for s, v in doc["diffusion_distance"]
            ),
            version=doc["version"],
        )


def _record_rows(dists: Sequence[Distribution]) -> tuple:
    return tuple(
        (d.step, d.offset, tuple(_round12(p) for p in d.probs)) for d in dists
    )


def _diffusion_rows(dists: Sequence[Distribution]) -> tuple:
    rows = []
    for d in dists:
        if abs(d.total - 1.0) <= 1e-6:
            rows.append((d.step, _round12(diffusion_distance(d))))
        else:
            rows.append((d.step, None))
    return tuple(rows)


def _qutrit_distributions(config: ExperimentConfig) -> list[Distribution]:
    circuit = compile_walk(
        config.steps, config.profile, config.initial, config.layout
    )
    states = simulate_trajectory(circuit, config.noise, config.layout)
    if config.seed is None:
        return [
            measure_positions(st, config.layout, step=k)
            for k, st in enumerate(states)
        ]
    rng = np.random.default_rng(config.seed)
    dists = []
    for k, st in enumerate(states):
        counts, _ = sample_positions(
            st, config.layout, config.shots, rng, config.noise
        )
        dists.append(Distribution(0, counts / config.shots, step=k))
    return dists


def run_walk(config: ExperimentConfig) -> RunRecord:
    """Run the configured engine and assemble the per-step record.

    The config profile describes one physical walk in conventional two-way
    coordinates, whatever the engine: the compact-coordinate engines
    (``ideal-uni`` and ``qutrit``) map it onto their per-step table
    internally, so all three engines agree for the same config.  A
    per-step-table profile is taken as explicit compact-walk angles instead.
    Output from the compact engines is relabeled to conventional coordinates
    unless ``convert`` is off.
    """
    start = time.perf_counter()
    if config.engine == "ideal-uni":
        profile = config.profile
        if profile.kind != "per-step-table":
            profile = map_profile_bi_to_uni(profile, config.steps)
        dists = evolve(
            initial_state(config.initial),
            profile,
            WalkKind.UNIDIRECTIONAL,
            config.steps,
        )
    elif config.engine == "ideal-bi":
        dists = evolve(
            initial_state(config.initial),
            config.profile,
            WalkKind.BIDIRECTIONAL,
            config.steps,
        )
    else:
        dists = _qutrit_distributions(config)
    if config.engine in ("ideal-uni", "qutrit") and config.convert:
        dists = [convert_uni_to_bi(d, d.step) for d in dists]
    record = RunRecord(
        config=config.canonical_dict(),
        distributions=_record_rows(dists),
        diffusion=_diffusion_rows(dists),
        duration_s=time.perf_counter() - start,
    )
    return record


def compare_records(a: RunRecord, b: RunRecord) -> list[tuple[int, float]]:
    """Per-step similarity between two runs sharing a step range."""
    if a.steps() != b.steps():
        raise ValueError("records cover different step ranges")
    da = a.distribution_objects()
    db = b.distribution_objects()
    return [(p.step, _round12(similarity(p, q))) for p, q in zip(da, db)]


def _parse_grid(doc: Any, path: str) -> tuple[float, ...]:
    if isinstance(doc, list):
        return tuple(parse_angle(v, f"{path}[{i}]") for i, v in enumerate(doc))
    if isinstance(doc, dict):
        for key in ("start", "stop", "count"):
            if key not in doc:
                raise ConfigError(f"{path}.{key}", "required for a grid range")
        count = int(doc["count"])
        if count < 1:
            raise ConfigError(f"{path}.count", "must be positive")
        start = parse_angle(doc["start"], f"{path}.start")
        stop = parse_angle(doc["stop"], f"{path}.stop")
        return tuple(float(v) for v in np.linspace(start, stop, count))
    raise ConfigError(path, "expected a list of angles or {start, stop, count}")


def run_sweep_config(doc: dict) -> list[SweepPoint]:
    """Run an interface-population sweep described by a JSON document.

    Grid angles are domain half-angles (see :mod:`tritwalk.topology`).  The
    default engine is the ideal conventional walk; ``"engine": "qutrit"``
    runs each grid point through the compiled chain (optionally with noise)
    and evaluates the interface window on converted coordinates.
    """
    if not isinstance(doc, dict):
        raise ConfigError("", "sweep config must be a JSON object")
    mode = doc.get("mode")
    if mode not in SweepPlan._MODES:
        raise ConfigError("mode", f"must be one of {SweepPlan._MODES}, got {mode!r}")
    try:
        plan = SweepPlan(
            mode=mode,
            grid=_parse_grid(doc.get("grid", []), "grid"),
            steps=tuple(int(s) for s in doc.get("steps", [])),
            fixed=parse_angle(doc.get("fixed", "pi/4"), "fixed"),
            initial=_parse_initial(doc.get("initial", "phi_ce")),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("", str(exc)) from None
    if not plan.steps:
        raise ConfigError("steps", "required")
    engine = doc.get("engine", "ideal-bi")
    if engine == "ideal-bi":
        if isinstance(plan.initial, list):
            plan = replace(plan, initial=initial_state(plan.initial))
        # grid points are independent; order of results is grid order
        workers = min(len(plan.grid), os.cpu_count() or 1)
        return run_sweep(plan, max_workers=workers)
    if engine != "qutrit":
        raise ConfigError("engine", "sweep engines are 'ideal-bi' and 'qutrit'")
    try:
        noise = NoiseModel.from_dict(doc.get("noise", {}) or {})
    except ValueError as exc:
        raise ConfigError("noise", str(exc)) from None
    layout = _parse_layout(doc.get("layout"))
    t_max = max(plan.steps)
    if t_max > layout.n_qutrits - 1:
        raise ConfigError(
            "steps",
            f"chain too short: {t_max}-step walk needs {t_max + 1} qutrits, "
            f"layout has {layout.n_qutrits}",
        )
    rows = []
    for swept in plan.grid:
        tm, tp = plan.domain_angles(swept)
        circuit = compile_walk(t_max, domain_profile(tm, tp), plan.initial, layout)
        states = simulate_trajectory(circuit, noise, layout)
        for s in sorted(set(plan.steps)):
            dist = convert_uni_to_bi(measure_positions(states[s], layout, step=s), s)
            rows.append(SweepPoint(swept, s, p_edge(dist)))
    return rows


def walk_csv(record: RunRecord) -> str:
    lines = ["step,position,probability"]
    for step, offset, probs in record.distributions:
        for i, p in enumerate(probs):
            lines.append(f"{step},{offset + i},{p:.12g}")
    return "\n".join(lines) + "\n"


def sweep_csv(points: Sequence[SweepPoint]) -> str:
    lines = ["theta_swept_rad,steps,p_edge"]
    for pt in sorted(points, key=lambda r: (r.theta, r.steps)):
        lines.append(f"{pt.theta:.12g},{pt.steps},{_round12(pt.p_edge):.12g}")
    return "\n".join(lines) + "\n"


def similarity_csv(rows: Sequence[tuple[int, float]]) -> str:
    lines = ["step,similarity"]
    for step, value in rows:
        lines.append(f"{step},{value:.12g}")
    return "\n".join(lines) + "\n"
