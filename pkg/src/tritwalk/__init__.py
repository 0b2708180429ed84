"""Discrete-time quantum walk simulation toolkit.

Three engines over one set of distribution and metric types:

* :mod:`tritwalk.walk` evolves ideal coined walks (compact one-way and
  conventional two-way) with position-dependent coins, exactly;
* :mod:`tritwalk.topology` builds the interface edge states of two-domain
  walks and the parameter sweeps that probe them;
* :mod:`tritwalk.circuit` and :mod:`tritwalk.chain` compile a walk onto a
  qutrit chain and simulate the gate schedule as an exact density-operator
  evolution in the zero/one-excitation subspace, with configurable noise.

:mod:`tritwalk.experiments` and the ``tritwalk`` command line tie the
engines together behind JSON configs with CSV/JSON/SVG output.
"""

__version__ = "0.1.0"

from .distribution import Distribution
from .walk import (
    CoinProfile,
    WalkKind,
    WalkState,
    apply_coin,
    apply_shift,
    coin_matrix,
    convert_uni_to_bi,
    evolve,
    initial_state,
    invert_step,
    map_profile_bi_to_uni,
    step,
)
from .topology import (
    EDGE_WINDOW,
    EdgeStateSpec,
    SweepPlan,
    SweepPoint,
    decay_ratio,
    domain_profile,
    edge_eigenphase,
    edge_state,
    matched_interface_state,
    numeric_overlap_p0,
    overlap_p0,
    p_edge,
    run_sweep,
    stationarity_defect,
    truncation_deficit,
)
from .metrics import diffusion_distance, series, similarity
from .circuit import (
    ChainLayout,
    Circuit,
    Gate,
    Layer,
    circuit_to_json,
    coin_preparation_params,
    compile_walk,
)
from .chain import (
    ChainState,
    NoiseModel,
    apply_gate,
    measure_positions,
    populations,
    sample_positions,
    simulate,
    simulate_trajectory,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    RunRecord,
    compare_records,
    parse_angle,
    run_sweep_config,
    run_walk,
    similarity_csv,
    sweep_csv,
    walk_csv,
)
from .heatmap import emit_heatmap, heatmap_svg

__all__ = [
    "__version__",
    "Distribution",
    "CoinProfile",
    "WalkKind",
    "WalkState",
    "apply_coin",
    "apply_shift",
    "coin_matrix",
    "convert_uni_to_bi",
    "evolve",
    "initial_state",
    "invert_step",
    "map_profile_bi_to_uni",
    "step",
    "EDGE_WINDOW",
    "EdgeStateSpec",
    "SweepPlan",
    "SweepPoint",
    "decay_ratio",
    "domain_profile",
    "edge_eigenphase",
    "edge_state",
    "matched_interface_state",
    "numeric_overlap_p0",
    "overlap_p0",
    "p_edge",
    "run_sweep",
    "stationarity_defect",
    "truncation_deficit",
    "diffusion_distance",
    "series",
    "similarity",
    "ChainLayout",
    "Circuit",
    "Gate",
    "Layer",
    "circuit_to_json",
    "coin_preparation_params",
    "compile_walk",
    "ChainState",
    "NoiseModel",
    "apply_gate",
    "measure_positions",
    "populations",
    "sample_positions",
    "simulate",
    "simulate_trajectory",
    "ConfigError",
    "ExperimentConfig",
    "RunRecord",
    "compare_records",
    "parse_angle",
    "run_sweep_config",
    "run_walk",
    "similarity_csv",
    "sweep_csv",
    "walk_csv",
    "emit_heatmap",
    "heatmap_svg",
]
