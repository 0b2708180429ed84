"""Ballistic spreading of the interface walk.

Launches the walker at the domain interface in the coin state orthogonal to
the edge-state pair, so nothing stays trapped: the front flies off
ballistically and the diffusion distance D(t) = sqrt(sum_x x^2 p(x, t))
grows linearly in t.  A classical stay/right coin-flip walk (converted to
the same two-way coordinates) is shown as the sqrt(t) control.

Run from the repository root:

    python demos/ballistic_spreading.py

Writes demos/out/ballistic_spreading.png (if matplotlib is installed) and
demos/out/ballistic_heatmap.svg.
"""

import math
import pathlib

import numpy as np

from tritwalk import (
    Distribution,
    ExperimentConfig,
    WalkKind,
    diffusion_distance,
    domain_profile,
    emit_heatmap,
    evolve,
    initial_state,
    run_walk,
    series,
)

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# Two-domain walk, domain half-angles -pi/4 / +pi/4 (coin rotation +-pi/2).
profile = domain_profile(-math.pi / 4, math.pi / 4)
steps = 9

dists = evolve(initial_state("phi_co"), profile, WalkKind.BIDIRECTIONAL, steps)
dt = series(dists, diffusion_distance)

print("quantum walk, edge-orthogonal start")
print(" t   D(t)")
for t, value in dt:
    print(f"{t:2d}   {value:.6f}")

# least-squares line over t = 2..9
ts = np.array([t for t, _ in dt[2:]], dtype=float)
ys = np.array([v for _, v in dt[2:]])
slope, intercept = np.polyfit(ts, ys, 1)
r2 = 1 - ((ys - (slope * ts + intercept)) ** 2).sum() / ((ys - ys.mean()) ** 2).sum()
print(f"\nlinear fit over t=2..9: D(t) = {slope:.4f} t + {intercept:.4f}  (R^2 = {r2:.5f})")

# classical control: binomial stay/right walk in the same coordinates
def classical_distribution(t):
    probs = np.zeros(2 * t + 1)
    for k in range(t + 1):
        probs[2 * k] = math.comb(t, k) / 2.0**t
    return Distribution(-t, probs, step=t)

control_ts = [4, 8, 16, 32, 64]
control = [diffusion_distance(classical_distribution(t)) for t in control_ts]
print("\nclassical stay/right control (converted coordinates)")
for t, value in zip(control_ts, control):
    print(f"t={t:3d}  D={value:.6f}  sqrt(t)={math.sqrt(t):.6f}")

# final-step distribution: the front sits on the right
final = dists[-1]
right = sum(final.prob(x) for x in range(1, steps + 1))
left = sum(final.prob(x) for x in range(-steps, 0))
print(f"\nt={steps} mass right of origin: {right:.4f}, left: {left:.4f}")

# heatmap of the whole run via the experiment pipeline
record = run_walk(
    ExperimentConfig.from_dict(
        {
            "engine": "ideal-bi",
            "steps": steps,
            "profile": {
                "kind": "two-domain",
                "theta_minus": "-pi/2",
                "theta_plus": "pi/2",
            },
            "initial": "phi_co",
        }
    )
)
emit_heatmap(record, OUT / "ballistic_heatmap.svg")
print(f"wrote {OUT / 'ballistic_heatmap.svg'}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed, skipping the PNG figure")
else:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot([t for t, _ in dt], [v for _, v in dt], "o-", label="quantum walk")
    ax1.plot(control_ts, control, "s--", label="classical control")
    ax1.set_xlabel("step t")
    ax1.set_ylabel("D(t)")
    ax1.set_xlim(0, 10)
    ax1.set_ylim(0, 7)
    ax1.legend()
    xs = final.positions()
    ax2.bar(xs, final.probs, width=0.8)
    ax2.set_xlabel("position")
    ax2.set_ylabel(f"p(x, t={steps})")
    fig.tight_layout()
    fig.savefig(OUT / "ballistic_spreading.png", dpi=150)
    print(f"wrote {OUT / 'ballistic_spreading.png'}")
