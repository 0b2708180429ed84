"""Interface population sweeps over the domain angles.

Two sweeps probe the edge states through the trapped population
P_edge = p(-1) + p(0) after 5 and 8 steps, starting from the matched
interface coin state:

* fix theta_plus = pi/4 and sweep theta_minus across zero: the interface
  population collapses once both domains share the sign (no edge states);
* antisymmetric theta_minus = -theta_plus: the edge states localize more
  tightly as theta_plus grows, and P_edge climbs toward 1 along the
  closed-form curve overlap_p0(theta_plus).

Run from the repository root:

    python demos/interface_parameter_sweeps.py

Writes demos/out/interface_sweeps.png when matplotlib is available.
"""

import math
import pathlib

import numpy as np

from tritwalk import SweepPlan, overlap_p0, run_sweep

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# --- sweep 1: fixed positive domain, swept negative domain -------------------
grid_minus = tuple(np.linspace(-1.4, 1.4, 15))
plan1 = SweepPlan(
    mode="fix-plus-vary-minus", grid=grid_minus, steps=(5, 8), fixed=math.pi / 4
)
rows1 = run_sweep(plan1, max_workers=4)
table1 = {(round(r.theta, 6), r.steps): r.p_edge for r in rows1}

print("sweep 1: theta_plus = pi/4 fixed, theta_minus swept")
print(" theta_minus   P_edge(t=5)  P_edge(t=8)")
for theta in grid_minus:
    key = round(theta, 6)
    print(f"  {theta:+.4f}      {table1[(key, 5)]:.6f}     {table1[(key, 8)]:.6f}")
pair = run_sweep(
    SweepPlan(
        mode="fix-plus-vary-minus",
        grid=(-math.pi / 4, math.pi / 4),
        steps=(8,),
        fixed=math.pi / 4,
    )
)
contrast = pair[0].p_edge - pair[1].p_edge
print(f"\ncontrast at theta_minus = -pi/4 vs +pi/4 (t=8): {contrast:.4f}")

# --- sweep 2: antisymmetric domains ------------------------------------------
grid_plus = tuple(np.linspace(0.1, 1.5, 10))
plan2 = SweepPlan(mode="antisymmetric", grid=grid_plus, steps=(5, 8))
rows2 = run_sweep(plan2, max_workers=4)
table2 = {(round(r.theta, 6), r.steps): r.p_edge for r in rows2}

print("\nsweep 2: theta_minus = -theta_plus, theta_plus swept")
print(" theta_plus   P_edge(t=5)  P_edge(t=8)  overlap_p0")
for theta in grid_plus:
    key = round(theta, 6)
    print(
        f"  {theta:.4f}     {table2[(key, 5)]:.6f}     {table2[(key, 8)]:.6f}"
        f"     {overlap_p0(theta):.6f}"
    )

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed, skipping the PNG figure")
else:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    for t, marker in ((5, "o"), (8, "s")):
        ax1.plot(
            grid_minus,
            [table1[(round(g, 6), t)] for g in grid_minus],
            marker + "-",
            label=f"t={t}",
        )
    ax1.axvline(0.0, color="gray", lw=0.8)
    ax1.set_xlabel("theta_minus (rad)")
    ax1.set_ylabel("P_edge")
    ax1.set_title("fixed theta_plus = pi/4")
    ax1.legend()
    for t, marker in ((5, "o"), (8, "s")):
        ax2.plot(
            grid_plus,
            [table2[(round(g, 6), t)] for g in grid_plus],
            marker + "-",
            label=f"t={t}",
        )
    dense = np.linspace(0.02, 1.52, 200)
    ax2.plot(dense, [overlap_p0(g) for g in dense], "k--", lw=1, label="overlap_p0")
    ax2.set_xlabel("theta_plus (rad)")
    ax2.set_ylabel("P_edge")
    ax2.set_title("antisymmetric domains")
    ax2.legend()
    fig.tight_layout()
    fig.savefig(OUT / "interface_sweeps.png", dpi=150)
    print(f"\nwrote {OUT / 'interface_sweeps.png'}")
