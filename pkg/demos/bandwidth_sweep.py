"""Magnitude responses across the tunable range, one design for all of it."""

import math
import os

import numpy as np

from varband import (
    FilterSpec,
    build_coefficients,
    design_transition,
    discretize,
    frequency_response,
    ptvir_from_coefficients,
    uniform_grid,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

spec = FilterSpec(
    delta=0.25 * math.pi,
    b_lower=0.125 * math.pi,
    b_upper=0.859375 * math.pi,
    length_override=31,
)
disc = discretize(spec, 31, 128)
transition, _, _ = design_transition(disc)

omega = uniform_grid(disc.n_fft, 0.0, math.pi, density=8)
picks = [disc.b_bins_lower, (disc.b_bins_lower + disc.b_bins_upper) // 2,
         disc.b_bins_upper]

curves = {}
for b_bin in picks:
    ptvir = ptvir_from_coefficients(build_coefficients(disc, transition, b_bin), disc)
    h = frequency_response(ptvir, 0, omega)
    curves[b_bin] = 20.0 * np.log10(np.maximum(np.abs(h), 1e-12))
    edge = disc.bin_to_radians(b_bin) / math.pi
    stop = curves[b_bin][omega >= disc.bin_to_radians(b_bin) + disc.delta_truncated / 2]
    print(f"bin {b_bin:2d} (b = {edge:.4f} pi): stopband peak {stop.max():7.2f} dB")

if plt is None:
    print("matplotlib not installed; skipping the plot")
else:
    fig, ax = plt.subplots(figsize=(7, 4))
    for b_bin, db in curves.items():
        ax.plot(omega / math.pi, db, label=f"bin {b_bin}")
    ax.set_xlabel("frequency / pi")
    ax.set_ylabel("|H| dB")
    ax.set_ylim(-100, 5)
    ax.grid(True, alpha=0.3)
    ax.legend()
    out = os.path.join(os.path.dirname(__file__) or ".", "bandwidth_sweep.png")
    fig.savefig(out, dpi=120, bbox_inches="tight")
    print(f"wrote {out}")
