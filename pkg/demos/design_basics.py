"""Walk the design pipeline once, printing every intermediate.

A continuous lowpass spec (transition width, tunable band edge range)
is snapped onto the DFT grid, the free transition-band values are solved
in closed form, and the result is scored over every reachable bandwidth.
"""

import math

from varband import FilterSpec, design_metrics, design_transition, discretize

spec = FilterSpec(
    delta=0.25 * math.pi,
    b_lower=0.75 * math.pi,
    b_upper=0.859375 * math.pi,
    length_override=31,
)
disc = discretize(spec, filter_length=31, n_fft=128)

print("bin-domain geometry")
print(f"  FFT length N             {disc.n_fft}")
print(f"  filter length L          {disc.filter_length}")
print(f"  block advance M          {disc.block_advance}")
print(f"  transition width         {disc.delta_bins} bins "
      f"({disc.delta_truncated / math.pi:.4f} pi)")
print(f"  free transition values   {disc.k_transition_count}")
print(f"  bandwidth bins           {disc.b_bins_lower}..{disc.b_bins_upper}")
print(f"  content delay            {disc.delay_design} samples")
print(f"  worst-case latency       {disc.delay_system} samples")
print()

transition, _, _ = design_transition(disc)
print("transition taper (descending from the passband edge)")
for i, value in enumerate(transition.values):
    print(f"  v[{i:2d}] = {value:.6f}")
print()

metrics = design_metrics(disc, transition)
print("stopband performance per bandwidth bin")
print("  bin   edge/pi   SBML dB    SBE dB")
for row in metrics["per_bin"]:
    b = disc.bin_to_radians(row["b_bin"]) / math.pi
    print(f"  {row['b_bin']:3d}   {b:.5f}  {row['sbml_db']:8.2f}  {row['sbe_db']:8.2f}")
agg = metrics["aggregate"]
print(f"  aggregate: SBML {agg['sbml_db']:.2f} dB, "
      f"SBE {agg['sbe_db']:.2f} dB, worst response {agg['sbe_max_db']:.2f} dB")
