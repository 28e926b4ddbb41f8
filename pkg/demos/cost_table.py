"""Arithmetic cost of a computed design next to published realizations."""

import math

from varband import FilterSpec, design_metrics, design_transition, discretize
from varband.complexity import PUBLISHED_BASELINES, comparison_table, rates

spec = FilterSpec(
    delta=0.25 * math.pi,
    b_lower=0.75 * math.pi,
    b_upper=0.859375 * math.pi,
    length_override=31,
)
disc = discretize(spec, 31, 128)
transition, _, _ = design_transition(disc)
agg = design_metrics(disc, transition)["aggregate"]

report = rates(disc.n_fft, disc.filter_length, disc.k_transition_count)
rows = list(PUBLISHED_BASELINES["narrow_range"])
rows.append(report.as_row("this package", sbml_db=agg["sbml_db"], sbe_db=agg["sbe_db"]))

print(comparison_table(rows, fmt="md"))
print("rates are per output sample; the last column pair is measured, "
      "not quoted")
