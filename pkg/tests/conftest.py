"""Shared designs and frozen expected values for the suite."""

import math

import numpy as np
import pytest

from varband import FilterSpec, discretize
from varband.design import assemble, solve

# Published figures the suite pins (dB unless noted).
EXPECTED = {
    "narrow": {
        "sbml_db": -56.1,
        "sbe_db": -89.0,
        "tol_db": 0.5,
        "r_mf": "5.3",
        "r_mv": "0.3",
        "r_a": "21",
        "memory": 15,
    },
    "wide": {"sbml_db": -57.4, "sbe_db": -88.0, "tol_db": 0.5},
    "rounded": {"sbml_db": -56.1, "sbe_db": -92.2, "tol_db": 0.5},
    "weighted": {"min_gain_db": 3.0, "max_target_db": -75.9, "avg_target_db": -80.1},
}

# First accepted solve of the narrow design, rounded to 1e-6; guards the
# assembly + solver path against silent regressions.
NARROW_TRANSITION = np.array([
    0.995428, 0.982243, 0.954394, 0.906503, 0.835247, 0.740792, 0.627464,
    0.503332, 0.378755, 0.264232, 0.168205, 0.095438, 0.046428, 0.017970,
    0.004584,
])


def narrow_filter_spec():
    return FilterSpec(
        delta=0.25 * math.pi,
        b_lower=96 * math.pi / 128,
        b_upper=110 * math.pi / 128,
        length_override=31,
    )


def wide_filter_spec():
    return FilterSpec(
        delta=0.25 * math.pi,
        b_lower=16 * math.pi / 128,
        b_upper=110 * math.pi / 128,
        length_override=31,
    )


def rounded_filter_spec():
    """A spec whose edges do not line up with the DFT bins."""
    return FilterSpec(
        delta=0.27 * math.pi,
        b_lower=0.76 * math.pi,
        b_upper=0.85 * math.pi,
        length_override=31,
    )


@pytest.fixture(scope="session")
def narrow_design():
    spec = narrow_filter_spec()
    disc = discretize(spec, 31, 128)
    return spec, disc, solve(assemble(disc))


@pytest.fixture(scope="session")
def wide_design():
    spec = wide_filter_spec()
    disc = discretize(spec, 31, 128)
    return spec, disc, solve(assemble(disc))


@pytest.fixture(scope="session")
def rounded_design():
    spec = rounded_filter_spec()
    disc = discretize(spec, 31, 128)
    return spec, disc, solve(assemble(disc))


@pytest.fixture(scope="session")
def toy_design():
    """N=16, L=7 geometry small enough for brute-force cross-checks."""
    spec = FilterSpec(
        delta=0.5 * math.pi,
        b_lower=0.375 * math.pi,
        b_upper=0.5 * math.pi,
        length_override=7,
    )
    disc = discretize(spec, 7, 16)
    return spec, disc, solve(assemble(disc))
