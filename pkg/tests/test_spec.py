"""Spec parsing, order estimation, and bin-domain discretization."""

import math

import numpy as np
import pytest

from varband import FilterSpec, DiscretizedSpec, discretize
from varband.errors import ConfigurationError, InfeasibleSpecError
from varband.spec import (
    bandwidth_to_bin,
    estimate_fft_length,
    estimate_filter_length,
    round_half_away,
)

from conftest import narrow_filter_spec, rounded_filter_spec


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(delta=0.0, b_lower=0.5 * math.pi, b_upper=0.6 * math.pi),
        dict(delta=math.pi, b_lower=0.5 * math.pi, b_upper=0.6 * math.pi),
        dict(delta=0.2, b_lower=0.0, b_upper=0.6 * math.pi),
        dict(delta=0.2, b_lower=0.5 * math.pi, b_upper=math.pi),
        dict(delta=0.2, b_lower=0.6 * math.pi, b_upper=0.5 * math.pi),
        dict(delta=0.2, b_lower=1.0, b_upper=2.0, length_override=10),
        dict(delta=0.2, b_lower=1.0, b_upper=2.0, length_override=1),
        dict(delta=0.2, b_lower=1.0, b_upper=2.0, ripple_passband=0.0),
        dict(delta=0.2, b_lower=1.0, b_upper=2.0, ripple_stopband=1.0),
    ],
)
def test_invalid_spec_rejected(kwargs):
    with pytest.raises(ValueError):
        FilterSpec(**kwargs)


def test_spec_json_round_trip():
    spec = FilterSpec(
        delta=0.25 * math.pi,
        b_lower=0.7 * math.pi,
        b_upper=0.8 * math.pi,
        ripple_passband=1e-3,
        ripple_stopband=1e-4,
    )
    again = FilterSpec.from_json_dict(spec.to_json_dict())
    assert again == spec
    assert again.sha256() == spec.sha256()


def test_spec_json_rejects_unknown_and_missing_keys():
    good = narrow_filter_spec().to_json_dict()
    with pytest.raises(ValueError, match="unknown"):
        FilterSpec.from_json_dict({**good, "bogus": 1})
    incomplete = dict(good)
    del incomplete["delta_over_pi"]
    with pytest.raises(ValueError, match="missing"):
        FilterSpec.from_json_dict(incomplete)


def test_spec_hash_tracks_content():
    a = narrow_filter_spec()
    b = FilterSpec(
        delta=a.delta,
        b_lower=a.b_lower,
        b_upper=a.b_upper,
        length_override=33,
    )
    assert a.sha256() != b.sha256()


class TestLengthEstimate:
    def test_override_wins(self):
        assert estimate_filter_length(narrow_filter_spec()) == 31

    def test_needs_ripples_without_override(self):
        spec = FilterSpec(delta=0.25 * math.pi, b_lower=2.0, b_upper=2.5)
        with pytest.raises(ConfigurationError):
            estimate_filter_length(spec)

    @pytest.mark.parametrize(
        "delta_over_pi,expected", [(0.25, 29), (0.27, 27)]
    )
    def test_known_lengths(self, delta_over_pi, expected):
        spec = FilterSpec(
            delta=delta_over_pi * math.pi,
            b_lower=0.76 * math.pi,
            b_upper=0.85 * math.pi,
            ripple_passband=1e-3,
            ripple_stopband=1e-3,
        )
        assert estimate_filter_length(spec) == expected

    def test_delta_argument_overrides_spec_width(self):
        spec = FilterSpec(
            delta=0.27 * math.pi,
            b_lower=0.76 * math.pi,
            b_upper=0.85 * math.pi,
            ripple_passband=1e-3,
            ripple_stopband=1e-3,
        )
        assert estimate_filter_length(spec, delta=0.25 * math.pi) == 29


class TestFftLength:
    @pytest.mark.parametrize("length,expected", [(3, 8), (27, 128), (29, 128), (31, 128)])
    def test_known_lengths(self, length, expected):
        assert estimate_fft_length(length) == expected

    def test_always_a_power_of_two_with_room(self):
        for L in range(3, 200, 2):
            N = estimate_fft_length(L)
            assert N & (N - 1) == 0
            assert N >= 2 * L

    def test_rejects_degenerate_length(self):
        with pytest.raises(ValueError):
            estimate_fft_length(1)


def test_round_half_away():
    assert round_half_away(0.5) == 1
    assert round_half_away(-0.5) == -1
    assert round_half_away(1.4) == 1
    assert round_half_away(-2.6) == -3


def test_discretize_narrow_geometry():
    disc = discretize(narrow_filter_spec(), 31, 128)
    assert disc.n_fft == 128
    assert disc.filter_length == 31
    assert disc.block_advance == 98
    assert disc.delta_bins == 16
    assert disc.k_transition_count == 15
    assert (disc.b_bins_lower, disc.b_bins_upper) == (48, 55)
    assert disc.delay_design == 15
    assert disc.delay_system == 112
    assert disc.n_bins == 8
    assert list(disc.bins()) == list(range(48, 56))
    assert disc.delta_truncated == pytest.approx(0.25 * math.pi)


def test_discretize_truncates_odd_width():
    disc = discretize(rounded_filter_spec(), 31, 128)
    # 0.27*pi spans 17.28 bins; truncated to 17, then evened down to 16
    assert disc.delta_bins == 16
    assert disc.delta_truncated == pytest.approx(0.25 * math.pi)
    assert (disc.b_bins_lower, disc.b_bins_upper) == (48, 55)
    assert disc.filter_length == 31  # explicit length is kept


def test_discretize_reestimates_length_after_truncation():
    spec = FilterSpec(
        delta=0.27 * math.pi,
        b_lower=0.76 * math.pi,
        b_upper=0.85 * math.pi,
        ripple_passband=1e-3,
        ripple_stopband=1e-3,
    )
    disc = discretize(spec)
    assert disc.filter_length == 29  # re-run of the estimate at 0.25*pi
    assert disc.n_fft == 128
    frozen = discretize(spec, recompute_length=False)
    assert frozen.filter_length == 27


@pytest.mark.parametrize(
    "b_lower,b_upper",
    [
        (2 * math.pi / 128, 0.5 * math.pi),  # bin below delta_bins/2
        (0.5 * math.pi, 126 * math.pi / 128),  # bin beyond N/2 - delta/2 - 1
    ],
)
def test_discretize_infeasible_range(b_lower, b_upper):
    spec = FilterSpec(delta=0.25 * math.pi, b_lower=b_lower, b_upper=b_upper,
                      length_override=31)
    with pytest.raises(InfeasibleSpecError):
        discretize(spec, 31, 128)


def test_discretize_infeasible_width():
    spec = FilterSpec(delta=0.02, b_lower=1.0, b_upper=2.0, length_override=31)
    with pytest.raises(InfeasibleSpecError):
        discretize(spec, 31, 128)


def test_discretize_rejects_overlong_filter():
    spec = narrow_filter_spec()
    with pytest.raises(InfeasibleSpecError):
        discretize(spec, 129, 128)


class TestBandwidthToBin:
    def test_bin_centres_map_to_themselves(self):
        disc = discretize(narrow_filter_spec(), 31, 128)
        for b in disc.bins():
            assert disc.bandwidth_to_bin(disc.bin_to_radians(b)) == b

    def test_halfway_rounds_away_from_zero(self):
        # 48.5 bins in radians sits exactly between two centres
        assert bandwidth_to_bin(48.5 * 2 * math.pi / 128, 128) == 49

    def test_out_of_range_clamps_with_warning(self):
        disc = discretize(narrow_filter_spec(), 31, 128)
        with pytest.warns(UserWarning, match="clamped"):
            assert disc.bandwidth_to_bin(0.2 * math.pi) == 48
        with pytest.warns(UserWarning, match="clamped"):
            assert disc.bandwidth_to_bin(0.99 * math.pi) == 55
        assert disc.bandwidth_to_bin(0.2 * math.pi, warn=False) == 48


def test_discretized_spec_json_round_trip():
    disc = discretize(narrow_filter_spec(), 31, 128)
    again = DiscretizedSpec.from_json_dict(disc.to_json_dict())
    assert again == disc
    assert again.fingerprint() == disc.fingerprint()


def test_discretized_spec_validates_fields():
    disc = discretize(narrow_filter_spec(), 31, 128)
    d = disc.to_json_dict()
    with pytest.raises(ValueError):
        DiscretizedSpec.from_json_dict({**d, "block_advance": 97})
    with pytest.raises(ValueError):
        DiscretizedSpec.from_json_dict({**d, "n_fft": 100})
    with pytest.raises(InfeasibleSpecError):
        DiscretizedSpec.from_json_dict({**d, "b_bins_lower": 2})


def test_fingerprint_distinguishes_geometries():
    a = discretize(narrow_filter_spec(), 31, 128)
    b = discretize(narrow_filter_spec(), 29, 128)
    assert a.fingerprint() != b.fingerprint()
