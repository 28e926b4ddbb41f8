"""Time-varying response construction and stopband measurement."""

import math

import numpy as np
import pytest

from varband.analysis import (
    DB_FLOOR,
    PtvirSet,
    base_response,
    design_metrics,
    frequency_response,
    numeric_error_energy,
    ptvir_from_coefficients,
    response_grid,
    sbe_profile,
    specification_metrics,
    stopband_metrics,
    uniform_grid,
)
from varband.coefficients import build_coefficients

import oracle


@pytest.fixture()
def random_ptvir():
    rng = np.random.default_rng(42)
    return PtvirSet(d_base=rng.standard_normal(16), block_advance=10)


class TestPtvirSet:
    def test_phase_response_is_a_circular_shift(self, random_ptvir):
        s = random_ptvir
        M = s.block_advance
        for n in range(M):
            want = np.roll(s.d_base, M - 1 - n)
            assert np.array_equal(s.phase_response(n), want)

    def test_impulse_response_padding(self, random_ptvir):
        s = random_ptvir
        N, M = s.n_fft, s.block_advance
        for n in (0, 3, M - 1):
            h = s.impulse_response(n)
            assert h.size == N + M - 1
            assert np.array_equal(h[:n], np.zeros(n))
            assert np.array_equal(h[n + N:], np.zeros(M - 1 - n))
            assert np.array_equal(h[n:n + N], s.phase_response(n))

    def test_phase_range_checked(self, random_ptvir):
        with pytest.raises(ValueError):
            random_ptvir.phase_response(10)
        with pytest.raises(ValueError):
            random_ptvir.impulse_response(-1)


def test_base_response_rejects_asymmetric_coefficients(narrow_design):
    _, disc, v = narrow_design
    coeffs = build_coefficients(disc, v, 50)
    broken = np.asarray(coeffs.complex_coeffs).copy()
    broken[3] *= 1.001
    with pytest.raises(ValueError, match="symmetric"):
        base_response(broken)


def test_base_response_matches_naive_idft(toy_design):
    _, disc, v = toy_design
    coeffs = build_coefficients(disc, v, 3)
    d = base_response(coeffs)
    want = oracle.naive_idft(np.asarray(coeffs.complex_coeffs))
    assert np.max(np.abs(d - want.real)) < 1e-12
    assert np.max(np.abs(want.imag)) < 1e-12


def test_response_grid_matches_direct_sums(toy_design):
    _, disc, v = toy_design
    coeffs = build_coefficients(disc, v, 4)
    ptv = ptvir_from_coefficients(coeffs, disc)
    omega = uniform_grid(disc.n_fft, 0.0, math.pi, 4)
    grid = response_grid(ptv, omega)
    for n in range(disc.block_advance):
        want = oracle.phase_frequency_response(
            ptv.d_base, n, omega, disc.n_fft, disc.block_advance
        )
        assert np.max(np.abs(grid.values[n] - want)) < 1e-12


def test_frequency_response_single_phase(toy_design):
    _, disc, v = toy_design
    coeffs = build_coefficients(disc, v, 3)
    ptv = ptvir_from_coefficients(coeffs, disc)
    omega = np.linspace(0.1, 3.0, 7)
    got = frequency_response(ptv, 5, omega)
    grid = response_grid(ptv, omega, phases=[5])
    assert np.allclose(got, grid.values[0], atol=1e-14)


class TestUniformGrid:
    def test_endpoints_and_monotonicity(self):
        g = uniform_grid(128, 0.25, 2.0, 16)
        assert g[0] == 0.25 and g[-1] == 2.0
        assert np.all(np.diff(g) > 0)

    def test_point_count_scales_with_span(self):
        N = 128
        full = uniform_grid(N, 0.0, math.pi, 16)
        assert full.size == 16 * N + 1
        half = uniform_grid(N, 0.0, math.pi / 2, 16)
        assert half.size == 8 * N + 1

    def test_tiny_spans_still_give_a_segment(self):
        g = uniform_grid(128, 1.0, 1.0 + 1e-9, 16)
        assert g.size == 2

    def test_rejects_reversed_range(self):
        with pytest.raises(ValueError):
            uniform_grid(128, 2.0, 1.0, 16)


class TestStopbandMetrics:
    def test_needs_a_bandwidth(self, random_ptvir, narrow_design):
        _, disc, _ = narrow_design
        with pytest.raises(ValueError, match="b_rad"):
            stopband_metrics(random_ptvir, disc)

    def test_edge_past_nyquist_rejected(self, narrow_design):
        _, disc, v = narrow_design
        ptv = ptvir_from_coefficients(build_coefficients(disc, v, 55), disc)
        with pytest.raises(ValueError, match="beyond pi"):
            stopband_metrics(ptv, disc, b_rad=3.1, delta=0.5)

    def test_explicit_edges_override_the_bin(self, narrow_design):
        _, disc, v = narrow_design
        ptv = ptvir_from_coefficients(build_coefficients(disc, v, 50), disc)
        default = stopband_metrics(ptv, disc)
        wider = stopband_metrics(ptv, disc, delta=0.27 * math.pi)
        assert wider["edge"] > default["edge"]
        assert wider["sbe_db"] < default["sbe_db"]  # smaller leftover stopband

    def test_silent_phases_hit_the_floor(self, narrow_design):
        _, disc, _ = narrow_design
        silent = PtvirSet(np.zeros(disc.n_fft), disc.block_advance, b_bin=50)
        m = stopband_metrics(silent, disc)
        assert m["sbml_db"] == DB_FLOOR
        assert m["sbe_db"] == DB_FLOOR


def test_design_metrics_aggregate_consistency(narrow_design):
    _, disc, v = narrow_design
    m = design_metrics(disc, v)
    per_bin = m["per_bin"]
    assert len(per_bin) == disc.n_bins
    agg = m["aggregate"]
    assert agg["sbml_db"] == max(row["sbml_db"] for row in per_bin)
    assert agg["sbe_db"] == pytest.approx(
        np.mean([row["sbe_db"] for row in per_bin]), abs=1e-12
    )
    assert agg["sbe_max_db"] >= agg["sbe_db"]


def test_specification_metrics_on_aligned_spec(narrow_design):
    spec, disc, v = narrow_design
    # edges land exactly on the bins here, so both scorings coincide
    a = design_metrics(disc, v)["aggregate"]
    b = specification_metrics(disc, v, spec)["aggregate"]
    assert b == pytest.approx(a, abs=1e-12)


def test_specification_metrics_on_rounded_spec(rounded_design):
    spec, disc, v = rounded_design
    scored = specification_metrics(disc, v, spec)["aggregate"]
    relaxed = design_metrics(disc, v)["aggregate"]
    # the original spec asks for a wider transition, so less stopband remains
    assert scored["sbe_db"] < relaxed["sbe_db"]


def test_sbe_profile_shape_and_symmetry(narrow_design):
    _, disc, v = narrow_design
    profile = sbe_profile(disc, v)
    M = disc.block_advance
    assert profile.shape == (M, disc.n_bins)
    assert np.all(profile > 0)
    rel = np.abs(profile - profile[::-1]) / profile
    assert rel.max() < 1e-6  # phase n mirrors phase M-1-n


class TestNumericErrorEnergy:
    def test_matches_brute_force(self, toy_design):
        _, disc, v = toy_design
        got = numeric_error_energy(v, disc, phase_limit="M")
        want = oracle.grid_energy(
            v.values, disc.n_fft, disc.filter_length,
            list(disc.bins()), disc.delta_bins, "M",
        )
        assert got == pytest.approx(want, rel=1e-12)

    def test_phase_limit_validated(self, toy_design):
        _, disc, v = toy_design
        with pytest.raises(ValueError):
            numeric_error_energy(v, disc, phase_limit="X")

    def test_dc_only_passband(self, wide_design):
        # the lowest designable bin leaves just the DC sample as passband
        _, disc, v = wide_design
        val = numeric_error_energy(v, disc, phase_limit="M", density=2)
        assert np.isfinite(val) and val > 0


def test_solved_design_beats_perturbations(toy_design):
    _, disc, v = toy_design
    best = numeric_error_energy(v, disc, density=16)
    rng = np.random.default_rng(0)
    for _ in range(5):
        other = v.values + rng.uniform(-0.05, 0.05, v.count)
        assert numeric_error_energy(other, disc, density=16) > best
