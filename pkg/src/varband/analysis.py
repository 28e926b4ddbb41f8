"""Periodically time-varying analysis of the fast-convolution filter.

A frequency-sampled coefficient vector of full length ``N`` makes the
overlap-save stage a linear periodically time-varying system with period
``M``.  Everything about it follows from one base response: the real
inverse DFT of the coefficients.  The ``M`` phase responses are circular
shifts of that base, the per-phase impulse responses are those shifts
delayed by the phase index, and all spectral metrics integrate the phase
responses on dense frequency grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import DftCoefficientSet, build_coefficients

DB_FLOOR = -400.0


def _db10(x):
    return 10.0 * math.log10(x) if x > 10.0 ** (DB_FLOOR / 10.0) else DB_FLOOR


def _db20(x):
    return 20.0 * math.log10(x) if x > 10.0 ** (DB_FLOOR / 20.0) else DB_FLOOR


@dataclass(frozen=True)
class PtvirSet:
    """The ``M`` time-invariant responses of one coefficient set.

    Stores only the base response ``d_base`` (inverse DFT of the
    coefficients); phases are derived views:

    - ``phase_response(n)[q] = d_base[(q + n - M + 1) mod N]``
    - ``impulse_response(n)`` is ``phase_response(n)`` delayed by ``n``
      samples inside a length ``N + M - 1`` vector.
    """

    d_base: np.ndarray
    block_advance: int
    b_bin: int | None = None

    def __post_init__(self):
        d = np.asarray(self.d_base, dtype=float)
        if d.ndim != 1:
            raise ValueError("d_base must be 1-D")
        if not 1 <= self.block_advance <= d.size:
            raise ValueError(
                f"block_advance must be in [1, {d.size}], got {self.block_advance}"
            )
        d = d.copy()
        d.flags.writeable = False
        object.__setattr__(self, "d_base", d)

    @property
    def n_fft(self):
        return int(self.d_base.size)

    def _check_phase(self, n):
        if not 0 <= n < self.block_advance:
            raise ValueError(
                f"phase index {n} outside [0, {self.block_advance - 1}]"
            )

    def phase_response(self, n):
        """Length-``N`` response of phase ``n`` (circular shift of the base)."""
        self._check_phase(n)
        return np.roll(self.d_base, self.block_advance - 1 - n)

    def impulse_response(self, n):
        """Sparse impulse response of phase ``n`` over ``q = 0 .. N+M-2``.

        Zeros before ``q = n``, the phase response over the next ``N``
        samples, zeros after.
        """
        self._check_phase(n)
        N, M = self.n_fft, self.block_advance
        out = np.zeros(N + M - 1)
        out[n:n + N] = self.phase_response(n)
        return out


def base_response(coeffs):
    """Real inverse DFT of a coefficient vector.

    Accepts a :class:`DftCoefficientSet` or a raw complex vector.  The
    vector must be conjugate-symmetric (real time response); asymmetry
    beyond 1e-9 is an input error, and the residual imaginary part of the
    inverse transform is asserted below 1e-12.
    """
    if isinstance(coeffs, DftCoefficientSet):
        h = coeffs.complex_coeffs
    else:
        h = np.asarray(coeffs, dtype=complex)
    N = h.size
    sym_err = np.max(np.abs(h - np.conj(h[(-np.arange(N)) % N])))
    scale = max(1.0, float(np.max(np.abs(h))))
    if sym_err > 1e-9 * scale:
        raise ValueError(
            f"coefficients are not conjugate-symmetric (deviation {sym_err:.3e})"
        )
    d = np.fft.ifft(h)
    resid = float(np.max(np.abs(d.imag)))
    if resid > 1e-12 * scale:
        raise AssertionError(f"inverse DFT imaginary residue {resid:.3e} too large")
    return d.real


def ptvir_from_coefficients(coeffs, disc=None, block_advance=None):
    """Build the :class:`PtvirSet` for a coefficient set."""
    if block_advance is None:
        if disc is not None:
            block_advance = disc.block_advance
        else:
            raise ValueError("need disc or block_advance")
    b_bin = coeffs.b_bin if isinstance(coeffs, DftCoefficientSet) else None
    return PtvirSet(base_response(coeffs), block_advance, b_bin)


# -- frequency responses ---------------------------------------------------


@dataclass(frozen=True)
class ResponseGrid:
    """Complex responses of a set of phases on a frequency grid."""

    omega: np.ndarray
    values: np.ndarray  # shape (n_phases, len(omega))
    phases: np.ndarray
    b_bin: int | None = None

    def __post_init__(self):
        if np.any(np.diff(self.omega) <= 0):
            raise ValueError("frequency grid must be strictly increasing")
        if self.values.shape != (self.phases.size, self.omega.size):
            raise ValueError("values shape inconsistent with phases and grid")


def uniform_grid(n_fft, lo=0.0, hi=math.pi, density=16):
    """Uniform grid with spacing about ``pi / (density * n_fft)``, endpoints included."""
    if hi <= lo:
        raise ValueError("need hi > lo")
    points = max(2, int(round(density * n_fft * (hi - lo) / math.pi)) + 1)
    return np.linspace(lo, hi, points)


def frequency_response(ptvir, n, omega):
    """Response of phase ``n``: ``exp(-j*w*n) * sum_q d_n(q) exp(-j*w*q)``."""
    ptvir._check_phase(n)
    omega = np.asarray(omega, dtype=float)
    d_n = ptvir.phase_response(n)
    q = np.arange(ptvir.n_fft)
    basis = np.exp(-1j * np.outer(omega, q))
    return np.exp(-1j * omega * n) * (basis @ d_n)


def response_grid(ptvir, omega, phases=None):
    """Responses of many phases at once (one matrix product).

    Uses the circular-shift structure: every phase response is a roll of
    the base, so the full phase matrix is gathered by indexing, then all
    responses come from a single complex matmul.
    """
    omega = np.asarray(omega, dtype=float)
    N, M = ptvir.n_fft, ptvir.block_advance
    if phases is None:
        phases = np.arange(M)
    else:
        phases = np.asarray(phases, dtype=int)
        for n in phases:
            ptvir._check_phase(int(n))
    q = np.arange(N)
    # D[:, i] = d_{phases[i]}
    idx = (q[:, None] + phases[None, :] - (M - 1)) % N
    D = ptvir.d_base[idx]
    basis = np.exp(-1j * np.outer(omega, q))
    vals = (basis @ D).T * np.exp(-1j * np.outer(phases, omega))
    return ResponseGrid(omega=omega, values=vals, phases=phases, b_bin=ptvir.b_bin)


# -- stopband metrics ------------------------------------------------------


def stopband_metrics(ptvir, disc, b_rad=None, delta=None, density=16):
    """Peak and energy measures of all phases over the stopband.

    The stopband is ``[b + delta/2, pi]``; ``b`` defaults to the bin
    centre of the set and ``delta`` to the discretized width, both
    overridable to score a design against the original continuous spec.

    Returns a dict with ``sbml_db`` (peak magnitude over phases, dB),
    ``sbe_db`` (each phase's energy ``(1/pi) * integral |H_n|^2`` in dB,
    averaged over phases), and ``sbe_linear`` per phase.
    """
    if b_rad is None:
        if ptvir.b_bin is None:
            raise ValueError("set has no bandwidth bin; pass b_rad explicitly")
        b_rad = disc.bin_to_radians(ptvir.b_bin)
    if delta is None:
        delta = disc.delta_truncated
    edge = b_rad + delta / 2.0
    if edge >= math.pi:
        raise ValueError(f"stopband edge {edge:.6f} at or beyond pi")
    omega = uniform_grid(disc.n_fft, edge, math.pi, density)
    grid = response_grid(ptvir, omega)
    mags = np.abs(grid.values)
    sbe_linear = np.trapezoid(mags ** 2, omega, axis=1) / math.pi
    return {
        "sbml_db": _db20(float(mags.max())),
        "sbe_db": float(np.mean([_db10(float(e)) for e in sbe_linear])),
        "sbe_linear": sbe_linear,
        "edge": edge,
    }


def design_metrics(disc, transition, bins=None, delta=None, density=16):
    """Metrics of one transition design across bandwidth bins.

    Returns ``{"per_bin": [...], "aggregate": {...}}``.  The aggregate
    ``sbml_db`` is the peak over all bins and phases; ``sbe_db`` averages
    the per-response stopband energies in the dB domain over all bins and
    phases (so it equals the mean of the per-bin values);  ``sbe_max_db``
    is the worst single response.
    """
    if bins is None:
        bins = list(disc.bins())
    per_bin = []
    peak = DB_FLOOR
    energies = []
    for b_bin in bins:
        coeffs = build_coefficients(disc, transition, b_bin)
        ptvir = ptvir_from_coefficients(coeffs, disc)
        m = stopband_metrics(ptvir, disc, delta=delta, density=density)
        per_bin.append(
            {"b_bin": int(b_bin), "sbml_db": m["sbml_db"], "sbe_db": m["sbe_db"]}
        )
        peak = max(peak, m["sbml_db"])
        energies.append(m["sbe_linear"])
    energies = np.array(energies)  # (n_bins, M)
    db = np.array([[_db10(float(e)) for e in row] for row in energies])
    return {
        "per_bin": per_bin,
        "aggregate": {
            "sbml_db": peak,
            "sbe_db": float(db.mean()),
            "sbe_max_db": float(db.max()),
        },
    }


def specification_metrics(disc, transition, spec, density=16):
    """Score a realized design against the continuous spec it came from.

    Discretization widens the requested bandwidth range to whole bins, so
    the requested bandwidths are spread linearly over the realized bins
    (endpoints meet endpoints) and each response is judged on the stopband
    ``[b_requested + spec.delta/2, pi]``.  Same return shape as
    :func:`design_metrics`.
    """
    bins = list(disc.bins())
    requested = np.linspace(spec.b_lower, spec.b_upper, len(bins))
    per_bin = []
    peak = DB_FLOOR
    db_rows = []
    for b_bin, b_rad in zip(bins, requested):
        coeffs = build_coefficients(disc, transition, b_bin)
        ptvir = ptvir_from_coefficients(coeffs, disc)
        m = stopband_metrics(
            ptvir, disc, b_rad=float(b_rad), delta=spec.delta, density=density
        )
        per_bin.append(
            {"b_bin": int(b_bin), "sbml_db": m["sbml_db"], "sbe_db": m["sbe_db"]}
        )
        peak = max(peak, m["sbml_db"])
        db_rows.append([_db10(float(e)) for e in m["sbe_linear"]])
    db = np.array(db_rows)
    return {
        "per_bin": per_bin,
        "aggregate": {
            "sbml_db": peak,
            "sbe_db": float(db.mean()),
            "sbe_max_db": float(db.max()),
        },
    }


def sbe_profile(disc, transition, bins=None, delta=None, density=16):
    """Per-phase, per-bin linear stopband energies, shape ``(M, n_bins)``."""
    if bins is None:
        bins = list(disc.bins())
    cols = []
    for b_bin in bins:
        coeffs = build_coefficients(disc, transition, b_bin)
        ptvir = ptvir_from_coefficients(coeffs, disc)
        m = stopband_metrics(ptvir, disc, delta=delta, density=density)
        cols.append(m["sbe_linear"])
    return np.array(cols).T


# -- least-squares error energy (brute force) ------------------------------


def numeric_error_energy(transition, disc, phase_limit="M", density=64):
    """Grid-quadrature least-squares error of a transition design.

    ``(1/2pi)`` times the integral of ``|H_n - H_D|^2`` over passband and
    stopband, summed over every designable bandwidth bin and over the
    phase range selected by ``phase_limit`` ("M": the block advance,
    "N": the full FFT length).  The desired response is a pure delay of
    ``delay_system`` samples over the passband and zero over the stopband.
    Composite trapezoid on per-segment uniform grids of density
    ``density * N`` points per ``pi`` of bandwidth.
    """
    if phase_limit not in ("M", "N"):
        raise ValueError(f"phase_limit must be 'M' or 'N', got {phase_limit!r}")
    N = disc.n_fft
    n_phases = disc.block_advance if phase_limit == "M" else N
    D2 = disc.delay_system
    q = np.arange(N)
    total = 0.0
    for b_bin in disc.bins():
        coeffs = build_coefficients(disc, transition, b_bin)
        d_base = base_response(coeffs)
        b_rad = disc.bin_to_radians(b_bin)
        pass_hi = b_rad - disc.delta_truncated / 2.0
        stop_lo = b_rad + disc.delta_truncated / 2.0
        segments = [(uniform_grid(N, stop_lo, math.pi, density), False)]
        if pass_hi > 1e-12:  # the lowest designable bin has a DC-only passband
            segments.append((uniform_grid(N, 0.0, pass_hi, density), True))
        for omega, desired in segments:
            basis = np.exp(-1j * np.outer(omega, q))
            # all phases at once; phases beyond M-1 extend the circular shift
            shifts = np.arange(n_phases)
            idx = (q[:, None] + shifts[None, :] - (disc.block_advance - 1)) % N
            H = (basis @ d_base[idx]).T * np.exp(-1j * np.outer(shifts, omega))
            if desired:
                H = H - np.exp(-1j * omega * D2)[None, :]
            err = np.abs(H) ** 2
            total += float(np.trapezoid(err, omega, axis=1).sum())
    return total / (2.0 * math.pi)
