"""Filter specifications in radians and their discretized (bin-domain) form.

A variable-bandwidth lowpass requirement is stated on the continuous
frequency axis: a fixed transition width ``delta`` and a tunable
transition-band centre ``b`` in ``[b_lower, b_upper]``.  Designing for a
fast-convolution realization maps everything onto the DFT bin grid of an
FFT length ``N``: the transition width becomes an even bin count
``delta_bins``, the centre becomes an integer bin, and the filter length
``L`` fixes the block advance ``M = N - L + 1``.
"""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from dataclasses import dataclass, asdict

from .errors import ConfigurationError, InfeasibleSpecError

# Bin arithmetic guard: products like 0.75*pi * N/(2*pi) must not land an
# ulp below the integer they represent.
_BIN_EPS = 1e-9


def _floor_bins(x):
    return math.floor(x + _BIN_EPS)


def _ceil_bins(x):
    return math.ceil(x - _BIN_EPS)


def round_half_away(x):
    """Round to the nearest integer with halves going away from zero."""
    if x >= 0:
        return math.floor(x + 0.5 + _BIN_EPS)
    return -math.floor(-x + 0.5 + _BIN_EPS)


def bandwidth_to_bin(b, n_fft):
    """Nearest-bin index for a bandwidth ``b`` in radians (no clamping)."""
    return round_half_away(b * n_fft / (2.0 * math.pi))


@dataclass(frozen=True)
class FilterSpec:
    """Continuous-frequency variable-bandwidth lowpass requirement.

    Parameters
    ----------
    delta : float
        Transition-band width in radians, ``0 < delta < pi``.
    b_lower, b_upper : float
        Bounds of the tunable transition-band centre, in radians.
    length_override : int, optional
        Odd FIR length; when given, order estimation is skipped.
    ripple_passband, ripple_stopband : float, optional
        Linear ripples used by the order estimate; required when no
        ``length_override`` is supplied.
    """

    delta: float
    b_lower: float
    b_upper: float
    length_override: int | None = None
    ripple_passband: float | None = None
    ripple_stopband: float | None = None

    def __post_init__(self):
        if not 0.0 < self.delta < math.pi:
            raise ValueError(f"delta must be in (0, pi), got {self.delta!r}")
        if not 0.0 < self.b_lower <= self.b_upper < math.pi:
            raise ValueError(
                f"need 0 < b_lower <= b_upper < pi, got "
                f"[{self.b_lower!r}, {self.b_upper!r}]"
            )
        if self.length_override is not None:
            L = self.length_override
            if not isinstance(L, int) or L < 3:
                raise ValueError(f"length_override must be an integer >= 3, got {L!r}")
            if L % 2 == 0:
                raise ValueError(f"length_override must be odd, got {L}")
        for name in ("ripple_passband", "ripple_stopband"):
            r = getattr(self, name)
            if r is not None and not 0.0 < r < 1.0:
                raise ValueError(f"{name} must be in (0, 1), got {r!r}")

    # -- JSON interface (angles stored as multiples of pi) ------------------

    def to_json_dict(self):
        d = {
            "delta_over_pi": self.delta / math.pi,
            "b_lower_over_pi": self.b_lower / math.pi,
            "b_upper_over_pi": self.b_upper / math.pi,
        }
        if self.length_override is not None:
            d["length_override"] = self.length_override
        if self.ripple_passband is not None:
            d["ripple_passband"] = self.ripple_passband
        if self.ripple_stopband is not None:
            d["ripple_stopband"] = self.ripple_stopband
        return d

    @classmethod
    def from_json_dict(cls, d):
        known = {
            "delta_over_pi",
            "b_lower_over_pi",
            "b_upper_over_pi",
            "length_override",
            "ripple_passband",
            "ripple_stopband",
        }
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown specification keys: {sorted(unknown)}")
        for key in ("delta_over_pi", "b_lower_over_pi", "b_upper_over_pi"):
            if key not in d:
                raise ValueError(f"missing specification key: {key}")
        return cls(
            delta=float(d["delta_over_pi"]) * math.pi,
            b_lower=float(d["b_lower_over_pi"]) * math.pi,
            b_upper=float(d["b_upper_over_pi"]) * math.pi,
            length_override=d.get("length_override"),
            ripple_passband=d.get("ripple_passband"),
            ripple_stopband=d.get("ripple_stopband"),
        )

    def sha256(self):
        """Content hash over the canonical JSON form, stable across runs."""
        blob = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def estimate_filter_length(spec, delta=None):
    """FIR length ``L`` for a spec: the override, or a Bellanger estimate.

    The estimate is ``N_D = ceil((2/3) * log10(1/(10*dp*ds)) * 2*pi/delta)``
    and ``L = N_D + 1`` bumped to the next odd integer.  ``delta`` defaults
    to ``spec.delta``; pass the discretized width to re-estimate after
    truncation.
    """
    if spec.length_override is not None:
        return spec.length_override
    dp, ds = spec.ripple_passband, spec.ripple_stopband
    if dp is None or ds is None:
        raise ConfigurationError(
            "cannot estimate the filter length: provide length_override or "
            "both ripple_passband and ripple_stopband"
        )
    if delta is None:
        delta = spec.delta
    order = math.ceil((2.0 / 3.0) * math.log10(1.0 / (10.0 * dp * ds)) * (2.0 * math.pi / delta))
    length = order + 1
    if length % 2 == 0:
        length += 1
    return max(length, 3)


def estimate_fft_length(filter_length):
    """Power-of-two FFT length for a given FIR length.

    Picks the power of two nearest to ``0.9 * L * log2(L)``; when that
    falls short of ``2 * L`` (too little room for the block advance), the
    smallest power of two at or above ``2 * L`` is used instead.
    """
    L = filter_length
    if L < 2:
        raise ValueError(f"filter length must be >= 2, got {L}")
    target = 0.9 * L * math.log2(L)
    q = max(1, round(math.log2(target)))
    below, above = 2 ** q, 2 ** (q + 1)
    nearest = below if abs(below - target) <= abs(above - target) else above
    if nearest < 2 * L:
        nearest = 2 ** math.ceil(math.log2(2 * L))
    return nearest


@dataclass(frozen=True)
class DiscretizedSpec:
    """Bin-domain form of a :class:`FilterSpec` for one FFT length.

    Fields
    ------
    n_fft : FFT length ``N`` (power of two).
    filter_length : FIR length ``L`` (odd).
    block_advance : ``M = N - L + 1`` output samples per block.
    delta_bins : transition width in bins (even, >= 2).
    delta_truncated : the bin-exact transition width in radians.
    k_transition_count : number of free transition values ``K = delta_bins - 1``.
    b_bins_lower, b_bins_upper : tunable-centre bin range (inclusive).
    delay_design : design group delay ``(L - 1) / 2``.
    delay_system : total system delay ``delay_design + M - 1``.
    """

    n_fft: int
    filter_length: int
    block_advance: int
    delta_bins: int
    delta_truncated: float
    k_transition_count: int
    b_bins_lower: int
    b_bins_upper: int
    delay_design: int
    delay_system: int

    def __post_init__(self):
        N, L, M = self.n_fft, self.filter_length, self.block_advance
        if N < 4 or N & (N - 1):
            raise ValueError(f"n_fft must be a power of two >= 4, got {N}")
        if L % 2 == 0 or L < 3:
            raise ValueError(f"filter_length must be odd and >= 3, got {L}")
        if M != N - L + 1 or M < 1:
            raise ValueError(f"block_advance must equal n_fft - filter_length + 1 >= 1, got {M}")
        if self.delta_bins < 2 or self.delta_bins % 2:
            raise ValueError(f"delta_bins must be even and >= 2, got {self.delta_bins}")
        if self.k_transition_count != self.delta_bins - 1:
            raise ValueError("k_transition_count must equal delta_bins - 1")
        if abs(self.delta_truncated - self.delta_bins * 2.0 * math.pi / N) > 1e-12:
            raise ValueError("delta_truncated inconsistent with delta_bins")
        lo, hi = self.b_bins_lower, self.b_bins_upper
        if not (self.delta_bins // 2 <= lo <= hi <= N // 2 - self.delta_bins // 2 - 1):
            raise InfeasibleSpecError(
                f"bandwidth bins [{lo}, {hi}] violate "
                f"{self.delta_bins // 2} <= b <= {N // 2 - self.delta_bins // 2 - 1} "
                f"for n_fft={N}, delta_bins={self.delta_bins}"
            )
        if self.delay_design != (L - 1) // 2:
            raise ValueError("delay_design must equal (filter_length - 1) / 2")
        if self.delay_system != self.delay_design + M - 1:
            raise ValueError("delay_system must equal delay_design + block_advance - 1")

    # -- derived helpers ----------------------------------------------------

    @property
    def n_bins(self):
        """Number of designable bandwidth bins."""
        return self.b_bins_upper - self.b_bins_lower + 1

    def bins(self):
        """All designable bandwidth bins, ascending."""
        return range(self.b_bins_lower, self.b_bins_upper + 1)

    def bin_to_radians(self, b_bin):
        return b_bin * 2.0 * math.pi / self.n_fft

    def bandwidth_to_bin(self, b, warn=True):
        """Nearest designable bin for ``b`` (radians), clamped to the range."""
        raw = bandwidth_to_bin(b, self.n_fft)
        clamped = min(max(raw, self.b_bins_lower), self.b_bins_upper)
        if clamped != raw and warn:
            warnings.warn(
                f"bandwidth {b:.6f} rad maps to bin {raw}, outside "
                f"[{self.b_bins_lower}, {self.b_bins_upper}]; clamped to {clamped}",
                stacklevel=2,
            )
        return clamped

    def to_json_dict(self):
        return asdict(self)

    @classmethod
    def from_json_dict(cls, d):
        return cls(**{k: d[k] for k in cls.__dataclass_fields__})

    def fingerprint(self):
        blob = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def discretize(spec, filter_length=None, n_fft=None, recompute_length=True):
    """Map a :class:`FilterSpec` onto the bin grid of an FFT length.

    ``delta_bins = floor(delta * N / (2*pi))`` is decremented once if odd
    (the transition width only ever tightens).  When the decrement changed
    the effective width, the filter length is re-estimated from the
    truncated width, unless an explicit length was requested or
    ``recompute_length`` is false.  The centre-bin range is the outward
    rounding ``[floor(b_lower * N / (2*pi)), ceil(b_upper * N / (2*pi))]``.

    Raises
    ------
    InfeasibleSpecError
        If the transition band is too narrow for the grid or the bin range
        leaves no room for passband or stopband.
    """
    if filter_length is None:
        filter_length = estimate_filter_length(spec)
    if n_fft is None:
        n_fft = estimate_fft_length(filter_length)
    N = n_fft
    delta_bins = _floor_bins(spec.delta * N / (2.0 * math.pi))
    decremented = False
    if delta_bins % 2:
        delta_bins -= 1
        decremented = True
    if delta_bins < 2:
        raise InfeasibleSpecError(
            f"transition width {spec.delta:.6f} rad spans fewer than two bins "
            f"at n_fft={N}"
        )
    delta_truncated = delta_bins * 2.0 * math.pi / N

    if (
        decremented
        and recompute_length
        and spec.length_override is None
        and spec.ripple_passband is not None
        and spec.ripple_stopband is not None
    ):
        filter_length = estimate_filter_length(spec, delta=delta_truncated)
    if filter_length >= N:
        raise InfeasibleSpecError(
            f"filter length {filter_length} leaves no block advance at n_fft={N}"
        )

    lo = _floor_bins(spec.b_lower * N / (2.0 * math.pi))
    hi = _ceil_bins(spec.b_upper * N / (2.0 * math.pi))
    M = N - filter_length + 1
    d1 = (filter_length - 1) // 2
    return DiscretizedSpec(
        n_fft=N,
        filter_length=filter_length,
        block_advance=M,
        delta_bins=delta_bins,
        delta_truncated=delta_truncated,
        k_transition_count=delta_bins - 1,
        b_bins_lower=lo,
        b_bins_upper=hi,
        delay_design=d1,
        delay_system=d1 + M - 1,
    )
