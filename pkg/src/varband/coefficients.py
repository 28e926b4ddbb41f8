"""Frequency-sampled coefficient vectors and their retuning.

The magnitude response on the DFT grid is fully determined by the
discretized spec, the bandwidth bin, and the ``K`` free transition
values: ones over the passband bins, the transition values (and their
mirror) over the transition bins, zeros elsewhere.  Retuning to another
bandwidth only moves the same values to other bins, so it costs index
arithmetic and copies, never multiplications.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class TransitionCoeffs:
    """The ``K`` transition-band magnitude samples, lower-edge first."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ValueError(f"transition values must be a non-empty 1-D vector, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("transition values must be finite")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def count(self):
        return int(self.values.size)

    def to_json_dict(self, disc_fingerprint=None):
        d = {"count": self.count, "values": [float(x) for x in self.values]}
        if disc_fingerprint is not None:
            d["disc_fingerprint"] = disc_fingerprint
        return d

    @classmethod
    def from_json_dict(cls, d):
        values = np.asarray(d["values"], dtype=float)
        if "count" in d and int(d["count"]) != values.size:
            raise ValueError("transition coefficient count disagrees with values length")
        return cls(values)

    def save_json(self, path, disc_fingerprint=None):
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(disc_fingerprint), fh, indent=2)

    @classmethod
    def load_json(cls, path):
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def transition_edges(disc, b_bin):
    """Lower/upper transition bin indices ``(k1, k2)`` for a bandwidth bin.

    ``k1 = b - delta_bins/2 + 1`` and ``k2 = b + delta_bins/2 - 1``; the
    band holds ``K = delta_bins - 1`` bins inclusive.
    """
    if not disc.b_bins_lower <= b_bin <= disc.b_bins_upper:
        raise ValueError(
            f"bandwidth bin {b_bin} outside designable range "
            f"[{disc.b_bins_lower}, {disc.b_bins_upper}]"
        )
    half = disc.delta_bins // 2
    k1 = b_bin - half + 1
    k2 = b_bin + half - 1
    return k1, k2


@dataclass(frozen=True)
class DftCoefficientSet:
    """Magnitude samples on the full DFT grid for one bandwidth bin.

    ``magnitude`` is the length-``N`` zero-phase response ``H_R(k)``;
    the linear-phase factor ``exp(-j*2*pi*k*delay_design/N)`` is applied
    lazily by :attr:`complex_coeffs` because the streaming realization
    works from the magnitudes alone.
    """

    magnitude: np.ndarray
    b_bin: int
    delay_design: int
    passband_bins: np.ndarray
    transition_bins: np.ndarray
    stopband_bins: np.ndarray
    _complex_cache: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        for name in ("magnitude", "passband_bins", "transition_bins", "stopband_bins"):
            arr = getattr(self, name)
            arr.flags.writeable = False

    @property
    def n_fft(self):
        return int(self.magnitude.size)

    @property
    def complex_coeffs(self):
        """Full complex coefficients ``H(k) = H_R(k) * exp(-j*2*pi*k*D1/N)``.

        Derived on demand: the retune path never materializes these, the
        symmetric streaming mode never needs them.
        """
        if not self._complex_cache:
            N = self.n_fft
            k = np.arange(N)
            phase = np.exp(-2j * np.pi * k * self.delay_design / N)
            out = self.magnitude * phase
            out.flags.writeable = False
            self._complex_cache.append(out)
        return self._complex_cache[0]

    @property
    def general_multiplications_per_block(self):
        """Variable-coefficient real multiplications per block: ``2K``."""
        return int(self.transition_bins.size)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self):
        return {
            "n_fft": self.n_fft,
            "b_bin": int(self.b_bin),
            "delay_design": int(self.delay_design),
            "magnitude": [float(x) for x in self.magnitude],
        }

    def save_magnitude_raw(self, path):
        """Little-endian float64 magnitude dump for the streaming engine."""
        self.magnitude.astype("<f8").tofile(path)


def load_magnitude_raw(path, n_fft=None):
    mag = np.fromfile(path, dtype="<f8")
    if n_fft is not None and mag.size != n_fft:
        raise ValueError(f"expected {n_fft} magnitude samples, file holds {mag.size}")
    return mag


def build_coefficients(disc, transition, b_bin):
    """Assemble the full magnitude vector for one bandwidth bin.

    Ones over ``[0, k1-1]`` and the mirror ``[N-k1+1, N-1]``, the
    transition values over ``[k1, k2]`` and reversed over ``[N-k2, N-k1]``,
    zeros across the stopband (the Nyquist bin is always zero).
    """
    if isinstance(transition, TransitionCoeffs):
        v = transition.values
    else:
        v = np.asarray(transition, dtype=float)
    K = disc.k_transition_count
    if v.ndim != 1 or v.size != K:
        raise ValueError(f"expected {K} transition values, got shape {v.shape}")
    N = disc.n_fft
    k1, k2 = transition_edges(disc, b_bin)

    magnitude = np.zeros(N)
    magnitude[0:k1] = 1.0
    if k1 > 1:
        magnitude[N - k1 + 1:] = 1.0
    magnitude[k1:k2 + 1] = v
    magnitude[N - k2:N - k1 + 1] = v[::-1]

    passband = np.concatenate([np.arange(0, k1), np.arange(N - k1 + 1, N)])
    trans = np.concatenate([np.arange(k1, k2 + 1), np.arange(N - k2, N - k1 + 1)])
    stop = np.arange(k2 + 1, N - k2)
    assert magnitude[N // 2] == 0.0, "Nyquist bin must fall in the stopband"
    assert passband.size + trans.size + stop.size == N

    return DftCoefficientSet(
        magnitude=magnitude,
        b_bin=int(b_bin),
        delay_design=disc.delay_design,
        passband_bins=passband,
        transition_bins=trans,
        stopband_bins=stop,
    )


def retune(coeffs, disc, new_b_bin, transition):
    """Move the stored transition values to a new bandwidth bin.

    Pure index-shifted copies of the stored values and band constants;
    no multiplications are performed.  Retuning to the current bin
    returns the set unchanged.
    """
    if new_b_bin == coeffs.b_bin:
        return coeffs
    return build_coefficients(disc, transition, new_b_bin)
