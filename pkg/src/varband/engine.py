"""Streaming overlap-save filtering with block-boundary retuning.

Each block stacks the last ``L - 1`` input samples (the history) in
front of ``M`` fresh samples, transforms, multiplies by the coefficient
vector, inverse transforms, and keeps ``M`` output samples:

- conventional mode multiplies by the full complex coefficients and
  keeps the last ``M`` samples;
- symmetric mode multiplies by the real magnitudes only and keeps the
  ``M`` samples starting ``(L - 1) / 2`` in, which realizes the same
  linear phase by index rotation instead of complex multiplies.

Both modes emit identical samples (to transform roundoff).  The stream
starts from silence (zero history), so the content delay is the design
delay ``D1 = (L - 1)/2``; real-time latency additionally pays the block
gathering, ``M - 1`` samples, for ``D2 = D1 + M - 1`` worst case.

Bandwidth changes are staged: :meth:`OverlapSaveEngine.set_bandwidth`
rebuilds the coefficient vector by pure copies (no multiplications) and
the next processed block picks it up; the block in flight is never
touched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coefficients import DftCoefficientSet, retune


class NumpyTransform:
    """Default FFT backend; anything with ``forward``/``inverse`` works."""

    def forward(self, x):
        return np.fft.fft(x)

    def inverse(self, spectrum):
        return np.fft.ifft(spectrum)


@dataclass(frozen=True)
class RetuneAck:
    """Outcome of a bandwidth request: the bin that will apply, and how."""

    applied_bin: int
    clamped: bool
    changed: bool


class OverlapSaveEngine:
    """Block streaming engine for one coefficient set.

    Parameters
    ----------
    coefficients : DftCoefficientSet or complex array
        A designed coefficient set enables both modes and retuning (give
        ``disc`` and ``transition`` for the latter).  A raw complex
        vector runs fixed, conventional-mode filtering; pass
        ``filter_length`` so the engine knows the overlap.
    mode : {"symmetric", "conventional"}
    disc : DiscretizedSpec, optional
    transition : TransitionCoeffs, optional
        The stored transition values; needed only for retuning.
    """

    def __init__(self, coefficients, mode="symmetric", disc=None,
                 transition=None, filter_length=None, transform=None):
        if mode not in ("symmetric", "conventional"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.disc = disc
        self.transition = transition
        self.transform = transform if transform is not None else NumpyTransform()

        if isinstance(coefficients, DftCoefficientSet):
            self.n_fft = coefficients.n_fft
            if filter_length is None:
                if disc is None:
                    raise ValueError("need disc or filter_length for the overlap")
                filter_length = disc.filter_length
        else:
            coefficients = np.asarray(coefficients, dtype=complex)
            if coefficients.ndim != 1:
                raise ValueError("coefficient vector must be 1-D")
            self.n_fft = coefficients.size
            if filter_length is None:
                raise ValueError("raw coefficient vectors need filter_length")
            if mode == "symmetric":
                raise ValueError(
                    "symmetric mode needs a DftCoefficientSet (real magnitudes)"
                )
        if not 2 <= filter_length <= self.n_fft:
            raise ValueError(f"filter_length {filter_length} invalid for n_fft {self.n_fft}")
        if mode == "symmetric" and filter_length % 2 == 0:
            raise ValueError("symmetric mode needs an odd filter length")
        self.filter_length = filter_length
        self.block_advance = self.n_fft - filter_length + 1

        self._current = coefficients
        self._pending = None
        self._history = np.zeros(filter_length - 1)
        self.blocks_processed = 0
        self.samples_emitted = 0
        self.retunes_applied = 0
        self.general_multiplications = 0

    # -- coefficient handling ----------------------------------------------

    @property
    def current_bin(self):
        cur = self._pending if self._pending is not None else self._current
        return cur.b_bin if isinstance(cur, DftCoefficientSet) else None

    def set_bandwidth(self, b_rad):
        """Stage a bandwidth change for the next block.

        The radian bandwidth is rounded to the nearest bin and clamped to
        the designable range (with a warning).  Requesting the bin already
        in effect (or already staged) is a no-op.
        """
        if self.disc is None or self.transition is None:
            raise ValueError("retuning needs disc and transition at construction")
        from .spec import bandwidth_to_bin as raw_bin

        b_bin = self.disc.bandwidth_to_bin(b_rad)
        clamped = b_bin != raw_bin(b_rad, self.n_fft)
        if b_bin == self.current_bin:
            return RetuneAck(applied_bin=b_bin, clamped=bool(clamped), changed=False)
        base = self._pending if self._pending is not None else self._current
        self._pending = retune(base, self.disc, b_bin, self.transition)
        return RetuneAck(applied_bin=b_bin, clamped=bool(clamped), changed=True)

    def _spectrum_multiply(self, spectrum):
        cur = self._current
        if self.mode == "symmetric":
            # real magnitudes only; the variable-coefficient cost is the
            # 2K transition products (half-spectrum K bins, complex data)
            self.general_multiplications += cur.general_multiplications_per_block
            return spectrum * cur.magnitude
        if isinstance(cur, DftCoefficientSet):
            self.general_multiplications += 2 * cur.general_multiplications_per_block
            return spectrum * cur.complex_coeffs
        return spectrum * cur

    # -- streaming ----------------------------------------------------------

    def process_block(self, x):
        """Filter exactly ``block_advance`` new samples; returns as many."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.block_advance,):
            raise ValueError(
                f"process_block expects shape ({self.block_advance},), got {x.shape}"
            )
        if self._pending is not None:
            self._current = self._pending
            self._pending = None
            self.retunes_applied += 1

        block = np.concatenate([self._history, x])
        spectrum = self.transform.forward(block)
        z = self.transform.inverse(self._spectrum_multiply(spectrum))
        resid = float(np.max(np.abs(z.imag)))
        scale = max(1.0, float(np.max(np.abs(z.real))))
        if resid > 1e-10 * scale:
            raise AssertionError(f"inverse transform imaginary residue {resid:.3e}")
        z = z.real

        if self.mode == "symmetric":
            d1 = (self.filter_length - 1) // 2
            y = z[d1:d1 + self.block_advance]
        else:
            y = z[self.filter_length - 1:]

        self._history = block[self.block_advance:]
        self.blocks_processed += 1
        self.samples_emitted += y.size
        return y.copy()

    def process(self, x):
        """Filter an arbitrary-length signal, zero-padding the last block.

        Output length equals the padded input length (a whole number of
        blocks); use :meth:`flush` afterwards to push out the tail.
        """
        x = np.asarray(x, dtype=float)
        n_blocks = max(1, -(-x.size // self.block_advance))
        padded = np.zeros(n_blocks * self.block_advance)
        padded[:x.size] = x
        return np.concatenate([
            self.process_block(padded[i * self.block_advance:(i + 1) * self.block_advance])
            for i in range(n_blocks)
        ])

    def flush(self, n_blocks=1):
        """Process zero blocks to emit content still inside the history."""
        return np.concatenate([
            self.process_block(np.zeros(self.block_advance)) for _ in range(n_blocks)
        ])

    def reset(self):
        """Back to the from-silence state; counters start over too."""
        self._history = np.zeros(self.filter_length - 1)
        self._pending = None
        self.blocks_processed = 0
        self.samples_emitted = 0
        self.retunes_applied = 0
        self.general_multiplications = 0
