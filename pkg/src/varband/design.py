"""Closed-form least-squares design of the transition-band values.

The error energy of the periodically time-varying realization, summed
over every designable bandwidth bin and over the block phases, is an
exact quadratic in the ``K`` transition values ``v``:

    E(v) = (1/2) v^T Q v + v^T c + E(0),

with ``Q`` and ``c`` assembled in closed form from three kernels:

- a delay-centred cosine ``cos(2*pi*k*(D2 - (q + n))/N)``,
- the pass+stop band integral of ``cos(w*(q - p))`` (Toeplitz in q - p),
- the passband integral of the desired-response cross term.

No frequency grid is involved; the minimizer is ``v = -Q^{-1} c`` by a
Cholesky solve.  The constant term is never materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .coefficients import TransitionCoeffs, transition_edges
from .errors import ConditioningError

DEFAULT_PHASE_LIMIT = "M"

_RESIDUAL_TOL = 1e-10


# -- scalar kernels --------------------------------------------------------


def delay_cosine(k, q, n, disc):
    """``cos(2*pi*k*(D2 - (q + n)) / N)`` for bin ``k`` and time pair ``(q, n)``."""
    return math.cos(2.0 * math.pi * k * (disc.delay_system - (q + n)) / disc.n_fft)


def band_cosine_integral(q, p, b_rad, delta_rad):
    """``(1/pi)`` times the pass+stop integral of ``cos(w*(q - p))``.

    ``(pi - delta)/pi`` on the diagonal; off it, the transition gap
    contributes ``-2*sin(delta*(q-p)/2)*cos(b*(q-p)) / (pi*(q-p))``.
    """
    d = q - p
    if d == 0:
        return (math.pi - delta_rad) / math.pi
    return -2.0 * math.sin(delta_rad * d / 2.0) * math.cos(b_rad * d) / (math.pi * d)


def passband_delay_integral(p, n, b_rad, delta_rad, disc):
    """``(1/pi)`` times the passband integral of ``cos(w*(D2 - (p + n)))``."""
    edge = b_rad - delta_rad / 2.0
    d = disc.delay_system - (p + n)
    if d == 0:
        return edge / math.pi
    return math.sin(edge * d) / (math.pi * d)


# -- vectorized assembly ---------------------------------------------------


def _band_integral_matrix(n_fft, b_rad, delta_rad):
    d = np.arange(-(n_fft - 1), n_fft, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        vals = -2.0 * np.sin(delta_rad * d / 2.0) * np.cos(b_rad * d) / (math.pi * d)
    vals[n_fft - 1] = (math.pi - delta_rad) / math.pi
    return scipy.linalg.toeplitz(vals[n_fft - 1:], vals[n_fft - 1::-1])


@dataclass(frozen=True)
class LsSystem:
    """Assembled normal-equation pieces for one discretized spec."""

    q_matrix: np.ndarray
    c_vector: np.ndarray
    phase_limit: str

    def __post_init__(self):
        K = self.c_vector.size
        if self.q_matrix.shape != (K, K):
            raise ValueError("q_matrix shape inconsistent with c_vector")
        self.q_matrix.flags.writeable = False
        self.c_vector.flags.writeable = False

    def save_raw(self, path):
        """Debug dump: ``[K, Q row-major, c]`` as little-endian float64."""
        K = self.c_vector.size
        np.concatenate([[float(K)], self.q_matrix.ravel(), self.c_vector]).astype(
            "<f8"
        ).tofile(path)

    @classmethod
    def load_raw(cls, path, phase_limit=DEFAULT_PHASE_LIMIT):
        flat = np.fromfile(path, dtype="<f8")
        K = int(flat[0])
        if flat.size != 1 + K * K + K:
            raise ValueError(f"dump length {flat.size} inconsistent with K={K}")
        return cls(
            q_matrix=flat[1:1 + K * K].reshape(K, K).copy(),
            c_vector=flat[1 + K * K:].copy(),
            phase_limit=phase_limit,
        )


@dataclass(frozen=True)
class DesignWeights:
    """Per-phase, per-bin error weights, shape ``(M, n_bins)``, all positive."""

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 2:
            raise ValueError("weights must be a 2-D (phases x bins) matrix")
        if not np.all(w > 0):
            raise ValueError("weights must be strictly positive")
        w = w.copy()
        w.flags.writeable = False
        object.__setattr__(self, "w", w)

    @classmethod
    def ones(cls, disc):
        return cls(np.ones((disc.block_advance, disc.n_bins)))


def derive_weights(profile):
    """Weights from a linear stopband-energy profile: ``sqrt(E / min(E))``.

    Entries with larger residual energy get proportionally larger weight;
    the best-behaved (phase, bin) pair keeps weight one.
    """
    p = np.asarray(profile, dtype=float)
    if p.ndim != 2:
        raise ValueError("profile must be a 2-D (phases x bins) matrix")
    if not np.all(p > 0):
        raise ValueError("profile energies must be strictly positive")
    return DesignWeights(np.sqrt(p / p.min()))


def assemble(disc, phase_limit=DEFAULT_PHASE_LIMIT):
    """Closed-form normal equations for every designable bandwidth bin."""
    return _assemble(disc, phase_limit, None)


def assemble_weighted(disc, weights, phase_limit=DEFAULT_PHASE_LIMIT):
    """Weighted assembly: each (phase, bin) term is scaled by ``w^2``."""
    if not isinstance(weights, DesignWeights):
        weights = DesignWeights(np.asarray(weights, dtype=float))
    expected = (disc.block_advance, disc.n_bins)
    if weights.w.shape != expected:
        raise ValueError(f"weights shape {weights.w.shape}, expected {expected}")
    if phase_limit != "M":
        raise ValueError("weighted assembly is defined for the block phases only")
    return _assemble(disc, phase_limit, weights.w ** 2)


def _assemble(disc, phase_limit, weights_sq):
    if phase_limit not in ("M", "N"):
        raise ValueError(f"phase_limit must be 'M' or 'N', got {phase_limit!r}")
    N = disc.n_fft
    K = disc.k_transition_count
    D2 = disc.delay_system
    P = disc.block_advance if phase_limit == "M" else N
    delta = disc.delta_truncated

    # Everything n-dependent is a length-N sliding window over t = q + n.
    t = np.arange(N + P - 1, dtype=float)
    dd = D2 - t
    Q = np.zeros((K, K))
    c = np.zeros(K)

    for j, b_bin in enumerate(disc.bins()):
        k1, k2 = transition_edges(disc, b_bin)
        b_rad = disc.bin_to_radians(b_bin)

        ks = np.arange(k1, k2 + 1, dtype=float)
        trans_cos = np.cos(2.0 * math.pi / N * np.outer(dd, ks))  # (N+P-1, K)
        kp = np.arange(1.0, k1)
        fixed = (1.0 + 2.0 * np.cos(2.0 * math.pi / N * np.outer(dd, kp)).sum(axis=1)) / N
        edge = b_rad - delta / 2.0
        with np.errstate(invalid="ignore", divide="ignore"):
            psi = np.sin(edge * dd) / (math.pi * dd)
        psi[dd == 0] = edge / math.pi

        I1 = _band_integral_matrix(N, b_rad, delta)
        win = np.lib.stride_tricks.sliding_window_view
        F = win(trans_cos, N, axis=0).transpose(0, 2, 1)   # (P, N, K)
        U = win(fixed, N)                                  # (P, N)
        Psi = win(psi, N)                                  # (P, N)
        inner = U @ I1 - Psi

        if weights_sq is None:
            Qb = np.einsum("nqr,qp,nps->rs", F, I1, F, optimize=True)
            cb = np.einsum("nps,np->s", F, inner, optimize=True)
        else:
            w2 = weights_sq[:, j]
            Qb = np.einsum("n,nqr,qp,nps->rs", w2, F, I1, F, optimize=True)
            cb = np.einsum("nps,np->s", F, inner * w2[:, None], optimize=True)
        Q += (4.0 / N ** 2) * Qb
        c += (2.0 / N) * cb

    asym = float(np.max(np.abs(Q - Q.T)))
    if asym > 1e-10 * max(1.0, float(np.max(np.abs(Q)))):
        raise AssertionError(f"assembled matrix asymmetry {asym:.3e} too large")
    Q = (Q + Q.T) / 2.0
    return LsSystem(q_matrix=Q, c_vector=c, phase_limit=phase_limit)


def solve(system):
    """Minimizer ``v = -Q^{-1} c`` via Cholesky, with a refinement step.

    Raises :class:`ConditioningError` (with a condition estimate) when the
    factorization fails or the residual ``|Qv + c| / |c|`` stays above
    1e-10.
    """
    Q, c = system.q_matrix, system.c_vector
    try:
        factor = scipy.linalg.cho_factor(Q)
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(
            f"Cholesky factorization failed: {exc}",
            condition_estimate=float(np.linalg.cond(Q)),
        ) from exc
    v = scipy.linalg.cho_solve(factor, -c)
    v -= scipy.linalg.cho_solve(factor, Q @ v + c)  # one refinement pass
    resid = float(np.linalg.norm(Q @ v + c) / max(np.linalg.norm(c), 1e-300))
    if resid > _RESIDUAL_TOL:
        raise ConditioningError(
            f"normal-equation residual {resid:.3e} exceeds {_RESIDUAL_TOL:.0e}",
            condition_estimate=float(np.linalg.cond(Q)),
        )
    return TransitionCoeffs(v)


def design_transition(disc, weighted=False, phase_limit=DEFAULT_PHASE_LIMIT,
                      metric_density=16):
    """One-call design: solve, optionally reweight once, and return details.

    Returns ``(transition, weights, profile)`` where ``weights`` and
    ``profile`` are ``None`` for the unweighted design.  The weighted path
    scores the unweighted solution's stopband-energy profile, derives
    weights from it, and re-solves once.
    """
    base = solve(assemble(disc, phase_limit))
    if not weighted:
        return base, None, None
    from .analysis import sbe_profile  # deferred: analysis imports coefficients too

    profile = sbe_profile(disc, base, density=metric_density)
    weights = derive_weights(profile)
    refined = solve(assemble_weighted(disc, weights, phase_limit))
    return refined, weights, profile
