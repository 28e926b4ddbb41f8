"""Self-contained design artifacts: spec, solution, metrics, provenance.

An artifact JSON carries everything needed to reproduce analysis and
filtering runs: the input spec, its discretized form, the solved
transition values, optional weighting info, embedded metrics, and a
provenance block.  The spec hash guards against mixing artifacts with
edited specs; provenance fields (tool version, timestamp) stay outside
every hash so artifacts diff cleanly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .analysis import design_metrics, specification_metrics
from .coefficients import TransitionCoeffs
from .design import DEFAULT_PHASE_LIMIT, design_transition
from .spec import DiscretizedSpec, FilterSpec, discretize, estimate_fft_length, estimate_filter_length

FORMAT = "varband-design/1"


@dataclass(frozen=True)
class DesignArtifact:
    spec: FilterSpec
    disc: DiscretizedSpec
    transition: TransitionCoeffs
    weighted: bool
    phase_limit: str
    metrics: dict
    weights_fingerprint: str | None = None

    def to_json_dict(self):
        return {
            "format": FORMAT,
            "provenance": {
                "tool_version": __version__,
                "created_utc": datetime.now(timezone.utc).isoformat(),
            },
            "spec": self.spec.to_json_dict(),
            "spec_sha256": self.spec.sha256(),
            "disc": self.disc.to_json_dict(),
            "phase_limit": self.phase_limit,
            "weighted": self.weighted,
            "weights_fingerprint": self.weights_fingerprint,
            "transition": self.transition.to_json_dict(self.disc.fingerprint()),
            "metrics": self.metrics,
        }

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def from_json_dict(cls, d):
        if d.get("format") != FORMAT:
            raise ValueError(f"not a design artifact (format {d.get('format')!r})")
        spec = FilterSpec.from_json_dict(d["spec"])
        if spec.sha256() != d.get("spec_sha256"):
            raise ValueError(
                "artifact/spec hash mismatch: the embedded spec does not match "
                "its recorded hash"
            )
        disc = DiscretizedSpec.from_json_dict(d["disc"])
        trans = TransitionCoeffs.from_json_dict(d["transition"])
        fp = d["transition"].get("disc_fingerprint")
        if fp is not None and fp != disc.fingerprint():
            raise ValueError("artifact transition values belong to a different discretization")
        return cls(
            spec=spec,
            disc=disc,
            transition=trans,
            weighted=bool(d.get("weighted", False)),
            phase_limit=d.get("phase_limit", DEFAULT_PHASE_LIMIT),
            metrics=d.get("metrics", {}),
            weights_fingerprint=d.get("weights_fingerprint"),
        )

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def compute_metrics(spec, disc, transition, density=16):
    """Embedded metric block: design-grid edges and original-spec edges."""
    design_edges = design_metrics(disc, transition, density=density)
    spec_edges = specification_metrics(disc, transition, spec, density=density)
    return {"design_edges": design_edges, "spec_edges": spec_edges}


def build_artifact(spec, weighted=False, phase_limit=DEFAULT_PHASE_LIMIT,
                   filter_length=None, n_fft=None, metric_density=16):
    """Run the full design pipeline for a spec and package the result."""
    if filter_length is None:
        filter_length = estimate_filter_length(spec)
    if n_fft is None:
        n_fft = estimate_fft_length(filter_length)
    disc = discretize(spec, filter_length, n_fft)
    transition, weights, _profile = design_transition(
        disc, weighted=weighted, phase_limit=phase_limit, metric_density=metric_density
    )
    wfp = None
    if weights is not None:
        wfp = hashlib.sha256(np.ascontiguousarray(weights.w).tobytes()).hexdigest()[:16]
    metrics = compute_metrics(spec, disc, transition, density=metric_density)
    return DesignArtifact(
        spec=spec,
        disc=disc,
        transition=transition,
        weighted=weighted,
        phase_limit=phase_limit,
        metrics=metrics,
        weights_fingerprint=wfp,
    )
