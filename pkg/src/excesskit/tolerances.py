"""Tolerance bundle threaded through every numeric decision.

Three knobs, one dataclass:

``cluster``
    Absolute gap used when grouping nearly equal inner products or
    eigenvalues.  Scaled by the squared radius at the call site.
``rank``
    Relative singular-value cutoff for rank decisions.
``cert``
    Frobenius-norm threshold under which a residual counts as zero in a
    certificate.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ToleranceConfig:
    cluster: float = 1e-8
    rank: float = 1e-9
    cert: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("cluster", "rank", "cert"):
            value = getattr(self, name)
            if not (value > 0.0):
                raise ValueError(f"tolerance {name!r} must be positive, got {value!r}")

    def scaled_cluster(self, scale: float) -> float:
        """Cluster gap scaled to the problem (squared radius or spectral radius)."""
        return self.cluster * max(float(scale), 1.0)


DEFAULT_TOLERANCES = ToleranceConfig()
