"""Mean excess of a spherical 2-design and the equality certificate.

For an s-distance 2-design X whose degree S equals s, the trace of the
top harmonic projector F_s (the mean excess, the average multiplicity
weight a point carries in the top component) never exceeds the value
q_s(m) of the top orthogonal polynomial of the inner-product measure at
the squared radius.  Equality holds exactly when F_s is itself the
entrywise polynomial (1/n) q_s(nG), which in turn forces every F_i to be
(1/n) q_i(nG); the point set is then a Q-polynomial association scheme
under its inner-product relations.

The bound is an orthogonal-projection statement: projecting F_s onto
the span of the matrices q_i(nG) (entrywise evaluation) leaves only the
index-s term, with coefficient mu / q_s(m), and comparing norms gives
mu - mu^2/q_s(m) >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from numpy.polynomial import Polynomial

from .exceptions import (
    ExcessKitError,
    HypothesisViolatedError,
    InconsistentInputsError,
)
from .harmonic import HarmonicDecomposition, harmonic_decomposition
from .orthopoly import (
    DiscreteMeasure,
    OrthogonalSystem,
    orthogonal_sequence,
    peak_interpolator,
)
from .pointset import InnerProductProfile
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig


def design_measure(profile: InnerProductProfile) -> DiscreteMeasure:
    """Measure with weight (ordered pair count)/n^2 at each product."""
    n = profile.n
    return DiscreteMeasure(
        points=profile.values_with_radius,
        weights=profile.counts_with_radius / float(n * n),
    )


def predegree_system(profile: InnerProductProfile) -> OrthogonalSystem:
    """Orthogonal polynomials of the inner-product measure, normalized
    at the squared radius."""
    return orthogonal_sequence(design_measure(profile), profile.radius_sq)


@dataclass(frozen=True)
class ExcessReport:
    """Everything the excess theorem has to say about one point set."""

    n: int
    dimension: int
    s: int
    degree: int
    hypothesis_met: bool
    per_point: np.ndarray
    mu: float
    bound: float
    gap: float
    projection_residual: float
    equality: bool
    residuals: np.ndarray
    certified: bool
    verdict: str

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "dimension": self.dimension,
            "s": self.s,
            "degree": self.degree,
            "hypothesis_met": self.hypothesis_met,
            "per_point_excess": self.per_point.tolist(),
            "mu": self.mu,
            "bound": self.bound,
            "gap": self.gap,
            "projection_residual": self.projection_residual,
            "equality": self.equality,
            "idempotent_residuals": self.residuals.tolist(),
            "certified": self.certified,
            "verdict": self.verdict,
        }


def _idempotent_residuals(
    decomp: HarmonicDecomposition, system: OrthogonalSystem
) -> tuple[np.ndarray, np.ndarray]:
    """Frobenius distances between F_i and (1/n) q_i(nG), with the
    per-index scales max(1, ||q_i(nG)/n||_F) used to judge them."""
    profile = decomp.profile
    n = profile.n
    N = profile.snapped_products()
    S = decomp.degree
    residuals = np.empty(profile.s + 1)
    scales = np.empty(profile.s + 1)
    for i, q in enumerate(system.polys):
        candidate = q(N) / n
        F_i = decomp.projectors[i] if i <= S else np.zeros_like(candidate)
        residuals[i] = float(np.linalg.norm(F_i - candidate))
        scales[i] = max(1.0, float(np.linalg.norm(candidate)))
    return residuals, scales


@dataclass(frozen=True)
class QPolynomialCertificate:
    """Per-index evidence that the harmonic projectors are entrywise
    polynomials in the Gram matrix."""

    s: int
    residuals: np.ndarray
    scales: np.ndarray
    threshold: float
    certified: bool
    consistent: bool

    @property
    def top_residual(self) -> float:
        """The index-s residual, the one that decides certification."""
        return float(self.residuals[self.s])

    def as_dict(self) -> dict[str, Any]:
        return {
            "s": self.s,
            "residuals": self.residuals.tolist(),
            "certified": self.certified,
            "consistent": self.consistent,
        }


def qpoly_certificate(
    decomp: HarmonicDecomposition,
    system: OrthogonalSystem | None = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> QPolynomialCertificate:
    """Certify or refute F_i == (1/n) q_i(nG) for every index i.

    The index-s comparison alone decides ``certified``: once the top
    projector is an entrywise polynomial in the Gram matrix, the lower
    indices follow.  Their residuals are still measured and folded into
    ``consistent`` as a cross-check.

    Only defined under the degree hypothesis S == s; otherwise the top
    comparison pairs objects of different meaning and the call raises
    :class:`HypothesisViolatedError`.
    """
    profile = decomp.profile
    if decomp.degree != profile.s:
        raise HypothesisViolatedError(
            f"degree {decomp.degree} differs from the number of distinct "
            f"inner products {profile.s}; the certificate is undefined"
        )
    if system is None:
        system = predegree_system(profile)
    residuals, scales = _idempotent_residuals(decomp, system)
    s = profile.s
    certified = bool(residuals[s] <= tol.cert * scales[s])
    consistent = bool(np.all(residuals <= tol.cert * scales)) == certified
    return QPolynomialCertificate(
        s=s,
        residuals=residuals,
        scales=scales,
        threshold=tol.cert,
        certified=certified,
        consistent=consistent,
    )


def excess_from_decomposition(
    decomp: HarmonicDecomposition,
    system: OrthogonalSystem | None = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ExcessReport:
    """Excess analysis of an already-computed harmonic decomposition."""
    profile = decomp.profile
    n = profile.n
    s = profile.s
    S = decomp.degree
    if system is None:
        system = predegree_system(profile)
    bound = float(system.values_at_point[s])

    F_top = decomp.top_projector
    per_point = n * np.diag(F_top).copy()
    mu = float(np.trace(F_top))
    hypothesis_met = S == s

    residuals, scales = _idempotent_residuals(decomp, system)
    projection_residual = float(
        np.linalg.norm(F_top - project_onto_algebra(decomp, system))
    )

    gap = bound - mu
    eq_scale = max(1.0, abs(bound))
    if hypothesis_met and gap < -tol.cert * eq_scale:
        raise ExcessKitError(
            f"mean excess {mu:.12g} exceeds the bound {bound:.12g} by "
            "more than the tolerance; the computation is numerically "
            "inconsistent"
        )
    equality = hypothesis_met and abs(gap) <= tol.cert * eq_scale
    certified = bool(
        hypothesis_met and equality and residuals[s] <= tol.cert * scales[s]
    )

    if not hypothesis_met:
        verdict = "hypothesis-unmet"
    elif certified:
        verdict = "equality-certified"
    else:
        verdict = "inequality-strict"
    return ExcessReport(
        n=n,
        dimension=profile.dimension,
        s=s,
        degree=S,
        hypothesis_met=hypothesis_met,
        per_point=per_point,
        mu=mu,
        bound=bound,
        gap=gap,
        projection_residual=projection_residual,
        equality=equality,
        residuals=residuals,
        certified=certified,
        verdict=verdict,
    )


def excess_analysis(
    X: np.ndarray, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> ExcessReport:
    """Full pipeline: 2-design check, harmonic split, excess bound.

    Raises :class:`NotATwoDesignError` when ``X`` is not a 2-design; use
    the estimator layer for a non-raising verdict interface.
    """
    decomp = harmonic_decomposition(X, tol, require_design=True)
    return excess_from_decomposition(decomp, tol=tol)


def project_onto_algebra(
    decomp: HarmonicDecomposition,
    system: OrthogonalSystem | None = None,
) -> np.ndarray:
    """Orthogonal projection of the top harmonic projector onto the span
    of the entrywise-evaluated matrices q_0(nG), ..., q_s(nG).

    Computed as the full Fourier sum
    sum_i <F, q_i(nG)> / (n^2 q_i(m)) * q_i(nG) under the trace inner
    product; the matrices q_i(nG) are orthogonal with squared norms
    n^2 q_i(m).  When the degree hypothesis S == s holds, every
    coordinate below s vanishes and the sum collapses to the shortcut of
    :func:`projected_top_component`.
    """
    profile = decomp.profile
    if system is None:
        system = predegree_system(profile)
    if len(system.polys) != profile.s + 1:
        raise InconsistentInputsError(
            f"orthogonal system has degree {len(system.polys) - 1} but the "
            f"point set carries {profile.s} distinct inner products"
        )
    n = profile.n
    N = profile.snapped_products()
    F_top = decomp.top_projector
    out = np.zeros_like(F_top)
    for q, value in zip(system.polys, system.values_at_point):
        Qi = q(N)
        coeff = float(np.sum(F_top * Qi)) / (n * n * float(value))
        out += coeff * Qi
    return out


def projected_top_component(
    decomp: HarmonicDecomposition,
    system: OrthogonalSystem | None = None,
) -> np.ndarray:
    """Shortcut form of the algebra projection: (mu / (n q_s(m))) q_s(nG).

    Valid under the degree hypothesis S == s, where only the index-s
    coordinate survives because the columns of the lower-degree matrices
    q_i(nG) lie in zonal spaces the top projector annihilates; raises
    :class:`HypothesisViolatedError` otherwise.  Agrees with
    :func:`project_onto_algebra` whenever both apply.
    """
    profile = decomp.profile
    if system is None:
        system = predegree_system(profile)
    if decomp.degree != profile.s:
        raise HypothesisViolatedError(
            f"degree {decomp.degree} differs from s = {profile.s}; the "
            "single-term projection formula does not apply"
        )
    s = profile.s
    mu = float(np.trace(decomp.top_projector))
    N = profile.snapped_products()
    return (mu / (profile.n * float(system.values_at_point[s]))) * system.polys[s](N)


def support_inner_product(
    p: Polynomial, q: Polynomial, profile: InnerProductProfile
) -> float:
    """Inner product (1/n^2) sum over ordered pairs of p q at the
    clustered inner products, the pairing the predegree polynomials are
    orthogonal under."""
    return design_measure(profile).inner(p, q)


@dataclass(frozen=True)
class HoffmanSumReport:
    """Residuals of the two faces of the sum identity.

    ``coefficient_residual`` compares the coefficients of
    sum_i q_i against the interpolator of the squared radius;
    ``matrix_residual`` is the Frobenius distance of (1/n) H(nG)
    (entrywise) from the identity matrix.
    """

    coefficient_residual: float
    matrix_residual: float

    def as_dict(self) -> dict[str, float]:
        return {
            "coefficient_residual": self.coefficient_residual,
            "matrix_residual": self.matrix_residual,
        }


def hoffman_sum_check(
    profile: InnerProductProfile,
    system: OrthogonalSystem | None = None,
) -> HoffmanSumReport:
    """Verify that the predegree polynomials sum to the interpolator of
    the squared radius, as coefficients and as matrices.

    The interpolator H is the degree-s polynomial vanishing at every
    off-diagonal inner product with H(m) = n; entrywise, (1/n) H(nG)
    must be the identity matrix.
    """
    if system is None:
        system = predegree_system(profile)
    peak = peak_interpolator(system.measure)
    diff = (system.sum_polynomial() - peak).coef
    coefficient_residual = float(np.max(np.abs(diff))) if diff.size else 0.0
    N = profile.snapped_products()
    matrix_residual = float(
        np.linalg.norm(peak(N) / profile.n - np.eye(profile.n))
    )
    return HoffmanSumReport(
        coefficient_residual=coefficient_residual,
        matrix_residual=matrix_residual,
    )
