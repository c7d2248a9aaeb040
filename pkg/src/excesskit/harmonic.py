"""Zonal polynomial spaces and harmonic projectors of a point set.

For a point set X on the sphere, the degree-k zonal space is spanned by
the functions x -> p(a . x) with a in X and deg p <= k; as vectors
indexed by X these are the columns of the entrywise powers J, nG,
(nG)^2, ..., (nG)^k of the inner-product matrix.  The harmonic
projector F_k projects onto the part of the degree-k space orthogonal
to the degree-(k-1) space.

For a 2-design the first two projectors are free: F_0 = J/n and
F_1 = G.  The largest index S (the degree of the set) never exceeds the
number s of distinct off-diagonal inner products, because the degree-s
polynomial vanishing on those products interpolates the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import NotATwoDesignError, RankAmbiguityError
from .pointset import (
    InnerProductProfile,
    TwoDesignReport,
    check_two_design,
    inner_product_profile,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig
from .validation import as_point_matrix

# A dropped singular value must sit well below the kept ones before a
# rank decision is accepted.
RANK_GUARD_RATIO = 10.0


def entrywise_power_stack(N: np.ndarray, k: int) -> list[np.ndarray]:
    """Entrywise powers ``[J, N, N**2, ..., N**k]`` of a square matrix."""
    out = [np.ones_like(N)]
    for _ in range(k):
        out.append(out[-1] * N)
    return out


def zonal_basis(N: np.ndarray, k: int) -> np.ndarray:
    """Spanning matrix of the degree-k zonal space: powers side by side.

    Columns of the n x n(k+1) block matrix [J | N | ... | N**k]
    (entrywise powers) span the space of vectors (p(a . x))_x over all
    points a and polynomials p of degree at most k.
    """
    return np.hstack(entrywise_power_stack(np.asarray(N, dtype=float), k))


def _grow_orthonormal(
    Q: np.ndarray, M: np.ndarray, tol: ToleranceConfig
) -> np.ndarray:
    """Columns extending the orthonormal basis ``Q`` by the span of ``M``.

    Rank decisions use a relative singular-value cutoff against the top
    singular value of ``M`` itself, and refuse to choose when kept and
    dropped values are closer than ``RANK_GUARD_RATIO``.
    """
    scale = float(np.linalg.norm(M, 2))
    if scale == 0.0:
        return np.empty((M.shape[0], 0))
    R = M - Q @ (Q.T @ M)
    R = R - Q @ (Q.T @ R)
    U, sv, _ = np.linalg.svd(R, full_matrices=False)
    cutoff = tol.rank * scale
    kept = sv > cutoff
    n_kept = int(np.count_nonzero(kept))
    if 0 < n_kept < sv.size:
        smallest_kept = sv[n_kept - 1]
        largest_dropped = max(float(sv[n_kept]), np.finfo(float).tiny)
        if smallest_kept / largest_dropped < RANK_GUARD_RATIO:
            raise RankAmbiguityError(
                f"singular values {smallest_kept:.3e} (kept) and "
                f"{largest_dropped:.3e} (dropped) straddle the cutoff "
                f"{cutoff:.3e} too closely for a safe rank decision"
            )
    return U[:, :n_kept]


@dataclass(frozen=True)
class HarmonicDecomposition:
    """Orthogonal split of function space along zonal polynomial degree.

    ``projectors[k]`` is the n x n orthogonal projector onto the
    degree-k harmonic component, ``dims[k]`` its rank.  The projectors
    are mutually orthogonal idempotents summing to the identity, with
    ``projectors[0] = J/n`` and, for a 2-design, ``projectors[1] = G``.
    """

    profile: InnerProductProfile
    design_report: TwoDesignReport
    projectors: tuple[np.ndarray, ...] = field(repr=False)
    dims: tuple[int, ...]

    @property
    def degree(self) -> int:
        """The index S of the top harmonic component."""
        return len(self.projectors) - 1

    @property
    def top_projector(self) -> np.ndarray:
        return self.projectors[-1]

    def snapped_gram(self) -> np.ndarray:
        return self.profile.snapped_gram()


def harmonic_decomposition(
    X: np.ndarray,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    require_design: bool = True,
) -> HarmonicDecomposition:
    """Split function space on ``X`` into harmonic components.

    With ``require_design`` (the default) a point set failing any of the
    four 2-design conditions raises :class:`NotATwoDesignError`; pass
    ``False`` to decompose an arbitrary point set, in which case the
    identity ``projectors[1] == G`` is not promised.
    """
    X = as_point_matrix(X)
    report = check_two_design(X, tol)
    if require_design and not report.passed:
        failed = [k for k, ok in report.conditions.items() if not ok]
        raise NotATwoDesignError(
            f"point set fails 2-design condition(s) {failed}; "
            "harmonic decomposition requires a verified 2-design"
        )
    profile = inner_product_profile(X, tol)
    n = profile.n
    N = profile.snapped_products()

    Q = np.full((n, 1), 1.0 / np.sqrt(n))
    blocks = [Q]
    power = np.ones_like(N)
    for k in range(1, profile.s + 1):
        power = power * N
        added = _grow_orthonormal(Q, power, tol)
        if added.shape[1] == 0:
            # The zonal spaces grow strictly until they span everything,
            # so a stall below full rank is a numerical anomaly.
            raise RankAmbiguityError(
                f"degree-{k} zonal space added no dimensions at rank "
                f"{Q.shape[1]} of {n}"
            )
        blocks.append(added)
        Q = np.hstack([Q, added])
        if Q.shape[1] == n:
            break
    if Q.shape[1] != n:
        raise RankAmbiguityError(
            f"zonal spaces only span {Q.shape[1]} of {n} dimensions at "
            f"degree {profile.s}; rank decisions are unreliable here"
        )

    projectors = tuple(B @ B.T for B in blocks)
    dims = tuple(B.shape[1] for B in blocks)
    return HarmonicDecomposition(
        profile=profile,
        design_report=report,
        projectors=projectors,
        dims=dims,
    )


@dataclass(frozen=True)
class ProjectionIdentityReport:
    """Residuals of the structural identities the projectors must satisfy.

    All entries are Frobenius norms; ``annihilation_max`` is relative to
    the norm of the entrywise power it multiplies.
    """

    ones_residual: float
    gram_residual: float
    annihilation_max: float
    completeness_residual: float
    orthogonality_max: float
    idempotency_max: float

    @property
    def max_residual(self) -> float:
        return max(
            self.ones_residual,
            self.gram_residual,
            self.annihilation_max,
            self.completeness_residual,
            self.orthogonality_max,
            self.idempotency_max,
        )

    def as_dict(self) -> dict[str, float]:
        return {
            "ones_residual": self.ones_residual,
            "gram_residual": self.gram_residual,
            "annihilation_max": self.annihilation_max,
            "completeness_residual": self.completeness_residual,
            "orthogonality_max": self.orthogonality_max,
            "idempotency_max": self.idempotency_max,
            "max_residual": self.max_residual,
        }


def verify_projection_identities(
    decomp: HarmonicDecomposition,
) -> ProjectionIdentityReport:
    """Measure how well the harmonic projectors satisfy their identities.

    Checked: F_0 = J/n; F_1 = G; F_j annihilates the degree-i zonal
    space for every j > i; the F_k sum to the identity; and they are
    mutually orthogonal idempotents.  For a verified 2-design every
    residual is at rounding level.
    """
    n = decomp.profile.n
    F = decomp.projectors
    G = decomp.snapped_gram()
    N = n * G

    ones_residual = float(np.linalg.norm(F[0] - np.ones((n, n)) / n))
    gram_residual = (
        float(np.linalg.norm(F[1] - G)) if decomp.degree >= 1 else 0.0
    )

    annihilation_max = 0.0
    power = np.ones((n, n))
    for i in range(decomp.degree):
        if i > 0:
            power = power * N
        scale = float(np.linalg.norm(power))
        for j in range(i + 1, decomp.degree + 1):
            rel = float(np.linalg.norm(F[j] @ power)) / scale
            annihilation_max = max(annihilation_max, rel)

    completeness_residual = float(
        np.linalg.norm(sum(F) - np.eye(n))
    )
    orthogonality_max = 0.0
    idempotency_max = 0.0
    for i, Fi in enumerate(F):
        idempotency_max = max(
            idempotency_max, float(np.linalg.norm(Fi @ Fi - Fi))
        )
        for Fj in F[i + 1 :]:
            orthogonality_max = max(
                orthogonality_max, float(np.linalg.norm(Fi @ Fj))
            )

    return ProjectionIdentityReport(
        ones_residual=ones_residual,
        gram_residual=gram_residual,
        annihilation_max=annihilation_max,
        completeness_residual=completeness_residual,
        orthogonality_max=orthogonality_max,
        idempotency_max=idempotency_max,
    )
