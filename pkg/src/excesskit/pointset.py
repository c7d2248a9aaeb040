"""Finite point sets on the sphere of squared radius m.

The central objects are the normalized Gram matrix ``G = X X^T / n`` and
the inner-product profile: the clustered list of distinct off-diagonal
inner products together with their ordered-pair counts and a label
matrix that assigns every pair to its cluster.  All downstream spectral
work evaluates polynomials at the cluster representatives, so identities
such as "the relation matrices sum to the all-ones matrix" hold exactly.

A point set is a 2-design when four conditions hold simultaneously:

* ``equal_norms``   every point has squared norm m,
* ``min_separation`` no two points coincide,
* ``centered``      the points sum to the zero vector,
* ``projector``     G is idempotent (equivalently X^T X / n is the
  identity on coordinates, an equal-norm tight frame).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .exceptions import (
    AmbiguousClusteringError,
    DuplicatePointError,
    RadiusViolationError,
    UnknownValueError,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig
from .validation import as_point_matrix, rescale_rows


def load_pointset(
    source: str | Path | Mapping[str, Any],
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    normalize: bool | None = None,
    verify: bool = True,
) -> np.ndarray:
    """Load a point set from a JSON file, JSON text, or parsed mapping.

    The document must carry ``"type": "pointset"``, an integer
    ``"dimension"``, and a rectangular ``"points"`` list whose rows have
    exactly ``dimension`` entries.  With ``"normalize": true`` (or the
    ``normalize`` argument, which overrides the document) every row is
    rescaled to squared norm ``dimension``.

    With ``verify`` (the default) the two pointwise conditions are
    enforced at load time: rows must sit on the sphere of squared
    radius ``dimension`` (:class:`RadiusViolationError` unless
    normalizing) and no two rows may coincide
    (:class:`DuplicatePointError`).  Pass ``verify=False`` to admit any
    coordinate matrix, e.g. to produce a full refutation report.

    Returns the (n, dimension) float coordinate matrix.
    """
    if isinstance(source, Mapping):
        doc = source
    else:
        text = Path(source).read_text() if Path(str(source)).exists() else str(source)
        doc = json.loads(text)
    if not isinstance(doc, Mapping):
        raise ValueError("pointset document must be a JSON object")
    kind = doc.get("type")
    if kind != "pointset":
        raise ValueError(f"expected document type 'pointset', got {kind!r}")
    if "dimension" not in doc or "points" not in doc:
        raise ValueError("pointset document needs 'dimension' and 'points'")
    m = doc["dimension"]
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"'dimension' must be a positive integer, got {m!r}")
    X = as_point_matrix(doc["points"])
    if X.shape[1] != m:
        raise ValueError(
            f"points have {X.shape[1]} coordinates but 'dimension' is {m}"
        )
    if normalize is None:
        normalize = bool(doc.get("normalize", False))
    if normalize:
        X = rescale_rows(X, float(m))
    if verify:
        scale = max(float(m), 1.0)
        norms = np.einsum("ij,ij->i", X, X)
        worst = float(np.max(np.abs(norms - m)))
        if worst > tol.cert * scale:
            raise RadiusViolationError(
                f"row squared norms deviate from {m} by up to {worst:.3e}; "
                "pass normalize to rescale onto the sphere"
            )
        if X.shape[0] > 1:
            P = X @ X.T
            off = P[~np.eye(X.shape[0], dtype=bool)]
            top = float(off.max())
            if top >= m - tol.scaled_cluster(scale):
                raise DuplicatePointError(
                    f"two rows share inner product {top:.6g} at squared "
                    f"radius {m}; the set has a repeated point"
                )
    return X


def normalized_gram(X: np.ndarray) -> np.ndarray:
    """Normalized Gram matrix ``G = X X^T / n`` (symmetrized)."""
    X = np.asarray(X, dtype=float)
    P = X @ X.T
    return (P + P.T) / (2.0 * X.shape[0])


@dataclass(frozen=True)
class InnerProductProfile:
    """Clustered inner products of a point set.

    ``values`` holds the s distinct off-diagonal inner products in
    increasing order; ``counts[j]`` is the number of ordered pairs
    realizing ``values[j]``.  ``labels`` maps each pair (x, y) to its
    cluster index, with the diagonal assigned the extra index s that
    stands for the squared radius itself.
    """

    n: int
    dimension: int
    radius_sq: float
    values: np.ndarray
    counts: np.ndarray
    labels: np.ndarray = field(repr=False)

    @property
    def s(self) -> int:
        """Number of distinct off-diagonal inner products."""
        return int(self.values.size)

    @property
    def values_with_radius(self) -> np.ndarray:
        """Distinct products including the squared radius, increasing."""
        return np.append(self.values, self.radius_sq)

    @property
    def counts_with_radius(self) -> np.ndarray:
        """Ordered-pair counts including the n diagonal pairs."""
        return np.append(self.counts, self.n)

    def value_index(self, value: float, tol: float | None = None) -> int:
        """Index of the cluster whose representative matches ``value``."""
        if tol is None:
            tol = 1e-6 * max(abs(self.radius_sq), 1.0)
        diffs = np.abs(self.values_with_radius - value)
        j = int(np.argmin(diffs))
        if diffs[j] > tol:
            raise UnknownValueError(
                f"{value!r} is not an inner product of this point set"
            )
        return j

    def relation(self, index: int) -> np.ndarray:
        """0/1 matrix of the pairs attaining value ``index`` (s = diagonal)."""
        if not 0 <= index <= self.s:
            raise UnknownValueError(f"relation index {index} out of range")
        return (self.labels == index).astype(np.int64)

    def all_relations(self) -> list[np.ndarray]:
        return [self.relation(j) for j in range(self.s + 1)]

    def snapped_products(self) -> np.ndarray:
        """Inner-product matrix with entries snapped to representatives.

        This equals ``n G`` up to clustering noise and is the matrix all
        polynomial evaluation downstream is applied to entrywise.
        """
        return self.values_with_radius[self.labels]

    def snapped_gram(self) -> np.ndarray:
        return self.snapped_products() / self.n


def relation_matrix(profile: InnerProductProfile, value: float) -> np.ndarray:
    """0/1 indicator of the pairs whose inner product equals ``value``.

    ``value`` is matched against the cluster representatives (the squared
    radius selects the diagonal); anything else raises
    :class:`UnknownValueError`.
    """
    return profile.relation(profile.value_index(value))


def inner_product_profile(
    X: np.ndarray, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> InnerProductProfile:
    """Cluster the off-diagonal inner products of ``X``.

    Single-linkage grouping with absolute gap ``tol.cluster`` scaled by
    the squared radius.  The result is refused rather than guessed when
    the data is ambiguous:

    * two points whose product reaches the squared radius raise
      ``DuplicatePointError``;
    * clusters separated by less than twice the gap, or wider than the
      gap, raise ``AmbiguousClusteringError``.
    """
    X = as_point_matrix(X)
    n, m = X.shape
    P = X @ X.T
    P = (P + P.T) / 2.0
    radius_sq = float(np.mean(np.diag(P)))
    eps = tol.scaled_cluster(abs(radius_sq))
    labels = np.full((n, n), -1, dtype=np.int64)

    if n == 1:
        values = np.empty(0)
        counts = np.empty(0, dtype=np.int64)
        labels[0, 0] = 0
        return InnerProductProfile(n, m, radius_sq, values, counts, labels)

    off_mask = ~np.eye(n, dtype=bool)
    off = np.sort(P[off_mask])
    top = float(off[-1])
    if top >= radius_sq - eps:
        raise DuplicatePointError(
            f"two points share inner product {top:.6g} at squared radius "
            f"{radius_sq:.6g}; the set has a repeated point"
        )
    if top >= radius_sq - 2.0 * eps:
        raise AmbiguousClusteringError(
            f"largest inner product {top:.6g} sits in the ambiguity band "
            f"below the squared radius {radius_sq:.6g}"
        )

    breaks = np.flatnonzero(np.diff(off) > eps)
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks + 1, [off.size]))
    reps = []
    for a, b in zip(starts, ends):
        chunk = off[a:b]
        width = float(chunk[-1] - chunk[0])
        if width > eps:
            raise AmbiguousClusteringError(
                f"inner products near {float(np.mean(chunk)):.6g} chain "
                f"across a range of {width:.3e}, wider than the gap {eps:.3e}"
            )
        reps.append(float(np.mean(chunk)))
    for prev_end, next_start, j in zip(ends[:-1], starts[1:], range(len(reps))):
        gap = float(off[next_start] - off[prev_end - 1])
        if gap <= 2.0 * eps:
            raise AmbiguousClusteringError(
                f"clusters at {reps[j]:.6g} and {reps[j + 1]:.6g} are "
                f"separated by only {gap:.3e}"
            )

    values = np.asarray(reps)
    # Boundaries at midpoints between consecutive clusters reproduce the
    # single-linkage assignment exactly.
    bounds = (off[starts[1:]] + off[ends[:-1] - 1]) / 2.0
    labels[off_mask] = np.searchsorted(bounds, P[off_mask])
    labels[np.diag_indices(n)] = values.size
    counts = np.bincount(labels[off_mask], minlength=values.size)
    return InnerProductProfile(
        n, m, radius_sq, values, counts.astype(np.int64), labels
    )


@dataclass(frozen=True)
class TwoDesignReport:
    """Outcome of the four 2-design conditions with numeric evidence."""

    n: int
    dimension: int
    radius_sq: float
    norm_residual: float
    separation_margin: float
    centering_residual: float
    projector_residual: float
    rank_of_gram: int
    conditions: dict[str, bool]
    passed: bool
    verdict: str

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "dimension": self.dimension,
            "radius_sq": self.radius_sq,
            "residuals": {
                "equal_norms": self.norm_residual,
                "min_separation": self.separation_margin,
                "centered": self.centering_residual,
                "projector": self.projector_residual,
            },
            "rank_of_gram": self.rank_of_gram,
            "conditions": dict(self.conditions),
            "passed": self.passed,
            "verdict": self.verdict,
        }


def check_two_design(
    X: np.ndarray, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> TwoDesignReport:
    """Check the four 2-design conditions for ``X`` on the radius-sqrt(m) sphere.

    Never raises for a mere failure; the report carries a verdict of
    ``"design-verified"`` or ``"design-refuted"`` together with the
    residual of each condition.
    """
    X = as_point_matrix(X)
    n, m = X.shape
    G = normalized_gram(X)
    scale = max(float(m), 1.0)

    norm_residual = float(np.max(np.abs(n * np.diag(G) - m)))
    if n > 1:
        off = G[~np.eye(n, dtype=bool)] * n
        separation_margin = float(m - np.max(off))
    else:
        separation_margin = float("inf")
    centering_residual = float(np.linalg.norm(G.sum(axis=1)))
    projector_residual = float(np.linalg.norm(G @ G - G))
    singular = np.linalg.svd(G, compute_uv=False)
    rank_of_gram = int(np.count_nonzero(singular > tol.rank * singular[0]))

    conditions = {
        "equal_norms": norm_residual <= tol.cert * scale,
        "min_separation": separation_margin > 2.0 * tol.scaled_cluster(scale),
        "centered": centering_residual <= tol.cert * n,
        "projector": projector_residual <= tol.cert * n,
    }
    passed = all(conditions.values())
    return TwoDesignReport(
        n=n,
        dimension=m,
        radius_sq=float(m),
        norm_residual=norm_residual,
        separation_margin=separation_margin,
        centering_residual=centering_residual,
        projector_residual=projector_residual,
        rank_of_gram=rank_of_gram,
        conditions=conditions,
        passed=passed,
        verdict="design-verified" if passed else "design-refuted",
    )
