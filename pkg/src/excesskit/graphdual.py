"""Spectral excess machinery for graphs, the mirror of the design side.

For a connected regular graph with d+1 distinct eigenvalues, the mean
number of vertices at distance d is at most p_d(theta_0), the top
predistance polynomial evaluated at the spectral radius, with equality
exactly for distance-regular graphs.  The predistance polynomials are
the orthogonal polynomials of the spectral measure (weight
multiplicity/n at each eigenvalue) normalized by ||p_i||^2 = p_i(theta_0),
the same construction the design side applies to its inner-product
measure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import numpy as np
from numpy.polynomial import Polynomial

from .exceptions import (
    AmbiguousClusteringError,
    DisconnectedGraphError,
    ExcessKitError,
    InconsistentInputsError,
    NotRegularError,
)
from .orthopoly import (
    DiscreteMeasure,
    OrthogonalSystem,
    matrix_value_sequence,
    orthogonal_sequence,
    poly_string,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig


def load_graph(source: str | Path | Mapping[str, Any]) -> np.ndarray:
    """Load a simple connected graph from JSON (file, text, or mapping).

    The document carries ``"type": "graph"``, the vertex count ``"n"``,
    and either an ``"edges"`` list of pairs or an ``"adjacency"``
    matrix.  Connectivity is checked here, at the boundary, so the
    analyses can presume it.  Returns the dense 0/1 adjacency matrix.
    """
    if isinstance(source, Mapping):
        doc = source
    else:
        text = Path(source).read_text() if Path(str(source)).exists() else str(source)
        doc = json.loads(text)
    if not isinstance(doc, Mapping):
        raise ValueError("graph document must be a JSON object")
    if doc.get("type") != "graph":
        raise ValueError(f"expected document type 'graph', got {doc.get('type')!r}")
    n = doc.get("n")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"'n' must be a positive integer, got {n!r}")
    if "adjacency" in doc:
        A = as_adjacency(np.asarray(doc["adjacency"]), expect_n=n)
    elif "edges" in doc:
        A = np.zeros((n, n), dtype=np.int64)
        for edge in doc["edges"]:
            u, v = edge
            if not (isinstance(u, int) and isinstance(v, int)):
                raise ValueError(f"edge {edge!r} must be a pair of integers")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {edge!r} out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            A[u, v] = A[v, u] = 1
    else:
        raise ValueError("graph document needs 'edges' or 'adjacency'")
    if not is_connected(A):
        raise DisconnectedGraphError("graph document describes a disconnected graph")
    return A


def as_adjacency(A: np.ndarray, expect_n: int | None = None) -> np.ndarray:
    """Validate a dense 0/1 symmetric adjacency matrix with zero diagonal."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {A.shape}")
    if expect_n is not None and A.shape[0] != expect_n:
        raise ValueError(f"adjacency is {A.shape[0]} x {A.shape[0]}, 'n' says {expect_n}")
    A = A.astype(np.int64)
    if not np.array_equal(A, A.T):
        raise ValueError("adjacency matrix must be symmetric")
    if np.any(np.diag(A) != 0):
        raise ValueError("adjacency matrix must have zero diagonal")
    if not np.all((A == 0) | (A == 1)):
        raise ValueError("adjacency entries must be 0 or 1")
    return A


def is_connected(A: np.ndarray) -> bool:
    """Breadth-first reachability of every vertex from vertex 0."""
    A = np.asarray(A)
    n = A.shape[0]
    reached = np.zeros(n, dtype=bool)
    reached[0] = True
    frontier = reached.copy()
    while frontier.any():
        frontier = ((A @ frontier) > 0) & ~reached
        reached |= frontier
    return bool(reached.all())


@dataclass(frozen=True)
class GraphSpectrum:
    """Distinct eigenvalues in decreasing order with multiplicities."""

    eigenvalues: np.ndarray
    multiplicities: np.ndarray

    @property
    def d(self) -> int:
        """One less than the number of distinct eigenvalues."""
        return int(self.eigenvalues.size) - 1

    @property
    def spectral_radius(self) -> float:
        return float(self.eigenvalues[0])

    def measure(self) -> DiscreteMeasure:
        """Spectral measure: weight multiplicity/n at each eigenvalue."""
        n = int(self.multiplicities.sum())
        return DiscreteMeasure(
            points=self.eigenvalues[::-1].copy(),
            weights=self.multiplicities[::-1] / float(n),
        )


def graph_spectrum(
    A: np.ndarray, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> GraphSpectrum:
    """Cluster the adjacency eigenvalues into distinct values."""
    A = as_adjacency(A)
    w = np.linalg.eigh(A.astype(float))[0]
    eps = tol.scaled_cluster(float(np.max(np.abs(w))) if w.size else 1.0)
    breaks = np.flatnonzero(np.diff(w) > eps)
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks + 1, [w.size]))
    values = []
    counts = []
    for a, b in zip(starts, ends):
        width = float(w[b - 1] - w[a])
        if width > eps:
            raise AmbiguousClusteringError(
                f"eigenvalues near {float(np.mean(w[a:b])):.6g} chain across "
                f"{width:.3e}, wider than the gap {eps:.3e}"
            )
        values.append(float(np.mean(w[a:b])))
        counts.append(b - a)
    for j in range(len(values) - 1):
        gap = float(w[starts[j + 1]] - w[ends[j] - 1])
        if gap <= 2.0 * eps:
            raise AmbiguousClusteringError(
                f"eigenvalue clusters at {values[j]:.6g} and {values[j + 1]:.6g} "
                f"are separated by only {gap:.3e}"
            )
    return GraphSpectrum(
        eigenvalues=np.asarray(values[::-1]),
        multiplicities=np.asarray(counts[::-1], dtype=np.int64),
    )


def predistance_system(
    A: np.ndarray, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> OrthogonalSystem:
    """Predistance polynomials p_0..p_d of the spectral measure.

    Defined for connected regular graphs; anything else raises.
    """
    A = as_adjacency(A)
    require_connected_regular(A)
    spectrum = graph_spectrum(A, tol)
    return orthogonal_sequence(spectrum.measure())


def distance_matrices(A: np.ndarray) -> list[np.ndarray]:
    """Distance-i 0/1 matrices A_0 (identity) through A_D (diameter).

    Distances come from simultaneous breadth-first sweeps in exact
    integers.  Raises :class:`DisconnectedGraphError` when some pair has
    no path.
    """
    A = as_adjacency(A)
    n = A.shape[0]
    dist = np.zeros((n, n), dtype=np.int64)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    k = 0
    while True:
        frontier = ((frontier @ A) > 0) & ~reached
        if not frontier.any():
            break
        k += 1
        dist[frontier] = k
        reached |= frontier
    if not reached.all():
        raise DisconnectedGraphError("graph is disconnected")
    return [(dist == i).astype(np.int64) for i in range(k + 1)]


def vertex_degrees(A: np.ndarray) -> np.ndarray:
    return np.asarray(A).sum(axis=1)


def require_connected_regular(A: np.ndarray) -> int:
    """Return the common degree, raising when the hypotheses fail."""
    A = as_adjacency(A)
    if not is_connected(A):
        raise DisconnectedGraphError(
            "graph is disconnected; the excess bound needs a connected graph"
        )
    degrees = vertex_degrees(A)
    if np.any(degrees != degrees[0]):
        raise NotRegularError(
            f"vertex degrees range over {sorted(set(degrees.tolist()))}; "
            "the excess bound needs a regular graph"
        )
    return int(degrees[0])


@dataclass(frozen=True)
class GraphExcessReport:
    """Spectral excess analysis of one connected regular graph."""

    n: int
    valency: int
    d: int
    diameter: int
    hypothesis_met: bool
    eigenvalues: np.ndarray
    multiplicities: np.ndarray
    polynomials: tuple[Polynomial, ...] = field(repr=False)
    per_vertex: np.ndarray = field(repr=False)
    mean_excess: float
    bound: float
    gap: float
    equality: bool
    residuals: np.ndarray = field(repr=False)
    drg: bool
    certified: bool
    verdict: str

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "valency": self.valency,
            "d": self.d,
            "diameter": self.diameter,
            "hypothesis_met": self.hypothesis_met,
            "eigenvalues": self.eigenvalues.tolist(),
            "multiplicities": self.multiplicities.tolist(),
            "predistance_polynomials": [
                list(p.coef) for p in self.polynomials
            ],
            "predistance_strings": [poly_string(p) for p in self.polynomials],
            "per_vertex_excess": self.per_vertex.tolist(),
            "mean_excess": self.mean_excess,
            "bound": self.bound,
            "gap": self.gap,
            "equality": self.equality,
            "distance_residuals": self.residuals.tolist(),
            "drg": self.drg,
            "certified": self.certified,
            "verdict": self.verdict,
        }


def graph_excess_analysis(
    A: np.ndarray,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    *,
    spectrum: GraphSpectrum | None = None,
    system: OrthogonalSystem | None = None,
) -> GraphExcessReport:
    """Mean distance-d excess against the predistance bound p_d(theta_0).

    ``d`` is the spectral parameter (distinct eigenvalues minus one).
    The bound presumes the diameter reaches d; a shorter diameter yields
    the ``hypothesis-unmet`` verdict with the counts still reported.
    Distance-regularity is decided by rounding each p_i(A) to integers
    and comparing exactly against the distance matrices, and equality of
    mean and bound must agree with it for the ``equality-certified``
    verdict.

    ``spectrum`` and ``system`` may be passed in to reuse work across
    many graphs (cospectral graphs share both); they must describe this
    adjacency matrix.
    """
    A = as_adjacency(A)
    n = A.shape[0]
    valency = require_connected_regular(A)
    if spectrum is None:
        spectrum = graph_spectrum(A, tol)
    d = spectrum.d
    if system is None:
        system = orthogonal_sequence(spectrum.measure())
    radius = spectrum.spectral_radius
    if system.degree != d or abs(system.point - radius) > 1e-6 * max(
        1.0, abs(radius)
    ):
        raise InconsistentInputsError(
            "supplied orthogonal system does not match the graph spectrum"
        )
    bound = float(system.values_at_point[d])

    A_dist = distance_matrices(A)
    diameter = len(A_dist) - 1
    if diameter > d:
        raise ExcessKitError(
            f"diameter {diameter} exceeds the eigenvalue bound {d}; "
            "the spectrum and the distances are inconsistent"
        )
    hypothesis_met = diameter == d
    A_d = A_dist[d] if d <= diameter else np.zeros_like(A)
    per_vertex = A_d.sum(axis=1)
    mean_excess = float(per_vertex.mean())

    targets = matrix_value_sequence(system, A.astype(float))
    residuals = np.empty(d + 1)
    drg = True
    for i, target in enumerate(targets):
        A_i = A_dist[i] if i <= diameter else np.zeros_like(A)
        residuals[i] = float(np.linalg.norm(A_i - target))
        rounded = np.rint(target)
        if float(np.max(np.abs(target - rounded))) > tol.cert:
            drg = False
        elif not np.array_equal(rounded.astype(np.int64), A_i):
            drg = False

    gap = bound - mean_excess
    eq_scale = max(1.0, abs(bound))
    if gap < -tol.cert * eq_scale:
        raise ExcessKitError(
            f"mean excess {mean_excess:.12g} exceeds the bound {bound:.12g} "
            "by more than the tolerance; the computation is numerically "
            "inconsistent"
        )
    equality = abs(gap) <= tol.cert * eq_scale
    certified = bool(hypothesis_met and equality and drg)
    if not hypothesis_met:
        verdict = "hypothesis-unmet"
    elif certified:
        verdict = "equality-certified"
    else:
        verdict = "inequality-strict"
    return GraphExcessReport(
        n=n,
        valency=valency,
        d=d,
        diameter=diameter,
        hypothesis_met=hypothesis_met,
        eigenvalues=spectrum.eigenvalues.copy(),
        multiplicities=spectrum.multiplicities.copy(),
        polynomials=tuple(system.polys),
        per_vertex=per_vertex,
        mean_excess=mean_excess,
        bound=bound,
        gap=gap,
        equality=equality,
        residuals=residuals,
        drg=drg,
        certified=certified,
        verdict=verdict,
    )
