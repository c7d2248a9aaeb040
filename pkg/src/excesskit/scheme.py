"""Symmetric association schemes: verification, eigenstructure, orderings.

A scheme is given as an n x n class matrix R with R[x, y] the index of
the relation containing the pair; class 0 must be the diagonal.  The
axioms are verified in exact integer arithmetic:

* ``identity``  class 0 is exactly the diagonal,
* ``symmetry``  R equals its transpose,
* ``closure``   every product A_i A_j is constant on every class, the
  constants being the intersection numbers p^k_ij.

On the spectral side the Bose-Mesner algebra splits into d+1 common
eigenspaces, giving the primitive idempotents E_j, the eigenmatrix P
(``A_i = sum_j P[j, i] E_j``) and its dual Q = n P^{-1} whose column j
lists the entries of n E_j class by class.  A Q-polynomial ordering
with respect to one idempotent exists when interpolating each Q column
against that idempotent's column realizes every degree 0..d exactly
once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import numpy as np
from numpy.polynomial import Polynomial

from .exceptions import (
    EigenspaceAmbiguityError,
    NotAPartitionError,
    RankDeficientError,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig
from .pointset import InnerProductProfile


def load_scheme(source: str | Path | Mapping[str, Any]) -> np.ndarray:
    """Load a relation class matrix from JSON (file, text, or mapping).

    The document must carry ``"type": "scheme"``, the point count
    ``"n"``, and ``"relations"``: the n x n integer class matrix.
    """
    if isinstance(source, Mapping):
        doc = source
    else:
        text = Path(source).read_text() if Path(str(source)).exists() else str(source)
        doc = json.loads(text)
    if not isinstance(doc, Mapping):
        raise ValueError("scheme document must be a JSON object")
    if doc.get("type") != "scheme":
        raise ValueError(f"expected document type 'scheme', got {doc.get('type')!r}")
    if "n" not in doc or "relations" not in doc:
        raise ValueError("scheme document needs 'n' and 'relations'")
    R = np.asarray(doc["relations"])
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"'n' must be a positive integer, got {n!r}")
    if R.shape != (n, n):
        raise NotAPartitionError(
            f"relations matrix has shape {R.shape}, expected ({n}, {n})"
        )
    return as_class_matrix(R)


def as_class_matrix(R: np.ndarray) -> np.ndarray:
    """Validate and coerce a relation class matrix.

    Structural requirements only (shape, integrality, contiguous class
    indices with class 0 present); the scheme axioms are a separate,
    refutable question for :func:`verify_scheme`.
    """
    R = np.asarray(R)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise NotAPartitionError(f"class matrix must be square, got shape {R.shape}")
    if not np.issubdtype(R.dtype, np.integer):
        Rf = np.asarray(R, dtype=float)
        Ri = np.rint(Rf).astype(np.int64)
        if np.max(np.abs(Rf - Ri)) > 0:
            raise NotAPartitionError("class matrix entries must be integers")
        R = Ri
    R = R.astype(np.int64)
    lo, hi = int(R.min()), int(R.max())
    if lo < 0:
        raise NotAPartitionError(f"negative class index {lo}")
    present = np.unique(R)
    if present.size != hi + 1:
        missing = sorted(set(range(hi + 1)) - set(present.tolist()))
        raise NotAPartitionError(f"class indices skip {missing}")
    return R


def relation_matrices(R: np.ndarray) -> list[np.ndarray]:
    """0/1 matrices of each class, index 0 first."""
    return [(R == k).astype(np.int64) for k in range(int(R.max()) + 1)]


def relations_from_profile(profile: InnerProductProfile) -> np.ndarray:
    """Class matrix of a point set's inner-product relations.

    The diagonal becomes class 0 and the off-diagonal clusters are
    numbered by decreasing inner product, so class 1 holds the closest
    pairs.
    """
    s = profile.s
    labels = profile.labels
    R = np.where(labels == s, 0, s - labels)
    return R.astype(np.int64)


@dataclass(frozen=True)
class SchemeReport:
    """Outcome of the axiom check, with a witness when refuted."""

    n: int
    d: int
    axioms: dict[str, bool]
    passed: bool
    verdict: str
    witness: str | None
    valencies: np.ndarray | None
    intersection_numbers: np.ndarray | None = field(repr=False, default=None)

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "axioms": dict(self.axioms),
            "passed": self.passed,
            "verdict": self.verdict,
            "witness": self.witness,
            "valencies": None
            if self.valencies is None
            else self.valencies.tolist(),
        }


def verify_scheme(R: np.ndarray) -> SchemeReport:
    """Check the symmetric association scheme axioms exactly.

    Integer arithmetic throughout; the first closure failure is
    reported as a witness pair of positions whose product entries
    disagree inside one class.
    """
    R = as_class_matrix(R)
    n = R.shape[0]
    d = int(R.max())
    A = relation_matrices(R)
    witness: str | None = None

    diag_is_zero = bool(np.all(np.diag(R) == 0))
    zero_is_diag = bool(np.all(A[0] == np.eye(n, dtype=np.int64)))
    identity_ok = diag_is_zero and zero_is_diag
    if not identity_ok:
        witness = "class 0 differs from the diagonal"

    symmetry_ok = bool(np.array_equal(R, R.T))
    if witness is None and not symmetry_ok:
        x, y = np.argwhere(R != R.T)[0]
        witness = (
            f"pair ({x}, {y}) lies in class {R[x, y]} but "
            f"({y}, {x}) in class {R[y, x]}"
        )

    closure_ok = True
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    masks = [R == k for k in range(d + 1)]
    for i in range(d + 1):
        for j in range(i, d + 1):
            M = A[i] @ A[j]
            for k in range(d + 1):
                vals = M[masks[k]]
                if vals.size == 0:
                    continue
                if not np.all(vals == vals[0]):
                    closure_ok = False
                    if witness is None:
                        pos = np.argwhere(masks[k])
                        hit = np.flatnonzero(vals != vals[0])[0]
                        x1, y1 = pos[0]
                        x2, y2 = pos[hit]
                        witness = (
                            f"A_{i} A_{j} takes values {vals[0]} at "
                            f"({x1}, {y1}) and {vals[hit]} at ({x2}, {y2}), "
                            f"both in class {k}"
                        )
                    break
                p[k, i, j] = p[k, j, i] = int(vals[0])
            if not closure_ok:
                break
        if not closure_ok:
            break

    axioms = {
        "identity": identity_ok,
        "symmetry": symmetry_ok,
        "closure": closure_ok,
    }
    passed = all(axioms.values())
    valencies = None
    if passed:
        valencies = np.array([p[0, i, i] for i in range(d + 1)], dtype=np.int64)
    return SchemeReport(
        n=n,
        d=d,
        axioms=axioms,
        passed=passed,
        verdict="scheme-verified" if passed else "scheme-refuted",
        witness=witness,
        valencies=valencies,
        intersection_numbers=p if passed else None,
    )


def _cluster_1d(values: np.ndarray, eps: float) -> list[np.ndarray]:
    """Indices of single-linkage clusters of ``values`` with gap ``eps``."""
    order = np.argsort(values)
    sorted_vals = values[order]
    breaks = np.flatnonzero(np.diff(sorted_vals) > eps)
    pieces = np.split(order, breaks + 1)
    for a, b in zip(pieces[:-1], pieces[1:]):
        gap = float(values[b].min() - values[a].max())
        if gap <= 2.0 * eps:
            raise EigenspaceAmbiguityError(
                f"eigenvalue clusters separated by only {gap:.3e} "
                f"(gap tolerance {eps:.3e})"
            )
    return pieces


@dataclass(frozen=True)
class SchemeEigenstructure:
    """Common eigenspaces of the Bose-Mesner algebra.

    Idempotents are ordered with the all-ones space first, then by
    decreasing eigenvalue on the class-1 relation.  ``P[j, i]`` is the
    eigenvalue of A_i on eigenspace j, and ``Q = n P^{-1}`` lists the
    class-by-class entries of each n E_j in its columns.
    """

    n: int
    d: int
    relations: np.ndarray = field(repr=False)
    bases: tuple[np.ndarray, ...] = field(repr=False)
    idempotents: tuple[np.ndarray, ...] = field(repr=False)
    multiplicities: tuple[int, ...]
    P: np.ndarray
    Q: np.ndarray


def bose_mesner_eigenstructure(
    R: np.ndarray,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    seed: int = 0,
) -> SchemeEigenstructure:
    """Diagonalize the Bose-Mesner algebra of a verified scheme.

    A seeded random combination of the relation matrices seeds the
    split; each relation then refines every block until all of them act
    as scalars.  Exactly d+1 maximal common eigenspaces must emerge.
    """
    report = verify_scheme(R)
    if not report.passed:
        raise NotAPartitionError(
            f"relations do not form an association scheme: {report.witness}"
        )
    R = as_class_matrix(R)
    # An unlucky random combination can put two eigenvalue clusters too
    # close together; that is a property of the seed, not the data, so a
    # couple of fresh draws are allowed before giving up.
    last_error: EigenspaceAmbiguityError | None = None
    for attempt in range(3):
        try:
            return _eigenstructure_attempt(R, report.d, tol, seed + attempt)
        except EigenspaceAmbiguityError as exc:
            last_error = exc
    raise last_error


def _eigenstructure_attempt(
    R: np.ndarray, d: int, tol: ToleranceConfig, seed: int
) -> SchemeEigenstructure:
    n = R.shape[0]
    A = [M.astype(float) for M in relation_matrices(R)]
    eps = tol.scaled_cluster(float(n))

    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(d + 1)
    M = sum(c * Ai for c, Ai in zip(coeffs, A))
    M = (M + M.T) / 2.0
    w, U = np.linalg.eigh(M)
    spaces = [U[:, idx] for idx in _cluster_1d(w, eps * float(np.max(np.abs(coeffs))))]

    for _ in range(d + 2):
        changed = False
        refined: list[np.ndarray] = []
        for V in spaces:
            if V.shape[1] == 1:
                refined.append(V)
                continue
            split_here = False
            for Ai in A[1:]:
                B = V.T @ Ai @ V
                B = (B + B.T) / 2.0
                wb, Wb = np.linalg.eigh(B)
                clusters = _cluster_1d(wb, eps)
                if len(clusters) > 1:
                    refined.extend(V @ Wb[:, idx] for idx in clusters)
                    split_here = changed = True
                    break
            if not split_here:
                refined.append(V)
        spaces = refined
        if not changed:
            break
    if len(spaces) != d + 1:
        raise EigenspaceAmbiguityError(
            f"found {len(spaces)} common eigenspaces, expected {d + 1}"
        )

    # Scalar action of every relation on every block, and the eigenmatrix.
    P_rows = np.empty((d + 1, d + 1))
    for j, V in enumerate(spaces):
        for i, Ai in enumerate(A):
            B = V.T @ Ai @ V
            lam = float(np.trace(B)) / V.shape[1]
            if float(np.linalg.norm(Ai @ V - lam * V)) > tol.cert * n:
                raise EigenspaceAmbiguityError(
                    f"relation {i} is not scalar on eigenspace {j}"
                )
            P_rows[j, i] = lam

    ones = np.ones(n) / np.sqrt(n)
    overlaps = [float(np.linalg.norm(V.T @ ones)) for V in spaces]
    j0 = int(np.argmax(overlaps))
    if overlaps[j0] < 1.0 - 1e-6:
        raise EigenspaceAmbiguityError(
            "no eigenspace contains the all-ones vector"
        )
    rest = [j for j in range(len(spaces)) if j != j0]
    key = 1 if d >= 1 else 0
    rest.sort(key=lambda j: -P_rows[j, key])
    order = [j0] + rest

    bases = tuple(spaces[j] for j in order)
    P = P_rows[order]
    idempotents = tuple(V @ V.T for V in bases)
    multiplicities = tuple(V.shape[1] for V in bases)
    Q = n * np.linalg.inv(P)
    return SchemeEigenstructure(
        n=n,
        d=d,
        relations=R,
        bases=bases,
        idempotents=idempotents,
        multiplicities=multiplicities,
        P=P,
        Q=Q,
    )


def krein_parameters(eig: SchemeEigenstructure) -> np.ndarray:
    """Krein parameters q^k_ij = n tr((E_i o E_j) E_k) / rank E_k.

    These are the structure constants of the idempotents under the
    entrywise product; a valid scheme has them all nonnegative up to
    roundoff.
    """
    d = eig.d
    q = np.empty((d + 1, d + 1, d + 1))
    for i in range(d + 1):
        for j in range(i, d + 1):
            H = eig.idempotents[i] * eig.idempotents[j]
            for k in range(d + 1):
                val = eig.n * float(np.sum(H * eig.idempotents[k]))
                q[k, i, j] = q[k, j, i] = val / eig.multiplicities[k]
    return q


@dataclass(frozen=True)
class QPolyOrderingResult:
    """Interpolation degrees of the idempotents against one of them."""

    index: int
    exists: bool
    degrees: tuple[int, ...] | None
    order: tuple[int, ...] | None
    polynomials: tuple[Polynomial, ...] | None
    reason: str | None

    def as_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "exists": self.exists,
            "degrees": None if self.degrees is None else list(self.degrees),
            "order": None if self.order is None else list(self.order),
            "reason": self.reason,
        }


def qpoly_ordering(
    eig: SchemeEigenstructure,
    index: int,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> QPolyOrderingResult:
    """Find the Q-polynomial ordering generated by idempotent ``index``.

    Column ``index`` of Q holds the d+1 class values of the generating
    idempotent.  Each other column is interpolated against it; the
    ordering exists exactly when the interpolation degrees are a
    permutation of 0..d.  Non-existence is an ordinary result, not an
    error; in particular the all-ones idempotent 0 generates nothing
    beyond multiples of J whenever d >= 1.
    """
    d = eig.d
    if not 0 <= index <= d:
        raise ValueError(f"generating idempotent index must be in 0..{d}")
    if index == 0 and d >= 1:
        return QPolyOrderingResult(
            index=index,
            exists=False,
            degrees=None,
            order=None,
            polynomials=None,
            reason=(
                "idempotent 0 is constant on every class; entrywise "
                "polynomials in it are multiples of the all-ones matrix"
            ),
        )
    v = eig.Q[:, index].astype(float)
    scale = float(np.max(np.abs(v))) or 1.0
    spread = np.abs(v[:, None] - v[None, :])
    np.fill_diagonal(spread, np.inf)
    if float(spread.min()) <= tol.cluster * scale * 10.0:
        return QPolyOrderingResult(
            index=index,
            exists=False,
            degrees=None,
            order=None,
            polynomials=None,
            reason=(
                f"idempotent {index} takes equal values on two classes; "
                "it cannot generate the algebra"
            ),
        )

    V = np.vander(v, d + 1, increasing=True)
    degrees: list[int] = []
    polys: list[Polynomial] = []
    for j in range(d + 1):
        coef = np.linalg.solve(V, eig.Q[:, j])
        cutoff = tol.cert * max(1.0, float(np.max(np.abs(coef))))
        nonzero = np.flatnonzero(np.abs(coef) > cutoff)
        deg = int(nonzero[-1]) if nonzero.size else 0
        degrees.append(deg)
        polys.append(Polynomial(coef[: deg + 1]))

    if sorted(degrees) != list(range(d + 1)):
        return QPolyOrderingResult(
            index=index,
            exists=False,
            degrees=tuple(degrees),
            order=None,
            polynomials=None,
            reason=f"interpolation degrees {degrees} do not cover 0..{d}",
        )
    order = tuple(int(j) for j in np.argsort(degrees))
    return QPolyOrderingResult(
        index=index,
        exists=True,
        degrees=tuple(degrees),
        order=order,
        polynomials=tuple(polys),
        reason=None,
    )


def spherical_embedding(eig: SchemeEigenstructure, index: int) -> np.ndarray:
    """Embed the scheme on the sphere through idempotent ``index``.

    The rows of sqrt(n) times an orthonormal basis of the eigenspace
    give n points of squared norm equal to the multiplicity; pairs in
    one class land on one inner product.  Index 0 is refused: its rank
    is 1 and every point collapses to the same spot.
    """
    if index == 0:
        raise RankDeficientError(
            "idempotent 0 projects onto constants; its embedding sends "
            "every point to the same place"
        )
    if not 0 <= index <= eig.d:
        raise ValueError(f"idempotent index {index} out of range 0..{eig.d}")
    V = eig.bases[index]
    return np.sqrt(eig.n) * V
