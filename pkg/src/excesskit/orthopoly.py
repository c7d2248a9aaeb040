"""Orthogonal polynomials of a finite discrete measure.

Both halves of the library run on the same machinery:

* for a point set, the measure puts weight (pair count)/n^2 on each
  distinct inner product, and the normalization point is the squared
  radius;
* for a graph, the measure puts weight (multiplicity)/n on each distinct
  eigenvalue, and the normalization point is the spectral radius.

``orthogonal_sequence`` builds the degree-k orthogonal polynomials p_k
scaled so that ||p_k||^2 = p_k(point).  Their sum interpolates the
indicator of the normalization point against the measure (the classical
Hoffman polynomial on the graph side), which is what makes them the
right yardstick for excess bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .exceptions import DegenerateMeasureError


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely supported measure: ``points`` increasing, ``weights`` > 0."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if points.ndim != 1 or weights.ndim != 1 or points.size != weights.size:
            raise DegenerateMeasureError(
                f"support and weights must be 1-d of equal length, got "
                f"{points.shape} and {weights.shape}"
            )
        if points.size == 0:
            raise DegenerateMeasureError("measure has empty support")
        if np.any(np.diff(points) <= 0):
            raise DegenerateMeasureError("support points must be strictly increasing")
        if np.any(weights <= 0):
            raise DegenerateMeasureError("weights must be positive")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return int(self.points.size)

    @property
    def mass(self) -> float:
        return float(self.weights.sum())

    @property
    def top(self) -> float:
        """Largest support point, the default normalization point."""
        return float(self.points[-1])

    def inner(self, p: Polynomial, q: Polynomial) -> float:
        """Weighted inner product  sum_j w_j p(x_j) q(x_j)."""
        return float(np.sum(self.weights * p(self.points) * q(self.points)))

    def norm_sq(self, p: Polynomial) -> float:
        values = p(self.points)
        return float(np.sum(self.weights * values * values))


def peak_interpolator(measure: DiscreteMeasure) -> Polynomial:
    """Polynomial vanishing on all support points except the largest.

    Scaled so the value at the top point is 1/(weight at top); as a
    function on the support it is the indicator of the top point divided
    by its weight.  For a graph's spectral measure this is the Hoffman
    polynomial.
    """
    top = measure.top
    p = Polynomial([1.0])
    for x in measure.points[:-1]:
        p = p * Polynomial([-x, 1.0]) / (top - x)
    return p / measure.weights[-1]


@dataclass(frozen=True)
class OrthogonalSystem:
    """Orthogonal polynomials p_0..p_s with ||p_k||^2 = p_k(point).

    ``monic`` holds the unscaled monic sequence, ``polys`` the rescaled
    one.  ``a``, ``b``, ``c`` are the three-term recurrence coefficients
    of the rescaled sequence,

        t * p_i = b[i-1] * p_{i-1} + a[i] * p_i + c[i+1] * p_{i+1},

    stored as a[0..s], b[0..s-1] and c[1..s] (c is indexed from 1, so
    ``c[k]`` lives at position k-1).  The top equation i = s is taken as
    an identity of functions on the support.
    """

    measure: DiscreteMeasure
    point: float
    monic: tuple[Polynomial, ...]
    polys: tuple[Polynomial, ...]
    values_at_point: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    @property
    def degree(self) -> int:
        """Largest polynomial degree, one less than the support size."""
        return len(self.polys) - 1

    def sum_polynomial(self) -> Polynomial:
        """Sum of the rescaled sequence; equals ``peak_interpolator``."""
        total = Polynomial([0.0])
        for p in self.polys:
            total = total + p
        return total


def orthogonal_sequence(
    measure: DiscreteMeasure, point: float | None = None
) -> OrthogonalSystem:
    """Build the orthogonal system of ``measure`` normalized at ``point``.

    ``point`` defaults to the largest support point and must not be a
    root of any of the monic orthogonal polynomials.  The sequence stops
    at degree s = (support size) - 1, the largest degree the measure can
    tell apart.
    """
    if point is None:
        point = measure.top
    point = float(point)
    s = measure.size - 1
    t = Polynomial([0.0, 1.0])

    monic: list[Polynomial] = [Polynomial([1.0])]
    norms_sq: list[float] = [measure.mass]
    for k in range(1, s + 1):
        w = t * monic[k - 1]
        # Two Gram-Schmidt passes; the second mops up cancellation noise.
        for _ in range(2):
            for j in range(k):
                coeff = measure.inner(w, monic[j]) / norms_sq[j]
                w = w - coeff * monic[j]
        w = Polynomial(np.append(w.coef[:k], 1.0))  # pin the monic leading term
        nsq = measure.norm_sq(w)
        if nsq <= 0.0:
            raise DegenerateMeasureError(
                f"monic polynomial of degree {k} has nonpositive norm {nsq:.3e}"
            )
        monic.append(w)
        norms_sq.append(nsq)

    polys: list[Polynomial] = []
    values: list[float] = []
    for k, (e, nsq) in enumerate(zip(monic, norms_sq)):
        at_point = float(e(point))
        if at_point == 0.0 or abs(at_point) ** 2 / nsq < 1e-300:
            raise DegenerateMeasureError(
                f"normalization point {point} is a root of the degree-{k} "
                "orthogonal polynomial"
            )
        q = (at_point / nsq) * e
        polys.append(q)
        values.append(at_point * at_point / nsq)  # q_k(point) > 0 by construction

    a = np.empty(s + 1)
    b = np.empty(s)
    c = np.empty(s)
    for i in range(s + 1):
        tp = t * polys[i]
        a[i] = measure.inner(tp, polys[i]) / values[i]
        if i >= 1:
            b[i - 1] = measure.inner(tp, polys[i - 1]) / values[i - 1]
        if i + 1 <= s:
            c[i] = measure.inner(tp, polys[i + 1]) / values[i + 1]

    return OrthogonalSystem(
        measure=measure,
        point=point,
        monic=tuple(monic),
        polys=tuple(polys),
        values_at_point=np.asarray(values),
        a=a,
        b=b,
        c=c,
    )


def matrix_eval(p: Polynomial, M: np.ndarray) -> np.ndarray:
    """Evaluate ``p`` at a square matrix in the matrix ring (Horner).

    Distinct from ``p(M)``, which numpy applies entrywise.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    coef = p.coef
    result = np.eye(n) * coef[-1]
    for ck in coef[-2::-1]:
        result = result @ M + ck * np.eye(n)
    return result


def entrywise_poly(M: np.ndarray, p: Polynomial) -> np.ndarray:
    """Evaluate ``p`` entrywise on ``M`` (numpy's native array semantics)."""
    return p(np.asarray(M, dtype=float))


def matrix_value_sequence(
    system: OrthogonalSystem, M: np.ndarray
) -> list[np.ndarray]:
    """All matrix-ring values [p_0(M), ..., p_s(M)] via the recurrence.

    Needs one matrix product per degree instead of Horner's one per
    coefficient, which matters when scanning many graphs; agrees with
    ``matrix_eval`` applied term by term.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    out = [np.eye(n) * float(system.polys[0].coef[0])]
    if system.degree == 0:
        return out
    lin = system.polys[1].coef
    out.append(np.eye(n) * lin[0] + M * lin[1])
    for i in range(1, system.degree):
        cc = system.c[i]  # c_{i+1}, positive for these measures
        if cc == 0.0:
            raise DegenerateMeasureError(
                f"recurrence coefficient c_{i + 1} vanishes"
            )
        nxt = M @ out[i] - system.a[i] * out[i] - system.b[i - 1] * out[i - 1]
        out.append(nxt / cc)
    return out


def poly_string(p: Polynomial, var: str = "t") -> str:
    """Readable ASCII form like ``1.5 - 2*t + t^3`` (increasing degree).

    Display only: coefficients below 1e-12 of the largest one are
    rounding noise and are suppressed rather than printed.
    """
    coef = np.asarray(p.coef, dtype=float)
    scale = float(np.max(np.abs(coef))) if coef.size else 0.0
    parts: list[str] = []
    for k, ck in enumerate(coef):
        if coef.size > 1 and abs(ck) <= 1e-12 * scale:
            continue
        mag = f"{abs(ck):g}"
        if k == 0:
            term = mag
        else:
            power = var if k == 1 else f"{var}^{k}"
            term = power if mag == "1" else f"{mag}*{power}"
        if not parts:
            parts.append(term if ck >= 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if ck >= 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def evaluate_table(polys: Sequence[Polynomial], xs: np.ndarray) -> np.ndarray:
    """Values table V[k, j] = polys[k](xs[j])."""
    xs = np.asarray(xs, dtype=float)
    return np.vstack([p(xs) for p in polys])
