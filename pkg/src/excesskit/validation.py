"""Input validation helpers shared by the functional core and the estimators."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .exceptions import NonRectangularError, ZeroRowError


def as_point_matrix(points: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    """Coerce ``points`` to a float (n, m) matrix with finite entries.

    Raises
    ------
    NonRectangularError
        If the rows have unequal lengths.
    ValueError
        If the result is not 2-d, is empty, or contains NaN/inf.
    """
    if isinstance(points, np.ndarray):
        arr = points.astype(float, copy=True)
    else:
        rows = [np.asarray(row, dtype=float) for row in points]
        if not rows:
            raise ValueError("point set is empty")
        lengths = {row.shape for row in rows}
        if len(lengths) != 1 or rows[0].ndim != 1:
            raise NonRectangularError(
                f"rows have inconsistent shapes: {sorted(lengths)}"
            )
        arr = np.vstack(rows)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d coordinate table, got ndim={arr.ndim}")
    n, m = arr.shape
    if n == 0 or m == 0:
        raise ValueError(f"point matrix has degenerate shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("point matrix contains non-finite entries")
    return arr


def rescale_rows(X: np.ndarray, target_sq: float) -> np.ndarray:
    """Rescale each row of ``X`` to squared norm ``target_sq``.

    Raises ``ZeroRowError`` for rows of norm zero, which have no direction
    to keep.
    """
    norms = np.linalg.norm(X, axis=1)
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise ZeroRowError(f"cannot rescale zero row(s) at index {zero.tolist()}")
    return X * (np.sqrt(target_sq) / norms)[:, None]


def check_square(M: np.ndarray, name: str = "matrix") -> int:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    return M.shape[0]


def check_symmetric(M: np.ndarray, tol: float, name: str = "matrix") -> None:
    dev = float(np.max(np.abs(M - M.T))) if M.size else 0.0
    if dev > tol:
        raise ValueError(f"{name} is not symmetric (max deviation {dev:.3e})")
