"""Shared fixtures and independent oracle implementations.

The oracles here deliberately re-derive quantities through different
algorithms than the package (dense moment systems, per-pair Python
loops, queue-based BFS) so that agreement is evidence, not tautology.
"""

from __future__ import annotations

from collections import deque

import numpy as np
import pytest

from excesskit import fixture_array, fixture_names


def random_rotation(rng: np.random.Generator, m: int) -> np.ndarray:
    """Haar-ish orthogonal matrix via QR of a gaussian matrix."""
    Q, Rm = np.linalg.qr(rng.standard_normal((m, m)))
    return Q * np.sign(np.diag(Rm))


def oracle_profile(X: np.ndarray, decimals: int = 9):
    """Distinct off-diagonal inner products by rounding, with ordered
    pair counts.  Returns (values ascending, counts)."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    products = []
    for x in range(n):
        for y in range(n):
            if x != y:
                products.append(round(float(X[x] @ X[y]), decimals))
    values = sorted(set(products))
    counts = [products.count(v) for v in values]
    return np.asarray(values), np.asarray(counts)


def oracle_monic_orthogonal(points, weights, degree: int):
    """Monic orthogonal polynomials from the Hankel moment system.

    Solves  sum_j c_j mu_{i+j} = -mu_{i+k}  for the lower coefficients
    of the degree-k monic polynomial, a completely different route than
    Gram-Schmidt on polynomial objects.  Returns coefficient arrays in
    increasing degree order.
    """
    points = np.asarray(points, dtype=float)
    weights = np.asarray(weights, dtype=float)
    moments = [float(np.sum(weights * points**k)) for k in range(2 * degree + 1)]
    out = [np.array([1.0])]
    for k in range(1, degree + 1):
        H = np.array([[moments[i + j] for j in range(k)] for i in range(k)])
        rhs = -np.array([moments[i + k] for i in range(k)])
        c = np.linalg.solve(H, rhs)
        out.append(np.append(c, 1.0))
    return out


def oracle_bfs_distances(A: np.ndarray) -> np.ndarray:
    """All-pairs distances by queue-based BFS; -1 for unreachable."""
    A = np.asarray(A)
    n = A.shape[0]
    dist = -np.ones((n, n), dtype=np.int64)
    neighbors = [np.flatnonzero(A[v]) for v in range(n)]
    for src in range(n):
        dist[src, src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in neighbors[u]:
                if dist[src, w] < 0:
                    dist[src, w] = dist[src, u] + 1
                    queue.append(w)
    return dist


def oracle_distance_regular(A: np.ndarray) -> bool:
    """Exact combinatorial distance-regularity by integer counting.

    For every ordered distance pair (j, i) the number of neighbors of x
    at distance i from y must be the same for all pairs (x, y) at
    distance j.  Shares no arithmetic with the spectral certificate.
    """
    A = np.asarray(A, dtype=np.int64)
    dist = oracle_bfs_distances(A)
    if dist.min() < 0:
        return False
    D = int(dist.max())
    counts = [A @ (dist == i).astype(np.int64) for i in range(D + 1)]
    for j in range(D + 1):
        mask = dist == j
        for Ci in counts:
            vals = Ci[mask]
            if vals.size and not np.all(vals == vals[0]):
                return False
    return True


@pytest.fixture(scope="session")
def pointset_fixtures() -> dict[str, np.ndarray]:
    return {
        name: fixture_array(name)
        for name in fixture_names()
        if not name.startswith(("petersen", "c6"))
    }


@pytest.fixture(scope="session")
def graph_fixtures() -> dict[str, np.ndarray]:
    return {name: fixture_array(name) for name in ("petersen", "c6")}


# Populated by tests/test_acceptance.py; one entry per acceptance criterion.
ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        status, summary = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {status} - {summary}")
