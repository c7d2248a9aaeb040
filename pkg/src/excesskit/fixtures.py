"""Built-in example point sets and graphs.

Every builder returns plain arrays; ``fixture_document`` wraps them in
the JSON document shapes the loaders accept, which is also what the
``fixtures`` CLI subcommand emits.
"""

from __future__ import annotations

from itertools import combinations
from typing import Any, Callable, Iterator

import numpy as np
from scipy.linalg import helmert


def simplex(m: int) -> np.ndarray:
    """Regular simplex: m+1 points in R^m, pairwise inner product -1."""
    if m < 1:
        raise ValueError("simplex needs dimension >= 1")
    k = m + 1
    centered = np.sqrt(float(k)) * (np.eye(k) - np.full((k, k), 1.0 / k))
    return centered @ helmert(k).T


def cross_polytope(m: int) -> np.ndarray:
    """The 2m points +-sqrt(m) e_i in R^m."""
    if m < 1:
        raise ValueError("cross-polytope needs dimension >= 1")
    basis = np.sqrt(float(m)) * np.eye(m)
    return np.vstack([basis, -basis])


def octahedron() -> np.ndarray:
    return cross_polytope(3)


def cube() -> np.ndarray:
    """The 8 sign vectors of R^3 (squared norm 3 as required)."""
    corners = np.array(
        [[sx, sy, sz] for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
    )
    return corners.astype(float)


def icosahedron() -> np.ndarray:
    """The 12 icosahedron vertices rescaled to squared norm 3."""
    phi = (1.0 + np.sqrt(5.0)) / 2.0
    rows = []
    for a in (1.0, -1.0):
        for b in (phi, -phi):
            rows.extend([[0.0, a, b], [a, b, 0.0], [b, 0.0, a]])
    V = np.asarray(rows)
    return V * np.sqrt(3.0 / (1.0 + phi * phi))


def petersen() -> np.ndarray:
    """Petersen graph as the disjointness graph of 2-subsets of a 5-set."""
    pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    n = len(pairs)
    A = np.zeros((n, n), dtype=np.int64)
    for x, p in enumerate(pairs):
        for y, q in enumerate(pairs):
            if not set(p) & set(q):
                A[x, y] = 1
    return A


def cycle(n: int) -> np.ndarray:
    """Cycle graph C_n."""
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    A = np.zeros((n, n), dtype=np.int64)
    idx = np.arange(n)
    A[idx, (idx + 1) % n] = 1
    A[(idx + 1) % n, idx] = 1
    return A


def triangular_prism() -> np.ndarray:
    """The prism over a triangle: two 3-cycles joined by a perfect
    matching.  Cubic with diameter 2 but four distinct eigenvalues, the
    smallest example where the distance partition stops short of the
    spectrum."""
    A = np.zeros((6, 6), dtype=np.int64)
    for t in (0, 3):
        for i in range(3):
            A[t + i, t + (i + 1) % 3] = A[t + (i + 1) % 3, t + i] = 1
    for i in range(3):
        A[i, i + 3] = A[i + 3, i] = 1
    return A


def connected_cubic_graphs(n: int) -> Iterator[np.ndarray]:
    """All connected 3-regular graphs on vertices 0..n-1, one labeling
    per choice of the neighborhood of vertex 0.

    Enumeration completes the lowest unfinished vertex first, choosing
    its remaining neighbors among the later vertices; the neighborhood
    of vertex 0 is pinned to {1, 2, 3}, which cuts the labeled count by
    the constant factor binomial(n-1, 3) without losing any isomorphism
    class.  Yields are fresh adjacency matrices.
    """
    if n % 2 or n < 4:
        return
    adj: list[list[int]] = [[] for _ in range(n)]

    def fill(u: int) -> Iterator[np.ndarray]:
        while u < n and len(adj[u]) == 3:
            u += 1
        if u == n:
            # Degrees all equal 3; keep the graph if it is connected.
            seen = {0}
            stack = [0]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == n:
                A = np.zeros((n, n), dtype=np.int64)
                for x, nbrs in enumerate(adj):
                    A[x, nbrs] = 1
                yield A
            return
        need = 3 - len(adj[u])
        candidates = [v for v in range(u + 1, n) if len(adj[v]) < 3]
        for chosen in combinations(candidates, need):
            for v in chosen:
                adj[u].append(v)
                adj[v].append(u)
            yield from fill(u + 1)
            for v in chosen:
                adj[u].pop()
                adj[v].pop()

    for v in (1, 2, 3):
        adj[0].append(v)
        adj[v].append(0)
    yield from fill(1)
    for v in (1, 2, 3):
        adj[0].pop()
        adj[v].pop()


def pointset_document(X: np.ndarray) -> dict[str, Any]:
    X = np.asarray(X, dtype=float)
    return {
        "type": "pointset",
        "dimension": int(X.shape[1]),
        "points": X.tolist(),
        "normalize": False,
    }


def graph_document(A: np.ndarray) -> dict[str, Any]:
    A = np.asarray(A, dtype=np.int64)
    edges = [[int(u), int(v)] for u, v in zip(*np.nonzero(np.triu(A)))]
    return {"type": "graph", "n": int(A.shape[0]), "edges": edges}


_BUILDERS: dict[str, tuple[str, Callable[[], np.ndarray]]] = {
    "cube": ("pointset", cube),
    "icosahedron": ("pointset", icosahedron),
    "petersen": ("graph", petersen),
    "c6": ("graph", lambda: cycle(6)),
}
for _m in range(2, 7):
    _BUILDERS[f"simplex-{_m}"] = ("pointset", (lambda mm: lambda: simplex(mm))(_m))
    _BUILDERS[f"cross-{_m}"] = ("pointset", (lambda mm: lambda: cross_polytope(mm))(_m))


def fixture_names() -> list[str]:
    return sorted(_BUILDERS)


def fixture_kind(name: str) -> str:
    if name not in _BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; see fixture_names()")
    return _BUILDERS[name][0]


def fixture_array(name: str) -> np.ndarray:
    if name not in _BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; see fixture_names()")
    return _BUILDERS[name][1]()


def fixture_document(name: str) -> dict[str, Any]:
    kind = fixture_kind(name)
    arr = fixture_array(name)
    return pointset_document(arr) if kind == "pointset" else graph_document(arr)
