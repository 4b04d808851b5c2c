"""Continuous-time quantum walks on rings, lines and glued binary trees."""
from dataclasses import dataclass
from typing import Optional

import numpy as np

KINDS = ("ring", "line", "glued_tree")


@dataclass(frozen=True)
class GraphSpec:
    """Graph plus jump rate.

    ``size`` is the number of vertices for ``ring`` and ``line`` and the
    tree depth ``n`` for ``glued_tree`` (which then has 2n+1 columns).
    """

    kind: str
    size: int
    gamma: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown graph kind {self.kind!r}; expected one of {KINDS}")
        minimum = {"ring": 3, "line": 1, "glued_tree": 1}[self.kind]
        if self.size < minimum:
            raise ValueError(f"{self.kind} needs size >= {minimum}, got {self.size}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")


@dataclass(frozen=True)
class CtqwHamiltonian:
    matrix: np.ndarray
    graph: GraphSpec
    columns: Optional[np.ndarray] = None  # glued trees: column index of each vertex

    @property
    def n_vertices(self):
        return self.matrix.shape[0]


def ring_adjacency(n):
    a = np.zeros((n, n))
    idx = np.arange(n)
    a[idx, (idx + 1) % n] = 1
    return a + a.T


def line_adjacency(n):
    a = np.diag(np.ones(n - 1), 1)
    return a + a.T


def glued_tree_adjacency(depth):
    """Adjacency matrix and column labels of G_n.

    Two binary trees of depth n share their 2^n leaves, giving
    2^(n+1) + 2^n - 2 vertices in 2n+1 columns. Vertex 0 is the left root
    and the last vertex is the right root.
    """
    n = depth
    n_left = 2 ** (n + 1) - 1
    n_internal = 2 ** n - 1
    total = n_left + n_internal
    # right-tree heap index h -> vertex id; leaves are shared with the left tree
    right = np.concatenate([np.arange(total - 1, n_left - 1, -1),
                            np.arange(n_internal, n_left)])
    a = np.zeros((total, total))
    cols = np.empty(total, dtype=int)
    for h in range(n_left):
        depth_h = int(np.log2(h + 1))
        cols[h] = depth_h
        cols[right[h]] = 2 * n - depth_h
    for h in range(n_internal):
        for child in (2 * h + 1, 2 * h + 2):
            a[h, child] = a[child, h] = 1
            a[right[h], right[child]] = a[right[child], right[h]] = 1
    return a, cols


def build_ctqw(graph):
    """Laplacian-form Hamiltonian: ``k*gamma`` on the diagonal, ``-gamma`` per edge."""
    cols = None
    if graph.kind == "ring":
        adj = ring_adjacency(graph.size)
    elif graph.kind == "line":
        adj = line_adjacency(graph.size)
    else:
        adj, cols = glued_tree_adjacency(graph.size)
    h = graph.gamma * (np.diag(adj.sum(axis=1)) - adj)
    return CtqwHamiltonian(matrix=h, graph=graph, columns=cols)


def column_hamiltonian(depth, gamma=1.0):
    """G_n walk restricted to uniform column states.

    Starting from a root, the walk never leaves the span of the 2n+1 column
    states; neighbouring columns couple with strength ``-sqrt(2) gamma``.
    """
    m = 2 * depth + 1
    degree = np.full(m, 3.0)
    degree[[0, depth, m - 1]] = 2.0
    off = np.full(m - 1, -np.sqrt(2) * gamma)
    return np.diag(gamma * degree) + np.diag(off, 1) + np.diag(off, -1)


def propagate(hamiltonian, start, times):
    """Amplitudes ``exp(-i H t) |start>`` for each t; shape ``(len(times), n)``."""
    h = hamiltonian.matrix if isinstance(hamiltonian, CtqwHamiltonian) else hamiltonian
    lam, vec = np.linalg.eigh(h)
    coeff = vec[start].conj()
    times = np.atleast_1d(np.asarray(times, dtype=float))
    return (np.exp(-1j * np.outer(times, lam)) * coeff) @ vec.T


def ctqw_evolve(hamiltonian, start, t):
    """Vertex probabilities ``|<v| exp(-i H t) |start>|^2``."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    return np.abs(propagate(hamiltonian, start, [t])[0]) ** 2
