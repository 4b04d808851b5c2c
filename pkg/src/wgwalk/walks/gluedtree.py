"""Quantum versus classical traversal of glued binary trees."""
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateFitError, ScaleError
from .ctqw import GraphSpec, build_ctqw, column_hamiltonian, glued_tree_adjacency, propagate

MAX_DEPTH = 8


@dataclass(frozen=True)
class GluedTreeTraversal:
    """Column-probability traces, shape ``(len(times), 2n+1)``.

    ``classical`` is the Monte Carlo occupation of each column by walkers
    hopping at rate ``gamma`` along every edge; ``classical_hit`` is the
    fraction that has visited the right root by each time.
    """

    depth: int
    gamma: float
    times: np.ndarray
    quantum: np.ndarray
    classical: np.ndarray
    classical_hit: np.ndarray
    walkers: int
    seed: int

    @property
    def quantum_exit_peak(self):
        return float(self.quantum[:, -1].max())

    @property
    def classical_exit_peak(self):
        return float(self.classical[:, -1].max())

    def frontier(self, quantile=0.9):
        return column_quantile(self.quantum, quantile)

    def frontier_speed(self, quantile=0.9, t_min=None, reflection_level=1e-2):
        """Slope of the ``quantile`` column against time, before reflection.

        The fit uses times from ``t_min`` (default ``0.5/gamma``) up to the
        first sample where the right root holds ``reflection_level`` of the
        probability.
        """
        t_min = 0.5 / self.gamma if t_min is None else t_min
        reached = np.nonzero(self.quantum[:, -1] >= reflection_level)[0]
        stop = reached[0] if reached.size else len(self.times)
        keep = np.arange(stop)[self.times[:stop] >= t_min]
        if keep.size < 3:
            raise DegenerateFitError("fewer than 3 samples before the wave front reflects")
        slope, _ = np.polyfit(self.times[keep], self.frontier(quantile)[keep], 1)
        return float(slope)


def column_quantile(probs, quantile):
    """Interpolated column below which ``quantile`` of the mass lies.

    Column j is taken to occupy [j - 1/2, j + 1/2] with its mass spread
    uniformly.
    """
    probs = np.atleast_2d(probs)
    cum = np.cumsum(probs, axis=1)
    out = np.empty(probs.shape[0])
    for i, (p, c) in enumerate(zip(probs, cum)):
        j = min(int(np.searchsorted(c, quantile)), p.size - 1)
        below = c[j - 1] if j > 0 else 0.0
        out[i] = j - 0.5 + (quantile - below) / p[j] if p[j] > 0 else j
    return out


def quantum_column_traces(depth, times, gamma=1.0, method="columns"):
    """Column probabilities of the walk launched at the left root.

    ``method="columns"`` evolves the (2n+1)-dimensional column-reduced
    walk; ``"full"`` evolves the whole graph and sums over each column.
    """
    if method == "columns":
        return np.abs(propagate(column_hamiltonian(depth, gamma), 0, times)) ** 2
    if method != "full":
        raise ValueError(f"unknown method {method!r}")
    h = build_ctqw(GraphSpec("glued_tree", depth, gamma))
    p = np.abs(propagate(h, 0, times)) ** 2
    out = np.zeros((p.shape[0], 2 * depth + 1))
    for col in range(2 * depth + 1):
        out[:, col] = p[:, h.columns == col].sum(axis=1)
    return out


def classical_column_traces(depth, times, gamma=1.0, walkers=100_000, seed=0):
    """Monte Carlo continuous-time random walk from the left root.

    Each walker waits an exponential time with rate ``degree * gamma`` and
    then hops to a uniformly chosen neighbour. Returns column occupation
    fractions and the cumulative fraction of walkers that reached the right
    root, both sampled at ``times`` (which must be non-decreasing).
    """
    rng = np.random.default_rng(seed)
    adj, cols = glued_tree_adjacency(depth)
    degree = adj.sum(axis=1).astype(int)
    table = np.zeros((adj.shape[0], degree.max()), dtype=int)
    for v in range(adj.shape[0]):
        nbrs = np.nonzero(adj[v])[0]
        table[v, :nbrs.size] = nbrs
    target = adj.shape[0] - 1

    pos = np.zeros(walkers, dtype=int)
    clock = rng.exponential(1.0 / (degree[pos] * gamma))
    hit = np.zeros(walkers, dtype=bool)
    n_cols = 2 * depth + 1
    occupation = np.empty((len(times), n_cols))
    hit_frac = np.empty(len(times))
    for i, t in enumerate(times):
        moving = np.nonzero(clock <= t)[0]
        while moving.size:
            here = pos[moving]
            choice = (rng.random(moving.size) * degree[here]).astype(int)
            pos[moving] = table[here, choice]
            hit[moving] |= pos[moving] == target
            clock[moving] += rng.exponential(1.0 / (degree[pos[moving]] * gamma))
            moving = moving[clock[moving] <= t]
        occupation[i] = np.bincount(cols[pos], minlength=n_cols) / walkers
        hit_frac[i] = hit.mean()
    return occupation, hit_frac


def glued_tree_traversal(depth, t_max, samples, gamma=1.0, walkers=100_000, seed=0,
                         method="columns"):
    """Quantum and classical column traces for G_depth on ``samples`` times in [0, t_max]."""
    if depth > MAX_DEPTH:
        raise ScaleError(f"depth {depth} exceeds the supported maximum {MAX_DEPTH}")
    if depth < 1:
        raise ValueError(f"depth must be at least 1, got {depth}")
    times = np.linspace(0.0, float(t_max), int(samples))
    quantum = quantum_column_traces(depth, times, gamma, method)
    classical, hit = classical_column_traces(depth, times, gamma, walkers, seed)
    return GluedTreeTraversal(depth=depth, gamma=gamma, times=times, quantum=quantum,
                              classical=classical, classical_hit=hit, walkers=walkers, seed=seed)
