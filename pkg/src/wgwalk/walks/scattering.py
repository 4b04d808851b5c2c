"""Scattering quantum walk on a line of beamsplitters.

The walker lives on directed edges ``|j, k>`` (from vertex j to k = j +- 1).
Edges are stored as a vector of "rails", the lateral paths between
consecutive beamsplitter columns. Rail ``x`` joins vertices ``origin - x``
and ``origin - x - 1``. Odd columns hold beamsplitters on rail pairs
(0, 1), (2, 3), ...; even columns on (1, 2), (3, 4), ... with the two
outermost rails passing straight through.

Within each pair the beamsplitter acts as ``[[-r*, t], [t*, r]]`` on
(rail arriving from the right, rail arriving from the left), so a photon
on ``|j-1, j>`` leaves as ``t|j, j+1> + r|j, j-1>``.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import NonUnitaryCoinError

ODD, EVEN = "odd", "even"


def beamsplitter_block(r, t, atol=1e-12):
    if abs(abs(r) ** 2 + abs(t) ** 2 - 1) > atol:
        raise NonUnitaryCoinError(f"|r|^2 + |t|^2 = {abs(r) ** 2 + abs(t) ** 2!r} != 1")
    return np.array([[-np.conj(r), t], [np.conj(t), r]], dtype=complex)


def column_unitary(n_rails, r, t, parity):
    """Block-diagonal unitary of one beamsplitter column."""
    block = beamsplitter_block(r, t)
    u = np.eye(n_rails, dtype=complex)
    for x in _pair_starts(n_rails, parity):
        u[x:x + 2, x:x + 2] = block
    return u


def _pair_starts(n_rails, parity):
    if parity == ODD:
        return range(0, n_rails - 1, 2)
    if parity == EVEN:
        return range(1, n_rails - 1, 2)
    raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")


def _other(parity):
    return EVEN if parity == ODD else ODD


@dataclass(frozen=True)
class ScatteringState:
    """Rail amplitudes plus the parity of the column applied last (None initially)."""

    amplitudes: np.ndarray
    origin: int = 0
    last_parity: Optional[str] = None

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.ndim != 1 or a.size % 2:
            raise ValueError("need an even number of rails")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def single_edge(cls, n_pairs, direction="right"):
        """Walker entering vertex 0 of the next odd column, moving ``direction``.

        ``direction="right"`` is the edge |-1, 0>, ``"left"`` is |1, 0>.
        """
        i = n_pairs // 2
        rail = {"right": 2 * i + 1, "left": 2 * i}[direction]
        a = np.zeros(2 * n_pairs, dtype=complex)
        a[rail] = 1.0
        return cls(a, origin=2 * i + 1)

    @property
    def n_rails(self):
        return self.amplitudes.size

    @property
    def next_parity(self):
        return ODD if self.last_parity is None else _other(self.last_parity)

    def target_vertices(self):
        """Vertex each rail is heading into (the next beamsplitter it meets)."""
        x = np.arange(self.n_rails)
        if self.next_parity == ODD:
            return self.origin - 2 * (x // 2) - 1
        return self.origin - 2 * ((x + 1) // 2)

    def edge_labels(self):
        """``(j, k)`` for every rail: the walker travels from j into k."""
        x = np.arange(self.n_rails)
        k = self.target_vertices()
        ends = np.column_stack([self.origin - x, self.origin - x - 1])
        j = np.where(ends[:, 0] == k, ends[:, 1], ends[:, 0])
        return list(zip(j.tolist(), k.tolist()))

    def position_distribution(self):
        """``(vertices, probs)`` with vertices ascending."""
        k = self.target_vertices()
        p = np.abs(self.amplitudes) ** 2
        verts = np.unique(k)
        return verts, np.array([p[k == v].sum() for v in verts])

    def norm(self):
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def scattering_step(state, r, t, parity=None):
    """Apply one beamsplitter column; ``parity`` defaults to alternating from odd."""
    parity = state.next_parity if parity is None else parity
    u = column_unitary(state.n_rails, r, t, parity)
    return ScatteringState(u @ state.amplitudes, origin=state.origin, last_parity=parity)
