"""Hadamard-coined discrete-time walk on the line.

Coin index 0 is |up> (shifts the walker to x-1), index 1 is |down>
(shifts to x+1).
"""
from dataclasses import dataclass

import numpy as np

UP, DOWN = 0, 1
HADAMARD = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


@dataclass(frozen=True)
class CoinedState:
    """Amplitudes over positions ``-extent..extent`` and the two coin states."""

    amplitudes: np.ndarray  # shape (2*extent + 1, 2)

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.ndim != 2 or a.shape[1] != 2 or a.shape[0] % 2 != 1:
            raise ValueError(f"amplitudes must have shape (2*extent+1, 2), got {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def at_origin(cls, coin):
        return cls(np.asarray(coin, dtype=complex).reshape(1, 2))

    @classmethod
    def symmetric(cls):
        """(|up> + i|down>)/sqrt(2) at the origin."""
        return cls.at_origin(np.array([1, 1j]) / np.sqrt(2))

    @property
    def extent(self):
        return self.amplitudes.shape[0] // 2

    @property
    def positions(self):
        return np.arange(-self.extent, self.extent + 1)

    def distribution(self):
        return np.sum(np.abs(self.amplitudes) ** 2, axis=1)

    def norm(self):
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def coined_step(state, coin=HADAMARD):
    """Apply the coin, then shift up-components left and down-components right."""
    mixed = state.amplitudes @ np.asarray(coin).T
    out = np.zeros((mixed.shape[0] + 2, 2), dtype=complex)
    out[:-2, UP] = mixed[:, UP]
    out[2:, DOWN] = mixed[:, DOWN]
    return CoinedState(out)


def coined_walk(state, steps, coin=HADAMARD):
    """Position distributions after 0..steps steps, each as ``(positions, probs)``."""
    out = [(state.positions, state.distribution())]
    for _ in range(steps):
        state = coined_step(state, coin)
        out.append((state.positions, state.distribution()))
    return out
