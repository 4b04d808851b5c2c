"""Two-photon correlation matrices behind a linear-optical transfer matrix.

``u[q, k]`` is the single-photon amplitude from input guide k to output
guide q. Every matrix is normalised over ordered output pairs:
``gamma[q, r]`` for q != r is half the probability of one photon in each of
q and r, and ``gamma[q, q]`` is the probability of both photons in q, so
that ``gamma.sum() == 1``.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateInputError, NonUnitaryError

UNITARY_ATOL = 1e-10


@dataclass(frozen=True)
class CorrelationMatrix:
    gamma: np.ndarray
    inputs: tuple
    kind: str
    phase: Optional[float] = None

    @property
    def size(self):
        return self.gamma.shape[0]

    def coincidence(self, q, r):
        """Probability of detecting one photon in q and one in r (q != r)."""
        return float(self.gamma[q, r] + self.gamma[r, q])


def check_unitary(u, atol=UNITARY_ATOL):
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NonUnitaryError(f"transfer matrix must be square, got shape {u.shape}")
    err = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
    if err > atol:
        raise NonUnitaryError(f"transfer matrix deviates from unitarity by {err:.3e}")
    return u


def _check_inputs(u, k, l):
    n = u.shape[0]
    for g in (k, l):
        if not 0 <= g < n:
            raise IndexError(f"input guide {g} outside 0..{n - 1}")


def _normalise(raw):
    raw = 0.5 * (raw + raw.T)
    return raw / raw.sum()


def corr_distinguishable(u, k, l):
    """Photons distinguishable in some degree of freedom: no two-photon interference."""
    u = check_unitary(u)
    _check_inputs(u, k, l)
    pk, pl = np.abs(u[:, k]) ** 2, np.abs(u[:, l]) ** 2
    raw = np.outer(pk, pl) + np.outer(pl, pk)
    return CorrelationMatrix(_normalise(raw), (k, l), "distinguishable")


def corr_indistinguishable(u, k, l):
    """Identical photons injected into guides k and l (k == l allowed)."""
    u = check_unitary(u)
    _check_inputs(u, k, l)
    amp = np.outer(u[:, k], u[:, l]) + np.outer(u[:, l], u[:, k])
    return CorrelationMatrix(_normalise(np.abs(amp) ** 2), (k, l), "indistinguishable")


def corr_path_entangled(u, k, l, phase=0.0):
    """Input ``(|2_k> + e^{i phase} |2_l>) / sqrt(2)``."""
    if k == l:
        raise DegenerateInputError("path-entangled input needs two distinct guides")
    u = check_unitary(u)
    _check_inputs(u, k, l)
    amp = np.outer(u[:, k], u[:, k]) + np.exp(1j * phase) * np.outer(u[:, l], u[:, l])
    return CorrelationMatrix(_normalise(np.abs(amp) ** 2), (k, l), "entangled", phase)


def corr_classical_phase_averaged(u, k, l, n_phases=0):
    """Intensity correlations ``<I_q I_r>`` of bright light in k and l with random relative phase.

    ``I_q(phi) = |u[q,k] + exp(i phi) u[q,l]|^2``. With ``n_phases == 0`` the
    average over phi is taken in closed form; otherwise ``n_phases`` equally
    spaced phases are used, which is already exact.
    """
    if n_phases != 0 and n_phases < 8:
        raise ValueError(f"n_phases must be 0 (closed form) or at least 8, got {n_phases}")
    u = check_unitary(u)
    _check_inputs(u, k, l)
    if n_phases == 0:
        mean = np.abs(u[:, k]) ** 2 + np.abs(u[:, l]) ** 2
        cross = u[:, k].conj() * u[:, l]
        raw = np.outer(mean, mean) + 2 * np.real(np.outer(cross, cross.conj()))
    else:
        phi = 2 * np.pi * np.arange(n_phases) / n_phases
        field = u[:, k][:, None] + np.exp(1j * phi)[None, :] * u[:, l][:, None]
        intensity = np.abs(field) ** 2
        raw = intensity @ intensity.T / n_phases
    return CorrelationMatrix(_normalise(raw), (k, l), "classical")


CORRELATORS = {
    "distinguishable": corr_distinguishable,
    "indistinguishable": corr_indistinguishable,
    "entangled": corr_path_entangled,
    "classical": corr_classical_phase_averaged,
}


def coincidence_visibility(matrix, reference, q, r):
    """Suppression ``1 - P(q, r) / P_ref(q, r)`` of a coincidence against a reference."""
    return 1.0 - matrix.coincidence(q, r) / reference.coincidence(q, r)
