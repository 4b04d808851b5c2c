"""Propagation of guide amplitudes under coupled-mode equations.

All methods solve ``dA/dz = -i (beta I + K(z)) A``. The common ``beta`` only
contributes the global phase ``exp(-i beta z)``, so it is applied
analytically and the numerics run in the co-rotating frame.
"""
from dataclasses import dataclass
from typing import Optional
import warnings

import numpy as np
from scipy import integrate

from .errors import NotCirculantError, NotStaticError, ToleranceError
from .optics import coupling_coefficient, solve_dispersion

ODE_RTOL = 1e-10
ODE_ATOL = 1e-10


@dataclass(frozen=True)
class AmplitudeState:
    amplitudes: np.ndarray
    z: float = 0.0

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.ndim != 1:
            raise ValueError("amplitudes must be a vector")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def localized(cls, n, index):
        a = np.zeros(n, dtype=complex)
        a[index] = 1.0
        return cls(a)

    @property
    def size(self):
        return self.amplitudes.size

    @property
    def intensity(self):
        return np.abs(self.amplitudes) ** 2

    def norm(self):
        return float(np.sum(self.intensity))


@dataclass(frozen=True)
class PropagationRecord:
    z_grid: np.ndarray
    intensity: np.ndarray
    amplitudes: Optional[np.ndarray] = None

    def final_state(self):
        if self.amplitudes is None:
            raise ValueError("record was built without amplitudes")
        return AmplitudeState(self.amplitudes[-1], float(self.z_grid[-1]))


class StructuralNote(UserWarning):
    """Remark attached to a result that is fixed by convention rather than computed."""


def _check_sizes(model, initial):
    if model.size != initial.size:
        raise ValueError(f"model has {model.size} guides but state has {initial.size}")


def evolve_ode(model, initial, z_end, z_steps=200, keep_amplitudes=True):
    """Integrate the coupled-mode equations with an adaptive 8th-order Runge-Kutta scheme.

    Intensities (and amplitudes) are recorded on ``z_steps + 1`` evenly spaced
    points from ``initial.z`` to ``z_end``. z-dependent models are linearly
    interpolated between their samples.
    """
    _check_sizes(model, initial)
    z0 = float(initial.z)
    if not z_end > z0:
        raise ValueError(f"z_end must exceed the initial z = {z0}")
    grid = np.linspace(z0, float(z_end), int(z_steps) + 1)

    if model.is_static:
        K = model.kappa
        rhs = lambda z, b: -1j * (K @ b)
    else:
        rhs = lambda z, b: -1j * (model.kappa_at(z) @ b)

    step_opts = {}
    if not model.is_static:
        # K(z) has a kink at every sample; a step must not straddle several of them
        # or the dense-output interpolation loses accuracy
        h = float(np.min(np.diff(model.z_grid)))
        step_opts = dict(first_step=min(h, (z_end - z0) / 10), max_step=h)
    sol = integrate.solve_ivp(rhs, (z0, grid[-1]), initial.amplitudes * np.exp(1j * model.beta * z0),
                              method="DOP853", t_eval=grid, rtol=ODE_RTOL, atol=ODE_ATOL,
                              **step_opts)
    if not sol.success:
        raise ToleranceError(f"integration failed: {sol.message}")
    amps = sol.y.T * np.exp(-1j * model.beta * grid)[:, None]
    return PropagationRecord(z_grid=grid, intensity=np.abs(amps) ** 2,
                             amplitudes=amps if keep_amplitudes else None)


def propagator_expm(model, z):
    """``exp(-i (beta I + K) z)`` via the eigendecomposition of the symmetric K."""
    if not model.is_static:
        raise NotStaticError("matrix exponential needs a z-independent coupling model")
    lam, vec = np.linalg.eigh(model.kappa)
    phase = np.exp(-1j * (lam + model.beta) * z)
    return (vec * phase) @ vec.T


def evolve_expm(model, initial, z_end):
    _check_sizes(model, initial)
    u = propagator_expm(model, z_end - initial.z)
    return AmplitudeState(u @ initial.amplitudes, float(z_end))


def record_expm(model, initial, z_end, z_steps=200):
    """Spectral evolution sampled on the same grid as :func:`evolve_ode`."""
    _check_sizes(model, initial)
    if not model.is_static:
        raise NotStaticError("matrix exponential needs a z-independent coupling model")
    grid = np.linspace(initial.z, z_end, int(z_steps) + 1)
    lam, vec = np.linalg.eigh(model.kappa)
    coeff = vec.T @ initial.amplitudes
    dz = grid - initial.z
    amps = (np.exp(-1j * np.outer(dz, lam + model.beta)) * coeff) @ vec.T
    return PropagationRecord(z_grid=grid, intensity=np.abs(amps) ** 2, amplitudes=amps)


def circulant_oracle(model, initial, z):
    """Closed-form ring evolution from the DFT of the first coupling row.

    A circulant K is diagonalised by the DFT, with eigenvalues
    ``lambda_k = sum_j c_j exp(2 pi i j k / N)``.
    """
    if not model.is_circulant():
        raise NotCirculantError("coupling matrix is not circulant")
    _check_sizes(model, initial)
    eig = np.fft.fft(model.kappa[0]).real if _is_symmetric_row(model.kappa[0]) else None
    if eig is None:
        raise NotCirculantError("circulant oracle requires a symmetric first row")
    dz = z - initial.z
    spectrum = np.fft.fft(initial.amplitudes) * np.exp(-1j * eig * dz)
    return AmplitudeState(np.fft.ifft(spectrum) * np.exp(-1j * model.beta * dz), float(z))


def _is_symmetric_row(row):
    return np.allclose(row, np.roll(row[::-1], 1), rtol=1e-12, atol=0)


def transfer_matrix(model, z_end, z0=0.0):
    """Single-photon transfer matrix ``u[q, k]`` from input guide k to output q."""
    if model.is_static:
        return propagator_expm(model, z_end - z0)
    n = model.size
    cols = [evolve_ode(model, AmplitudeState(np.eye(n)[k], z0), z_end, z_steps=1).amplitudes[-1]
            for k in range(n)]
    return np.column_stack(cols)


def find_recurrence(record, launch_index, threshold=0.9):
    """First revival of power in the launch guide.

    Returns ``(z, peak_fraction)`` for the first interior local maximum of
    ``|A_launch(z)|^2`` at z > z_0 whose value reaches ``threshold``, or
    ``None``. Peak position and height are refined by a parabola through the
    three samples around the maximum.
    """
    p = np.asarray(record.intensity)[:, launch_index]
    z = np.asarray(record.z_grid)
    for i in range(1, p.size - 1):
        if p[i] >= p[i - 1] and p[i] > p[i + 1]:
            z_peak, peak = _parabolic_peak(z[i - 1:i + 2], p[i - 1:i + 2])
            if peak >= threshold:
                return z_peak, min(peak, 1.0)
    return None


def _parabolic_peak(z, p):
    denom = p[0] - 2 * p[1] + p[2]
    if denom >= 0:
        return float(z[1]), float(p[1])
    h = z[1] - z[0]
    offset = 0.5 * (p[0] - p[2]) / denom
    return float(z[1] + offset * h), float(p[1] - 0.25 * (p[0] - p[2]) * offset)


def nnnc_ratio(spec, geom, modal=None):
    """Next-nearest to nearest-neighbour coupling ratio of a tube.

    For three guides every pair is adjacent; the ratio is then 1 by
    convention and a :class:`StructuralNote` warning is issued.
    """
    if geom.n_guides == 3:
        warnings.warn("3-guide tube: all pairs are nearest neighbours, ratio set to 1",
                      StructuralNote, stacklevel=2)
        return 1.0
    modal = solve_dispersion(spec) if modal is None else modal
    c1, c2 = coupling_coefficient(spec, modal, [geom.chord(1), geom.chord(2)])
    return float(c2 / c1)

