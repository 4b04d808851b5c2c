"""Waveguide layouts and the coupling matrices they induce.

Planar arrays, tubular (ring) arrays and raised-sine fan-in sections are
converted into :class:`CouplingModel` instances. A model is either static
(one coupling matrix) or z-dependent (matrices sampled on a z grid and
linearly interpolated in between).
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import GeometryError
from .optics import coupling_coefficient, solve_dispersion

V_GROOVE_PITCH = 127.0


@dataclass(frozen=True)
class TubeGeometry:
    n_guides: int = 6
    tube_radius: float = 7.0
    length_z: float = 20_000.0

    def __post_init__(self):
        if self.n_guides < 3:
            raise GeometryError(f"a tube needs at least 3 guides, got {self.n_guides}")
        if not self.tube_radius > 0:
            raise GeometryError(f"tube_radius must be positive, got {self.tube_radius}")

    def angles(self):
        return 2 * np.pi * np.arange(self.n_guides) / self.n_guides

    def positions(self):
        """Guide centres as an (N, 2) array; guide k sits at angle 2*pi*k/N."""
        return ring_positions(self.n_guides, self.tube_radius)

    def chord(self, order):
        """Centre separation of guides ``order`` steps apart around the ring."""
        return 2 * self.tube_radius * np.sin(np.pi * order / self.n_guides)


@dataclass(frozen=True)
class CouplingModel:
    """Coupling matrix ``kappa`` (rad/um) and common propagation constant.

    For z-dependent models ``z_grid`` and ``kappa_z`` (shape ``(len(z_grid), N, N)``)
    are set and ``kappa`` holds the matrix at the end of the grid.
    """

    kappa: np.ndarray
    beta: float = 0.0
    z_grid: Optional[np.ndarray] = None
    kappa_z: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        k = np.asarray(self.kappa, dtype=float)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise ValueError(f"kappa must be square, got shape {k.shape}")
        if not np.allclose(k, k.T, rtol=0, atol=1e-15 + 1e-12 * np.abs(k).max(initial=0)):
            raise ValueError("kappa must be symmetric")
        if np.any(np.diag(k) != 0):
            raise ValueError("kappa must have a zero diagonal")
        k.setflags(write=False)
        object.__setattr__(self, "kappa", k)
        if (self.z_grid is None) != (self.kappa_z is None):
            raise ValueError("z_grid and kappa_z must be given together")
        if self.z_grid is not None:
            z = np.asarray(self.z_grid, dtype=float)
            kz = np.asarray(self.kappa_z, dtype=float)
            if kz.shape != (z.size,) + k.shape:
                raise ValueError("kappa_z shape does not match z_grid and kappa")
            if np.any(np.diff(z) <= 0):
                raise ValueError("z_grid must be strictly increasing")
            z.setflags(write=False)
            kz.setflags(write=False)
            object.__setattr__(self, "z_grid", z)
            object.__setattr__(self, "kappa_z", kz)

    @property
    def size(self):
        return self.kappa.shape[0]

    @property
    def is_static(self):
        return self.z_grid is None

    def kappa_at(self, z):
        """Coupling matrix at ``z``; clamps to the ends of a z-dependent grid."""
        if self.is_static:
            return self.kappa
        zg = self.z_grid
        if z <= zg[0]:
            return self.kappa_z[0]
        if z >= zg[-1]:
            return self.kappa_z[-1]
        i = int(np.searchsorted(zg, z, side="right")) - 1
        w = (z - zg[i]) / (zg[i + 1] - zg[i])
        return (1 - w) * self.kappa_z[i] + w * self.kappa_z[i + 1]

    def is_circulant(self, atol=1e-15):
        k = self.kappa
        return self.is_static and np.allclose(k, np.roll(np.roll(k, 1, axis=0), 1, axis=1),
                                              rtol=1e-12, atol=atol)

    def hamiltonian(self):
        """Generator ``beta*I + kappa`` of dA/dz = -i(beta*I + kappa) A."""
        return self.beta * np.eye(self.size) + self.kappa


def ring_positions(n, radius):
    theta = 2 * np.pi * np.arange(n) / n
    return np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])


def _pairwise_distances(points):
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt(np.sum(diff ** 2, axis=-1))


def _coupling_from_positions(points, spec, modal):
    dist = _pairwise_distances(points)
    n = len(points)
    off = ~np.eye(n, dtype=bool)
    if np.any(dist[off] < 2 * spec.core_radius):
        raise GeometryError(
            f"minimum separation {dist[off].min():.4g} um < 2*core_radius; cores overlap"
        )
    kappa = np.zeros((n, n))
    kappa[off] = coupling_coefficient(spec, modal, dist[off])
    return kappa


def build_planar(n_guides, pitch, spec, include_nnn=False, modal=None):
    """Equally spaced planar array with nearest (and optionally next-nearest) coupling."""
    if n_guides < 2:
        raise GeometryError(f"a planar array needs at least 2 guides, got {n_guides}")
    modal = solve_dispersion(spec) if modal is None else modal
    c1 = coupling_coefficient(spec, modal, pitch)
    kappa = np.diag(np.full(n_guides - 1, c1), 1)
    if include_nnn and n_guides > 2:
        kappa += np.diag(np.full(n_guides - 2, coupling_coefficient(spec, modal, 2 * pitch)), 2)
    return CouplingModel(kappa + kappa.T, beta=modal.beta)


def build_tube(geom, spec, neighbour_orders=2, modal=None):
    """Circulant coupling model of a ring of guides.

    Neighbour order ``k`` couples guides ``k`` positions apart with
    ``C(2 R sin(pi k / N))``; orders beyond ``neighbour_orders`` are dropped.
    """
    modal = solve_dispersion(spec) if modal is None else modal
    n = geom.n_guides
    if geom.chord(1) < 2 * spec.core_radius:
        raise GeometryError(
            f"adjacent chord {geom.chord(1):.4g} um < 2*core_radius; cores overlap"
        )
    first_row = np.zeros(n)
    for k in range(1, n // 2 + 1):
        if k > neighbour_orders:
            break
        c = coupling_coefficient(spec, modal, geom.chord(k))
        first_row[k] = c
        first_row[n - k] = c
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return CouplingModel(first_row[idx], beta=modal.beta)


def raised_sine_path(start_offset, end_offset, stage_length):
    """Raised-sine transition between two lateral offsets.

    Returns ``f(z) = start + (end - start) * (z/L - sin(2 pi z/L) / (2 pi))``,
    clamped outside ``[0, L]``; slope vanishes at both ends. Offsets may be
    scalars or coordinate arrays.
    """
    if not stage_length > 0:
        raise ValueError(f"stage_length must be positive, got {stage_length}")
    start = np.asarray(start_offset, dtype=float)
    span = np.asarray(end_offset, dtype=float) - start
    L = float(stage_length)

    def path(z):
        s = np.clip(np.asarray(z, dtype=float) / L, 0.0, 1.0)
        f = s - np.sin(2 * np.pi * s) / (2 * np.pi)
        return start + np.multiply.outer(f, span) if span.ndim else start + f * span

    return path


@dataclass(frozen=True)
class FanInPath:
    """Fan-in from a V-groove line to a tube, in one or two raised-sine stages.

    Guide ``k`` ends at ring angle ``2 pi k / N``. V-groove slots are
    assigned in order of the guides' final x coordinate (ties broken by y)
    so that no two paths cross.
    """

    tube: TubeGeometry = TubeGeometry()
    stages: int = 1
    start_pitch: float = V_GROOVE_PITCH
    intermediate_radius: float = 14.0
    stage_length: float = 8_000.0

    def __post_init__(self):
        if self.stages not in (1, 2):
            raise ValueError(f"stages must be 1 or 2, got {self.stages}")
        if not self.stage_length > 0:
            raise ValueError(f"stage_length must be positive, got {self.stage_length}")
        if self.stages == 2 and not self.intermediate_radius > self.tube.tube_radius:
            raise GeometryError("intermediate_radius must exceed the final tube radius")

    @property
    def length(self):
        return self.stages * self.stage_length

    def start_positions(self):
        n = self.tube.n_guides
        end = self.tube.positions()
        order = np.lexsort((np.round(end[:, 1], 9), np.round(end[:, 0], 9)))
        slot = np.empty(n, dtype=int)
        slot[order] = np.arange(n)
        x = (slot - (n - 1) / 2) * self.start_pitch
        return np.column_stack([x, np.zeros(n)])

    def waypoints(self):
        pts = [self.start_positions()]
        if self.stages == 2:
            pts.append(ring_positions(self.tube.n_guides, self.intermediate_radius))
        pts.append(self.tube.positions())
        return pts

    def positions(self, z):
        """Guide centres at each z; shape ``(len(z), N, 2)``."""
        z = np.atleast_1d(np.asarray(z, dtype=float))
        pts = self.waypoints()
        out = np.empty((z.size,) + pts[0].shape)
        for s in range(self.stages):
            z0 = s * self.stage_length
            seg = (z >= z0) if s == 0 else (z > z0)
            path = raised_sine_path(pts[s], pts[s + 1], self.stage_length)
            out[seg] = path(z[seg] - z0)
        return out


def fanin_coupling_profile(fanin, spec, z_samples, modal=None):
    """z-dependent coupling model along the fan-in, all guide pairs included.

    Paths are treated as locally parallel: each sample uses ``C`` at the
    instantaneous centre separation.
    """
    if z_samples < 2:
        raise ValueError("need at least 2 z samples")
    modal = solve_dispersion(spec) if modal is None else modal
    z = np.linspace(0.0, fanin.length, int(z_samples))
    pos = fanin.positions(z)
    kz = np.empty((z.size, fanin.tube.n_guides, fanin.tube.n_guides))
    for i in range(z.size):
        try:
            kz[i] = _coupling_from_positions(pos[i], spec, modal)
        except GeometryError as exc:
            raise GeometryError(f"at z = {z[i]:.6g} um: {exc}") from None
    return CouplingModel(kz[-1], beta=modal.beta, z_grid=z, kappa_z=kz)


def concatenate(first, second):
    """Join a z-dependent model with a following static or z-dependent section."""
    if first.size != second.size:
        raise ValueError("models must have the same number of guides")
    z1 = first.z_grid if not first.is_static else np.array([0.0])
    k1 = first.kappa_z if not first.is_static else first.kappa[None]
    if second.is_static:
        raise ValueError("the second model must carry its own z grid; use with_length()")
    z2 = second.z_grid[1:] + z1[-1] - second.z_grid[0]
    k2 = second.kappa_z[1:]
    return CouplingModel(second.kappa, beta=first.beta, z_grid=np.concatenate([z1, z2]),
                         kappa_z=np.concatenate([k1, k2]))


def with_length(model, length):
    """Express a static model as a two-sample z-dependent model of given length."""
    if not model.is_static:
        raise ValueError("model is already z-dependent")
    return CouplingModel(model.kappa, beta=model.beta, z_grid=np.array([0.0, float(length)]),
                         kappa_z=np.stack([model.kappa, model.kappa]))
