"""Modal and coupling quantities of identical step-index waveguides.

Units throughout: lengths in micrometres, propagation constants and
coupling rates in rad/um.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy import optimize, special

from .errors import DegenerateFitError, GeometryError, MultiModeError, NoSolutionError

#: Single-mode limit on V (first zero of J0, rounded).
SINGLE_MODE_CUTOFF = 2.405
_J0_FIRST_ZERO = float(special.jn_zeros(0, 1)[0])

DEFAULT_N_CLAD = 1.4533  # fused silica near 800 nm
DEFAULT_CONTRAST = 0.00455
DEFAULT_CORE_RADIUS = 2.972 / 2
DEFAULT_WAVELENGTH = 0.80
CHARACTERIZATION_WAVELENGTH = 0.78

_BISECT_MARGIN = 1e-6
_BISECT_XTOL = 1e-12
_BISECT_MAXITER = 200


@dataclass(frozen=True)
class WaveguideSpec:
    """Physical parameters of one guide.

    The defaults describe the direct-written guides: 2.972 um wide
    (radius 1.486 um) with an index contrast of 0.00455 on fused silica.
    """

    core_radius: float = DEFAULT_CORE_RADIUS
    n_core: float = DEFAULT_N_CLAD + DEFAULT_CONTRAST
    n_clad: float = DEFAULT_N_CLAD
    wavelength: float = DEFAULT_WAVELENGTH

    def __post_init__(self):
        if not self.core_radius > 0:
            raise GeometryError(f"core_radius must be positive, got {self.core_radius}")
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if not (self.n_core > self.n_clad > 1):
            raise ValueError(
                f"need n_core > n_clad > 1, got n_core={self.n_core}, n_clad={self.n_clad}"
            )

    @classmethod
    def from_contrast(cls, contrast=DEFAULT_CONTRAST, n_clad=DEFAULT_N_CLAD,
                      core_radius=DEFAULT_CORE_RADIUS, wavelength=DEFAULT_WAVELENGTH):
        return cls(core_radius=core_radius, n_core=n_clad + contrast,
                   n_clad=n_clad, wavelength=wavelength)

    @property
    def delta(self):
        """Profile parameter 1 - (n_clad/n_core)^2."""
        return 1.0 - (self.n_clad / self.n_core) ** 2

    @property
    def v_number(self):
        return 2 * np.pi * self.core_radius * self.n_core * np.sqrt(self.delta) / self.wavelength


@dataclass(frozen=True)
class ModalSolution:
    U: float
    V: float
    W: float
    delta: float
    beta: float

    def residual(self):
        """Mismatch of the core/cladding Bessel matching condition at (U, W)."""
        return _core_side(self.U) - _clad_side(self.W)


@dataclass(frozen=True)
class CouplingFit:
    """Exponential coupling-length law ``L(d) = a * exp(b * d)``."""

    a: float = 87.988
    b: float = 0.4005

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError(f"fit constants must be positive, got a={self.a}, b={self.b}")


def _core_side(U):
    return U * special.j1(U) / special.j0(U)


def _clad_side(W):
    # Exponentially scaled Bessel K keeps the ratio finite for large W.
    return W * special.k1e(W) / special.k0e(W)


def solve_dispersion(spec):
    """Solve the fundamental-mode dispersion relation for ``spec``.

    Bisection on U over (0, V) of ``U J1(U)/J0(U) = W K1(W)/K0(W)`` with
    ``W = sqrt(V^2 - U^2)``.

    Raises
    ------
    MultiModeError
        If V >= 2.405.
    NoSolutionError
        If the root is not bracketed.
    """
    V = spec.v_number
    if V >= SINGLE_MODE_CUTOFF:
        raise MultiModeError(f"V = {V:.6f} >= {SINGLE_MODE_CUTOFF}; guide is not single-mode")

    def cladding_w(U):
        return np.sqrt((V - U) * (V + U))

    def mismatch(U):
        return _core_side(U) - _clad_side(cladding_w(U))

    lo = _BISECT_MARGIN
    # U J1(U)/J0(U) has a pole at the first zero of J0, just below the cutoff
    # W K1/K0 ~ 1/ln(1/W) vanishes slowly, so the bracket runs up to the last float below V
    hi = min(np.nextafter(V, 0.0), _J0_FIRST_ZERO - _BISECT_MARGIN)
    if not hi > lo:
        raise NoSolutionError(f"V = {V:.3e} too small to bracket the root")
    f_lo, f_hi = mismatch(lo), mismatch(hi)
    if not (np.isfinite(f_lo) and np.isfinite(f_hi)) or f_lo * f_hi > 0:
        raise NoSolutionError(f"root not bracketed on U in ({lo}, {hi}) for V = {V:.6f}")
    U = optimize.bisect(mismatch, lo, hi, xtol=_BISECT_XTOL, rtol=4 * np.finfo(float).eps,
                        maxiter=_BISECT_MAXITER)
    W = cladding_w(U)
    k_core = 2 * np.pi * spec.n_core / spec.wavelength
    beta = np.sqrt(k_core ** 2 - (U / spec.core_radius) ** 2)
    return ModalSolution(U=float(U), V=float(V), W=float(W), delta=float(spec.delta),
                         beta=float(beta))


def coupling_coefficient(spec, modal, separation):
    """Evanescent coupling rate between two identical parallel guides.

    ``C = sqrt(delta) U^2 K0(W d / r) / (r V^3 K1(W)^2)`` for centre-to-centre
    separation ``d``. Accepts a scalar or array of separations.
    """
    d = np.asarray(separation, dtype=float)
    r = spec.core_radius
    if np.any(d < 2 * r):
        raise GeometryError(
            f"separation {np.min(d):.4g} um < 2*core_radius = {2 * r:.4g} um; cores overlap"
        )
    U, V, W = modal.U, modal.V, modal.W
    C = np.sqrt(modal.delta) * U ** 2 * special.k0(W * d / r) / (r * V ** 3 * special.k1(W) ** 2)
    return float(C) if C.ndim == 0 else C


def coupling_length_empirical(separation, fit=CouplingFit()):
    """Measured coupling-length law ``a * exp(b * d)`` in um for separation ``d`` in um."""
    if not separation >= 0:
        raise ValueError(f"separation must be non-negative, got {separation}")
    # math.exp rather than np.exp: the two can differ in the last bit
    return fit.a * math.exp(fit.b * float(separation))


def coupling_length_cmt(spec, separation, modal=None):
    """Length for complete transfer in a two-guide coupler, pi / (2 C)."""
    modal = solve_dispersion(spec) if modal is None else modal
    return np.pi / (2 * coupling_coefficient(spec, modal, separation))


def fit_coupling_length(samples):
    """Least-squares fit of ``ln L = ln a + b d`` to ``(d, L)`` samples."""
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 3:
        raise DegenerateFitError("need at least 3 (d, L) samples")
    d, L = arr[:, 0], arr[:, 1]
    if np.unique(d).size < 2:
        raise DegenerateFitError("all separations are equal")
    if np.any(L <= 0):
        raise DegenerateFitError("coupling lengths must be positive")
    b, ln_a = np.polyfit(d, np.log(L), 1)
    return CouplingFit(a=float(np.exp(ln_a)), b=float(b))
