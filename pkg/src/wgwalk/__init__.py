"""Simulation of light and photon pairs in evanescently coupled waveguide arrays."""
from .correlations import (CorrelationMatrix, corr_classical_phase_averaged,
                           corr_distinguishable, corr_indistinguishable, corr_path_entangled)
from .errors import *  # noqa: F401,F403
from .evolution import (AmplitudeState, PropagationRecord, circulant_oracle, evolve_expm,
                        evolve_ode, find_recurrence, nnnc_ratio, propagator_expm, record_expm,
                        transfer_matrix)
from .geometry import (CouplingModel, FanInPath, TubeGeometry, build_planar, build_tube,
                       fanin_coupling_profile, raised_sine_path)
from .optics import (CouplingFit, ModalSolution, WaveguideSpec, coupling_coefficient,
                     coupling_length_cmt, coupling_length_empirical, fit_coupling_length,
                     solve_dispersion)

__version__ = "0.1.0"
