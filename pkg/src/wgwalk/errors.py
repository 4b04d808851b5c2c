"""Exception hierarchy shared by all wgwalk modules."""


class WgwalkError(Exception):
    """Base class for every error raised by this package."""


class MultiModeError(WgwalkError):
    """The guide supports more than the fundamental mode (V >= 2.405)."""


class NoSolutionError(WgwalkError):
    """The dispersion root could not be bracketed."""


class GeometryError(WgwalkError):
    """Waveguide cores overlap or the layout is otherwise unphysical."""


class DegenerateFitError(WgwalkError):
    """A least-squares fit has too few or degenerate samples."""


class ToleranceError(WgwalkError):
    """The ODE integrator could not meet the requested tolerance."""


class NotStaticError(WgwalkError):
    """A z-independent coupling model was required."""


class NotCirculantError(WgwalkError):
    """A circulant coupling matrix was required."""


class ScaleError(WgwalkError):
    """Requested problem is larger than the supported desk-scale limit."""


class NonUnitaryCoinError(WgwalkError):
    """Beamsplitter coefficients violate |r|^2 + |t|^2 = 1."""


class NonUnitaryError(WgwalkError):
    """A transfer matrix is not unitary."""


class DegenerateInputError(WgwalkError):
    """Input guides are invalid for the requested two-photon state."""


class ConfigError(WgwalkError):
    """Experiment configuration failed validation.

    ``key`` holds the dotted path of the offending entry.
    """

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key
        self.message = message


class OutputError(WgwalkError):
    """Output could not be written (non-finite data or I/O failure)."""
