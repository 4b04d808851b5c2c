"""Spreading statistics for walks on the line."""
import numpy as np
from scipy import stats

from ..errors import DegenerateFitError

MIN_TIME_POINTS = 10


def position_variance(positions, probs):
    x = np.asarray(positions, dtype=float)
    p = np.asarray(probs, dtype=float)
    mean = np.dot(p, x)
    return float(np.dot(p, (x - mean) ** 2))


def classical_walk_distribution(steps):
    """Unbiased +-1 random walk after ``steps`` steps: positions -t..t and binomial weights."""
    k = np.arange(steps + 1)
    return 2 * k - steps, stats.binom.pmf(k, steps, 0.5)


def variance_exponent(times, variances):
    """Exponent ``a`` of a least-squares fit ``log var = a log t + c``."""
    t = np.asarray(times, dtype=float)
    v = np.asarray(variances, dtype=float)
    if t.size < MIN_TIME_POINTS:
        raise DegenerateFitError(f"need at least {MIN_TIME_POINTS} time points, got {t.size}")
    if np.any(t <= 0) or np.any(v <= 0):
        raise DegenerateFitError("log-log fit needs positive times and variances")
    slope, _ = np.polyfit(np.log(t), np.log(v), 1)
    return float(slope)


def walk_variance(times, traces):
    """Variance exponent of position distributions.

    ``traces[i]`` is a ``(positions, probs)`` pair observed at ``times[i]``.
    """
    variances = [position_variance(x, p) for x, p in traces]
    return variance_exponent(times, variances)
