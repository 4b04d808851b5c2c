import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from wgwalk.correlations import (CORRELATORS, coincidence_visibility, corr_classical_phase_averaged,
                                 corr_distinguishable, corr_indistinguishable,
                                 corr_path_entangled)
from wgwalk.errors import DegenerateInputError, NonUnitaryError
from wgwalk.evolution import transfer_matrix
from wgwalk.geometry import build_planar
from wgwalk.optics import WaveguideSpec

from oracles import coupler, distinguishable_correlation, fock_correlation

HALF = coupler(math.pi / 4)


def haar(n, seed):
    return unitary_group.rvs(n, random_state=seed)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_indistinguishable_matches_fock(n, seed):
    u = haar(n, seed)
    for k in range(n):
        for l in range(k, n):
            ref = fock_correlation(u, {(k, l): 1.0})
            got = corr_indistinguishable(u, k, l).gamma
            assert np.max(np.abs(got - ref)) < 1e-10


@pytest.mark.parametrize("n", [2, 3, 4])
def test_entangled_matches_fock(n):
    u = haar(n, 10 + n)
    for phase in (0.0, 0.7, math.pi):
        for k in range(n):
            for l in range(k + 1, n):
                state = {(k, k): 1 / math.sqrt(2), (l, l): np.exp(1j * phase) / math.sqrt(2)}
                ref = fock_correlation(u, state)
                got = corr_path_entangled(u, k, l, phase).gamma
                assert np.max(np.abs(got - ref)) < 1e-10


@pytest.mark.parametrize("n", [2, 3, 5])
def test_distinguishable_matches_product(n):
    u = haar(n, 20 + n)
    got = corr_distinguishable(u, 0, n - 1).gamma
    assert np.max(np.abs(got - distinguishable_correlation(u, 0, n - 1))) < 1e-12


def test_hong_ou_mandel():
    quantum = corr_indistinguishable(HALF, 0, 1)
    assert quantum.coincidence(0, 1) < 1e-10
    assert quantum.gamma[0, 0] == pytest.approx(0.5, abs=1e-12)
    dist = corr_distinguishable(HALF, 0, 1)
    classical = corr_classical_phase_averaged(HALF, 0, 1)
    assert dist.coincidence(0, 1) == pytest.approx(0.5, abs=1e-12)
    assert classical.coincidence(0, 1) == pytest.approx(0.5 * dist.coincidence(0, 1), abs=1e-12)
    assert coincidence_visibility(quantum, dist, 0, 1) == pytest.approx(1.0, abs=1e-10)
    assert coincidence_visibility(classical, dist, 0, 1) == pytest.approx(0.5, abs=1e-12)
    ref = fock_correlation(HALF, {(0, 1): 1.0})
    assert np.max(np.abs(quantum.gamma - ref)) < 1e-10


@pytest.mark.parametrize("seed", [3, 4, 5, 6])
def test_classical_visibility_bound(seed):
    u = haar(4, seed)
    for q in range(4):
        for r in range(q + 1, 4):
            c = corr_classical_phase_averaged(u, 0, 2)
            d = corr_distinguishable(u, 0, 2)
            assert c.coincidence(q, r) >= 0.5 * d.coincidence(q, r) - 1e-12


def test_classical_sampled_equals_closed_form():
    u = haar(5, 7)
    closed = corr_classical_phase_averaged(u, 1, 3).gamma
    sampled = corr_classical_phase_averaged(u, 1, 3, n_phases=256).gamma
    assert np.max(np.abs(closed - sampled)) < 1e-12
    assert np.max(np.abs(corr_classical_phase_averaged(u, 1, 3, n_phases=8).gamma - closed)) < 1e-12
    with pytest.raises(ValueError):
        corr_classical_phase_averaged(u, 1, 3, n_phases=4)


@pytest.mark.parametrize("kind", sorted(CORRELATORS))
def test_normalised_and_symmetric(kind):
    u = haar(6, 8)
    g = CORRELATORS[kind](u, 1, 4).gamma
    assert g.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(g, g.T, atol=1e-15) and np.all(g >= 0)


def test_mirror_covariance():
    spec = WaveguideSpec()
    u = transfer_matrix(build_planar(7, 10.0, spec), 9000.0)
    p = np.eye(7)[::-1]
    for kind, fn in CORRELATORS.items():
        g = fn(u, 1, 2).gamma
        mirrored = fn(u, 5, 4).gamma
        assert np.max(np.abs(p @ g @ p - mirrored)) < 1e-12, kind


def test_input_validation():
    with pytest.raises(NonUnitaryError):
        corr_indistinguishable(np.array([[1.0, 1.0], [0.0, 1.0]]), 0, 1)
    with pytest.raises(DegenerateInputError):
        corr_path_entangled(HALF, 1, 1)
    with pytest.raises(IndexError):
        corr_distinguishable(HALF, 0, 2)
    # both photons in one guide is allowed for identical photons
    g = corr_indistinguishable(HALF, 0, 0).gamma
    assert np.max(np.abs(g - fock_correlation(HALF, {(0, 0): 1.0}))) < 1e-12
