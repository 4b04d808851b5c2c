import math

import numpy as np
import pytest

from wgwalk.errors import GeometryError
from wgwalk.geometry import (CouplingModel, FanInPath, TubeGeometry, _pairwise_distances,
                             build_planar, build_tube, concatenate, fanin_coupling_profile,
                             raised_sine_path, with_length)
from wgwalk.optics import WaveguideSpec, coupling_coefficient, solve_dispersion

SPEC = WaveguideSpec()
MODAL = solve_dispersion(SPEC)


def C(d):
    return coupling_coefficient(SPEC, MODAL, d)


def test_planar_two_guides():
    m = build_planar(2, 10.0, SPEC)
    assert m.kappa.shape == (2, 2)
    assert m.kappa[0, 1] == m.kappa[1, 0] == C(10.0)
    assert m.beta == MODAL.beta


def test_planar_structure():
    m = build_planar(5, 10.0, SPEC)
    k = m.kappa
    assert np.all(np.triu(k, 2) == 0) and np.all(np.tril(k, -2) == 0)
    assert np.all(np.diag(k, 1) == C(10.0))

    nnn = build_planar(5, 10.0, SPEC, include_nnn=True).kappa
    assert nnn[0, 2] / nnn[0, 1] == pytest.approx(C(20.0) / C(10.0), rel=1e-14)
    assert 0 < nnn[0, 2] / nnn[0, 1] < 1
    assert np.all(np.triu(nnn, 3) == 0)


def test_planar_overlap_rejected():
    with pytest.raises(GeometryError):
        build_planar(4, 2.0, SPEC)
    with pytest.raises(GeometryError):
        build_planar(1, 10.0, SPEC)


def test_tube_chords():
    g = TubeGeometry(6, 7.0)
    assert g.chord(1) == pytest.approx(7.0, abs=1e-12)
    assert g.chord(2) == pytest.approx(7 * math.sqrt(3), abs=1e-12)
    assert g.chord(3) == pytest.approx(14.0, abs=1e-12)


@pytest.mark.parametrize("n, radius", [(3, 4.0), (5, 6.5), (6, 7.0), (8, 11.0), (11, 20.0)])
def test_tube_chords_match_coordinates(n, radius):
    g = TubeGeometry(n, radius)
    dist = _pairwise_distances(g.positions())
    for i in range(n):
        for j in range(n):
            k = min((i - j) % n, (j - i) % n)
            assert dist[i, j] == pytest.approx(g.chord(k), abs=1e-12)
    assert np.allclose(np.hypot(*g.positions().T), radius, atol=1e-12)


def test_tube_coupling_orders():
    g = TubeGeometry(6, 7.0)
    m3 = build_tube(g, SPEC, neighbour_orders=3)
    row = m3.kappa[0]
    assert row[1] == row[5] == pytest.approx(C(7.0), rel=1e-14)
    assert row[2] == row[4] == pytest.approx(C(7 * math.sqrt(3)), rel=1e-14)
    assert row[3] == pytest.approx(C(14.0), rel=1e-14)
    assert row[1] > row[2] > row[3] > 0
    assert len(np.unique(row[1:])) == 3

    m1 = build_tube(g, SPEC, neighbour_orders=1)
    assert np.count_nonzero(m1.kappa[0]) == 2
    m2 = build_tube(g, SPEC)
    assert m2.kappa[0, 3] == 0 and m2.kappa[0, 2] > 0


@pytest.mark.parametrize("n", [3, 4, 6, 7, 10])
def test_tube_is_circulant(n):
    m = build_tube(TubeGeometry(n, 8.0), SPEC, neighbour_orders=n // 2)
    k = m.kappa
    assert m.is_circulant()
    for i in range(n):
        for j in range(n):
            assert k[i, j] == k[(i + 1) % n, (j + 1) % n]
    assert np.array_equal(k, k.T) and np.all(np.diag(k) == 0) and np.all(k >= 0)


def test_triangle_all_equal():
    k = build_tube(TubeGeometry(3, 5.0), SPEC, neighbour_orders=3).kappa
    off = k[~np.eye(3, dtype=bool)]
    assert np.all(off == off[0]) and off[0] > 0


def test_tube_validation():
    with pytest.raises(GeometryError):
        TubeGeometry(2, 7.0)
    with pytest.raises(GeometryError):
        TubeGeometry(6, -1.0)
    with pytest.raises(GeometryError):
        build_tube(TubeGeometry(6, 2.0), SPEC)


def test_coupling_model_validation():
    with pytest.raises(ValueError):
        CouplingModel(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError):
        CouplingModel(np.array([[1.0, 1.0], [1.0, 0.0]]))
    m = build_planar(3, 10.0, SPEC)
    with pytest.raises(ValueError):
        m.kappa[0, 1] = 1.0
    assert not m.is_circulant()


def test_raised_sine():
    L = 8000.0
    path = raised_sine_path(-63.5, 7.0, L)
    assert path(0.0) == -63.5
    assert path(L) == pytest.approx(7.0, abs=1e-12)
    assert path(L / 2) == pytest.approx((-63.5 + 7.0) / 2, abs=1e-12)
    assert path(-5.0) == -63.5 and path(L + 5.0) == pytest.approx(7.0, abs=1e-12)
    h = 1e-3
    # one-sided differences; the true slope is O(z^2) near both ends
    assert abs((path(h) - path(0.0)) / h) < 1e-9
    assert abs((path(L) - path(L - h)) / h) < 1e-9
    flat = raised_sine_path(3.0, 3.0, L)
    assert np.all(flat(np.linspace(0, L, 11)) == 3.0)
    with pytest.raises(ValueError):
        raised_sine_path(0.0, 1.0, 0.0)


def test_raised_sine_vector_offsets():
    path = raised_sine_path([0.0, 0.0], [3.0, -4.0], 10.0)
    out = path(np.array([0.0, 5.0, 10.0]))
    assert out.shape == (3, 2)
    assert np.allclose(out[1], [1.5, -2.0], atol=1e-12)


@pytest.mark.parametrize("stages", [1, 2])
def test_fanin_endpoints(stages):
    fan = FanInPath(TubeGeometry(6, 7.0), stages=stages)
    start = fan.positions(0.0)[0]
    assert np.allclose(np.sort(start[:, 0]), (np.arange(6) - 2.5) * 127.0)
    assert np.all(start[:, 1] == 0)
    end = fan.positions(fan.length)[0]
    assert np.allclose(end, fan.tube.positions(), atol=1e-12)


@pytest.mark.parametrize("stages", [1, 2])
def test_fanin_profile_endpoints(stages):
    tube = TubeGeometry(6, 7.0)
    fan = FanInPath(tube, stages=stages, stage_length=4000.0)
    prof = fanin_coupling_profile(fan, SPEC, 401)
    assert prof.kappa_z[0].max() < 1e-20
    static = build_tube(tube, SPEC, neighbour_orders=3)
    assert np.allclose(prof.kappa_z[-1], static.kappa, rtol=1e-12, atol=0)
    assert np.array_equal(prof.kappa_at(fan.length), prof.kappa_z[-1])
    for k in prof.kappa_z:
        assert np.allclose(k, k.T, rtol=0, atol=1e-300) and np.all(np.diag(k) == 0)


def test_fanin_minimum_separation():
    for stages in (1, 2):
        fan = FanInPath(TubeGeometry(6, 7.0), stages=stages)
        pos = fan.positions(np.linspace(0, fan.length, 2001))
        off = ~np.eye(6, dtype=bool)
        mins = [_pairwise_distances(p)[off].min() for p in pos]
        assert min(mins) == pytest.approx(7.0, abs=1e-9)


def test_two_stage_intermediate_weaker():
    fan = FanInPath(TubeGeometry(6, 7.0), stages=2, intermediate_radius=14.0)
    prof = fanin_coupling_profile(fan, SPEC, 3)  # z = 0, stage boundary, end
    mid, end = prof.kappa_z[1], prof.kappa_z[-1]
    off = ~np.eye(6, dtype=bool)
    assert np.all(mid[off] < end[off])


def test_fanin_overlap_reported():
    fan = FanInPath(TubeGeometry(6, 7.0), stages=1, start_pitch=1.0)
    with pytest.raises(GeometryError):
        fanin_coupling_profile(fan, SPEC, 50)


def test_kappa_interpolation():
    k0 = np.zeros((2, 2))
    k1 = np.array([[0.0, 2e-4], [2e-4, 0.0]])
    m = CouplingModel(k1, z_grid=np.array([0.0, 100.0]), kappa_z=np.stack([k0, k1]))
    assert m.kappa_at(25.0)[0, 1] == pytest.approx(0.5e-4)
    assert m.kappa_at(-1.0)[0, 1] == 0 and m.kappa_at(1e9)[0, 1] == 2e-4


def test_concatenate_with_static_tail():
    tube = TubeGeometry(6, 7.0)
    fan = fanin_coupling_profile(FanInPath(tube), SPEC, 9)
    tail = with_length(build_tube(tube, SPEC, neighbour_orders=3), 12000.0)
    joined = concatenate(fan, tail)
    assert joined.z_grid[-1] == pytest.approx(fan.z_grid[-1] + 12000.0)
    assert np.array_equal(joined.kappa_at(joined.z_grid[-1] - 1.0), tail.kappa)
