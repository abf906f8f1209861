import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from effham.bounds import CSV_COLUMNS, bound_report, efficiency, fleming_bound, report_path
from effham.errors import DimensionMismatch, GridMismatch, NotHermitian, ZeroVector
from effham.geometry import SampledPath
from effham.linalg import numerical_rank, trace_split
from effham.propagate import HamiltonianPath, PropagationOptions, propagate
from effham.scenarios import brachistochrone_hamiltonian, optical_hamiltonian
from effham.synthesis import gauge_fix, synthesize
from effham.trajectories import great_circle

from oracles import equatorial_state, random_hermitian_traceless_2x2
from strategies import matrix_and_state

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


def test_report_examples():
    r = bound_report(SY, [1, 0], t=0.5)
    assert (r.t, r.k, r.sp_norm, r.eta, r.fleming_bound) == (0.5, 1.0, 1.0, 1.0, 2.0)
    assert r.hs_norm == pytest.approx(math.sqrt(2), rel=1e-15)
    assert r.bloch == (0.0, 0.0, 1.0)
    r = bound_report(SZ, [1, 0])
    assert r.k == 0.0 and r.eta == 0.0
    r = bound_report(brachistochrone_hamiltonian(1.0, math.pi / 6), [1, 0])
    assert r.sp_norm == pytest.approx(1.5, rel=1e-14) and r.fleming_bound is None


def test_report_zero_hamiltonian_has_undefined_eta():
    r = bound_report(np.zeros((2, 2)), [1, 0])
    assert r.eta is None and not r.eta_defined
    r = bound_report(3.0 * np.eye(3), [1, 0, 0])  # pure trace: traceless part vanishes
    assert r.eta is None and r.sp_norm == 0.0


def test_report_higher_dim_has_no_bloch():
    r = bound_report(np.diag([1.0, 2.0, 3.0]), [1, 1, 0])
    assert r.bloch is None and r.fleming_bound is None


@given(matrix_and_state(), st.complex_numbers(min_magnitude=1e-2, max_magnitude=1e2, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=1e2, allow_nan=False, allow_infinity=False))
def test_report_chain_and_invariance(hp, c, mu):
    h, psi = hp
    r = bound_report(h, psi)
    tol = 1e-10 * max(r.hs_norm, 1e-300)
    assert r.fs_speed <= r.sp_norm + tol <= r.hs_norm + 2 * tol
    traceless, _ = trace_split(h)
    if r.sp_norm > 0:
        assert r.hs_norm <= math.sqrt(numerical_rank(traceless)) * r.sp_norm + tol
    if r.eta is not None:
        assert 0.0 <= r.eta <= 1.0 + 1e-10
    for other in (bound_report(h, c * psi), bound_report(h + mu * np.eye(h.shape[0]), psi)):
        scale = max(r.hs_norm, 1e-300)
        assert abs(other.k - r.k) <= 1e-11 * scale**2
        assert abs(other.sp_norm - r.sp_norm) <= 1e-11 * scale
        assert abs(other.hs_norm - r.hs_norm) <= 1e-11 * scale


def test_fleming_examples(rng):
    assert fleming_bound(SZ) == 2.0
    assert fleming_bound(SX / 2) == pytest.approx(1.0, rel=1e-15)
    assert fleming_bound(SZ + 5 * np.eye(2)) == 2.0
    with pytest.raises(NotHermitian):
        fleming_bound(brachistochrone_hamiltonian(1.0, 0.3))
    with pytest.raises(DimensionMismatch):
        fleming_bound(np.eye(3))
    for _ in range(200):
        h = random_hermitian_traceless_2x2(rng)
        psi = rng.normal(size=2) + 1j * rng.normal(size=2)
        r = bound_report(h, psi)
        assert 2 * r.fs_speed <= r.fleming_bound * (1 + 1e-11)
        assert 2 * bound_report(h, equatorial_state(h)).fs_speed == pytest.approx(r.fleming_bound, rel=1e-9)


def test_efficiency_wrapper():
    assert efficiency(SY, [1, 0]) == 1.0
    with pytest.raises(ZeroVector):
        efficiency(SY, [0, 0])
    with pytest.raises(DimensionMismatch):
        efficiency(SY, [1, 0, 0])


def test_report_path_examples():
    t = np.linspace(0, 1, 5)
    path = SampledPath(t, np.tile([1.0, 0.0], (5, 1)))
    rows = report_path(HamiltonianPath.constant(np.zeros((2, 2))), path)
    assert [r.t for r in rows] == list(t)
    assert all(r.k == 0 and r.eta is None for r in rows)

    gauge = gauge_fix(great_circle().sample(0.0, 3.0, 1e-3))
    res = synthesize(gauge, 1.0)
    rows = report_path(res.h0, SampledPath(res.times, gauge.m))
    assert max(abs(r.eta - 1) for r in rows) <= 1e-8

    H = HamiltonianPath.analytic(lambda z: optical_hamiltonian(z), 2)
    run = propagate(H, np.array([1, 1]) / math.sqrt(2), 0.0, 2.0, PropagationOptions(step=1e-3, record_every=10))
    for r in report_path(H, run):
        q = r.t
        assert r.fs_speed <= max(1.0, q) * (1 + 1e-10) <= math.sqrt(1 + q * q) * (1 + 1e-10)


def test_report_path_grid_mismatch():
    t = np.linspace(0, 1, 5)
    H = HamiltonianPath.sampled(t, np.tile(SY, (5, 1, 1)))
    with pytest.raises(GridMismatch):
        report_path(H, SampledPath(np.linspace(0, 1, 6), np.tile([1.0, 0], (6, 1))))
    with pytest.raises(GridMismatch):
        report_path(H, SampledPath(np.linspace(0, 2, 5), np.tile([1.0, 0], (5, 1))))


def test_record_column_order():
    rec = bound_report(SY, [1, 0]).as_record()
    assert tuple(rec) == CSV_COLUMNS
