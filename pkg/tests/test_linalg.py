import math

import numpy as np
import pytest
from hypothesis import given

from effham._backend import AVAILABLE
from effham.errors import ConvergenceFailure, DimensionMismatch, ValidationError
from effham.linalg import (
    adjoint,
    eigenvalues_2x2,
    hs_norm,
    is_hermitian,
    numerical_rank,
    singular_values,
    spectral_norm,
    trace_split,
)
from effham.scenarios import brachistochrone_hamiltonian, pauli_hamiltonian

from oracles import power_spectral_norm, random_orthogonal_pair, trace_hs_norm
from strategies import complex_matrices

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)
NIL = np.array([[0, 1], [0, 0]], dtype=complex)


def test_adjoint_examples():
    assert np.array_equal(adjoint(NIL), [[0, 0], [1, 0]])
    assert np.array_equal(adjoint(np.diag([1j, -1j])), np.diag([-1j, 1j]))
    h = np.array([[1, 2 - 1j], [2 + 1j, -3]])
    assert np.array_equal(adjoint(h), h)


@given(complex_matrices())
def test_adjoint_involution(m):
    assert np.array_equal(adjoint(adjoint(m)), m)


def test_trace_split_examples(rng):
    t, mu = trace_split(np.eye(2))
    assert mu == 1 and np.array_equal(t, np.zeros((2, 2)))
    t, mu = trace_split(np.diag([2.0, 0.0]))
    assert mu == 1 and np.array_equal(t, np.diag([1.0, -1.0]))
    h = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    t, _ = trace_split(h)
    assert abs(sum(t[i, i] for i in range(4))) < 1e-13 * hs_norm(h)


def test_hs_norm_examples(rng):
    assert hs_norm(NIL) == 1.0
    assert hs_norm([[0, 1j], [-2j, 0]]) == pytest.approx(math.sqrt(5), rel=1e-15)
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert hs_norm(m) == pytest.approx(trace_hs_norm(m), rel=1e-12)


def test_singular_value_examples():
    assert np.allclose(singular_values(SX), [1, 1], atol=1e-15)
    assert np.allclose(singular_values(NIL), [1, 0], atol=1e-15)
    assert np.allclose(singular_values(brachistochrone_hamiltonian(1.0, math.pi / 2)), [2, 0], atol=1e-14)


def test_spectral_norm_examples(rng):
    assert spectral_norm(np.diag([3.0, -1.0])) == pytest.approx(3.0, rel=1e-15)
    assert spectral_norm(brachistochrone_hamiltonian(1.0, math.pi / 6)) == pytest.approx(1.5, rel=1e-14)
    m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    sp, mx = spectral_norm(m), np.max(np.abs(m))
    assert mx <= sp <= 5 * mx


@given(complex_matrices(max_dim=8))
def test_spectral_norm_matches_power_iteration(m):
    ref = power_spectral_norm(m)
    assert spectral_norm(m) == pytest.approx(ref, rel=1e-10, abs=1e-300)


@given(complex_matrices(max_dim=8))
def test_singular_value_invariants(m):
    sv = singular_values(m)
    assert np.all(np.diff(sv) <= 0) and np.all(sv >= 0)
    assert np.sum(sv**2) == pytest.approx(hs_norm(m) ** 2, rel=1e-11, abs=1e-300)
    assert spectral_norm(m) == pytest.approx(spectral_norm(adjoint(m)), rel=1e-12, abs=1e-300)
    eig = np.sort(np.linalg.eigvalsh(m.conj().T @ m))[::-1]
    assert np.allclose(sv**2, eig, atol=1e-10 * max(eig[0], 1e-300))


@given(complex_matrices(max_dim=8))
def test_norm_chain(m):
    sp, hs, rank = spectral_norm(m), hs_norm(m), numerical_rank(m)
    tol = 1e-10 * max(hs, 1e-300)
    assert sp <= hs + tol
    assert hs <= math.sqrt(rank) * sp + tol
    mx = np.max(np.abs(m))
    assert mx <= sp * (1 + 1e-12) + 1e-300
    assert sp <= m.shape[0] * mx * (1 + 1e-12) + 1e-300


def test_rank_examples():
    assert numerical_rank(np.eye(3), 1e-10) == 3
    assert numerical_rank(NIL, 1e-10) == 1
    assert numerical_rank(np.zeros((3, 3))) == 0
    m = np.array([0.6, 0.8j])
    dm = np.array([0.8, -0.6j]) * 1.7
    assert abs(np.vdot(m, dm)) < 1e-15
    assert numerical_rank(1j * np.outer(dm, m.conj())) == 1
    with pytest.raises(ValidationError):
        numerical_rank(NIL, -1.0)


def test_rank_one_nilpotent_norms_agree(rng):
    for _ in range(50):
        u = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = np.array([-np.conj(u[1]), np.conj(u[0])])  # <v|u> = 0, so (|u><v|)^2 = 0 -> u v^dag nilpotent
        m = np.outer(u, v.conj()) * rng.uniform(0.1, 5)
        assert np.allclose(m @ m, 0, atol=1e-12 * hs_norm(m) ** 2)
        assert abs(spectral_norm(m) - hs_norm(m)) <= 1e-12 * hs_norm(m)


def test_eigenvalue_examples():
    spec = eigenvalues_2x2(SZ)
    assert (spec.e_plus, spec.e_minus, spec.delta_e) == (1, -1, 2)
    spec = eigenvalues_2x2(brachistochrone_hamiltonian(1.0, math.pi / 6))
    assert abs(spec.delta_e) == pytest.approx(math.sqrt(3), rel=1e-14)
    rng = np.random.default_rng(5)
    a, b = random_orthogonal_pair(rng)
    b *= np.linalg.norm(a) / np.linalg.norm(b)
    spec = eigenvalues_2x2(pauli_hamiltonian(a, b))
    assert abs(spec.delta_e) < 1e-7 * np.linalg.norm(a)  # square root of an O(eps) discriminant


@given(complex_matrices(2, 2))
def test_eigenvalue_residual_and_trace(m):
    spec = eigenvalues_2x2(m)
    scale = 1 + hs_norm(m) ** 2
    for r in (spec.e_plus, spec.e_minus):
        assert abs(np.linalg.det(m - r * np.eye(2))) <= 1e-11 * scale
    assert abs(spec.e_plus + spec.e_minus - np.trace(m)) <= 1e-12 * (1 + hs_norm(m))
    t, _ = trace_split(m)
    ts = eigenvalues_2x2(t)
    assert abs(ts.e_plus + ts.e_minus) <= 1e-12 * (1 + hs_norm(m))
    exact = np.array([[m[0, 0], m[0, 1]], [m[1, 0], -m[0, 0]]])
    es = eigenvalues_2x2(exact)
    assert es.e_plus == -es.e_minus


def test_errors():
    with pytest.raises(DimensionMismatch):
        eigenvalues_2x2(np.eye(3))
    with pytest.raises(DimensionMismatch):
        singular_values(np.eye(65))
    with pytest.raises(DimensionMismatch):
        hs_norm(np.ones((2, 3)))
    with pytest.raises(ValidationError):
        spectral_norm([[np.nan, 0], [0, 1]])
    with pytest.raises(ConvergenceFailure):
        singular_values(np.random.default_rng(0).normal(size=(6, 6)), max_sweeps=1)


def test_is_hermitian():
    assert is_hermitian(SX) and not is_hermitian(NIL)


@pytest.mark.parametrize("backend", sorted(AVAILABLE))
def test_backends_agree_with_lapack(backend, rng):
    kern = AVAILABLE[backend]
    for n in (1, 2, 3, 6, 9):
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        sv, ok = kern.jacobi_singular_values(m, 1e-15, 60)
        assert ok
        assert np.allclose(np.sort(sv)[::-1], np.linalg.svd(m, compute_uv=False), rtol=1e-12, atol=1e-13)


@pytest.mark.parametrize("backend", sorted(AVAILABLE))
def test_backend_zero_and_rank_deficient(backend):
    kern = AVAILABLE[backend]
    sv, ok = kern.jacobi_singular_values(np.zeros((3, 3), dtype=complex), 1e-15, 60)
    assert ok and np.all(np.asarray(sv) == 0)
    sv, ok = kern.jacobi_singular_values(np.outer([1, 2j, 3], [1, 1, -1j]).astype(complex), 1e-15, 60)
    assert ok and np.sort(sv)[-1] == pytest.approx(math.sqrt(14 * 3), rel=1e-14)
