"""Reference implementations that share no code with the package.

Each oracle is deliberately naive: power iteration instead of Jacobi,
explicit basis completion instead of the projected kinetic scalar,
closed-form solutions instead of RK4.
"""

import math

import numpy as np


def power_spectral_norm(M, tol=1e-12, max_iter=100_000, seed=7):
    """Largest singular value via power iteration on M^dag M."""
    M = np.asarray(M, dtype=complex)
    G = M.conj().T @ M
    rng = np.random.default_rng(seed)
    v = rng.normal(size=M.shape[1]) + 1j * rng.normal(size=M.shape[1])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = G @ v
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            return 0.0
        new = float(np.vdot(v, w).real)
        v = w / nrm
        if abs(new - lam) <= tol * max(abs(new), 1e-300):
            lam = new
            break
        lam = new
    return math.sqrt(max(lam, 0.0))


def trace_hs_norm(M):
    M = np.asarray(M, dtype=complex)
    return math.sqrt(abs(np.trace(M.conj().T @ M)))


def complete_basis(psi, seed=11):
    """Orthonormal basis (columns) whose first vector is psi/|psi|, by Gram-Schmidt."""
    psi = np.asarray(psi, dtype=complex)
    n = psi.shape[0]
    rng = np.random.default_rng(seed)
    basis = [psi / np.linalg.norm(psi)]
    while len(basis) < n:
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        for b in basis:
            v = v - np.vdot(b, v) * b
        for b in basis:  # second pass for stability
            v = v - np.vdot(b, v) * b
        basis.append(v / np.linalg.norm(v))
    return np.column_stack(basis)


def transition_rate_k(H, psi):
    """K as the total transition rate out of psi: sum_{k != j} |<k|H|j>|^2."""
    Q = complete_basis(psi)
    col = Q.conj().T @ np.asarray(H, dtype=complex) @ Q[:, 0]
    return float(np.sum(np.abs(col[1:]) ** 2))


def naive_k(H, psi):
    """<H^dag H> - |<H>|^2 for a normalised state (may round below zero)."""
    H = np.asarray(H, dtype=complex)
    p = np.asarray(psi, dtype=complex)
    p = p / np.linalg.norm(p)
    return float(np.vdot(H @ p, H @ p).real - abs(np.vdot(p, H @ p)) ** 2)


def sigma_y_solution(t):
    """psi(t) = exp(-i sigma_y t) (1, 0)."""
    return np.array([math.cos(t), math.sin(t)], dtype=complex)


def bloch_from_angles(theta, phi):
    return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])


def random_hermitian_traceless_2x2(rng):
    a = rng.normal(size=3)
    return a[0] * np.array([[0, 1], [1, 0]]) + a[1] * np.array([[0, -1j], [1j, 0]]) + a[2] * np.diag([1.0, -1.0])


def equatorial_state(H):
    """Equal superposition of the two eigenvectors of a Hermitian 2x2 H (maximises K)."""
    _, vecs = np.linalg.eigh(H)
    return (vecs[:, 0] + vecs[:, 1]) / math.sqrt(2)


def random_orthogonal_pair(rng):
    a = rng.normal(size=3)
    b = rng.normal(size=3)
    b -= a * (a @ b) / (a @ a)
    return a, b


def brachistochrone_closed_form(alpha, delta_e=1.0):
    """(s, SP, ratio) at fixed |Delta E| for s [[i sin a, 1], [1, -i sin a]]."""
    s = delta_e / (2.0 * math.cos(alpha))
    sp = abs(s) * (1.0 + abs(math.sin(alpha)))
    return s, sp, delta_e / sp
