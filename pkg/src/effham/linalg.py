"""Dense complex linear algebra for small matrices (N <= 64).

Vectors and matrices are plain ``numpy`` complex128 arrays; the helpers
``as_vector`` and ``as_matrix`` validate and coerce inputs.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import ConvergenceFailure, DimensionMismatch, ValidationError

MAX_DIM = 64
RANK_TOL = 1e-10
JACOBI_TOL = 1e-15
JACOBI_MAX_SWEEPS = 60


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.shape[0] < 1:
        raise DimensionMismatch(f"expected a 1-D state vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValidationError("state vector has non-finite entries")
    return v


def as_matrix(M) -> np.ndarray:
    m = np.asarray(M, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    return m


@dataclass(frozen=True)
class TwoLevelSpectrum:
    e_plus: complex
    e_minus: complex

    @property
    def delta_e(self) -> complex:
        return self.e_plus - self.e_minus


def adjoint(M) -> np.ndarray:
    return as_matrix(M).conj().T.copy()


def trace_split(H) -> tuple[np.ndarray, complex]:
    """Split ``H`` into its traceless part and ``mu = tr(H)/N``."""
    h = as_matrix(H)
    mu = complex(np.trace(h)) / h.shape[0]
    traceless = h - mu * np.eye(h.shape[0])
    return traceless, mu


def _hs(m: np.ndarray) -> float:
    flat = m.ravel()
    return float(np.sqrt(np.vdot(flat, flat).real))


def hs_norm(M) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return _hs(as_matrix(M))


def singular_values(M, *, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Singular values in nonincreasing order, by one-sided Jacobi.

    Raises ConvergenceFailure if the column orthogonalisation has not
    settled after ``max_sweeps`` sweeps.
    """
    return _singular_values(as_matrix(M), tol, max_sweeps)


def _singular_values(m: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    if m.shape[0] > MAX_DIM:
        raise DimensionMismatch(f"dimension {m.shape[0]} exceeds the dense limit {MAX_DIM}")
    sv, converged = kernels.jacobi_singular_values(m, tol, max_sweeps)
    if not converged:
        raise ConvergenceFailure(f"Jacobi SVD did not converge in {max_sweeps} sweeps")
    return np.sort(np.asarray(sv))[::-1]


def spectral_norm(M) -> float:
    return float(singular_values(M)[0])


def numerical_rank(M, tol: float = RANK_TOL) -> int:
    """Number of singular values above ``tol * sigma_max``."""
    if tol < 0:
        raise ValidationError("rank tolerance must be nonnegative")
    sv = singular_values(M)
    if sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > tol * sv[0]))


def eigenvalues_2x2(M) -> TwoLevelSpectrum:
    """Closed-form roots of the characteristic polynomial of a 2x2 matrix.

    ``e_plus`` takes the principal square root of the discriminant.
    """
    m = as_matrix(M)
    if m.shape != (2, 2):
        raise DimensionMismatch(f"eigenvalues_2x2 needs a 2x2 matrix, got {m.shape}")
    a, b, c, d = complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1])
    mean = 0.5 * (a + d)
    half = 0.5 * (a - d)
    root = cmath.sqrt(half * half + b * c)
    return TwoLevelSpectrum(mean + root, mean - root)


def is_hermitian(M, rel_tol: float = 1e-12) -> bool:
    m = as_matrix(M)
    return _hs(m - m.conj().T) <= rel_tol * _hs(m)
