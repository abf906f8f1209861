"""Projective Hilbert space geometry: Fubini-Study angle, kinetic scalar,
Bloch-sphere map, and sampled state paths."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NonuniformGrid, TooFewSamples, ValidationError, ZeroVector
from .linalg import as_matrix, as_vector

ZERO_NORM = 1e-300

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


def uniform_spacing(times: np.ndarray) -> float:
    """Grid step of a strictly increasing uniform grid (NaN for a single point)."""
    if times.ndim != 1 or times.size == 0:
        raise ValidationError("time grid must be a nonempty 1-D array")
    if not np.all(np.isfinite(times)):
        raise ValidationError("time grid has non-finite entries")
    if times.size == 1:
        return float("nan")
    dt = np.diff(times)
    if np.any(dt <= 0):
        raise NonuniformGrid("time grid is not strictly increasing")
    h = (times[-1] - times[0]) / (times.size - 1)
    slack = 1e-12 * h + 8 * np.finfo(float).eps * np.max(np.abs(times))
    if np.max(np.abs(dt - h)) > slack:
        raise NonuniformGrid("time grid is not uniform")
    return float(h)


@dataclass(frozen=True)
class SampledPath:
    """States ``psi(t_k)`` on a uniform grid, optionally with derivatives."""

    times: np.ndarray
    states: np.ndarray
    derivatives: np.ndarray | None = None
    step: float = field(init=False)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        states = np.asarray(self.states, dtype=np.complex128)
        if states.ndim != 2 or states.shape[0] != times.shape[0]:
            raise DimensionMismatch(
                f"{times.shape[0]} times but states have shape {states.shape}"
            )
        if not np.all(np.isfinite(states)):
            raise ValidationError("path states have non-finite entries")
        object.__setattr__(self, "step", uniform_spacing(times))
        object.__setattr__(self, "times", _frozen(times))
        object.__setattr__(self, "states", _frozen(states))
        if self.derivatives is not None:
            der = np.asarray(self.derivatives, dtype=np.complex128)
            if der.shape != states.shape:
                raise DimensionMismatch("derivatives must have the same shape as states")
            object.__setattr__(self, "derivatives", _frozen(der))

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def __len__(self) -> int:
        return self.times.shape[0]


def _unit(v: np.ndarray) -> np.ndarray:
    nrm = np.linalg.norm(v)
    if not nrm >= ZERO_NORM:
        raise ZeroVector("state has (numerically) zero norm")
    return v / nrm


def fs_angles(A, B) -> np.ndarray:
    """Row-wise Fubini-Study angles in [0, pi/2] between two stacks of states.

    Evaluated as ``atan2(sin, cos)`` with the sine taken from the Lagrange
    identity, so small angles keep full relative precision and the result
    is exactly symmetric in its arguments.
    """
    A = np.atleast_2d(np.asarray(A, dtype=np.complex128))
    B = np.atleast_2d(np.asarray(B, dtype=np.complex128))
    if A.shape != B.shape:
        raise DimensionMismatch(f"state stacks differ in shape: {A.shape} vs {B.shape}")
    na = np.linalg.norm(A, axis=1)
    nb = np.linalg.norm(B, axis=1)
    if not (np.all(na >= ZERO_NORM) and np.all(nb >= ZERO_NORM)):
        raise ZeroVector("state has (numerically) zero norm")
    A = A / na[:, None]
    B = B / nb[:, None]
    # everything in real arithmetic: complex multiply may fuse operations,
    # which would break exact symmetry under a <-> b
    ar, ai = A.real, A.imag
    br, bi = B.real, B.imag
    cos = np.hypot(np.sum(ar * br + ai * bi, axis=1), np.sum(ar * bi - ai * br, axis=1))
    # wedge a_i b_j - a_j b_i
    re = ar[:, :, None] * br[:, None, :] - ai[:, :, None] * bi[:, None, :]
    im = ar[:, :, None] * bi[:, None, :] + ai[:, :, None] * br[:, None, :]
    re = re - np.swapaxes(re, 1, 2)
    im = im - np.swapaxes(im, 1, 2)
    sin = np.sqrt(0.5 * np.sum(re * re + im * im, axis=(1, 2)))
    return np.arctan2(sin, cos)


def fs_angle(a, b) -> float:
    """Fubini-Study angle between the rays of ``a`` and ``b``."""
    a = as_vector(a)
    b = as_vector(b)
    if a.shape != b.shape:
        raise DimensionMismatch("states have different dimensions")
    return float(fs_angles(a, b)[0])


def kinetic_scalar(H, psi) -> float:
    """Squared Fubini-Study speed of ``psi`` under ``H``.

    Computed as the squared norm of the component of ``H|Psi>`` orthogonal
    to ``|Psi>``, which equals <H^dag H> - <H^dag><H> and cannot go negative.
    """
    h = as_matrix(H)
    p = _unit(as_vector(psi))
    if h.shape[0] != p.shape[0]:
        raise DimensionMismatch(f"H is {h.shape[0]}x{h.shape[0]} but state has {p.shape[0]} entries")
    hp = h @ p
    perp = hp - np.vdot(p, hp) * p
    return float(np.vdot(perp, perp).real)


def fs_speed(H, psi) -> float:
    return float(np.sqrt(kinetic_scalar(H, psi)))


def bloch_vector(psi) -> np.ndarray:
    p = as_vector(psi)
    if p.shape[0] != 2:
        raise DimensionMismatch("Bloch vector is defined for two-level states only")
    p = _unit(p)
    z = np.conj(p[0]) * p[1]
    return np.array([2 * z.real, 2 * z.imag, abs(p[0]) ** 2 - abs(p[1]) ** 2])


def bloch_speed(H, psi) -> float:
    """Angular speed of the Bloch vector, twice the Fubini-Study speed."""
    if as_vector(psi).shape[0] != 2:
        raise DimensionMismatch("Bloch speed is defined for two-level states only")
    return 2.0 * fs_speed(H, psi)


def differentiate_path(path: SampledPath) -> SampledPath:
    """Second-order finite-difference derivatives on the path's grid."""
    n = len(path)
    if n < 3:
        raise TooFewSamples(f"need at least 3 samples to differentiate, got {n}")
    s, h = path.states, path.step
    d = np.empty_like(s)
    d[1:-1] = (s[2:] - s[:-2]) / (2 * h)
    d[0] = (-3 * s[0] + 4 * s[1] - s[2]) / (2 * h)
    d[-1] = (3 * s[-1] - 4 * s[-2] + s[-3]) / (2 * h)
    return SampledPath(path.times, s, d)
