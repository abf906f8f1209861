"""Maximally efficient Hamiltonians for a prescribed trajectory.

Given a state path, fix its gauge (unit norm, parallel transport) to get
``m(t)``, then build the family

    H0(t; g) = i |dm><m| - i g |m><dm|

which drives ``m`` exactly and saturates the spectral-norm speed bound for
``|g| <= 1``.  ``g = 1`` is Hermitian; ``g = 0`` is a rank-one nilpotent
generator sitting at an exceptional point at every instant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bounds import check_same_grid, efficiency
from .errors import DimensionMismatch, GridMismatch, InvariantViolation, NotClosed, TooFewSamples, ValidationError, ZeroVector
from .geometry import ZERO_NORM, SampledPath, differentiate_path, fs_angle
from .linalg import hs_norm, spectral_norm
from .propagate import HamiltonianPath
from .trajectories import Trajectory

__all__ = [
    "GaugeFixedPath",
    "SynthesisResult",
    "gauge_fix",
    "synthesize",
    "efficient_hamiltonian",
    "efficiency",
    "ep_generator",
    "phase_perturb",
    "dynamical_phase",
    "geometric_phase",
]

CLOSURE_TOL = 1e-6
EP_TOL = 1e-10


@dataclass(frozen=True)
class GaugeFixedPath:
    """``path.states`` holds m(t), ``path.derivatives`` holds dm/dt.

    ``gauge_factor`` is c(t) with m(t) = c(t) psi(t).
    """

    path: SampledPath
    gauge_factor: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return self.path.times

    @property
    def m(self) -> np.ndarray:
        return self.path.states

    @property
    def dm(self) -> np.ndarray:
        return self.path.derivatives


@dataclass(frozen=True)
class SynthesisResult:
    gauge: GaugeFixedPath
    g: np.ndarray
    h0: HamiltonianPath
    e_plus: np.ndarray
    e_minus: np.ndarray
    sp_norm: np.ndarray
    hs_norm: np.ndarray
    speed: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return self.gauge.times


def _rowdot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sum(a.conj() * b, axis=1)


def gauge_fix(path: SampledPath) -> GaugeFixedPath:
    """Normalise and parallel-transport a sampled path.

    The transport phase is the trapezoid-rule integral of <chi|d chi>
    starting from zero at the first sample.  A final projection removes the
    O(h^2) residue of <m|dm> left by the quadrature.
    """
    if path.derivatives is None:
        if len(path) < 3:
            raise TooFewSamples(f"need at least 3 samples to differentiate, got {len(path)}")
        path = differentiate_path(path)
    if len(path) < 2:
        raise TooFewSamples("gauge fixing needs at least 2 samples")
    psi, dpsi = path.states, path.derivatives
    r = np.linalg.norm(psi, axis=1)
    if np.any(~(r >= ZERO_NORM)):
        k = int(np.argmax(~(r >= ZERO_NORM)))
        raise ZeroVector(f"zero state at t={path.times[k]}")
    chi = psi / r[:, None]
    overlap = _rowdot(chi, dpsi) / r
    dchi = dpsi / r[:, None] - overlap.real[:, None] * chi
    connection = 1j * overlap.imag
    h = path.step
    phase = np.concatenate(([0.0], np.cumsum(0.5 * h * (connection[1:] + connection[:-1]))))
    factor = np.exp(-phase)
    m = factor[:, None] * chi
    dm = factor[:, None] * (dchi - connection[:, None] * chi)
    dm = dm - _rowdot(m, dm)[:, None] * m
    return GaugeFixedPath(SampledPath(path.times, m, dm), factor / r)


def _g_array(g, n: int) -> np.ndarray:
    arr = np.asarray(g, dtype=np.complex128)
    if arr.ndim == 0:
        arr = np.full(n, complex(arr))
    if arr.shape != (n,):
        raise GridMismatch(f"g series has {arr.shape} entries, grid has {n}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("g must be finite")
    return arr


def _ansatz(m: np.ndarray, dm: np.ndarray, g: np.ndarray) -> np.ndarray:
    a = np.einsum("ti,tj->tij", dm, m.conj())
    b = np.einsum("ti,tj->tij", m, dm.conj())
    return 1j * a - 1j * g[:, None, None] * b


def synthesize(gauge: GaugeFixedPath, g) -> SynthesisResult:
    """Build H0(t; g) on the gauge-fixed grid, with its closed-form norms."""
    m, dm = gauge.m, gauge.dm
    gs = _g_array(g, m.shape[0])
    speed2 = _rowdot(dm, dm).real
    speed = np.sqrt(speed2)
    root = np.sqrt(gs) * speed
    mats = _ansatz(m, dm, gs)
    return SynthesisResult(
        gauge=gauge,
        g=gs,
        h0=HamiltonianPath.sampled(gauge.times, mats),
        e_plus=root,
        e_minus=-root,
        sp_norm=speed * np.maximum(1.0, np.abs(gs)),
        hs_norm=np.sqrt((1.0 + np.abs(gs) ** 2) * speed2),
        speed=speed,
    )


def efficient_hamiltonian(trajectory: Trajectory, g: complex | Callable[[float], complex] = 1.0) -> HamiltonianPath:
    """H0(t; g) as a generator, for trajectories with an exact derivative.

    H0 depends on the ray only through the normalised state and the part of
    its derivative orthogonal to it, so no transport phase is needed.
    """
    if not trajectory.analytic:
        raise ValidationError("an analytic Hamiltonian needs a trajectory with an exact derivative")
    g_of_t = g if callable(g) else (lambda t, _g=complex(g): _g)

    def generator(t: float) -> np.ndarray:
        psi = np.asarray(trajectory.state(t), dtype=np.complex128)
        dpsi = np.asarray(trajectory.derivative(t), dtype=np.complex128)
        r = np.linalg.norm(psi)
        if not r >= ZERO_NORM:
            raise ZeroVector(f"zero state at t={t}")
        chi = psi / r
        d = (dpsi - np.vdot(chi, dpsi) * chi) / r
        return 1j * np.outer(d, chi.conj()) - 1j * g_of_t(t) * np.outer(chi, d.conj())

    return HamiltonianPath.analytic(generator, trajectory.dim)


def ep_generator(gauge: GaugeFixedPath) -> SynthesisResult:
    """The g = 0 member; checks nilpotency and HS = SP at every sample."""
    result = synthesize(gauge, 0.0)
    for t, h in zip(result.times, result.h0.matrices):
        hs = hs_norm(h)
        if hs_norm(h @ h) > EP_TOL * hs * hs:
            raise InvariantViolation(f"H0^2 does not vanish at t={t}")
        if abs(spectral_norm(h) - hs) > EP_TOL * hs:
            raise InvariantViolation(f"spectral and HS norms differ at t={t}")
    return result


def phase_perturb(result: SynthesisResult, phi_dot) -> HamiltonianPath:
    """H0 + phi_dot(t) D(t), with D = |m><m| - (1 - |m><m|)/(N-1).

    D is the traceless part of the phase-generating projector |m><m|,
    rescaled so that <m|D|m> = 1. The ray motion (and K) is unchanged,
    <m|H_new|m> = phi_dot, and since efficiency ignores the trace, this is
    the form whose extra phase rate actually costs spectral norm.
    """
    n = result.times.shape[0]
    pd = np.asarray(phi_dot, dtype=np.complex128)
    if pd.ndim == 0:
        pd = np.full(n, complex(pd))
    if pd.shape != (n,):
        raise GridMismatch(f"phi_dot has {pd.shape} entries, grid has {n}")
    m = result.gauge.m
    dim = m.shape[1]
    if dim < 2:
        raise DimensionMismatch("phase perturbation needs at least two levels")
    proj = np.einsum("ti,tj->tij", m, m.conj())
    diag = proj - (np.eye(dim) - proj) / (dim - 1)
    return HamiltonianPath.sampled(result.times, result.h0.matrices + pd[:, None, None] * diag)


def dynamical_phase(H_path: HamiltonianPath, path: SampledPath) -> complex:
    """Trapezoid integral of <psi|H|psi>/<psi|psi> over the path's grid."""
    if H_path.is_sampled:
        check_same_grid(H_path.times, path.times, "Hamiltonian and state grids")
        mats = H_path.matrices
    else:
        mats = H_path.on_times(path.times)
    s = path.states
    expect = np.einsum("ti,tij,tj->t", s.conj(), mats, s) / _rowdot(s, s).real
    if len(path) < 2:
        return 0j
    return complex(np.sum(0.5 * path.step * (expect[1:] + expect[:-1])))


def geometric_phase(path: SampledPath) -> float:
    """arg <psi(0)|psi(T)> in (-pi, pi] for a path closed in projective space."""
    a, b = path.states[0], path.states[-1]
    if fs_angle(a, b) > CLOSURE_TOL:
        raise NotClosed("path does not return to its initial ray")
    phase = float(np.angle(np.vdot(a, b)))
    return np.pi if phase <= -np.pi else phase
