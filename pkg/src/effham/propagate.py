"""Fixed-step RK4 integration of i d/dt psi = H(t) psi for (generally
non-Hermitian) Hamiltonians, plus projective comparison of trajectories."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._backend import kernels
from .bounds import check_same_grid
from .errors import DimensionMismatch, GridMismatch, Overflow, StepTooLarge, ValidationError, ZeroVector
from .geometry import ZERO_NORM, SampledPath, fs_angles, uniform_spacing
from .linalg import as_matrix, as_vector

OVERFLOW_NORM = 1e150
# bound on complex128 entries handed to the kernel per chunk
_CHUNK_ENTRIES = 1 << 20


@dataclass(frozen=True)
class HamiltonianPath:
    """H(t) given either by a generator ``t -> matrix`` or by uniform samples.

    Sampled paths are linearly interpolated entry by entry between grid points.
    """

    dim: int
    generator: Callable[[float], np.ndarray] | None = None
    times: np.ndarray | None = None
    matrices: np.ndarray | None = None

    @classmethod
    def analytic(cls, generator: Callable[[float], np.ndarray], dim: int | None = None) -> HamiltonianPath:
        if dim is None:
            dim = as_matrix(generator(0.0)).shape[0]
        return cls(dim=dim, generator=generator)

    @classmethod
    def constant(cls, M) -> HamiltonianPath:
        m = as_matrix(M).copy()
        m.flags.writeable = False
        return cls(dim=m.shape[0], generator=lambda t: m)

    @classmethod
    def sampled(cls, times, matrices) -> HamiltonianPath:
        times = np.array(times, dtype=np.float64)
        mats = np.array(matrices, dtype=np.complex128)
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2] or mats.shape[0] != times.shape[0]:
            raise DimensionMismatch(f"matrices of shape {mats.shape} do not match {times.shape[0]} times")
        if not np.all(np.isfinite(mats)):
            raise ValidationError("Hamiltonian samples have non-finite entries")
        uniform_spacing(times)
        times.flags.writeable = False
        mats.flags.writeable = False
        return cls(dim=mats.shape[1], times=times, matrices=mats)

    @property
    def is_sampled(self) -> bool:
        return self.matrices is not None

    @property
    def spacing(self) -> float:
        return uniform_spacing(self.times) if self.is_sampled else math.inf

    def at(self, t: float) -> np.ndarray:
        return self.on_times(np.array([t], dtype=np.float64))[0]

    def on_times(self, ts) -> np.ndarray:
        """Stack of H(t) for every t in ``ts``, shape (len(ts), N, N)."""
        ts = np.asarray(ts, dtype=np.float64)
        if not self.is_sampled:
            out = np.empty((ts.shape[0], self.dim, self.dim), dtype=np.complex128)
            for i, t in enumerate(ts):
                m = as_matrix(self.generator(float(t)))
                if m.shape[0] != self.dim:
                    raise DimensionMismatch(f"generator returned {m.shape} at t={t}, expected dim {self.dim}")
                out[i] = m
            return out
        grid, mats = self.times, self.matrices
        if grid.shape[0] == 1:
            if np.any(np.abs(ts - grid[0]) > 1e-12 * max(1.0, abs(grid[0]))):
                raise GridMismatch("single-sample Hamiltonian queried away from its time stamp")
            return np.repeat(mats, ts.shape[0], axis=0)
        h = (grid[-1] - grid[0]) / (grid.shape[0] - 1)
        u = (ts - grid[0]) / h
        slack = 1e-9
        if ts.size and (u.min() < -slack or u.max() > grid.shape[0] - 1 + slack):
            raise GridMismatch(
                f"requested times [{ts.min()}, {ts.max()}] outside sampled range [{grid[0]}, {grid[-1]}]"
            )
        nearest = np.rint(u)
        u = np.where(np.abs(u - nearest) < slack, nearest, u)
        i = np.clip(np.floor(u).astype(np.int64), 0, grid.shape[0] - 2)
        f = (u - i)[:, None, None]
        return (1.0 - f) * mats[i] + f * mats[i + 1]


@dataclass(frozen=True)
class PropagationOptions:
    step: float = 1e-3
    renormalize: bool = False
    record_every: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0):
            raise ValidationError(f"integrator step must be positive, got {self.step}")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValidationError(f"record_every must be a positive integer, got {self.record_every}")


def _step_count(t0: float, t1: float, step: float) -> int:
    span = t1 - t0
    n = max(1, int(round(span / step)))
    if abs(n * step - span) > 1e-9 * span:
        n = math.ceil(span / step)
    return n


def propagate(H: HamiltonianPath, psi0, t0: float, t1: float,
              opts: PropagationOptions | None = None) -> SampledPath:
    """Classical RK4 from ``t0`` to ``t1``.

    The step is shrunk, if needed, so the interval splits into whole steps.
    States are recorded every ``opts.record_every`` steps, starting at ``t0``.
    """
    opts = opts or PropagationOptions()
    psi = as_vector(psi0)
    if np.linalg.norm(psi) < ZERO_NORM:
        raise ZeroVector("initial state is zero")
    if psi.shape[0] != H.dim:
        raise DimensionMismatch(f"state has {psi.shape[0]} entries, Hamiltonian is {H.dim}x{H.dim}")
    if not (math.isfinite(t0) and math.isfinite(t1) and t1 > t0):
        raise ValidationError(f"need finite t1 > t0, got [{t0}, {t1}]")
    n = _step_count(t0, t1, opts.step)
    h = (t1 - t0) / n
    if H.is_sampled and h > H.spacing * (1 + 1e-9):
        raise StepTooLarge(f"step {h} exceeds the Hamiltonian grid spacing {H.spacing}")
    if opts.renormalize:
        psi = psi / np.linalg.norm(psi)

    chunk = max(1, _CHUNK_ENTRIES // (2 * H.dim * H.dim))
    pieces = [psi[None, :]]
    done = 0
    while done < n:
        c = min(chunk, n - done)
        half_idx = 2 * done + np.arange(2 * c + 1)
        stage_times = t0 + 0.5 * h * half_idx
        stage_times[-1] = t0 + (done + c) * h if done + c < n else t1
        states, failed = kernels.rk4_sweep(H.on_times(stage_times), psi, h, bool(opts.renormalize), OVERFLOW_NORM)
        if failed >= 0:
            raise Overflow(f"state norm exceeded {OVERFLOW_NORM:g} near t={t0 + (done + failed) * h:g}")
        pieces.append(states[1:])
        psi = states[-1]
        done += c
    states = np.concatenate(pieces, axis=0)
    idx = np.arange(0, n + 1, int(opts.record_every))
    times = t0 + idx * h
    return SampledPath(times, states[idx])


def phs_distance(a: SampledPath, b: SampledPath) -> float:
    """Largest Fubini-Study angle between the two paths at matching times."""
    check_same_grid(a.times, b.times, "paths")
    return float(np.max(fs_angles(a.states, b.states)))


def norm_history(path: SampledPath) -> list[tuple[float, float]]:
    norms = np.linalg.norm(path.states, axis=1)
    return [(float(t), float(v)) for t, v in zip(path.times, norms)]
