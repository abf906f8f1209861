"""Per-instant speed-bound reports and the efficiency figure of merit.

All norms refer to the traceless part of the Hamiltonian, since a trace
shift does not move the state in projective space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, GridMismatch, NotHermitian, ZeroVector
from .geometry import ZERO_NORM, SampledPath
from .linalg import _hs, _singular_values, as_matrix, as_vector, eigenvalues_2x2, hs_norm, trace_split

HERMITIAN_TOL = 1e-12
# spectral norms at or below this fraction of ||H||_HS count as a zero Hamiltonian
ZERO_SP_REL = 1e-14

CSV_COLUMNS = ("t", "k", "fs_speed", "sp_norm", "hs_norm", "eta", "state_norm", "nx", "ny", "nz", "fleming")


@dataclass(frozen=True)
class SpeedReportRow:
    t: float
    k: float
    fs_speed: float
    sp_norm: float
    hs_norm: float
    eta: float | None
    state_norm: float
    bloch: tuple[float, float, float] | None = None
    fleming_bound: float | None = None

    @property
    def eta_defined(self) -> bool:
        return self.eta is not None

    def as_record(self) -> dict:
        nx, ny, nz = self.bloch if self.bloch is not None else (None, None, None)
        return {
            "t": self.t,
            "k": self.k,
            "fs_speed": self.fs_speed,
            "sp_norm": self.sp_norm,
            "hs_norm": self.hs_norm,
            "eta": self.eta,
            "state_norm": self.state_norm,
            "nx": nx,
            "ny": ny,
            "nz": nz,
            "fleming": self.fleming_bound,
        }


def _efficiency(fs: float, sp: float, scale: float) -> float | None:
    if sp == 0.0 or sp <= ZERO_SP_REL * scale:
        return None
    return fs / sp


def bound_report(H, psi, t: float = 0.0) -> SpeedReportRow:
    h = as_matrix(H)
    p = as_vector(psi)
    n = h.shape[0]
    if n != p.shape[0]:
        raise DimensionMismatch(f"H is {n}x{n} but state has {p.shape[0]} entries")
    state_norm = float(np.linalg.norm(p))
    if not state_norm >= ZERO_NORM:
        raise ZeroVector("state has (numerically) zero norm")
    unit = p / state_norm
    traceless = h - (np.trace(h) / n) * np.eye(n)
    hp = traceless @ unit
    perp = hp - np.vdot(unit, hp) * unit
    k = float(np.vdot(perp, perp).real)
    fs = float(np.sqrt(k))
    sp = float(_singular_values(traceless)[0])
    hs = _hs(traceless)
    bloch = fleming = None
    if n == 2:
        z = np.conj(unit[0]) * unit[1]
        bloch = (float(2 * z.real), float(2 * z.imag), float(abs(unit[0]) ** 2 - abs(unit[1]) ** 2))
        if _hs(traceless - traceless.conj().T) <= HERMITIAN_TOL * hs:
            fleming = abs(eigenvalues_2x2(traceless).delta_e)
    return SpeedReportRow(
        t=float(t),
        k=k,
        fs_speed=fs,
        sp_norm=sp,
        hs_norm=hs,
        eta=_efficiency(fs, sp, _hs(h)),
        state_norm=state_norm,
        bloch=bloch,
        fleming_bound=fleming,
    )


def efficiency(H, psi) -> float | None:
    """sqrt(K) / ||traceless H||_SP, or None where the Hamiltonian vanishes."""
    return bound_report(H, psi).eta


def fleming_bound(H) -> float:
    """|Delta E| of a Hermitian two-level Hamiltonian (up to a trace shift)."""
    h = as_matrix(H)
    if h.shape != (2, 2):
        raise DimensionMismatch("Fleming bound applies to 2x2 Hamiltonians")
    traceless, _ = trace_split(h)
    if hs_norm(traceless - traceless.conj().T) > HERMITIAN_TOL * hs_norm(h):
        raise NotHermitian("Fleming bound requires a Hermitian Hamiltonian")
    return abs(eigenvalues_2x2(traceless).delta_e)


def report_path(H_path, psi_path: SampledPath) -> list[SpeedReportRow]:
    """One report row per sample of ``psi_path``, in time order."""
    if H_path.is_sampled:
        check_same_grid(H_path.times, psi_path.times, "Hamiltonian and state grids")
        matrices = H_path.matrices
    else:
        matrices = H_path.on_times(psi_path.times)
    return [
        bound_report(m, s, t)
        for t, m, s in zip(psi_path.times, matrices, psi_path.states)
    ]


def check_same_grid(a: np.ndarray, b: np.ndarray, what: str = "grids") -> None:
    if a.shape != b.shape:
        raise GridMismatch(f"{what}: {a.shape[0]} vs {b.shape[0]} samples")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
    if a.size and np.max(np.abs(a - b)) > 1e-12 * scale:
        raise GridMismatch(f"{what}: time stamps differ")
