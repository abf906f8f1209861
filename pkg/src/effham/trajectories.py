"""State trajectories: analytic presets with exact derivatives, or samples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ValidationError
from .geometry import SampledPath, differentiate_path


@dataclass(frozen=True)
class Trajectory:
    """A path ``psi(t)``; ``derivative`` is None when only samples exist."""

    name: str
    dim: int
    state: Callable[[float], np.ndarray]
    derivative: Callable[[float], np.ndarray] | None = None

    @property
    def analytic(self) -> bool:
        return self.derivative is not None

    def grid(self, t0: float, t1: float, h: float) -> np.ndarray:
        if not (t1 > t0 and h > 0):
            raise ValidationError(f"bad grid [{t0}, {t1}] with step {h}")
        n = max(2, int(round((t1 - t0) / h)) + 1)
        return np.linspace(t0, t1, n)

    def sample(self, t0: float, t1: float, h: float, *, exact_derivative: bool = True) -> SampledPath:
        """Sample on a uniform grid.

        With ``exact_derivative`` and an analytic preset the derivatives are
        evaluated in closed form; otherwise they come from finite differences.
        """
        times = self.grid(t0, t1, h)
        states = np.array([self.state(t) for t in times], dtype=np.complex128)
        if exact_derivative and self.analytic:
            ders = np.array([self.derivative(t) for t in times], dtype=np.complex128)
            return SampledPath(times, states, ders)
        return differentiate_path(SampledPath(times, states))


def great_circle(omega: float = 1.0) -> Trajectory:
    """cos(wt)|up> + sin(wt)|down>."""

    def state(t):
        return np.array([math.cos(omega * t), math.sin(omega * t)], dtype=np.complex128)

    def derivative(t):
        return omega * np.array([-math.sin(omega * t), math.cos(omega * t)], dtype=np.complex128)

    return Trajectory("greatcircle", 2, state, derivative)


def phased_great_circle(phase_rate: float, scale: float = 1.0) -> Trajectory:
    """scale * exp(i*phase_rate*t) * (cos t, sin t): same ray path as the great circle."""

    def state(t):
        return scale * np.exp(1j * phase_rate * t) * np.array([math.cos(t), math.sin(t)])

    def derivative(t):
        e = scale * np.exp(1j * phase_rate * t)
        c, s = math.cos(t), math.sin(t)
        return e * (1j * phase_rate * np.array([c, s]) + np.array([-s, c]))

    return Trajectory(f"phased:{phase_rate}", 2, state, derivative)


def latitude_circle(theta: float, omega: float = 1.0) -> Trajectory:
    """(cos(theta/2), exp(i*omega*t) sin(theta/2)): a circle of latitude, not a geodesic."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)

    def state(t):
        return np.array([c, np.exp(1j * omega * t) * s], dtype=np.complex128)

    def derivative(t):
        return np.array([0.0, 1j * omega * np.exp(1j * omega * t) * s], dtype=np.complex128)

    return Trajectory(f"latitude:{theta}", 2, state, derivative)


def constant_state(psi) -> Trajectory:
    psi = np.array(psi, dtype=np.complex128)
    return Trajectory("constant", psi.shape[0], lambda t: psi, lambda t: np.zeros_like(psi))


PRESETS = {
    "greatcircle": great_circle,
    "latitude": latitude_circle,
    "phased": phased_great_circle,
}
