"""Preset experiments: the two-g Bloch-sphere comparison, the optical EP
Hamiltonian, general traceless Pauli Hamiltonians and the PT-symmetric
brachistochrone matrix.  Every report carries named pass/fail checks."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bounds import bound_report, report_path
from .errors import ParameterInconsistent, ValidationError
from .geometry import PAULI, SampledPath, bloch_vector, fs_angle, fs_speed
from .linalg import eigenvalues_2x2, hs_norm, spectral_norm
from .propagate import HamiltonianPath, PropagationOptions, phs_distance, propagate
from .synthesis import dynamical_phase, efficient_hamiltonian, gauge_fix, synthesize
from .trajectories import great_circle

UP = (1.0, 0.0)
DOWN = (0.0, 1.0)


@dataclass
class ScenarioReport:
    name: str
    inputs: dict
    outputs: dict
    checks: dict[str, bool]
    series: dict[str, list[dict]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def g_label(g: complex) -> str:
    g = complex(g)
    if g.imag == 0:
        return f"{g.real:g}"
    return f"{g.real:g}{g.imag:+g}i"


def bloch_series(H_path: HamiltonianPath, path: SampledPath) -> list[dict]:
    """Per-sample Bloch vector, state norm and efficiency along a run."""
    rows = []
    for row in report_path(H_path, path):
        nx, ny, nz = row.bloch
        rows.append({"t": row.t, "nx": nx, "ny": ny, "nz": nz, "norm": row.state_norm, "eta": row.eta})
    return rows


# --------------------------------------------------------------------------
# Bloch-sphere comparison of two efficient Hamiltonians


@dataclass(frozen=True)
class Figure1Config:
    g_values: Sequence[complex] = (1.0, -0.8)
    initial_states: Sequence[Sequence[complex]] = (UP, DOWN)
    t_end: float = 3.0
    step: float = 1e-3
    separation_threshold: float = 0.3
    coincidence_tol: float = 1e-6
    eta_tol: float = 1e-4

    def __post_init__(self):
        if not (self.t_end > 0 and self.step > 0):
            raise ValidationError("t_end and step must be positive")
        if not self.g_values:
            raise ValidationError("need at least one g value")


def _state_label(psi: np.ndarray, i: int) -> str:
    if fs_angle(psi, UP) < 1e-12:
        return "north"
    if fs_angle(psi, DOWN) < 1e-12:
        return "south"
    return f"s{i}"


def run_figure1(cfg: Figure1Config = Figure1Config()) -> ScenarioReport:
    traj = great_circle()
    gauge = gauge_fix(traj.sample(0.0, cfg.t_end, cfg.step))
    designed = gauge.path
    opts = PropagationOptions(step=cfg.step)
    gs = [complex(g) for g in cfg.g_values]
    states = [np.asarray(s, dtype=np.complex128) for s in cfg.initial_states]
    labels = [_state_label(s, i) for i, s in enumerate(states)]

    runs: dict[tuple[int, int], SampledPath] = {}
    series: dict[str, list[dict]] = {}
    eta_err: dict[str, float] = {}
    dyn_phase: dict[str, float] = {}
    for gi, g in enumerate(gs):
        synth = synthesize(gauge, g)
        expected = 1.0 / max(1.0, abs(g))
        etas = np.array([row.eta for row in report_path(synth.h0, designed)], dtype=float)
        eta_err[g_label(g)] = float(np.nanmax(np.abs(etas - expected)))
        dyn_phase[g_label(g)] = abs(dynamical_phase(synth.h0, designed))
        h_path = efficient_hamiltonian(traj, g)
        for si, psi0 in enumerate(states):
            run = propagate(h_path, psi0, 0.0, cfg.t_end, opts)
            runs[gi, si] = run
            series[f"run_g{g_label(g)}_{labels[si]}"] = bloch_series(h_path, run)

    designed_dist = {}
    pair_dist = {}
    for si, psi0 in enumerate(states):
        on_design = fs_angle(psi0, designed.states[0]) < 1e-12
        for gi, g in enumerate(gs):
            if on_design:
                designed_dist[f"g{g_label(g)}_{labels[si]}"] = phs_distance(runs[gi, si], designed)
        if not on_design:
            for a in range(len(gs)):
                for b in range(a + 1, len(gs)):
                    key = f"g{g_label(gs[a])}_vs_g{g_label(gs[b])}_{labels[si]}"
                    pair_dist[key] = phs_distance(runs[a, si], runs[b, si])

    checks = {
        "designed_runs_follow_m": all(d < cfg.coincidence_tol for d in designed_dist.values()),
        "other_runs_separate": all(d > cfg.separation_threshold for d in pair_dist.values()),
        "eta_on_designed_state": all(e <= cfg.eta_tol for e in eta_err.values()),
        "designed_norm_conserved": all(
            np.max(np.abs(np.linalg.norm(runs[gi, si].states, axis=1) - 1.0)) < cfg.coincidence_tol
            for gi in range(len(gs))
            for si, s in enumerate(states)
            if fs_angle(s, designed.states[0]) < 1e-12
        ),
    }
    return ScenarioReport(
        name="figure1",
        inputs={
            "g_values": gs,
            "initial_states": [list(s) for s in states],
            "t_end": cfg.t_end,
            "step": cfg.step,
            "trajectory": "greatcircle",
        },
        outputs={
            "designed_distance": designed_dist,
            "pairwise_distance": pair_dist,
            "eta_max_error": eta_err,
            "dynamical_phase_abs": dyn_phase,
        },
        checks=checks,
        series=series,
    )


# --------------------------------------------------------------------------
# Optical Hamiltonian [[0, i], [-i q, 0]]


def optical_hamiltonian(q: complex) -> np.ndarray:
    return np.array([[0.0, 1j], [-1j * q, 0.0]], dtype=np.complex128)


@dataclass(frozen=True)
class OpticalConfig:
    q_profile: Callable[[float], complex] = lambda z: z
    z_range: tuple[float, float] = (0.0, 2.0)
    probe_states: Sequence[Sequence[complex]] = (UP, DOWN)
    n_points: int = 201
    propagate_probes: bool = False
    step: float = 1e-3

    def __post_init__(self):
        if not self.z_range[1] > self.z_range[0]:
            raise ValidationError("z_range must be increasing")
        if self.n_points < 2:
            raise ValidationError("need at least two z points")


def run_optical(cfg: OpticalConfig = OpticalConfig()) -> ScenarioReport:
    zs = np.linspace(cfg.z_range[0], cfg.z_range[1], cfg.n_points)
    probes = [np.asarray(p, dtype=np.complex128) for p in cfg.probe_states]
    rows = []
    sp_ok = speed_ok = chain_ok = True
    for z in zs:
        q = complex(cfg.q_profile(float(z)))
        h = optical_hamiltonian(q)
        sp = spectral_norm(h)
        hs = hs_norm(h)
        cap = max(1.0, abs(q))
        sp_ok &= abs(sp - cap) <= 1e-12 * cap
        chain_ok &= cap <= math.sqrt(1 + abs(q) ** 2) * (1 + 1e-15) and abs(hs - math.sqrt(1 + abs(q) ** 2)) <= 1e-12 * hs
        speeds = [2.0 * fs_speed(h, p) for p in probes]
        speed_ok &= all(v <= 2 * cap + 1e-10 for v in speeds)
        rows.append({
            "z": float(z),
            "q_re": q.real,
            "q_im": q.imag,
            "abs_delta_e": abs(2 * cmath.sqrt(q)),
            "sp_norm": sp,
            "hs_norm": hs,
            "max_probe_speed": max(speeds) if speeds else None,
            **{f"speed_{i}": v for i, v in enumerate(speeds)},
        })
    checks = {
        "sp_norm_is_max_1_q": bool(sp_ok),
        "hs_norm_formula_and_chain": bool(chain_ok),
        "probe_speeds_within_sp_bound": bool(speed_ok),
    }
    series = {"optical": rows}
    if cfg.propagate_probes:
        h_path = HamiltonianPath.analytic(lambda z: optical_hamiltonian(complex(cfg.q_profile(z))), 2)
        run_ok = True
        for i, p in enumerate(probes):
            run = propagate(h_path, p, cfg.z_range[0], cfg.z_range[1], PropagationOptions(step=cfg.step))
            report = report_path(h_path, run)
            run_ok &= all(r.fs_speed <= r.sp_norm * (1 + 1e-10) <= r.hs_norm * (1 + 2e-10) for r in report)
            series[f"probe_{i}"] = bloch_series(h_path, run)
        checks["propagated_speed_within_bounds"] = bool(run_ok)
    return ScenarioReport(
        name="optical",
        inputs={"z_range": list(cfg.z_range), "n_points": cfg.n_points, "probe_states": [list(p) for p in probes]},
        outputs={"rows": len(rows)},
        checks=checks,
        series=series,
    )


# --------------------------------------------------------------------------
# Traceless two-level Hamiltonian (alpha + i beta) . sigma


@dataclass(frozen=True)
class PauliConfig:
    alpha: Sequence[float] = (1.0, 0.0, 0.0)
    beta: Sequence[float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if len(self.alpha) != 3 or len(self.beta) != 3:
            raise ValidationError("alpha and beta must be 3-vectors")
        if not all(math.isfinite(x) for x in (*self.alpha, *self.beta)):
            raise ValidationError("alpha and beta must be finite")


def pauli_hamiltonian(alpha, beta) -> np.ndarray:
    coeff = np.asarray(alpha, dtype=float) + 1j * np.asarray(beta, dtype=float)
    return sum(c * s for c, s in zip(coeff, PAULI))


def pauli_spectrum(alpha, beta) -> tuple[complex, complex]:
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    root = cmath.sqrt(complex(a @ a - b @ b, 2.0 * (a @ b)))
    return root, -root


def spectrum_class(e: complex, rel: float = 1e-12) -> str:
    scale = abs(e)
    if scale == 0.0:
        return "zero"
    if abs(e.imag) <= rel * scale:
        return "real"
    if abs(e.real) <= rel * scale:
        return "imaginary"
    return "complex"


def run_pauli(cfg: PauliConfig = PauliConfig()) -> ScenarioReport:
    a = np.asarray(cfg.alpha, dtype=float)
    b = np.asarray(cfg.beta, dtype=float)
    h = pauli_hamiltonian(a, b)
    e_plus, e_minus = pauli_spectrum(a, b)
    numeric = eigenvalues_2x2(h)
    sp = spectral_norm(h)
    na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    pseudo = abs(a @ b) < 1e-12 * na * nb or na == 0.0 or nb == 0.0
    sp_formula = na + nb
    checks = {
        "closed_form_eigenvalues": abs(numeric.e_plus**2 - e_plus**2) <= 1e-11 * (1 + hs_norm(h) ** 2),
    }
    if pseudo:
        checks["spectrum_real_or_imaginary"] = spectrum_class(e_plus) != "complex"
        checks["sp_norm_is_sum_of_lengths"] = abs(sp - sp_formula) <= 1e-10 * max(sp_formula, 1e-300)
    return ScenarioReport(
        name="pauli",
        inputs={"alpha": a.tolist(), "beta": b.tolist()},
        outputs={
            "e_plus": e_plus,
            "e_minus": e_minus,
            "delta_e": e_plus - e_minus,
            "spectrum": spectrum_class(e_plus),
            "pseudo_hermitian": bool(pseudo),
            "sp_norm": sp,
            "sp_formula": sp_formula if pseudo else None,
            "hs_norm": hs_norm(h),
        },
        checks=checks,
    )


# --------------------------------------------------------------------------
# PT-symmetric brachistochrone matrix s [[i sin a, 1], [1, -i sin a]]


@dataclass(frozen=True)
class BrachistochroneConfig:
    s: float = 1.0
    alpha_angle: float | None = 0.0
    r: float | None = None
    chi: float | None = None
    sweep_alphas: Sequence[float] = ()
    sweep_delta_e: float = 1.0
    t_end: float = 1.0
    step: float = 1e-3

    def canonical(self) -> tuple[float, float]:
        """(s, alpha) with r sin(chi) = s sin(alpha)."""
        raw = self.r is not None or self.chi is not None
        if raw and (self.r is None or self.chi is None):
            raise ParameterInconsistent("raw parameters need both r and chi")
        if not raw:
            if self.alpha_angle is None:
                raise ParameterInconsistent("need alpha or (r, chi)")
            return float(self.s), float(self.alpha_angle)
        coupling = self.r * math.sin(self.chi)
        if self.alpha_angle is not None:
            target = self.s * math.sin(self.alpha_angle)
            if abs(abs(coupling) - abs(target)) > 1e-12 * max(1.0, abs(coupling), abs(target)):
                raise ParameterInconsistent(f"|r sin chi| = {abs(coupling)} but |s sin alpha| = {abs(target)}")
            return float(self.s), float(self.alpha_angle)
        if self.s == 0.0 or abs(coupling) > abs(self.s):
            raise ParameterInconsistent("r sin chi = s sin alpha has no real solution for alpha")
        return float(self.s), math.asin(coupling / self.s)


def brachistochrone_hamiltonian(s: float, alpha: float) -> np.ndarray:
    sa = s * math.sin(alpha)
    return np.array([[complex(0.0, sa), complex(s, 0.0)], [complex(s, 0.0), complex(0.0, -sa)]])


def brachistochrone_ratio(alpha: float) -> float:
    """|Delta E| / ||H||_SP in closed form."""
    return 2.0 * abs(math.cos(alpha)) / (1.0 + abs(math.sin(alpha)))


def run_brachistochrone(cfg: BrachistochroneConfig = BrachistochroneConfig()) -> ScenarioReport:
    s, alpha = cfg.canonical()
    h = brachistochrone_hamiltonian(s, alpha)
    sx = PAULI[0]
    pt_exact = bool(np.array_equal(sx @ h @ sx, h.conj().T))
    spectrum = eigenvalues_2x2(h)
    delta_e = 2.0 * s * math.cos(alpha)
    sp = spectral_norm(h)
    sp_formula = abs(s) * (1.0 + abs(math.sin(alpha)))
    ratio = abs(spectrum.delta_e) / sp if sp > 0 else None
    checks = {
        "pseudo_hermitian_exact": pt_exact,
        "delta_e_formula": abs(abs(spectrum.delta_e) - abs(delta_e)) <= 1e-12 * max(1.0, sp),
        "sp_norm_formula": abs(sp - sp_formula) <= 1e-12 * max(sp_formula, 1e-300),
    }
    if ratio is not None:
        checks["ratio_formula"] = abs(ratio - brachistochrone_ratio(alpha)) <= 1e-12

    sweep = []
    for a in cfg.sweep_alphas:
        c = math.cos(a)
        if abs(c) < 1e-12:
            raise ValidationError("sweep angle at the exceptional point pi/2 has no finite s")
        s_a = cfg.sweep_delta_e / (2.0 * c)
        h_a = brachistochrone_hamiltonian(s_a, a)
        sp_a = spectral_norm(h_a)
        sweep.append({
            "alpha": a,
            "s": s_a,
            "sp_norm": sp_a,
            "sp_formula": abs(s_a) * (1.0 + abs(math.sin(a))),
            "ratio": abs(eigenvalues_2x2(h_a).delta_e) / sp_a,
            "ratio_formula": brachistochrone_ratio(a),
        })
    if sweep:
        ratios = [row["ratio"] for row in sweep]
        checks["sweep_ratio_formula"] = all(abs(r["ratio"] - r["ratio_formula"]) <= 1e-12 for r in sweep)
        checks["sweep_sp_formula"] = all(abs(r["sp_norm"] - r["sp_formula"]) <= 1e-12 * r["sp_formula"] for r in sweep)
        ordered = sorted(zip(cfg.sweep_alphas, ratios))
        checks["sweep_ratio_decreasing"] = all(b[1] < a[1] for a, b in zip(ordered, ordered[1:]))

    h_path = HamiltonianPath.constant(h)
    run = propagate(h_path, UP, 0.0, cfg.t_end, PropagationOptions(step=cfg.step))
    speeds = np.array([2.0 * fs_speed(h, p) for p in run.states])
    checks["bloch_speed_within_2sp"] = bool(np.all(speeds <= 2.0 * sp * (1 + 1e-10)))
    return ScenarioReport(
        name="brach",
        inputs={"s": s, "alpha": alpha, "t_end": cfg.t_end, "step": cfg.step,
                "sweep_alphas": list(cfg.sweep_alphas), "sweep_delta_e": cfg.sweep_delta_e},
        outputs={
            "hamiltonian": h,
            "e_plus": spectrum.e_plus,
            "e_minus": spectrum.e_minus,
            "delta_e": delta_e,
            "sp_norm": sp,
            "sp_formula": sp_formula,
            "ratio": ratio,
            "ratio_formula": brachistochrone_ratio(alpha),
            "max_bloch_speed": float(speeds.max()),
        },
        checks=checks,
        series={
            "sweep": sweep,
            "bloch": bloch_series(h_path, run),
        },
    )


SCENARIOS = {
    "figure1": run_figure1,
    "optical": run_optical,
    "pauli": run_pauli,
    "brach": run_brachistochrone,
}
