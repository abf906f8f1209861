"""Seeded self-test over the invariants of every module (``effham check``).

Reference values come from numpy's LAPACK SVD and QR, which share no
code with the Jacobi kernel or the projected kinetic-scalar formula.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import scenarios
from .bounds import bound_report, fleming_bound
from .geometry import fs_angle, kinetic_scalar
from .linalg import adjoint, eigenvalues_2x2, hs_norm, numerical_rank, singular_values, spectral_norm, trace_split
from .propagate import HamiltonianPath, PropagationOptions, phs_distance, propagate
from .synthesis import efficient_hamiltonian, ep_generator, gauge_fix, phase_perturb, synthesize
from .trajectories import great_circle

DEFAULT_SEED = 20120701


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _rand_matrix(rng, n):
    r = np.sqrt(rng.uniform(size=(n, n)))
    return r * np.exp(2j * np.pi * rng.uniform(size=(n, n)))


def _rand_state(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def check_norm_chain(rng):
    worst = 0.0
    for _ in range(2000):
        n = int(rng.integers(2, 7))
        h, _ = trace_split(_rand_matrix(rng, n))
        psi = _rand_state(rng, n)
        row = bound_report(h, psi)
        rank = numerical_rank(h)
        tol = 1e-10 * row.hs_norm
        worst = max(worst, row.fs_speed - row.sp_norm - tol, row.sp_norm - row.hs_norm - tol,
                    row.hs_norm - math.sqrt(rank) * row.sp_norm - tol)
    return worst <= 0.0, f"largest violation {worst:.2e}"


def check_svd_reference(rng):
    worst = 0.0
    for _ in range(300):
        n = int(rng.integers(2, 9))
        m = _rand_matrix(rng, n)
        ref = np.linalg.svd(m, compute_uv=False)
        worst = max(worst, np.max(np.abs(singular_values(m) - ref)) / ref[0])
        worst = max(worst, abs(spectral_norm(m) - spectral_norm(adjoint(m))) / ref[0])
    return worst < 1e-12, f"max rel deviation {worst:.2e}"


def check_entry_bounds(rng):
    ok = True
    for _ in range(300):
        n = int(rng.integers(2, 9))
        m = _rand_matrix(rng, n)
        sp, mx = spectral_norm(m), np.max(np.abs(m))
        ok &= mx <= sp * (1 + 1e-12) and sp <= n * mx * (1 + 1e-12)
    return bool(ok), "max|M_ij| <= ||M||_SP <= N max|M_ij|"


def check_eigen_2x2(rng):
    worst = 0.0
    for _ in range(300):
        m = _rand_matrix(rng, 2) * rng.uniform(0.1, 10)
        spec = eigenvalues_2x2(m)
        for r in (spec.e_plus, spec.e_minus):
            worst = max(worst, abs(np.linalg.det(m - r * np.eye(2))) / (1 + hs_norm(m) ** 2))
    return worst <= 1e-11, f"max det residual {worst:.2e}"


def check_kinetic_invariances(rng):
    worst = 0.0
    for _ in range(300):
        n = int(rng.integers(2, 7))
        h = _rand_matrix(rng, n)
        psi = _rand_state(rng, n)
        k = kinetic_scalar(h, psi)
        c = complex(rng.normal(), rng.normal())
        mu = complex(rng.normal(), rng.normal())
        worst = max(worst, abs(kinetic_scalar(h, c * psi) - k) / k,
                    abs(kinetic_scalar(h + mu * np.eye(n), psi) - k) / k)
        # basis completion: K = sum_{k != j} |<k|H|j>|^2 with |j> = psi
        q, _ = np.linalg.qr(np.column_stack([psi, rng.normal(size=(n, n - 1))]))
        col = q.conj().T @ h @ q[:, 0]
        worst = max(worst, abs(np.sum(np.abs(col[1:]) ** 2) - k) / k)
    return worst < 1e-11, f"max rel deviation {worst:.2e}"


def check_fs_angle(rng):
    ok = True
    for _ in range(300):
        n = int(rng.integers(2, 6))
        a, b = _rand_state(rng, n), _rand_state(rng, n)
        c = complex(rng.normal(), rng.normal())
        ok &= fs_angle(a, b) == fs_angle(b, a)
        ok &= abs(fs_angle(c * a, b) - fs_angle(a, b)) <= 1e-12
    return bool(ok), "symmetry and scale invariance"


def check_fleming(rng):
    worst = 0.0
    for _ in range(500):
        v = rng.normal(size=3)
        h = v[0] * np.array([[0, 1], [1, 0]]) + v[1] * np.array([[0, -1j], [1j, 0]]) + v[2] * np.diag([1, -1])
        psi = _rand_state(rng, 2)
        de = fleming_bound(h)
        worst = max(worst, (2 * math.sqrt(kinetic_scalar(h, psi)) - de) / de)
    return worst <= 1e-11, f"largest relative excess {worst:.2e}"


def check_synthesis_family(rng):
    gauge = gauge_fix(great_circle().sample(0.0, 3.0, 1e-3, exact_derivative=False))
    worst = 0.0
    for g in (0, 0.5, -0.5, 1, -1, 0.7j, -0.7j, 2):
        res = synthesize(gauge, g)
        expected = 1.0 / max(1.0, abs(g))
        for i in range(1, len(res.times) - 1, 97):
            row = bound_report(res.h0.matrices[i], gauge.m[i])
            worst = max(worst, abs(row.eta - expected))
    return worst <= 1e-8, f"max |eta - 1/max(1,|g|)| {worst:.2e}"


def check_ep_generator(rng):
    gauge = gauge_fix(great_circle().sample(0.0, 3.0, 1e-3))
    res = ep_generator(gauge)
    ranks = {numerical_rank(h) for h in res.h0.matrices[::50]}
    hs = {g: hs_norm(synthesize(gauge, g).h0.matrices[100]) for g in (0, 0.25, -0.25, 0.5, -0.5, 1, -1)}
    minimal = all(v > hs[0] for g, v in hs.items() if g != 0)
    return ranks == {1} and minimal, f"ranks {sorted(ranks)}, HS minimal at g=0: {minimal}"


def check_phase_perturbation(rng):
    gauge = gauge_fix(great_circle().sample(0.0, 3.0, 1e-3))
    res = synthesize(gauge, 1.0)
    h_new = phase_perturb(res, 1.0)
    worst_eta, worst_k = 0.0, 0.0
    for i in range(0, len(res.times), 50):
        m = gauge.m[i]
        row = bound_report(h_new.matrices[i], m)
        k0 = kinetic_scalar(res.h0.matrices[i], m)
        worst_eta = max(worst_eta, row.eta)
        worst_k = max(worst_k, abs(row.k - k0) / k0)
    return worst_eta <= 1 / math.sqrt(2) + 1e-6 and worst_k <= 1e-10, f"max eta {worst_eta:.6f}"


def check_propagator_order(rng):
    sy = HamiltonianPath.constant([[0, -1j], [1j, 0]])
    errs = []
    for step in (0.1, 0.05):
        run = propagate(sy, [1, 0], 0.0, 1.0, PropagationOptions(step=step))
        errs.append(np.linalg.norm(run.states[-1] - [math.cos(1), math.sin(1)]))
    return errs[0] / errs[1] >= 12, f"error ratio {errs[0] / errs[1]:.2f}"


def check_hermitian_norm(rng):
    a = _rand_matrix(rng, 3)
    herm = HamiltonianPath.analytic(lambda t: (a + a.conj().T) * math.cos(t) + np.diag([t, 0, -t]), 3)
    psi0 = _rand_state(rng, 3)
    run = propagate(herm, psi0, 0.0, 10.0)
    drift = np.max(np.abs(np.linalg.norm(run.states, axis=1) - np.linalg.norm(psi0)))
    return drift < 1e-8, f"norm drift {drift:.2e}"


def check_trace_gauge(rng):
    a = _rand_matrix(rng, 3)
    base = HamiltonianPath.analytic(lambda t: a * (1 + 0.3 * math.sin(t)), 3)
    shifted = HamiltonianPath.analytic(lambda t: a * (1 + 0.3 * math.sin(t)) + (0.5 + 0.2j) * t * np.eye(3), 3)
    psi0 = _rand_state(rng, 3)
    opts = PropagationOptions(step=1e-3, renormalize=True)
    d = phs_distance(propagate(base, psi0, 0, 2, opts), propagate(shifted, psi0, 0, 2, opts))
    return d < 1e-8, f"projective distance {d:.2e}"


def check_closure(rng):
    traj = great_circle()
    ref = traj.sample(0.0, 3.0, 1e-3)
    worst = 0.0
    for g in (1.0, -0.8, 0.0):
        run = propagate(efficient_hamiltonian(traj, g), [1, 0], 0.0, 3.0)
        worst = max(worst, phs_distance(run, ref), np.max(np.abs(np.linalg.norm(run.states, axis=1) - 1)))
    return worst < 1e-6, f"max deviation {worst:.2e}"


def check_scenarios(rng):
    reports = [
        scenarios.run_figure1(),
        scenarios.run_optical(),
        scenarios.run_pauli(scenarios.PauliConfig((1, 0, 0), (0, 1, 0))),
        scenarios.run_brachistochrone(scenarios.BrachistochroneConfig(sweep_alphas=tuple(np.linspace(0, 1.55, 32)))),
    ]
    failed = [f"{r.name}:{k}" for r in reports for k, v in r.checks.items() if not v]
    return not failed, "all scenario checks pass" if not failed else ", ".join(failed)


CHECKS: list[tuple[str, Callable]] = [
    ("linalg: SVD vs LAPACK, SP(M)=SP(M^dag)", check_svd_reference),
    ("linalg: entry bounds on SP norm", check_entry_bounds),
    ("linalg: 2x2 eigenvalue residual", check_eigen_2x2),
    ("geometry: FS angle symmetry/scale", check_fs_angle),
    ("geometry: K invariances and basis form", check_kinetic_invariances),
    ("bounds: sqrt(K) <= SP <= HS <= sqrt(rank) SP", check_norm_chain),
    ("bounds: Fleming bound", check_fleming),
    ("synthesis: efficiency of the g family", check_synthesis_family),
    ("synthesis: EP generator rank/minimal HS", check_ep_generator),
    ("synthesis: phase perturbation inefficiency", check_phase_perturbation),
    ("propagate: fourth-order convergence", check_propagator_order),
    ("propagate: Hermitian norm conservation", check_hermitian_norm),
    ("propagate: trace gauge invariance", check_trace_gauge),
    ("propagate: designed-state closure", check_closure),
    ("scenarios: all preset checks", check_scenarios),
]


def seed_from_env() -> int:
    raw = os.environ.get("EFFHAM_SEED", "").strip()
    return int(raw) if raw else DEFAULT_SEED


def run_all(seed: int | None = None) -> list[CheckResult]:
    seed = seed_from_env() if seed is None else seed
    results = []
    for i, (name, fn) in enumerate(CHECKS):
        rng = np.random.default_rng([seed, i])
        start = time.perf_counter()
        try:
            passed, detail = fn(rng)
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail, time.perf_counter() - start))
    return results
