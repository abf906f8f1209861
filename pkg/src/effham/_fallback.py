"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Same algorithms, same signatures and return conventions; selected
automatically when the extension is not built.
"""

import numpy as np


def jacobi_singular_values(M, tol=1e-15, max_sweeps=60):
    a = np.array(M, dtype=np.complex128, copy=True)
    ncol = a.shape[1]
    cols = [a[:, q].copy() for q in range(ncol)]
    # columns below 1e-15 ||M||_HS are rounding noise; rotating them never settles
    negligible = 1e-30 * np.vdot(a, a).real
    converged = False
    for _ in range(max_sweeps):
        rotated = False
        for p in range(ncol - 1):
            for q in range(p + 1, ncol):
                ap, aq = cols[p], cols[q]
                alpha = np.vdot(ap, ap).real
                beta = np.vdot(aq, aq).real
                gamma = np.vdot(ap, aq)
                gabs = abs(gamma)
                if min(alpha, beta) <= negligible or gabs <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                aq = aq * (gamma.conjugate() / gabs)
                zeta = (beta - alpha) / (2.0 * gabs)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + np.sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                cols[p] = c * ap - s * aq
                cols[q] = s * ap + c * aq
        if not rotated:
            converged = True
            break
    sv = np.array([np.sqrt(np.vdot(col, col).real) for col in cols])
    return sv, converged


def rk4_sweep(hs, psi0, h, renormalize=False, limit=1e150):
    hs = np.asarray(hs, dtype=np.complex128)
    nsteps = (hs.shape[0] - 1) // 2
    psi = np.array(psi0, dtype=np.complex128, copy=True)
    states = np.empty((nsteps + 1, psi.shape[0]), dtype=np.complex128)
    states[0] = psi
    half = 0.5 * h
    for step in range(nsteps):
        a, b, c = hs[2 * step], hs[2 * step + 1], hs[2 * step + 2]
        k1 = -1j * (a @ psi)
        k2 = -1j * (b @ (psi + half * k1))
        k3 = -1j * (b @ (psi + half * k2))
        k4 = -1j * (c @ (psi + h * k3))
        psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        nrm = np.sqrt(np.vdot(psi, psi).real)
        if not np.isfinite(nrm) or nrm > limit:
            return states[: step + 1], step + 1
        if renormalize and nrm > 0.0:
            psi = psi / nrm
        states[step + 1] = psi
    return states, -1
