# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: one-sided Jacobi singular values and fixed-step RK4.

The pure-Python twins live in ``_fallback``; both expose the same signatures.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, hypot, fabs, isfinite

cnp.import_array()


def jacobi_singular_values(M, double tol=1e-15, int max_sweeps=60):
    """Return (column norms after orthogonalisation, converged flag)."""
    cdef double complex[:, ::1] a = np.array(M, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0], ncol = a.shape[1]
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef bint rotated, converged = False
    cdef double alpha, beta, gabs, zeta, t, c, s
    cdef double complex gamma, phase, ap, aq
    cdef double negligible = 0.0

    # columns below 1e-15 ||M||_HS are rounding noise; rotating them never settles
    for p in range(n):
        for q in range(ncol):
            negligible += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
    negligible *= 1e-30

    for sweep in range(max_sweeps):
        rotated = False
        for p in range(ncol - 1):
            for q in range(p + 1, ncol):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for k in range(n):
                    ap = a[k, p]
                    aq = a[k, q]
                    alpha += ap.real * ap.real + ap.imag * ap.imag
                    beta += aq.real * aq.real + aq.imag * aq.imag
                    gamma += ap.conjugate() * aq
                gabs = hypot(gamma.real, gamma.imag)
                if min(alpha, beta) <= negligible or gabs <= tol * sqrt(alpha * beta):
                    continue
                rotated = True
                phase = gamma.conjugate() / gabs
                zeta = (beta - alpha) / (2.0 * gabs)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                c = 1.0 / sqrt(1.0 + t * t)
                s = c * t
                for k in range(n):
                    ap = a[k, p]
                    aq = a[k, q] * phase
                    a[k, p] = c * ap - s * aq
                    a[k, q] = s * ap + c * aq
        if not rotated:
            converged = True
            break

    out = np.empty(ncol, dtype=np.float64)
    cdef double[::1] sv = out
    cdef double acc
    for q in range(ncol):
        acc = 0.0
        for k in range(n):
            acc += a[k, q].real * a[k, q].real + a[k, q].imag * a[k, q].imag
        sv[q] = sqrt(acc)
    return out, converged


cdef inline void _matvec(double complex[:, :, ::1] hs, Py_ssize_t idx,
                         double complex[::1] x, double complex[::1] y,
                         Py_ssize_t n) nogil:
    # y = -i * H[idx] @ x
    cdef Py_ssize_t r, c
    cdef double complex acc
    for r in range(n):
        acc = 0.0
        for c in range(n):
            acc = acc + hs[idx, r, c] * x[c]
        y[r] = -1j * acc


def rk4_sweep(hs, psi0, double h, bint renormalize=False, double limit=1e150):
    """Integrate i dpsi/dt = H psi over ``(len(hs) - 1) // 2`` steps.

    ``hs[j]`` is the Hamiltonian at ``t0 + j*h/2``.  Returns
    ``(states, failed_step)`` where ``failed_step`` is -1 on success.
    """
    cdef double complex[:, :, ::1] H = np.ascontiguousarray(hs, dtype=np.complex128)
    cdef Py_ssize_t nsteps = (H.shape[0] - 1) // 2
    cdef Py_ssize_t n = H.shape[1]
    states_arr = np.empty((nsteps + 1, n), dtype=np.complex128)
    cdef double complex[:, ::1] states = states_arr
    cdef double complex[::1] psi = np.array(psi0, dtype=np.complex128, copy=True)
    cdef double complex[::1] k1 = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] k2 = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] k3 = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] k4 = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] tmp = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t step, r
    cdef double half = 0.5 * h, sixth = h / 6.0, nrm
    cdef Py_ssize_t failed = -1

    for r in range(n):
        states[0, r] = psi[r]
    with nogil:
        for step in range(nsteps):
            _matvec(H, 2 * step, psi, k1, n)
            for r in range(n):
                tmp[r] = psi[r] + half * k1[r]
            _matvec(H, 2 * step + 1, tmp, k2, n)
            for r in range(n):
                tmp[r] = psi[r] + half * k2[r]
            _matvec(H, 2 * step + 1, tmp, k3, n)
            for r in range(n):
                tmp[r] = psi[r] + h * k3[r]
            _matvec(H, 2 * step + 2, tmp, k4, n)
            nrm = 0.0
            for r in range(n):
                psi[r] = psi[r] + sixth * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r])
                nrm += psi[r].real * psi[r].real + psi[r].imag * psi[r].imag
            nrm = sqrt(nrm)
            if not isfinite(nrm) or nrm > limit:
                failed = step + 1
                break
            if renormalize and nrm > 0.0:
                for r in range(n):
                    psi[r] = psi[r] / nrm
            for r in range(n):
                states[step + 1, r] = psi[r]
    if failed >= 0:
        return states_arr[:failed], failed
    return states_arr, -1
