# cython: language_level=3
"""Compiled backend for the dense small-matrix kernels.

Mirror of ``nmteleport._kernels_py`` (same functions, same semantics) with
the inner loops in C.  Parity between the two backends is covered by
``tests/test_backends.py``.
"""

import itertools

import numpy as np

from libc.math cimport cos, cosh, exp, fabs, hypot, sin, sinh, sqrt

BACKEND_NAME = "compiled"

DEF JACOBI_MAX_SWEEPS = 100


cdef inline double complex conj(double complex z) noexcept:
    return z.real - 1j * z.imag


def matmul(a, b):
    cdef double complex[:, ::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef double complex[:, ::1] bv = np.ascontiguousarray(b, dtype=np.complex128)
    cdef Py_ssize_t n = av.shape[0], i, j, k
    cdef double complex s
    out = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s = s + av[i, k] * bv[k, j]
            ov[i, j] = s
    return out


def kron(a, b):
    cdef double complex[:, ::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef double complex[:, ::1] bv = np.ascontiguousarray(b, dtype=np.complex128)
    cdef Py_ssize_t m = av.shape[0], n = bv.shape[0]
    cdef Py_ssize_t i1, i2, j1, j2
    out = np.empty((m * n, m * n), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    for i1 in range(m):
        for j1 in range(m):
            for i2 in range(n):
                for j2 in range(n):
                    ov[i1 * n + i2, j1 * n + j2] = av[i1, j1] * bv[i2, j2]
    return out


cdef void _sandwich_into(double complex[:, ::1] gv,
                         double complex[:, ::1] rv,
                         double complex[:, ::1] tmp,
                         double complex[:, ::1] ov,
                         bint accumulate) noexcept:
    # ov (+)= G @ rho @ G^dagger, using tmp as scratch for G @ rho.
    cdef Py_ssize_t n = gv.shape[0], i, j, k
    cdef double complex s
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s = s + gv[i, k] * rv[k, j]
            tmp[i, j] = s
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s = s + tmp[i, k] * conj(gv[j, k])
            if accumulate:
                ov[i, j] = ov[i, j] + s
            else:
                ov[i, j] = s
    return


def sandwich(g, rho):
    """G @ rho @ G^dagger."""
    cdef double complex[:, ::1] gv = np.ascontiguousarray(g, dtype=np.complex128)
    cdef double complex[:, ::1] rv = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef Py_ssize_t n = gv.shape[0]
    out = np.empty((n, n), dtype=np.complex128)
    tmp = np.empty((n, n), dtype=np.complex128)
    _sandwich_into(gv, rv, tmp, out, False)
    return out


def kraus_apply(rho, ops):
    """Sum of K @ rho @ K^dagger over the operator list."""
    cdef double complex[:, ::1] rv = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef Py_ssize_t n = rv.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    tmp = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out, tv = tmp, kv
    for k in ops:
        kv = np.ascontiguousarray(k, dtype=np.complex128)
        _sandwich_into(kv, rv, tv, ov, True)
    return out


def pair_kraus_apply(rho, ops):
    """Apply the same single-qubit operator set to both qubits of a pair.

    Computes ``sum_ij (K_i x K_j) rho (K_i x K_j)^dagger`` for a 4x4 ``rho``
    and 2x2 operators.
    """
    cdef double complex[:, ::1] rv = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef list mats = [np.ascontiguousarray(k, dtype=np.complex128) for k in ops]
    cdef Py_ssize_t n = rv.shape[0], i, j
    out = np.zeros((n, n), dtype=np.complex128)
    g = np.empty((n, n), dtype=np.complex128)
    tmp = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out, gv = g, tv = tmp
    cdef double complex[:, ::1] ki, kj
    cdef Py_ssize_t i1, i2, j1, j2
    for i in range(len(mats)):
        ki = mats[i]
        for j in range(len(mats)):
            kj = mats[j]
            for i1 in range(2):
                for j1 in range(2):
                    for i2 in range(2):
                        for j2 in range(2):
                            gv[i1 * 2 + i2, j1 * 2 + j2] = ki[i1, j1] * kj[i2, j2]
            _sandwich_into(gv, rv, tv, ov, True)
    return out


def partial_trace(rho, keep, dims):
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` is the tuple of subsystem dimensions whose product equals the
    matrix dimension; ``keep`` holds sorted subsystem indices.
    """
    cdef double complex[:, ::1] rv = np.ascontiguousarray(rho, dtype=np.complex128)
    dims = tuple(int(d) for d in dims)
    keep_t = tuple(sorted(int(k) for k in keep))
    n_sub = len(dims)
    traced = [i for i in range(n_sub) if i not in keep_t]
    strides = [0] * n_sub
    acc = 1
    for i in reversed(range(n_sub)):
        strides[i] = acc
        acc *= dims[i]
    d_keep = 1
    for i in keep_t:
        d_keep *= dims[i]
    d_tr = 1
    for i in traced:
        d_tr *= dims[i]
    # Flat index of each (kept multi-index, traced multi-index) pair.
    flat = np.empty((d_keep, d_tr), dtype=np.int64)
    for a, kept_vals in enumerate(itertools.product(*(range(dims[i]) for i in keep_t))):
        for b, tr_vals in enumerate(itertools.product(*(range(dims[i]) for i in traced))):
            pos = 0
            for i, v in zip(keep_t, kept_vals):
                pos += v * strides[i]
            for i, v in zip(traced, tr_vals):
                pos += v * strides[i]
            flat[a, b] = pos
    out = np.zeros((d_keep, d_keep), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    cdef long long[:, ::1] fv = flat
    cdef Py_ssize_t i_, j_, m_, nk = d_keep, nt = d_tr
    cdef double complex s
    for i_ in range(nk):
        for j_ in range(nk):
            s = 0
            for m_ in range(nt):
                s = s + rv[fv[i_, m_], fv[j_, m_]]
            ov[i_, j_] = s
    return out


def eigvalsh(a, tol=1e-13):
    """Eigenvalues of a Hermitian matrix, ascending.

    Closed form for 2x2 input, cyclic Jacobi sweeps otherwise; iteration
    stops once the off-diagonal norm drops below ``tol``.
    """
    arr = np.array(a, dtype=np.complex128, copy=True, order="C")
    cdef double complex[:, ::1] av = arr
    cdef Py_ssize_t n = av.shape[0], p, q, k, sweep
    cdef double mean, radius, off, r, tau, t, c, s, stop = float(tol)
    cdef double complex apq, phase, akp, akq, apk, aqk
    if n == 1:
        return np.array([av[0, 0].real])
    if n == 2:
        mean = 0.5 * (av[0, 0].real + av[1, 1].real)
        radius = hypot(0.5 * (av[0, 0].real - av[1, 1].real), abs(av[0, 1]))
        return np.array([mean - radius, mean + radius])
    for sweep in range(JACOBI_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += (av[p, q].real * av[p, q].real
                        + av[p, q].imag * av[p, q].imag)
        if sqrt(2.0 * off) < stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = av[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (av[q, q].real - av[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0.0 else -1.0) / (fabs(tau) + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = av[k, p]
                    akq = av[k, q]
                    av[k, p] = c * akp - s * conj(phase) * akq
                    av[k, q] = s * phase * akp + c * akq
                for k in range(n):
                    apk = av[p, k]
                    aqk = av[q, k]
                    av[p, k] = c * apk - s * phase * aqk
                    av[q, k] = s * conj(phase) * apk + c * aqk
                av[p, q] = 0
                av[q, p] = 0
    else:
        raise ArithmeticError("Jacobi eigenvalue iteration did not converge")
    return np.sort(np.diagonal(arr).real)


def mu_grid(tau, gamma0_over_lambda):
    """Excited-state survival probability on a grid of dimensionless times.

    ``tau`` is lambda*t.  Oscillatory (trigonometric) branch for strong
    coupling 2*gamma0 > lambda, monotone (hyperbolic) branch for weak
    coupling, polynomial limit at the crossover.
    """
    cdef double[::1] tv = np.ascontiguousarray(tau, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0], i
    cdef double g = float(gamma0_over_lambda)
    cdef double disc = 2.0 * g - 1.0
    cdef double d, b, x
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    if disc > 0.0:
        d = sqrt(disc)
        for i in range(n):
            x = d * tv[i] / 2.0
            b = cos(x) + sin(x) / d
            ov[i] = exp(-tv[i]) * b * b
    elif disc < 0.0:
        d = sqrt(-disc)
        for i in range(n):
            x = d * tv[i] / 2.0
            b = cosh(x) + sinh(x) / d
            ov[i] = exp(-tv[i]) * b * b
    else:
        for i in range(n):
            b = 1.0 + tv[i] / 2.0
            ov[i] = exp(-tv[i]) * b * b
    return out
