"""Pure-Python backend for the dense small-matrix kernels.

This is the fallback used when the compiled extension is unavailable (see
``nmteleport._backend``).  Both backends expose the same functions with the
same semantics; parity between them is enforced by the test suite.

Matrices are square ``complex128`` arrays of dimension 2, 4 or 8.  Validation
of shapes and physical invariants happens one level up, in ``nmteleport.qmat``
and ``nmteleport.channels``; the kernels assume well-formed input.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"

_JACOBI_MAX_SWEEPS = 100


def matmul(a, b):
    return np.asarray(a, dtype=np.complex128) @ np.asarray(b, dtype=np.complex128)


def kron(a, b):
    return np.kron(
        np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)
    )


def sandwich(g, rho):
    """G @ rho @ G^dagger."""
    g = np.asarray(g, dtype=np.complex128)
    return g @ np.asarray(rho, dtype=np.complex128) @ g.conj().T


def kraus_apply(rho, ops):
    """Sum of K @ rho @ K^dagger over the operator list."""
    rho = np.asarray(rho, dtype=np.complex128)
    out = np.zeros_like(rho)
    for k in ops:
        out += sandwich(k, rho)
    return out


def pair_kraus_apply(rho, ops):
    """Apply the same single-qubit operator set to both qubits of a pair.

    Computes ``sum_ij (K_i x K_j) rho (K_i x K_j)^dagger`` for a 4x4 ``rho``
    and 2x2 operators.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    out = np.zeros_like(rho)
    for ki in ops:
        for kj in ops:
            out += sandwich(np.kron(ki, kj), rho)
    return out


def partial_trace(rho, keep, dims):
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` is the tuple of subsystem dimensions whose product equals the
    matrix dimension; ``keep`` holds sorted subsystem indices.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    dims = tuple(int(d) for d in dims)
    keep = tuple(sorted(int(k) for k in keep))
    n_sub = len(dims)
    tensor = rho.reshape(dims + dims)
    # Row axis i and column axis n_sub + i share a letter when subsystem i
    # is traced out; kept axes get fresh letters on each side.
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n_sub])
    col = [
        letters[n_sub + i] if i in keep else letters[i] for i in range(n_sub)
    ]
    out_sub = [row[i] for i in keep] + [col[i] for i in keep]
    subscript = "".join(row) + "".join(col) + "->" + "".join(out_sub)
    reduced = np.einsum(subscript, tensor)
    d_keep = math.prod(dims[i] for i in keep)
    return reduced.reshape(d_keep, d_keep)


def _eigvalsh2(a):
    mean = 0.5 * (a[0, 0].real + a[1, 1].real)
    radius = math.hypot(0.5 * (a[0, 0].real - a[1, 1].real), abs(a[0, 1]))
    return np.array([mean - radius, mean + radius])


def _off_norm(a, n):
    s = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            s += abs(a[i, j]) ** 2
    return math.sqrt(2.0 * s)


def eigvalsh(a, tol=1e-13):
    """Eigenvalues of a Hermitian matrix, ascending.

    Closed form for 2x2 input, cyclic Jacobi sweeps otherwise; iteration
    stops once the off-diagonal norm drops below ``tol``.
    """
    a = np.array(a, dtype=np.complex128, copy=True)
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    if n == 2:
        return _eigvalsh2(a)
    for _ in range(_JACOBI_MAX_SWEEPS):
        if _off_norm(a, n) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # Columns: A <- A V with V[p,p]=V[q,q]=c, V[p,q]=s*phase,
                # V[q,p]=-s*conj(phase); then rows: A <- V^dagger A.
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * phase.conjugate() * akq
                    a[k, q] = s * phase * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * phase * aqk
                    a[q, k] = s * phase.conjugate() * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
    else:
        raise ArithmeticError("Jacobi eigenvalue iteration did not converge")
    return np.sort(np.diag(a).real)


def mu_grid(tau, gamma0_over_lambda):
    """Excited-state survival probability on a grid of dimensionless times.

    ``tau`` is lambda*t.  Oscillatory (trigonometric) branch for strong
    coupling 2*gamma0 > lambda, monotone (hyperbolic) branch for weak
    coupling, polynomial limit at the crossover.
    """
    tau = np.asarray(tau, dtype=np.float64)
    g = float(gamma0_over_lambda)
    disc = 2.0 * g - 1.0
    if disc > 0.0:
        d = math.sqrt(disc)
        bracket = np.cos(d * tau / 2.0) + np.sin(d * tau / 2.0) / d
    elif disc < 0.0:
        d = math.sqrt(-disc)
        bracket = np.cosh(d * tau / 2.0) + np.sinh(d * tau / 2.0) / d
    else:
        bracket = 1.0 + tau / 2.0
    return np.exp(-tau) * bracket * bracket
