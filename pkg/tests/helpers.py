"""Shared test utilities: random states and independent solver oracles."""

import numpy as np


def random_density(rng, dim):
    """Ginibre construction: always a valid density matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, dim, scale=1.0):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * 0.5 * (g + g.conj().T)


def charpoly_eigenvalues(matrix):
    """Eigenvalues via Newton-identity characteristic polynomial + np.roots.

    Independent of both kernel backends and of np.linalg.eigvalsh; intended
    as a cross-check oracle for small Hermitian matrices.
    """
    a = np.asarray(matrix, dtype=np.complex128)
    n = a.shape[0]
    power = np.eye(n, dtype=np.complex128)
    s = []
    for _ in range(n):
        power = power @ a
        s.append(np.trace(power))
    e = [1.0]
    for k in range(1, n + 1):
        acc = 0.0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * s[i - 1]
        e.append(acc / k)
    coeffs = [(-1) ** k * e[k] for k in range(n + 1)]
    roots = np.roots(coeffs)
    return np.sort(roots.real)


def damped_pair_table(mu):
    """Frozen two-qubit state of a Bell pair after symmetric damping.

    Populations and the single coherence, written out longhand so channel
    tests do not depend on the package's own coefficient helpers.
    """
    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[0, 0] = 0.5 * (mu * mu - 2.0 * mu + 2.0)
    rho[1, 1] = rho[2, 2] = 0.5 * (mu - mu * mu)
    rho[3, 3] = 0.5 * mu * mu
    rho[0, 3] = rho[3, 0] = 0.5 * mu
    return rho
