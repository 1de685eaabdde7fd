"""Minimal dense complex linear algebra for 2x2, 4x4 and 8x8 matrices.

States and operators are plain ``complex128`` NumPy arrays; this module adds
the operations the simulation needs (products, tensor products, partial
traces, Hermitian eigenvalues) plus the physical-validity checks for density
matrices.  Everything is sized for at most three qubits, so the eigensolver
is a self-contained cyclic Jacobi iteration rather than a LAPACK call; the
test suite cross-checks it against independent solvers.

All functions are pure and never mutate their arguments.
"""

from __future__ import annotations

import math

import numpy as np

from . import _backend

# Centralized numeric tolerances.
HERM_TOL = 1e-12  # Hermiticity defect allowed in a density matrix
TRACE_TOL = 1e-12  # unit-trace defect allowed in a density matrix
PSD_TOL = 1e-10  # eigenvalue floor for positive semidefiniteness
EIG_TOL = 1e-13  # Jacobi off-diagonal stop criterion
_EIG_HERM_TOL = 1e-10  # Hermiticity required of eigensolver input

_ALLOWED_DIMS = (2, 4, 8)


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Validate and convert to a square complex128 array of dim 2, 4 or 8."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    if arr.shape[0] not in _ALLOWED_DIMS:
        raise ValueError(
            f"{name} dimension must be one of {_ALLOWED_DIMS}, got {arr.shape[0]}"
        )
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def dagger(m) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m, dtype=np.complex128).conj().T


def matmul(a, b) -> np.ndarray:
    """Matrix product of two equal-dimension square matrices."""
    a = as_matrix(a, "left factor")
    b = as_matrix(b, "right factor")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return _backend.kernels.matmul(a, b)


def kron(a, b) -> np.ndarray:
    """Kronecker product, first factor's indices major."""
    a = as_matrix(a, "left factor")
    b = as_matrix(b, "right factor")
    if a.shape[0] not in (2, 4) or b.shape[0] not in (2, 4):
        raise ValueError("kron factors must have dimension 2 or 4")
    if a.shape[0] * b.shape[0] > 8:
        raise ValueError("kron result would exceed dimension 8")
    return _backend.kernels.kron(a, b)


def partial_trace(rho, keep, dims) -> np.ndarray:
    """Reduced matrix on the kept subsystems.

    Parameters
    ----------
    rho : array
        Square matrix on the full tensor-product space.
    keep : iterable of int
        Subsystem indices to retain (0-based, non-empty).
    dims : iterable of int
        Dimension of each subsystem; their product must match ``rho``.
    """
    rho = as_matrix(rho, "rho")
    dims = tuple(int(d) for d in dims)
    keep = tuple(sorted(set(int(k) for k in keep)))
    if math.prod(dims) != rho.shape[0]:
        raise ValueError(
            f"subsystem dims {dims} do not factor dimension {rho.shape[0]}"
        )
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    if any(k < 0 or k >= len(dims) for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {len(dims)} subsystems")
    return _backend.kernels.partial_trace(rho, keep, dims)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending.

    Uses the closed form for dimension 2 and cyclic Jacobi rotations for
    dimensions 4 and 8 (off-diagonal norm below ``EIG_TOL`` stops the
    iteration).  Raises ``ValueError`` if the input is not Hermitian to
    within 1e-10.
    """
    m = as_matrix(m, "matrix")
    defect = float(np.max(np.abs(m - m.conj().T)))
    if defect > _EIG_HERM_TOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    return _backend.kernels.eigvalsh(m, EIG_TOL)


def check_density_matrix(rho, name: str = "state") -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity of a density matrix.

    Returns the validated complex128 array; raises ``ValueError`` describing
    the violated invariant otherwise.
    """
    rho = as_matrix(rho, name)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > HERM_TOL:
        raise ValueError(f"{name} is not Hermitian (defect {herm:.3e})")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"{name} trace is {tr:.15g}, expected 1")
    eigs = _backend.kernels.eigvalsh(rho, EIG_TOL)
    if eigs[0] < -PSD_TOL:
        raise ValueError(f"{name} has negative eigenvalue {eigs[0]:.3e}")
    return rho


def is_density_matrix(rho) -> bool:
    """True when ``check_density_matrix`` accepts the input."""
    try:
        check_density_matrix(rho)
    except ValueError:
        return False
    return True
