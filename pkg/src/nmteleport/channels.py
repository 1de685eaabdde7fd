"""Noise and measurement operators for qubits in a structured bath.

A qubit coupled resonantly to a lossy cavity-like environment undergoes
amplitude damping whose excited-state survival probability ``mu(t)`` carries
the bath memory: for strong coupling (``2*gamma0 > lambda``) it oscillates
and repeatedly touches zero, for weak coupling it decays monotonically.

Besides the damping Kraus pair this module provides the measurement-based
control operations used by the teleportation protocols: the partial-collapse
weak measurement, its reversal, and the post-selected no-excitation state of
an environment-monitored Bell pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend, qmat

COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True)
class BathParams:
    """Lorentzian-bath parameters.

    ``gamma0_over_lambda`` is the dimensionless coupling (Markovian-limit
    decay rate over spectral width); ``lam`` is the spectral width itself in
    inverse time units and only matters when times are given dimensionfully.
    """

    gamma0_over_lambda: float
    lam: float = 1.0

    def __post_init__(self):
        if not (self.gamma0_over_lambda > 0 and math.isfinite(self.gamma0_over_lambda)):
            raise ValueError("gamma0_over_lambda must be positive and finite")
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError("lam must be positive and finite")


@dataclass(frozen=True)
class MeasurementStrengths:
    """Strengths of the control operations, each in [0, 1].

    ``p`` is the weak-measurement strength applied symmetrically to both
    resource qubits before the noise, ``q`` the reversal strength applied
    after it, and ``q_prime`` the recovery strength of the post-selection
    protocol.
    """

    p: float = 0.0
    q: float = 0.0
    q_prime: float = 0.0

    def __post_init__(self):
        for name in ("p", "q", "q_prime"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class KrausChannel:
    """Ordered operator set describing a channel or measurement instrument.

    ``trace_preserving`` channels must satisfy completeness
    (``sum K^dag K = I``); post-selecting instruments may be sub-normalized
    (``sum K^dag K <= I``).
    """

    operators: tuple = field()
    label: str = ""
    trace_preserving: bool = True

    def __post_init__(self):
        ops = tuple(qmat.as_matrix(k, "Kraus operator") for k in self.operators)
        object.__setattr__(self, "operators", ops)
        dim = ops[0].shape[0]
        if any(k.shape[0] != dim for k in ops):
            raise ValueError("Kraus operators must share one dimension")
        total = sum(qmat.dagger(k) @ k for k in ops)
        defect = float(np.max(np.abs(total - np.eye(dim))))
        if self.trace_preserving:
            if defect > COMPLETENESS_TOL:
                raise ValueError(
                    f"channel {self.label!r} violates completeness (defect {defect:.3e})"
                )
        else:
            slack = _backend.kernels.eigvalsh(np.eye(dim) - total, qmat.EIG_TOL)
            if slack[0] < -qmat.PSD_TOL:
                raise ValueError(
                    f"instrument {self.label!r} is super-normalized "
                    f"(eigenvalue excess {-slack[0]:.3e})"
                )

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]


def mu(t: float, bath: BathParams) -> float:
    """Excited-state survival probability at time ``t`` (>= 0).

    Strong coupling gives the oscillatory branch, weak coupling the monotone
    hyperbolic continuation, and the crossover ``2*gamma0 = lambda`` the
    polynomial limit.  The value always lies in [0, 1].
    """
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    tau = np.asarray([bath.lam * t], dtype=np.float64)
    return float(_backend.kernels.mu_grid(tau, bath.gamma0_over_lambda)[0])


def mu_series(t, bath: BathParams) -> np.ndarray:
    """Vectorized ``mu`` over an array of times."""
    t = np.asarray(t, dtype=np.float64)
    if t.size and float(t.min()) < 0:
        raise ValueError("times must be non-negative")
    return _backend.kernels.mu_grid(bath.lam * t, bath.gamma0_over_lambda)


def amplitude_damping_kraus(mu_val: float) -> KrausChannel:
    """Single-qubit damping channel at survival probability ``mu_val``."""
    _check_unit("mu_val", mu_val)
    k0 = np.array([[1.0, 0.0], [0.0, math.sqrt(mu_val)]], dtype=np.complex128)
    k1 = np.array(
        [[0.0, math.sqrt(1.0 - mu_val)], [0.0, 0.0]], dtype=np.complex128
    )
    return KrausChannel((k0, k1), label="amplitude damping", trace_preserving=True)


def apply_two_qubit_channel(rho, ch: KrausChannel) -> np.ndarray:
    """Apply a single-qubit channel independently to both qubits of a pair."""
    rho = qmat.as_matrix(rho, "rho")
    if rho.shape[0] != 4:
        raise ValueError(f"rho must be 4x4, got {rho.shape[0]}x{rho.shape[0]}")
    if ch.dim != 2:
        raise ValueError("channel must act on a single qubit")
    return _backend.kernels.pair_kraus_apply(rho, ch.operators)


def weak_measurement_kraus(p: float) -> np.ndarray:
    """Partial-collapse operator |0><0| + sqrt(1-p) |1><1|."""
    _check_unit("p", p)
    return np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=np.complex128)


def qmr_kraus(q: float) -> np.ndarray:
    """Measurement-reversal operator sqrt(1-q) |0><0| + |1><1|."""
    _check_unit("q", q)
    return np.array([[math.sqrt(1.0 - q), 0.0], [0.0, 1.0]], dtype=np.complex128)


def weak_measure_state(p: float) -> tuple[np.ndarray, float]:
    """Bell pair after symmetric weak measurement of strength ``p``.

    Returns the normalized post-measurement state, proportional to
    ``|00> + (1-p)|11>``, together with its success weight
    ``W = (1 + (1-p)^2) / 2``.
    """
    _check_unit("p", p)
    pbar = 1.0 - p
    w = 0.5 * (1.0 + pbar * pbar)
    vec = np.zeros(4, dtype=np.complex128)
    vec[0] = 1.0 / math.sqrt(2.0 * w)
    vec[3] = pbar / math.sqrt(2.0 * w)
    return np.outer(vec, vec.conj()), w


def eam_postselect_state(mu_val: float) -> tuple[np.ndarray, float]:
    """Bell pair conditioned on no excitation reaching either environment.

    Keeping only the damping trajectory in which both environment detectors
    stay silent leaves the pure state proportional to ``|00> + mu |11>``.
    Returns the normalized state and its success weight
    ``M = (1 + mu^2) / 2``.
    """
    _check_unit("mu_val", mu_val)
    m = 0.5 * (1.0 + mu_val * mu_val)
    vec = np.zeros(4, dtype=np.complex128)
    vec[0] = 1.0 / math.sqrt(2.0 * m)
    vec[3] = mu_val / math.sqrt(2.0 * m)
    return np.outer(vec, vec.conj()), m


def _check_unit(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
