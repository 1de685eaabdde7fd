"""State-space distances, statistical speeds and the memory-effect witness.

The witness pipeline: every protocol output carries the input phase ``phi``
only in its off-diagonal element, so the Hilbert-Schmidt speed of the
phase-parameterized family equals that element's magnitude
(``hss_analytic``).  Its time derivative ``chi`` flags information backflow
wherever it turns positive, and the running integral of the positive part
(``non_markovianity``) accumulates the total backflow.

``statistical_speed`` is the generic finite-difference route through the
whole Schatten-style speed family; its ``alpha = 2`` member must agree with
the closed form, which the test suite enforces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import qmat
from .channels import MeasurementStrengths
from .teleport import InputState, _damped_coeffs, _eam_qmr_coeffs, _wm_qmr_coeffs

DEFAULT_PHASE_STEP = 1e-5


class Scenario(str, Enum):
    BARE = "bare"
    WM_QMR = "wm_qmr"
    EAM_QMR = "eam_qmr"


@dataclass(frozen=True)
class SpeedSample:
    """One point of a speed trajectory: value, rate and accumulated backflow."""

    t: float
    hss: float
    chi: float
    n_cumulative: float


def hs_distance(a, b) -> float:
    """Hilbert-Schmidt distance sqrt(Tr[(a-b)^2] / 2)."""
    a = qmat.as_matrix(a, "a")
    b = qmat.as_matrix(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    delta = a - b
    # For Hermitian delta, Tr[delta^2] is the squared Frobenius norm.
    return math.sqrt(0.5 * float(np.sum(np.abs(delta) ** 2)))


def trace_distance(a, b) -> float:
    """Trace distance, half the absolute-eigenvalue sum of (a-b)."""
    a = qmat.as_matrix(a, "a")
    b = qmat.as_matrix(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    eigs = qmat.hermitian_eigenvalues(a - b)
    return 0.5 * float(np.sum(np.abs(eigs)))


def statistical_speed(family, phi0: float, alpha: float, step: float = DEFAULT_PHASE_STEP) -> float:
    """Schatten-style speed (Tr|d rho / d phi|^alpha / 2)^(1/alpha).

    ``family`` maps a phase to a density matrix; the derivative is taken by
    a central difference of width ``step`` and its absolute eigenvalues feed
    the alpha-norm.  ``alpha = 2`` is the Hilbert-Schmidt speed.
    """
    if alpha < 1.0:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    left = np.asarray(family(phi0 - step), dtype=np.complex128)
    right = np.asarray(family(phi0 + step), dtype=np.complex128)
    derivative = (right - left) / (2.0 * step)
    derivative = 0.5 * (derivative + derivative.conj().T)
    eigs = qmat.hermitian_eigenvalues(derivative)
    return float((0.5 * np.sum(np.abs(eigs) ** alpha)) ** (1.0 / alpha))


def hss_analytic(
    scenario: Scenario | str,
    state: InputState,
    strengths: MeasurementStrengths,
    mu_val: float,
) -> float:
    """Closed-form Hilbert-Schmidt speed of the phase family.

    The output coherence has the form ``A * exp(-i phi)``, so the speed is
    just ``A``: the normalized coherence amplitude times sin(theta).
    """
    scenario = Scenario(scenario)
    if scenario is Scenario.BARE:
        _, _, z, _, norm = _damped_coeffs(mu_val)
    elif scenario is Scenario.WM_QMR:
        _, _, z, _, norm = _wm_qmr_coeffs(mu_val, strengths.p, strengths.q)
    else:
        _, _, z, _, norm = _eam_qmr_coeffs(mu_val, strengths.q_prime)
    if norm <= 0.0:
        raise ValueError("degenerate post-selection weight")
    return abs(z) * math.sin(state.theta) / norm


def _as_samples(samples) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(samples, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("expected a sequence of (t, value) pairs")
    return arr[:, 0], arr[:, 1]


def witness_chi(hss_samples) -> np.ndarray:
    """Time derivative of a speed series on a uniform grid.

    Takes (t, hss) pairs, returns (t, chi) pairs; central differences in the
    interior, one-sided stencils at the ends.  Requires at least 3 points.
    """
    t, hss = _as_samples(hss_samples)
    if t.size < 3:
        raise ValueError("need at least 3 samples to differentiate")
    steps = np.diff(t)
    if not np.allclose(steps, steps[0], rtol=1e-8, atol=0.0):
        raise ValueError("time grid must be uniform")
    chi = np.gradient(hss, t, edge_order=2)
    return np.column_stack([t, chi])


def non_markovianity(chi_samples) -> tuple[float, np.ndarray]:
    """Accumulated positive part of the witness.

    Trapezoidal integral of ``max(chi, 0)``; returns the total together with
    the running cumulative as (t, value) pairs.  NaN samples (degenerate
    post-selection points) contribute nothing.
    """
    t, chi = _as_samples(chi_samples)
    positive = np.where(chi > 0.0, chi, 0.0)
    increments = 0.5 * (positive[1:] + positive[:-1]) * np.diff(t)
    running = np.concatenate([[0.0], np.cumsum(increments)])
    return float(running[-1]), np.column_stack([t, running])


def speed_profile(hss_samples) -> list[SpeedSample]:
    """Bundle a speed series with its witness and accumulated backflow."""
    t, hss = _as_samples(hss_samples)
    chi = witness_chi(hss_samples)[:, 1]
    _, running = non_markovianity(np.column_stack([t, chi]))
    return [
        SpeedSample(t=float(ti), hss=float(hi), chi=float(ci), n_cumulative=float(ni))
        for ti, hi, ci, ni in zip(t, hss, chi, running[:, 1])
    ]
