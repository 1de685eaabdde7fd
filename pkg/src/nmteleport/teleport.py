"""Single-qubit teleportation through noisy Bell resources.

Three resource-preparation pipelines are covered, all acting on the Bell
pair ``(|00> + |11>)/sqrt(2)`` distributed through independent amplitude
damping channels of survival probability ``mu``:

* bare: the damped pair is used as-is;
* wm_qmr: a symmetric weak measurement (strength ``p``) precedes the noise
  and a measurement reversal (strength ``q``) follows it;
* eam_qmr: the no-excitation environment record is post-selected and a
  partial-collapse recovery of strength ``q_prime`` follows.

Every pipeline yields a resource supported on the ``{|00>, |11>}``
populations plus ``|01>/|10>`` populations and a single coherence, so the
teleported state has a two-line closed form (``output_*`` below).  The
closed forms are validated against ``teleport_oracle``, a brute-force
three-qubit circuit simulation: Bell-basis projections on the input pair,
Pauli corrections on the receiver, outcome averaging, partial trace.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _backend, channels, qmat

DEGENERATE_TOL = 1e-14


class DegeneratePostSelectionError(ValueError):
    """Raised when a post-selected branch has (numerically) zero weight."""


@dataclass(frozen=True)
class InputState:
    """Input qubit ``cos(theta/2)|0> + sin(theta/2) e^{i phi} |1>``."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")

    def ket(self) -> np.ndarray:
        return np.array(
            [
                math.cos(self.theta / 2.0),
                math.sin(self.theta / 2.0) * cmath.exp(1j * self.phi),
            ],
            dtype=np.complex128,
        )


@dataclass(frozen=True)
class OutputState:
    """Teleported qubit state plus the post-selection weight of its branch."""

    rho: np.ndarray
    norm: float


_SQ2 = 1.0 / math.sqrt(2.0)
_I2 = np.eye(2, dtype=np.complex128)
_I4 = np.eye(4, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

# Bell outcomes on qubits (1, 2) and the correction the receiver applies.
_BELL_CORRECTIONS = (
    (np.array([_SQ2, 0, 0, _SQ2], dtype=np.complex128), _I2),
    (np.array([0, _SQ2, _SQ2, 0], dtype=np.complex128), _X),
    (np.array([_SQ2, 0, 0, -_SQ2], dtype=np.complex128), _Z),
    (np.array([0, _SQ2, -_SQ2, 0], dtype=np.complex128), _X @ _Z),
)

BELL_PHI_PLUS = np.outer(_BELL_CORRECTIONS[0][0], _BELL_CORRECTIONS[0][0])


# ---------------------------------------------------------------------------
# Resource coefficients (populations a, c, c, b and coherence z in the basis
# |00>, |01>, |10>, |11>; norm is the branch weight a + 2c + b).
# ---------------------------------------------------------------------------


def _damped_coeffs(mu_val: float):
    a = 0.5 * (mu_val * mu_val - 2.0 * mu_val + 2.0)
    c = 0.5 * (mu_val - mu_val * mu_val)
    z = 0.5 * mu_val
    b = 0.5 * mu_val * mu_val
    return a, c, z, b, 1.0


def _wm_qmr_coeffs(mu_val: float, p: float, q: float):
    pbar = 1.0 - p
    qbar = 1.0 - q
    a = 0.5 * (1.0 + pbar * pbar * (1.0 - mu_val) ** 2)
    c = 0.5 * pbar * pbar * (mu_val - mu_val * mu_val)
    z = 0.5 * pbar * mu_val
    b = 0.5 * pbar * pbar * mu_val * mu_val
    # Reversal weights: (1-q) per qubit on |0>, so q-bar^2 on the |00>
    # population, q-bar on the coherence and the single-excitation terms.
    a, c, z, b = qbar * qbar * a, qbar * c, qbar * z, b
    return a, c, z, b, a + 2.0 * c + b


def _eam_qmr_coeffs(mu_val: float, q_prime: float):
    qbar = 1.0 - q_prime
    # No-excitation record: pure |00> + mu |11> sector, weight (1+mu^2)/2.
    # The recovery partially collapses toward |00>: (1-q') per qubit on |1>.
    a = 0.5
    z = 0.5 * qbar * mu_val
    b = 0.5 * qbar * qbar * mu_val * mu_val
    return a, 0.0, z, b, a + b


def _sector_output(a, c, z, b, norm, state: InputState) -> np.ndarray:
    if norm <= DEGENERATE_TOL:
        raise DegeneratePostSelectionError(
            f"post-selection weight {norm:.3e} is numerically zero"
        )
    cos2 = math.cos(state.theta / 2.0) ** 2
    sin2 = math.sin(state.theta / 2.0) ** 2
    coherence = z * math.sin(state.theta) * cmath.exp(-1j * state.phi) / norm
    r11 = ((a + b) * cos2 + 2.0 * c * sin2) / norm
    r22 = (2.0 * c * cos2 + (a + b) * sin2) / norm
    return np.array(
        [[r11, coherence], [coherence.conjugate(), r22]], dtype=np.complex128
    )


# ---------------------------------------------------------------------------
# Closed-form teleported states
# ---------------------------------------------------------------------------


def output_bare(state: InputState, mu_val: float) -> OutputState:
    """Teleported state through the bare damped Bell pair."""
    channels._check_unit("mu_val", mu_val)
    a, c, z, b, norm = _damped_coeffs(mu_val)
    return OutputState(_sector_output(a, c, z, b, norm, state), 1.0)


def output_wm_qmr(state: InputState, mu_val: float, p: float, q: float) -> OutputState:
    """Teleported state with weak measurement plus reversal.

    Raises ``DegeneratePostSelectionError`` when the reversal branch has
    zero weight (``p = q = 1`` or ``q = 1`` with ``mu_val = 0``).
    """
    channels._check_unit("mu_val", mu_val)
    channels._check_unit("p", p)
    channels._check_unit("q", q)
    a, c, z, b, norm = _wm_qmr_coeffs(mu_val, p, q)
    return OutputState(_sector_output(a, c, z, b, norm, state), norm)


def output_eam_qmr(state: InputState, mu_val: float, q_prime: float) -> OutputState:
    """Teleported state with environment post-selection plus recovery."""
    channels._check_unit("mu_val", mu_val)
    channels._check_unit("q_prime", q_prime)
    a, c, z, b, norm = _eam_qmr_coeffs(mu_val, q_prime)
    return OutputState(_sector_output(a, c, z, b, norm, state), norm)


def fidelity(state: InputState, out: OutputState) -> float:
    """Overlap <psi| rho |psi> between the input and the teleported state."""
    rho = out.rho
    cos2 = math.cos(state.theta / 2.0) ** 2
    sin2 = math.sin(state.theta / 2.0) ** 2
    cross = (rho[0, 1] * cmath.exp(1j * state.phi)).real
    return float(
        rho[0, 0].real * cos2 + rho[1, 1].real * sin2 + math.sin(state.theta) * cross
    )


# ---------------------------------------------------------------------------
# Brute-force circuit oracle and operator-built resources
# ---------------------------------------------------------------------------


def teleport_oracle(state: InputState, resource) -> np.ndarray:
    """Simulate the full teleportation circuit through an arbitrary resource.

    Builds the three-qubit state ``|psi><psi| (x) resource``, projects qubits
    (1, 2) onto each Bell outcome, applies the matching Pauli correction to
    qubit 3, sums the corrected branches (averaging over the classical
    outcome) and traces out qubits (1, 2).  For a trace-preserving resource
    the output has unit trace.
    """
    resource = qmat.check_density_matrix(resource, "resource")
    if resource.shape[0] != 4:
        raise ValueError("resource must be a two-qubit state")
    psi = state.ket()
    full = qmat.kron(np.outer(psi, psi.conj()), resource)
    kernels = _backend.kernels
    total = np.zeros((8, 8), dtype=np.complex128)
    for bell, correction in _BELL_CORRECTIONS:
        projector = qmat.kron(np.outer(bell, bell.conj()), _I2)
        branch = kernels.sandwich(projector, full)
        total += kernels.sandwich(qmat.kron(_I4, correction), branch)
    return qmat.partial_trace(total, keep=(2,), dims=(2, 2, 2))


def bare_resource(mu_val: float) -> np.ndarray:
    """Damped Bell pair built by explicit Kraus evolution."""
    return channels.apply_two_qubit_channel(
        BELL_PHI_PLUS, channels.amplitude_damping_kraus(mu_val)
    )


def wm_qmr_resource(mu_val: float, p: float, q: float):
    """Operator-built resource of the weak-measurement protocol.

    Returns ``(rho, w, v)``: the normalized resource, the weak-measurement
    success weight ``w`` and the overall post-selection weight ``v`` of the
    combined measure-damp-reverse pipeline.
    """
    kernels = _backend.kernels
    wm = channels.weak_measurement_kraus(p)
    rho = kernels.sandwich(qmat.kron(wm, wm), BELL_PHI_PLUS)
    w = float(np.trace(rho).real)
    rho = rho / w
    rho = channels.apply_two_qubit_channel(rho, channels.amplitude_damping_kraus(mu_val))
    reversal = channels.qmr_kraus(q)
    rho = kernels.sandwich(qmat.kron(reversal, reversal), rho)
    v = w * float(np.trace(rho).real)
    if v <= DEGENERATE_TOL:
        raise DegeneratePostSelectionError(
            f"post-selection weight {v:.3e} is numerically zero"
        )
    return rho / float(np.trace(rho).real), w, v


def eam_qmr_resource(mu_val: float, q_prime: float):
    """Operator-built resource of the post-selection protocol.

    Returns ``(rho, m, n)``: the normalized resource, the no-excitation
    post-selection weight ``m`` and the recovery branch weight ``n``.
    """
    kernels = _backend.kernels
    rho, m = channels.eam_postselect_state(mu_val)
    recovery = channels.weak_measurement_kraus(q_prime)
    rho = kernels.sandwich(qmat.kron(recovery, recovery), rho)
    step = float(np.trace(rho).real)
    n = m * step
    if n <= DEGENERATE_TOL:
        raise DegeneratePostSelectionError(
            f"post-selection weight {n:.3e} is numerically zero"
        )
    return rho / step, m, n
