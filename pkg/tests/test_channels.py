import math

import mpmath
import numpy as np
import pytest

from helpers import damped_pair_table, random_density
from nmteleport import channels
from nmteleport.channels import (
    BathParams,
    KrausChannel,
    MeasurementStrengths,
    amplitude_damping_kraus,
    apply_two_qubit_channel,
    eam_postselect_state,
    mu,
    mu_series,
    qmr_kraus,
    weak_measure_state,
    weak_measurement_kraus,
)

STRONG = BathParams(20.0)
WEAK = BathParams(0.1)
CRITICAL = BathParams(0.5)

BELL = np.zeros((4, 4), dtype=np.complex128)
BELL[0, 0] = BELL[0, 3] = BELL[3, 0] = BELL[3, 3] = 0.5


def test_bath_params_validation():
    with pytest.raises(ValueError):
        BathParams(0.0)
    with pytest.raises(ValueError):
        BathParams(10.0, lam=-1.0)


def test_measurement_strengths_validation():
    MeasurementStrengths(0.0, 1.0, 0.5)
    with pytest.raises(ValueError, match="q_prime"):
        MeasurementStrengths(q_prime=1.01)


@pytest.mark.parametrize("bath", [STRONG, WEAK, CRITICAL])
def test_mu_starts_at_one(bath):
    assert mu(0.0, bath) == 1.0


def test_mu_rejects_negative_time():
    with pytest.raises(ValueError):
        mu(-0.1, STRONG)
    with pytest.raises(ValueError):
        mu_series([-0.5, 0.5], STRONG)


def test_mu_first_zero_strong_coupling():
    # Independent root find on the oscillatory bracket cos(x) + sin(x)/d.
    d = math.sqrt(2 * 20.0 - 1.0)
    lo, hi = 0.4, 0.7
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if math.cos(d * mid / 2) + math.sin(d * mid / 2) / d > 0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    assert abs(root - 0.5539) <= 1e-4
    assert mu(root, STRONG) <= 1e-20


def test_mu_against_arbitrary_precision():
    with mpmath.workdps(50):
        d = mpmath.sqrt(2 * 20 - 1)
        bracket = mpmath.cos(d / 2) + mpmath.sin(d / 2) / d
        exact = mpmath.e**-1 * bracket**2
        assert abs(mu(1.0, STRONG) - float(exact)) <= 1e-13
    assert abs(mu(1.0, STRONG) - 0.3655) <= 1e-4


def test_mu_dimensionful_time():
    bath = BathParams(20.0, lam=2.5)
    assert mu(1.0 / 2.5, bath) == pytest.approx(mu(1.0, STRONG), abs=1e-15)


def test_mu_bounds_and_regimes():
    t = np.linspace(0.0, 6.0, 4001)
    for g in (0.05, 0.1, 0.5, 2.0, 20.0, 100.0):
        values = mu_series(t, BathParams(g))
        assert np.all(values >= 0.0) and np.all(values <= 1.0 + 1e-15)
    weak_values = mu_series(t, WEAK)
    assert np.all(np.diff(weak_values) <= 1e-15)  # monotone decay
    strong_values = mu_series(t, STRONG)
    assert strong_values.min() <= 1e-6  # repeatedly touches zero
    interior = (np.diff(strong_values[:-1]) > 0) & (np.diff(strong_values[1:]) < 0)
    assert interior.sum() >= 2  # revival peaks


def test_amplitude_damping_kraus_limits():
    full = amplitude_damping_kraus(1.0)
    assert np.array_equal(full.operators[0], np.eye(2))
    assert np.array_equal(full.operators[1], np.zeros((2, 2)))
    none = amplitude_damping_kraus(0.0)
    assert np.array_equal(none.operators[0], np.diag([1.0, 0.0]))
    assert np.array_equal(none.operators[1], np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        amplitude_damping_kraus(1.2)


def test_amplitude_damping_completeness():
    ch = amplitude_damping_kraus(0.25)
    total = sum(k.conj().T @ k for k in ch.operators)
    assert np.max(np.abs(total - np.eye(2))) <= 1e-15


def test_kraus_channel_validation():
    with pytest.raises(ValueError, match="completeness"):
        KrausChannel((np.eye(2) * 0.5,), label="broken")
    # A lone reversal operator is a valid sub-normalized instrument.
    KrausChannel((qmr_kraus(0.5),), label="reversal", trace_preserving=False)
    with pytest.raises(ValueError, match="super-normalized"):
        KrausChannel((np.eye(2) * 1.1,), label="too big", trace_preserving=False)


def test_two_qubit_channel_identity_at_mu_one():
    rng = np.random.default_rng(4)
    rho = random_density(rng, 4)
    evolved = apply_two_qubit_channel(rho, amplitude_damping_kraus(1.0))
    assert np.max(np.abs(evolved - rho)) <= 1e-15


def test_two_qubit_channel_reproduces_pair_table():
    rng = np.random.default_rng(8)
    for mu_val in rng.uniform(0.0, 1.0, size=100):
        evolved = apply_two_qubit_channel(BELL, amplitude_damping_kraus(mu_val))
        assert np.max(np.abs(evolved - damped_pair_table(mu_val))) <= 1e-12


def test_two_qubit_channel_ground_state_fixed_point():
    ground = np.zeros((4, 4), dtype=np.complex128)
    ground[0, 0] = 1.0
    for mu_val in (0.0, 0.3, 0.7, 1.0):
        evolved = apply_two_qubit_channel(ground, amplitude_damping_kraus(mu_val))
        assert np.max(np.abs(evolved - ground)) <= 1e-15


def test_two_qubit_channel_preserves_trace_and_positivity():
    rng = np.random.default_rng(12)
    for _ in range(10):
        rho = random_density(rng, 4)
        evolved = apply_two_qubit_channel(rho, amplitude_damping_kraus(rng.uniform()))
        assert abs(np.trace(evolved).real - 1.0) <= 1e-12
        assert np.linalg.eigvalsh(evolved).min() >= -1e-10


def test_weak_measure_state():
    rho0, w0 = weak_measure_state(0.0)
    assert w0 == 1.0
    assert np.max(np.abs(rho0 - BELL)) <= 1e-15
    rho1, w1 = weak_measure_state(1.0)
    assert w1 == 0.5
    assert rho1[0, 0] == pytest.approx(1.0)
    rho_half, w_half = weak_measure_state(0.5)
    assert w_half == 0.625
    vec = np.array([1.0, 0, 0, 0.5]) / math.sqrt(1.25)
    assert np.max(np.abs(rho_half - np.outer(vec, vec))) <= 1e-15


def test_qmr_kraus_values():
    assert np.array_equal(qmr_kraus(0.0), np.eye(2))
    assert np.array_equal(qmr_kraus(1.0), np.diag([0.0, 1.0]))
    assert np.allclose(qmr_kraus(0.5), np.diag([math.sqrt(0.5), 1.0]))


def test_weak_measurement_kraus_values():
    assert np.array_equal(weak_measurement_kraus(0.0), np.eye(2))
    assert np.allclose(weak_measurement_kraus(0.75), np.diag([1.0, 0.5]))


def test_eam_postselect_state_limits():
    rho1, m1 = eam_postselect_state(1.0)
    assert m1 == 1.0
    assert np.max(np.abs(rho1 - BELL)) <= 1e-15
    rho0, m0 = eam_postselect_state(0.0)
    assert m0 == 0.5
    assert rho0[0, 0] == pytest.approx(1.0)


def test_eam_postselect_matches_kraus_branch():
    # The post-selected state is exactly the normalized double no-jump branch.
    rng = np.random.default_rng(17)
    for mu_val in rng.uniform(0.0, 1.0, size=25):
        k0 = amplitude_damping_kraus(mu_val).operators[0]
        g = np.kron(k0, k0)
        branch = g @ BELL @ g.conj().T
        branch /= np.trace(branch).real
        state, m = eam_postselect_state(mu_val)
        assert np.max(np.abs(state - branch)) <= 1e-12
        assert m == pytest.approx(0.5 * (1 + mu_val**2), abs=1e-15)
