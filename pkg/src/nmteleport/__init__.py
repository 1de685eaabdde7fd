"""Qubit teleportation through non-Markovian amplitude-damping channels.

Simulates three protocol variants (bare, weak measurement + reversal,
environment-assisted post-selection + recovery), their teleportation
fidelity, the Hilbert-Schmidt speed of the teleported phase family, and the
backflow witness built from it.  Every closed form is validated against a
brute-force Kraus/circuit oracle in the test suite.
"""

from ._backend import active_backend, compiled_available, use_backend
from .channels import (
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
from .metrics import (
    Scenario,
    SpeedSample,
    hs_distance,
    hss_analytic,
    non_markovianity,
    speed_profile,
    statistical_speed,
    trace_distance,
    witness_chi,
)
from .scenarios import ProtocolParams, TimeSeriesRecord, run_scenario, sweep
from .teleport import (
    DegeneratePostSelectionError,
    InputState,
    OutputState,
    fidelity,
    output_bare,
    output_eam_qmr,
    output_wm_qmr,
    teleport_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "BathParams",
    "DegeneratePostSelectionError",
    "InputState",
    "KrausChannel",
    "MeasurementStrengths",
    "OutputState",
    "ProtocolParams",
    "Scenario",
    "SpeedSample",
    "TimeSeriesRecord",
    "active_backend",
    "amplitude_damping_kraus",
    "apply_two_qubit_channel",
    "compiled_available",
    "eam_postselect_state",
    "fidelity",
    "hs_distance",
    "hss_analytic",
    "mu",
    "mu_series",
    "non_markovianity",
    "output_bare",
    "output_eam_qmr",
    "output_wm_qmr",
    "qmr_kraus",
    "run_scenario",
    "speed_profile",
    "statistical_speed",
    "sweep",
    "teleport_oracle",
    "trace_distance",
    "use_backend",
    "weak_measure_state",
    "weak_measurement_kraus",
    "witness_chi",
]
