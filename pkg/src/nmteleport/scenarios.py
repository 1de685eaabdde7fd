"""End-to-end trajectory generation for the three teleportation protocols.

``run_scenario`` walks a uniform grid of dimensionless times ``lambda * t``
and records, per step: the memory kernel ``mu``, the teleportation fidelity,
the Hilbert-Schmidt speed of the phase family, the backflow witness ``chi``,
its running integral and the post-selection weight of the protocol branch.
``sweep`` repeats that over one varying parameter, which is how the standard
figure families (coupling sweeps, measurement-strength sweeps) are produced.

Series are deterministic: identical parameters give bit-identical records.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import metrics, teleport
from .channels import BathParams, MeasurementStrengths, mu_series
from .metrics import Scenario
from .teleport import DegeneratePostSelectionError, InputState

DEFAULT_T_MAX = 3.0
DEFAULT_DT = 1e-3
_MAX_STEPS = 10**7

SWEEP_AXES = ("gamma0_over_lambda", "p", "q", "q_prime", "theta", "phi")


@dataclass(frozen=True)
class ProtocolParams:
    """Everything one trajectory needs; times are in units of 1/lambda."""

    bath: BathParams
    input: InputState
    strengths: MeasurementStrengths = field(default_factory=MeasurementStrengths)
    t_max: float = DEFAULT_T_MAX
    dt: float = DEFAULT_DT
    scenario: Scenario = Scenario.BARE

    def __post_init__(self):
        if not (0.0 < self.dt <= self.t_max):
            raise ValueError(f"need 0 < dt <= t_max, got dt={self.dt}, t_max={self.t_max}")
        if self.t_max / self.dt > _MAX_STEPS:
            raise ValueError(f"grid would exceed {_MAX_STEPS} steps")
        object.__setattr__(self, "scenario", Scenario(self.scenario))


@dataclass(frozen=True)
class TimeSeriesRecord:
    """One row of a trajectory; NaN fidelity/hss flags a degenerate branch."""

    t_lambda: float
    mu: float
    fidelity: float
    hss: float
    chi: float
    n_cumulative: float
    norm: float


def _branch_weight(scenario: Scenario, strengths: MeasurementStrengths, mu_val: float, out_norm: float) -> float:
    # Reported weight column: product of the per-stage post-selection
    # weights (w*v or m*n), or 1 for the unconditioned protocol.
    if scenario is Scenario.BARE:
        return 1.0
    if scenario is Scenario.WM_QMR:
        pbar = 1.0 - strengths.p
        w = 0.5 * (1.0 + pbar * pbar)
        return w * out_norm
    m = 0.5 * (1.0 + mu_val * mu_val)
    return m * out_norm


def run_scenario(params: ProtocolParams) -> list[TimeSeriesRecord]:
    """Compute one trajectory on the uniform grid defined by ``params``.

    Degenerate post-selection at a grid point (possible only at extreme
    measurement strengths) yields a record with NaN fidelity and hss; the
    series continues and the backflow integral skips such points.
    """
    n_steps = int(round(params.t_max / params.dt))
    tau = np.arange(n_steps + 1, dtype=np.float64) * params.dt
    mu_values = mu_series(tau / params.bath.lam, params.bath)

    fid = np.empty_like(mu_values)
    hss = np.empty_like(mu_values)
    weight = np.empty_like(mu_values)
    state = params.input
    strengths = params.strengths
    scenario = params.scenario
    for i, mu_val in enumerate(mu_values):
        try:
            if scenario is Scenario.BARE:
                out = teleport.output_bare(state, mu_val)
            elif scenario is Scenario.WM_QMR:
                out = teleport.output_wm_qmr(state, mu_val, strengths.p, strengths.q)
            else:
                out = teleport.output_eam_qmr(state, mu_val, strengths.q_prime)
        except DegeneratePostSelectionError:
            fid[i] = math.nan
            hss[i] = math.nan
            weight[i] = 0.0
            continue
        fid[i] = teleport.fidelity(state, out)
        hss[i] = metrics.hss_analytic(scenario, state, strengths, mu_val)
        weight[i] = _branch_weight(scenario, strengths, mu_val, out.norm)

    chi = metrics.witness_chi(np.column_stack([tau, hss]))[:, 1]
    _, running = metrics.non_markovianity(np.column_stack([tau, chi]))
    n_cum = running[:, 1]
    return [
        TimeSeriesRecord(
            t_lambda=float(tau[i]),
            mu=float(mu_values[i]),
            fidelity=float(fid[i]),
            hss=float(hss[i]),
            chi=float(chi[i]),
            n_cumulative=float(n_cum[i]),
            norm=float(weight[i]),
        )
        for i in range(tau.size)
    ]


def _with_axis_value(base: ProtocolParams, axis: str, value: float) -> ProtocolParams:
    if axis == "gamma0_over_lambda":
        return replace(base, bath=replace(base.bath, gamma0_over_lambda=value))
    if axis in ("p", "q", "q_prime"):
        return replace(base, strengths=replace(base.strengths, **{axis: value}))
    if axis in ("theta", "phi"):
        return replace(base, input=replace(base.input, **{axis: value}))
    raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")


def sweep(base: ProtocolParams, axis: str, values) -> list[tuple[str, list[TimeSeriesRecord]]]:
    """One labeled trajectory per value of the swept parameter."""
    values = list(values)
    if not values:
        raise ValueError("sweep needs at least one value")
    labeled = []
    for value in values:
        params = _with_axis_value(base, axis, float(value))
        labeled.append((f"{axis}={value:g}", run_scenario(params)))
    return labeled
