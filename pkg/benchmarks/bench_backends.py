#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the hot paths in isolation (matrix kernels, the Jacobi eigensolver,
the memory-kernel grid) and two composed workloads (the brute-force
teleportation oracle and a full bare trajectory), once per backend.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import math
import time

import numpy as np

from nmteleport import _backend
from nmteleport.channels import BathParams, MeasurementStrengths
from nmteleport.metrics import Scenario
from nmteleport.scenarios import ProtocolParams, run_scenario
from nmteleport.teleport import InputState, bare_resource, teleport_oracle


def _time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _workloads(rng):
    herm8 = [
        0.5 * (g + g.conj().T)
        for g in (
            rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
            for _ in range(50)
        )
    ]
    pair = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    pair = pair @ pair.conj().T
    pair /= np.trace(pair).real
    ops = [
        np.array([[1.0, 0.0], [0.0, 0.6]], dtype=np.complex128),
        np.array([[0.0, 0.8], [0.0, 0.0]], dtype=np.complex128),
    ]
    tau = np.arange(0.0, 3.0, 1e-3)
    state = InputState(math.pi / 2, math.pi / 4)
    resource = bare_resource(0.4)
    params = ProtocolParams(
        bath=BathParams(20.0),
        input=state,
        strengths=MeasurementStrengths(),
        t_max=1.0,
        dt=1e-3,
        scenario=Scenario.BARE,
    )

    def eig():
        k = _backend.kernels
        for h in herm8:
            k.eigvalsh(h, 1e-13)

    def kraus():
        k = _backend.kernels
        for _ in range(200):
            k.pair_kraus_apply(pair, ops)

    def kernel_grid():
        k = _backend.kernels
        for _ in range(100):
            k.mu_grid(tau, 20.0)

    def oracle():
        for _ in range(50):
            teleport_oracle(state, resource)

    def trajectory():
        run_scenario(params)

    return [
        ("jacobi eigvalsh 8x8 (x50)", eig),
        ("pair kraus apply 4x4 (x200)", kraus),
        ("memory kernel grid 3000 pts (x100)", kernel_grid),
        ("teleport oracle (x50)", oracle),
        ("bare trajectory, 1000 steps", trajectory),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions")
    args = parser.parse_args()

    backends = ["python"]
    if _backend.compiled_available():
        backends.append("compiled")
    else:
        print("note: compiled extension not built; timing pure Python only")

    rng = np.random.default_rng(0)
    names = [name for name, _ in _workloads(rng)]
    results = {}
    for backend in backends:
        with _backend.use_backend(backend):
            rng = np.random.default_rng(0)
            for name, fn in _workloads(rng):
                results[(backend, name)] = _time(fn, args.repeat)

    width = max(len(n) for n in names)
    header = f"{'workload':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name in names:
        row = f"{name:<{width}}  "
        for backend in backends:
            row += f"{results[(backend, name)] * 1e3:>10.2f}ms"
        if len(backends) == 2:
            ratio = results[("python", name)] / results[("compiled", name)]
            row += f"{ratio:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
