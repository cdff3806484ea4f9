"""Exact gradients of the QAOA cost expectation.

Three routes:

* per-gate parameter shift (canonical): every parameterized gate is generated
  by an operator with +/-1 spectrum (halved), so its exact derivative is
  1/2 [C(theta + pi/2) - C(theta - pi/2)]; per-parameter gradients follow by
  the chain rule with the gate's coefficient factor.
* layer shift: the two-point rule applied verbatim to the layer parameters
  gamma_l, beta_l. Exact only when the layer generator has a two-eigenvalue
  spectrum (e.g. a single Pauli term); kept as a documented secondary method
  so its deviation on multi-term Hamiltonians can be measured.
* central finite differences: the verification oracle.

Shifting a single gate by +/- pi/2 is realized by inserting one extra
rotation of angle +/- pi/2 next to that gate (rotation angles add and the
gates within a block commute), so each shifted evaluation is a standard
evolution plus one gate. Expectation values are exact statevector values.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from . import kernels
from .hamiltonian import IsingModel, diagonal, rescale
from .qaoa import (MixerSpec, QaoaParams, check_rescaled, cost_expectation,
                   init_plus_state)

SHIFT = pi / 2.0


class GradientMethodError(ValueError):
    """Requested gradient method does not support this mixer."""


@dataclass(frozen=True)
class GradientReport:
    """Gradient vectors plus the circuit-execution count that produced them."""
    grad_gammas: tuple[float, ...]
    grad_betas: tuple[float, ...]
    evaluations: int
    method: str


def shift_rule_single(cost_curve, theta: float) -> float:
    """Two-point rule for a gate with a +/-1-spectrum (halved) generator."""
    return 0.5 * (cost_curve(theta + SHIFT) - cost_curve(theta - SHIFT))


@dataclass(frozen=True)
class _ShiftGate:
    """One parameterized gate: where it sits and d(angle)/d(parameter)."""
    param: str        # "gamma" | "beta"
    layer: int
    factor: float
    mask: int         # parity-phase qubit mask; 0 for an rz/rx gate
    qubit: int        # rz/rx target; -1 for a parity gate


class _FastEvaluator:
    """Shared circuit runner for the x-mixer shift evaluations.

    Caches the per-layer cost phases exp(-i gamma_l * diag) plus the state
    prefix entering each layer, so one shifted evaluation replays only the
    layers from the shifted gate onward plus the single +/- pi/2 insertion.
    """

    def __init__(self, dynamics: IsingModel, params: QaoaParams,
                 spec: MixerSpec, report_diag: np.ndarray):
        self.n = dynamics.n
        self.params = params
        self.strength = spec.gamma_strength
        self.report_diag = report_diag
        dyn_diag = diagonal(dynamics)
        self.layer_phases = [np.exp(-1j * g * dyn_diag) for g in params.gammas]
        self.mixer_angles = [2.0 * b * self.strength for b in params.betas]
        self._prefixes: list[np.ndarray] | None = None

    def _prefix(self, layer: int) -> np.ndarray:
        if self._prefixes is None:
            state = init_plus_state(self.n).amps
            prefixes = [state.copy()]
            for l in range(self.params.p):
                state *= self.layer_phases[l]
                kernels.apply_rx_all(state, self.n, self.mixer_angles[l])
                prefixes.append(state.copy())
            self._prefixes = prefixes
        return self._prefixes[layer]

    def run(self, extra: _ShiftGate | None = None, sign: float = 0.0) -> float:
        start = extra.layer if extra is not None else self.params.p
        amps = self._prefix(start).copy()
        for layer in range(start, self.params.p):
            amps *= self.layer_phases[layer]
            if extra is not None and extra.param == "gamma" and extra.layer == layer:
                if extra.mask:
                    kernels.apply_parity_phase(amps, extra.mask, sign * SHIFT)
                else:
                    half = sign * SHIFT / 2.0
                    kernels.apply_diag1(amps, extra.qubit,
                                        complex(np.cos(half), -np.sin(half)),
                                        complex(np.cos(half), np.sin(half)))
            kernels.apply_rx_all(amps, self.n, self.mixer_angles[layer])
            if extra is not None and extra.param == "beta" and extra.layer == layer:
                c = np.cos(sign * SHIFT / 2.0)
                s = -1j * np.sin(sign * SHIFT / 2.0)
                kernels.apply_2x2(amps, extra.qubit, c, s, s, c)
        p = amps.real ** 2 + amps.imag ** 2
        return float(p @ self.report_diag)


def _shift_gates(dynamics: IsingModel, spec: MixerSpec, p: int) -> list[_ShiftGate]:
    gates = []
    for layer in range(p):
        for i, c in sorted(dynamics.h.items()):
            gates.append(_ShiftGate("gamma", layer, 2.0 * c, 0, i))
        for idxs, c in sorted(dynamics.j2.items()) + sorted(dynamics.jk.items()):
            mask = 0
            for i in idxs:
                mask |= 1 << i
            gates.append(_ShiftGate("gamma", layer, 2.0 * c, mask, -1))
        for q in range(dynamics.n):
            gates.append(_ShiftGate("beta", layer, 2.0 * spec.gamma_strength, 0, q))
    return gates


def _require_x_mixer(spec: MixerSpec, method: str) -> None:
    if spec.kind != "x":
        raise GradientMethodError(
            f"{method} supports the transverse-field mixer only; use "
            "finite_difference for grover-mixer gradients")


def _dynamics(ising: IsingModel, bound: float | None) -> IsingModel:
    dyn = rescale(ising, bound) if bound is not None else ising
    check_rescaled(dyn)
    return dyn


def qaoa_gradient_per_gate(ising: IsingModel, params: QaoaParams,
                           spec: MixerSpec, *,
                           bound: float | None = None) -> GradientReport:
    """Exact gradient: shift each parameterized gate, sum by the chain rule."""
    _require_x_mixer(spec, "per-gate shift")
    dynamics = _dynamics(ising, bound)
    ev = _FastEvaluator(dynamics, params, spec, diagonal(ising))
    gates = _shift_gates(dynamics, spec, params.p)
    gg = np.zeros(params.p)
    gb = np.zeros(params.p)
    for gate in gates:
        d = 0.5 * (ev.run(gate, +1.0) - ev.run(gate, -1.0)) * gate.factor
        if gate.param == "gamma":
            gg[gate.layer] += d
        else:
            gb[gate.layer] += d
    return GradientReport(grad_gammas=tuple(float(g) for g in gg),
                          grad_betas=tuple(float(b) for b in gb),
                          evaluations=2 * len(gates), method="per-gate-shift")


def qaoa_gradient_layer_shift(ising: IsingModel, params: QaoaParams,
                              spec: MixerSpec, *,
                              bound: float | None = None) -> GradientReport:
    """Two-point rule applied to the layer parameters themselves.

    Not exact when the layer Hamiltonian has more than two eigenvalues;
    compare against the per-gate method to measure the deviation.
    """
    _require_x_mixer(spec, "layer shift")
    dynamics = _dynamics(ising, bound)
    dyn_diag = diagonal(dynamics)
    report_diag = diagonal(ising)
    n = dynamics.n

    def at(gammas, betas) -> float:
        amps = init_plus_state(n).amps
        for g, b in zip(gammas, betas):
            amps *= np.exp(-1j * g * dyn_diag)
            kernels.apply_rx_all(amps, n, 2.0 * b * spec.gamma_strength)
        p = amps.real ** 2 + amps.imag ** 2
        return float(p @ report_diag)

    gg, gb = [], []
    gammas, betas = list(params.gammas), list(params.betas)
    for layer in range(params.p):
        for vec, out in ((gammas, gg), (betas, gb)):
            keep = vec[layer]
            vec[layer] = keep + SHIFT
            hi = at(gammas, betas)
            vec[layer] = keep - SHIFT
            lo = at(gammas, betas)
            vec[layer] = keep
            out.append(0.5 * (hi - lo))
    return GradientReport(grad_gammas=tuple(gg), grad_betas=tuple(gb),
                          evaluations=4 * params.p, method="layer-shift")


def finite_difference(ising: IsingModel, params: QaoaParams, spec: MixerSpec,
                      eps: float = 1e-5, *,
                      bound: float | None = None) -> GradientReport:
    """Central differences of the cost expectation; works for any mixer."""
    if eps <= 0:
        raise ValueError("eps must be positive")

    def at(gammas, betas) -> float:
        return cost_expectation(ising, QaoaParams(tuple(gammas), tuple(betas)),
                                spec, bound=bound)

    gg, gb = [], []
    gammas, betas = list(params.gammas), list(params.betas)
    for layer in range(params.p):
        for vec, out in ((gammas, gg), (betas, gb)):
            keep = vec[layer]
            vec[layer] = keep + eps
            hi = at(gammas, betas)
            vec[layer] = keep - eps
            lo = at(gammas, betas)
            vec[layer] = keep
            out.append((hi - lo) / (2.0 * eps))
    return GradientReport(grad_gammas=tuple(gg), grad_betas=tuple(gb),
                          evaluations=4 * params.p, method="finite-difference")
