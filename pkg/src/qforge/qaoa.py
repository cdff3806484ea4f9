"""Layered QAOA evolution.

Builds and runs the alternating circuit: uniform-superposition (or feasible
subspace) initialization, per-term cost unitary exp(-i gamma H_C), and the
mixer unitary, repeated for p layers with angles (gamma_k, beta_k).

Angle convention: the minus sign of the transverse-field Hamiltonian is
absorbed into beta, so the mixer layer applies RX(2*beta*strength) on every
qubit and the linear-ramp schedule produces non-positive betas. The pair
composes to forward evolution under the negative-field mixer, whose ground
state is the uniform superposition. The cost layer realizes each stored term
as RZ(2*gamma*h_i) for fields and a parity phase of angle 2*gamma*J_S for
(higher-order) couplings; the constant offset contributes a global phase.

Dynamics should run on a rescaled model (diagonal within [-pi, pi)) to avoid
the eigenvalue aliasing of the exponential map; reported costs use the
original diagonal.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi
from typing import Optional

import numpy as np

from . import grover as grover_mod
from .grover import FeasibleSet, uniform_feasible_state
from .hamiltonian import IsingModel, diagonal, eigenvalue_bound, rescale
from .statevector import (Statevector, apply_global_phase, apply_parity_phase,
                          apply_rx, apply_rz, bits_to_index, check_capacity,
                          expectation_diagonal, sample)


class UnscaledModelError(ValueError):
    """Model diagonal may leave [-pi, pi); rescale or pass allow_unscaled."""


@dataclass(frozen=True)
class QaoaParams:
    """Per-layer angles (gamma_1..gamma_p, beta_1..beta_p)."""
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        gammas = tuple(float(g) for g in self.gammas)
        betas = tuple(float(b) for b in self.betas)
        if len(gammas) != len(betas) or not gammas:
            raise ValueError("gammas and betas must have equal length p >= 1")
        if not all(np.isfinite(gammas)) or not all(np.isfinite(betas)):
            raise ValueError("angles must be finite")
        object.__setattr__(self, "gammas", gammas)
        object.__setattr__(self, "betas", betas)

    @property
    def p(self) -> int:
        return len(self.gammas)


@dataclass(frozen=True)
class Schedule:
    """Discretized annealing schedule: s(t_k) = k/p at t_k = k*delta."""
    T: float
    p: int

    def __post_init__(self):
        if self.p < 1 or self.T <= 0:
            raise ValueError("need p >= 1 and T > 0")

    @property
    def delta(self) -> float:
        return self.T / self.p

    @property
    def s_values(self) -> tuple[float, ...]:
        return tuple(k / self.p for k in range(self.p))


@dataclass(frozen=True)
class MixerSpec:
    """Mixer choice: transverse field ("x") or feasible-subspace ("grover")."""
    kind: str = "x"
    gamma_strength: float = 1.0
    feasible: Optional[FeasibleSet] = None

    def __post_init__(self):
        if self.kind not in ("x", "grover"):
            raise ValueError(f"unknown mixer kind {self.kind!r}")
        if self.kind == "grover" and self.feasible is None:
            raise ValueError("grover mixer requires a feasible set")


def x_mixer(strength: float = 1.0) -> MixerSpec:
    return MixerSpec(kind="x", gamma_strength=strength)


def grover_mixer(feasible: FeasibleSet) -> MixerSpec:
    return MixerSpec(kind="grover", feasible=feasible)


def init_plus_state(n: int) -> Statevector:
    """Uniform superposition |+>^n, ground state of the transverse field."""
    check_capacity(n)
    amps = np.full(1 << n, 2.0 ** (-n / 2.0), dtype=np.complex128)
    return Statevector(n, amps)


def initial_state(spec: MixerSpec, n: int) -> Statevector:
    if spec.kind == "grover":
        if spec.feasible.n != n:
            raise ValueError(f"feasible set is over {spec.feasible.n} qubits, "
                             f"model over {n}")
        return uniform_feasible_state(spec.feasible)
    return init_plus_state(n)


def linear_ramp_params(p: int, T: float) -> QaoaParams:
    """Trotterized linear schedule: gamma_k = (k/p)(T/p), beta_k = -(1-k/p)(T/p).

    The k = 0 layer has gamma_0 = 0 and beta never reaches 0; betas are
    negative because the mixer sign is absorbed into beta.
    """
    sched = Schedule(T=T, p=p)
    d = sched.delta
    gammas = tuple(s * d for s in sched.s_values)
    betas = tuple(-(1.0 - s) * d for s in sched.s_values)
    return QaoaParams(gammas=gammas, betas=betas)


def check_rescaled(ising: IsingModel, allow_unscaled: bool = False) -> None:
    if allow_unscaled:
        return
    bound = eigenvalue_bound(ising)
    if bound > pi + 1e-12:
        raise UnscaledModelError(
            f"coefficient bound {bound:.6g} exceeds pi; the phase map aliases "
            "eigenvalues outside [-pi, pi). Rescale the model (rescale(...)) "
            "or pass allow_unscaled=True")


def apply_cost_unitary(state: Statevector, ising: IsingModel, gamma: float, *,
                       include_offset: bool = True,
                       allow_unscaled: bool = False) -> Statevector:
    """exp(-i gamma H_C), realized term by term.

    Fields become RZ(2 gamma h_i); pair and higher-order couplings become
    parity phases of angle 2 gamma J_S. The terms commute, so order is
    irrelevant. Each basis amplitude ends up multiplied by
    exp(-i gamma diagonal(x)); the offset contributes the global phase.
    """
    if ising.n != state.n:
        raise ValueError(f"model is over {ising.n} qubits, state over {state.n}")
    check_rescaled(ising, allow_unscaled)
    for i, c in ising.h.items():
        apply_rz(state, i, 2.0 * gamma * c)
    for idxs, c in ising.j2.items():
        apply_parity_phase(state, idxs, 2.0 * gamma * c)
    for idxs, c in ising.jk.items():
        apply_parity_phase(state, idxs, 2.0 * gamma * c)
    if include_offset and ising.offset != 0.0:
        apply_global_phase(state, -gamma * ising.offset)
    return state


def apply_mixer_unitary(state: Statevector, spec: MixerSpec,
                        beta: float) -> Statevector:
    """One mixer layer.

    Transverse field: RX(2 beta strength) on every qubit (negation of the
    mixer Hamiltonian absorbed into beta). Grover: rank-1 update through the
    feasible set.
    """
    if spec.kind == "grover":
        return grover_mod.apply_grover_mixer(state, spec.feasible, beta)
    theta = 2.0 * beta * spec.gamma_strength
    for q in range(state.n):
        apply_rx(state, q, theta)
    return state


def qaoa_evolve(ising: IsingModel, params: QaoaParams, spec: MixerSpec, *,
                include_offset: bool = True,
                allow_unscaled: bool = False) -> Statevector:
    """Run the full layered circuit from the mixer's initial state."""
    state = initial_state(spec, ising.n)
    for gamma, beta in zip(params.gammas, params.betas):
        apply_cost_unitary(state, ising, gamma, include_offset=include_offset,
                           allow_unscaled=allow_unscaled)
        apply_mixer_unitary(state, spec, beta)
    return state


def cost_expectation(ising: IsingModel, params: QaoaParams, spec: MixerSpec, *,
                     bound: float | None = None,
                     allow_unscaled: bool = False) -> float:
    """<H_C> in the evolved state, reported against the model as passed.

    When ``bound`` is given, the dynamics run on the model rescaled by it
    while the expectation uses the original (unrescaled) diagonal, so
    reported costs stay interpretable.
    """
    dynamics = rescale(ising, bound) if bound is not None else ising
    state = qaoa_evolve(dynamics, params, spec, allow_unscaled=allow_unscaled)
    return expectation_diagonal(state, diagonal(ising))


def cost_expectation_sampled(ising: IsingModel, params: QaoaParams,
                             spec: MixerSpec, shots: int, seed: int = 0, *,
                             bound: float | None = None) -> float:
    """Finite-shot estimate of the cost expectation.

    Draws measurement samples from the evolved state and averages the
    diagonal over them. Deterministic per seed; carries O(1/sqrt(shots))
    statistical error, so exact expectations remain the default everywhere.
    """
    dynamics = rescale(ising, bound) if bound is not None else ising
    state = qaoa_evolve(dynamics, params, spec)
    counts = sample(state, shots, seed)
    d = diagonal(ising)
    total = sum(c * d[bits_to_index(bits)] for bits, c in counts.counts.items())
    return total / shots


def trotterized_aqc(ising: IsingModel, p: int, T: float, spec: MixerSpec, *,
                    allow_unscaled: bool = False) -> Statevector:
    """Fixed linear-ramp evolution: QAOA at the discretized annealing angles."""
    return qaoa_evolve(ising, linear_ramp_params(p, T), spec,
                       allow_unscaled=allow_unscaled)
