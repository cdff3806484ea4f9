"""Classical parameter training over the QAOA angles.

Plain gradient descent and Adam, both driven by exact statevector gradients
(per-gate parameter shift by default, finite differences as the alternative).
The loop records the cost BEFORE each update, matching step-and-cost
semantics: costs[0] is the cost at the initial parameters and the final
parameters have one more update than the last recorded cost.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .gradients import finite_difference, qaoa_gradient_per_gate
from .hamiltonian import IsingModel
from .qaoa import MixerSpec, QaoaParams, cost_expectation


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = "adam"                       # "gd" | "adam"
    learning_rate: float = 0.01
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    max_steps: int = 1000
    gradient_method: str = "per-gate-shift"    # or "finite-difference"
    fd_eps: float = 1e-5
    seed: int = 0

    def __post_init__(self):
        if self.method not in ("gd", "adam"):
            raise ValueError(f"unknown optimizer {self.method!r}")
        if self.learning_rate <= 0:
            raise ValueError("learning rate must be positive")
        if not (0 <= self.adam_beta1 < 1 and 0 <= self.adam_beta2 < 1):
            raise ValueError("adam decay rates must lie in [0, 1)")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.gradient_method not in ("per-gate-shift", "finite-difference"):
            raise ValueError(f"unknown gradient method {self.gradient_method!r}")


@dataclass
class AdamState:
    """First/second moment accumulators and the step counter."""
    m_gammas: np.ndarray
    v_gammas: np.ndarray
    m_betas: np.ndarray
    v_betas: np.ndarray
    t: int = 0

    @classmethod
    def zeros(cls, p: int) -> "AdamState":
        return cls(np.zeros(p), np.zeros(p), np.zeros(p), np.zeros(p), 0)


@dataclass(frozen=True)
class Trajectory:
    costs: tuple[float, ...]
    params_final: QaoaParams
    steps_run: int


def gd_step(params: QaoaParams, grad_gammas, grad_betas,
            learning_rate: float) -> QaoaParams:
    """theta <- theta - eta * grad, element-wise."""
    gg = np.asarray(grad_gammas, dtype=float)
    gb = np.asarray(grad_betas, dtype=float)
    if gg.shape != (params.p,) or gb.shape != (params.p,):
        raise ValueError("gradient shape does not match parameter shape")
    gammas = np.asarray(params.gammas) - learning_rate * gg
    betas = np.asarray(params.betas) - learning_rate * gb
    return QaoaParams(tuple(gammas), tuple(betas))


def adam_step(state: AdamState, params: QaoaParams, grad_gammas, grad_betas,
              config: OptimizerConfig) -> tuple[AdamState, QaoaParams]:
    """One bias-corrected Adam update."""
    gg = np.asarray(grad_gammas, dtype=float)
    gb = np.asarray(grad_betas, dtype=float)
    if gg.shape != (params.p,) or gb.shape != (params.p,):
        raise ValueError("gradient shape does not match parameter shape")
    b1, b2, eps = config.adam_beta1, config.adam_beta2, config.adam_eps
    t = state.t + 1
    new = AdamState(
        m_gammas=b1 * state.m_gammas + (1 - b1) * gg,
        v_gammas=b2 * state.v_gammas + (1 - b2) * gg ** 2,
        m_betas=b1 * state.m_betas + (1 - b1) * gb,
        v_betas=b2 * state.v_betas + (1 - b2) * gb ** 2,
        t=t,
    )
    corr1 = 1 - b1 ** t
    corr2 = 1 - b2 ** t
    lr = config.learning_rate
    gammas = (np.asarray(params.gammas)
              - lr * (new.m_gammas / corr1) / (np.sqrt(new.v_gammas / corr2) + eps))
    betas = (np.asarray(params.betas)
             - lr * (new.m_betas / corr1) / (np.sqrt(new.v_betas / corr2) + eps))
    return new, QaoaParams(tuple(gammas), tuple(betas))


def minimize(ising: IsingModel, init_params: QaoaParams, spec: MixerSpec,
             config: OptimizerConfig, *, bound: float | None = None) -> Trajectory:
    """Run max_steps updates (no early stopping); deterministic per config."""
    params = init_params
    adam = AdamState.zeros(params.p)
    costs = []
    for _ in range(config.max_steps):
        costs.append(cost_expectation(ising, params, spec, bound=bound))
        if config.gradient_method == "per-gate-shift":
            rep = qaoa_gradient_per_gate(ising, params, spec, bound=bound)
        else:
            rep = finite_difference(ising, params, spec, config.fd_eps,
                                    bound=bound)
        if config.method == "gd":
            params = gd_step(params, rep.grad_gammas, rep.grad_betas,
                             config.learning_rate)
        else:
            adam, params = adam_step(adam, params, rep.grad_gammas,
                                     rep.grad_betas, config)
    return Trajectory(costs=tuple(costs), params_final=params,
                      steps_run=len(costs))


def save_trajectory_csv(traj: Trajectory, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("step,cost\n")
        for step, cost in enumerate(traj.costs):
            fh.write(f"{step},{cost!r}\n")


def load_trajectory_csv(path: str) -> tuple[float, ...]:
    """Costs from a trajectory.csv written by save_trajectory_csv."""
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "step,cost":
            raise ValueError(f"{path}: expected 'step,cost' header, got {header!r}")
        return tuple(float(line.split(",")[1]) for line in fh if line.strip())


def save_params_json(params: QaoaParams, path: str) -> None:
    with open(path, "w") as fh:
        json.dump({"gammas": list(params.gammas), "betas": list(params.betas)},
                  fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_params_json(path: str) -> QaoaParams:
    with open(path) as fh:
        data = json.load(fh)
    return QaoaParams(tuple(data["gammas"]), tuple(data["betas"]))
