"""Dense statevector simulator.

A state over n qubits is 2^n complex amplitudes indexed by basis bitstring,
with bit i of the index holding the state of qubit i (qubit 0 = least
significant bit). Gate application mutates the amplitude array in place
through the selected kernel backend; a Statevector has a single writer and
may be shared read-only.

Bitstrings are rendered with character i equal to qubit i, so "0110" means
qubits 1 and 2 are set.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from math import cos, sin, sqrt
from typing import Iterable, Sequence

import numpy as np

from . import kernels

DEFAULT_MAX_QUBITS = 24


class CapacityError(ValueError):
    """Requested problem size exceeds the configured qubit cap."""


def max_qubits() -> int:
    """Current qubit cap; override with the QFORGE_MAX_QUBITS env var."""
    env = os.environ.get("QFORGE_MAX_QUBITS")
    return int(env) if env else DEFAULT_MAX_QUBITS


def check_capacity(n: int) -> None:
    cap = max_qubits()
    if n < 1 or n > cap:
        raise CapacityError(
            f"qubit count {n} outside supported range 1..{cap} "
            "(set QFORGE_MAX_QUBITS to raise the cap)")


def index_to_bits(x: int, n: int) -> str:
    """Render basis index x as a bitstring with character i = qubit i."""
    return "".join("1" if (x >> i) & 1 else "0" for i in range(n))


def bits_to_index(bits: str) -> int:
    """Inverse of index_to_bits."""
    x = 0
    for i, b in enumerate(bits):
        if b == "1":
            x |= 1 << i
        elif b != "0":
            raise ValueError(f"invalid bitstring character {b!r}")
    return x


class Statevector:
    """2^n complex amplitudes over the computational basis."""

    __slots__ = ("n", "amps")

    def __init__(self, n: int, amps: np.ndarray | None = None):
        check_capacity(n)
        self.n = n
        if amps is None:
            amps = np.zeros(1 << n, dtype=np.complex128)
            amps[0] = 1.0
        else:
            amps = np.ascontiguousarray(amps, dtype=np.complex128)
            if amps.shape != (1 << n,):
                raise ValueError(f"expected {1 << n} amplitudes, got {amps.shape}")
        self.amps = amps

    def copy(self) -> "Statevector":
        return Statevector(self.n, self.amps.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def __repr__(self) -> str:
        return f"Statevector(n={self.n})"


@dataclass(frozen=True)
class Gate1Q:
    """Single-qubit gate: one of h, rx, rz, phase (angle unused for h)."""
    kind: str
    qubit: int
    angle: float = 0.0

    def __post_init__(self):
        if self.kind not in ("h", "rx", "rz", "phase"):
            raise ValueError(f"unknown gate kind {self.kind!r}")


@dataclass(frozen=True)
class ShotCounts:
    """Measurement histogram: bitstring -> occurrences, summing to shots."""
    counts: dict[str, int]
    shots: int
    seed: int


def new_state(n: int) -> Statevector:
    """|0...0> on n qubits."""
    return Statevector(n)


def _check_qubit(state: Statevector, q: int) -> None:
    if not 0 <= q < state.n:
        raise ValueError(f"qubit index {q} out of range for n={state.n}")


_SQRT1_2 = 1.0 / sqrt(2.0)


def apply_h(state: Statevector, qubit: int) -> Statevector:
    _check_qubit(state, qubit)
    kernels.apply_2x2(state.amps, qubit, _SQRT1_2, _SQRT1_2, _SQRT1_2, -_SQRT1_2)
    return state


def apply_x(state: Statevector, qubit: int) -> Statevector:
    _check_qubit(state, qubit)
    kernels.apply_2x2(state.amps, qubit, 0.0, 1.0, 1.0, 0.0)
    return state


def apply_rx(state: Statevector, qubit: int, theta: float) -> Statevector:
    """RX(theta) = exp(-i theta X / 2)."""
    _check_qubit(state, qubit)
    c = cos(theta / 2.0)
    s = -1j * sin(theta / 2.0)
    kernels.apply_2x2(state.amps, qubit, c, s, s, c)
    return state


def apply_rz(state: Statevector, qubit: int, theta: float) -> Statevector:
    """RZ(theta) = exp(-i theta Z / 2) = diag(e^{-i theta/2}, e^{+i theta/2})."""
    _check_qubit(state, qubit)
    h = theta / 2.0
    kernels.apply_diag1(state.amps, qubit, complex(cos(h), -sin(h)),
                        complex(cos(h), sin(h)))
    return state


def apply_phase(state: Statevector, qubit: int, phi: float) -> Statevector:
    """Phase gate: |0> -> |0>, |1> -> e^{i phi} |1>."""
    _check_qubit(state, qubit)
    kernels.apply_diag1(state.amps, qubit, 1.0, complex(cos(phi), sin(phi)))
    return state


def apply_1q(state: Statevector, gate: Gate1Q) -> Statevector:
    if gate.kind == "h":
        return apply_h(state, gate.qubit)
    if gate.kind == "rx":
        return apply_rx(state, gate.qubit, gate.angle)
    if gate.kind == "rz":
        return apply_rz(state, gate.qubit, gate.angle)
    return apply_phase(state, gate.qubit, gate.angle)


def apply_cnot(state: Statevector, control: int, target: int) -> Statevector:
    _check_qubit(state, control)
    _check_qubit(state, target)
    if control == target:
        raise ValueError("control and target must differ")
    kernels.apply_cnot(state.amps, control, target)
    return state


def apply_parity_phase(state: Statevector, qubits: Iterable[int],
                       theta: float) -> Statevector:
    """exp(-i theta/2 * Z...Z) over the given qubits, matrix-free.

    Each |x> picks up exp(-i theta/2 * (-1)^parity), where parity counts the
    set bits of x restricted to the qubits. Agrees exactly with the
    CNOT-ladder + RZ(theta) + reverse-ladder circuit.
    """
    qs = list(qubits)
    if not qs:
        raise ValueError("qubit set must be non-empty")
    if len(set(qs)) != len(qs):
        raise ValueError(f"duplicate qubit indices in {qs}")
    mask = 0
    for q in qs:
        _check_qubit(state, q)
        mask |= 1 << q
    kernels.apply_parity_phase(state.amps, mask, theta)
    return state


def apply_controlled_phase(state: Statevector, controls: Sequence[int],
                           target: int, phi: float) -> Statevector:
    """Multi-controlled phase: e^{i phi} on |1...1> of controls+target."""
    qs = list(controls) + [target]
    if len(set(qs)) != len(qs):
        raise ValueError(f"duplicate qubit indices in {qs}")
    mask = 0
    for q in qs:
        _check_qubit(state, q)
        mask |= 1 << q
    kernels.apply_masked_phase(state.amps, mask, complex(cos(phi), sin(phi)))
    return state


def apply_global_phase(state: Statevector, phi: float) -> Statevector:
    state.amps *= complex(cos(phi), sin(phi))
    return state


def probabilities(state: Statevector) -> np.ndarray:
    """p(x) = |amplitude(x)|^2, indexed by basis index."""
    return (state.amps.real ** 2 + state.amps.imag ** 2)


def sample(state: Statevector, shots: int, seed: int = 0) -> ShotCounts:
    """Draw i.i.d. basis-state measurements; deterministic per seed."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = probabilities(state)
    p = p / p.sum()
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(p.size, size=shots, p=p)
    values, freq = np.unique(outcomes, return_counts=True)
    counts = {index_to_bits(int(v), state.n): int(c) for v, c in zip(values, freq)}
    return ShotCounts(counts=counts, shots=shots, seed=seed)


def expectation_diagonal(state: Statevector, diag: np.ndarray) -> float:
    """<psi| D |psi> for a diagonal observable D."""
    diag = np.asarray(diag, dtype=np.float64)
    if diag.shape != state.amps.shape:
        raise ValueError(f"diagonal length {diag.shape} does not match "
                         f"state dimension {state.amps.shape}")
    return float(probabilities(state) @ diag)


def inner_product(a: Statevector, b: Statevector) -> complex:
    """<a|b>, conjugating a."""
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} vs {b.n}")
    return complex(np.vdot(a.amps, b.amps))
