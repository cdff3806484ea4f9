"""Feasible-subspace machinery.

An explicit set F of valid basis indices defines the uniform state |F> and
the rank-1 mixer exp(-i beta |F><F|) = I - (1 - e^{-i beta}) |F><F|, which
never populates states outside F. The mixer is applied matrix-free through a
single inner product; the circuit realization is provided for the full-space
case (state preparation = Hadamards) as a cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Callable

import numpy as np

from .statevector import (Statevector, apply_controlled_phase, apply_h,
                          apply_x, check_capacity, index_to_bits)


class InfeasibleError(ValueError):
    """No basis state satisfies the constraint predicate."""


@dataclass(frozen=True)
class FeasibleSet:
    """Sorted, non-empty set of valid basis indices for n qubits."""
    n: int
    indices: tuple[int, ...]
    source: str = "explicit"

    def __post_init__(self):
        check_capacity(self.n)
        idxs = tuple(int(i) for i in self.indices)
        if not idxs:
            raise ValueError("feasible set must be non-empty")
        if list(idxs) != sorted(set(idxs)):
            raise ValueError("indices must be sorted and free of duplicates")
        if idxs[0] < 0 or idxs[-1] >= (1 << self.n):
            raise ValueError(f"index out of range for n={self.n}")
        object.__setattr__(self, "indices", idxs)

    def __len__(self) -> int:
        return len(self.indices)


def uniform_feasible_state(feasible: FeasibleSet) -> Statevector:
    """|F> = (1/sqrt|F|) sum over members."""
    amps = np.zeros(1 << feasible.n, dtype=np.complex128)
    amps[list(feasible.indices)] = 1.0 / sqrt(len(feasible))
    return Statevector(feasible.n, amps)


def dicke_one_hot(n: int) -> FeasibleSet:
    """Hamming-weight-1 subspace: F = {2^i}, the one-hot encodings."""
    return FeasibleSet(n=n, indices=tuple(1 << i for i in range(n)),
                       source="one-hot")


def enumerate_feasible(predicate: Callable[[str], bool], n: int) -> FeasibleSet:
    """All basis states whose bitstring satisfies the predicate.

    Bitstrings are passed with character i = qubit i.
    """
    check_capacity(n)
    idxs = tuple(x for x in range(1 << n) if predicate(index_to_bits(x, n)))
    if not idxs:
        raise InfeasibleError(f"no feasible bitstrings among 2^{n}: "
                              "infeasible problem")
    return FeasibleSet(n=n, indices=idxs, source="predicate-enumerated")


def apply_grover_mixer(state: Statevector, feasible: FeasibleSet,
                       beta: float) -> Statevector:
    """Apply I - (1 - e^{-i beta}) |F><F| matrix-free.

    |F> is an eigenvector with eigenvalue e^{-i beta}; everything orthogonal
    to it is untouched, so the update is unitary.
    """
    if feasible.n != state.n:
        raise ValueError(f"qubit counts differ: {feasible.n} vs {state.n}")
    members = list(feasible.indices)
    root = 1.0 / sqrt(len(feasible))
    overlap = root * state.amps[members].sum()  # <F|psi>
    state.amps[members] -= (1.0 - np.exp(-1j * beta)) * overlap * root
    return state


def grover_mixer_circuit_full_space(state: Statevector, beta: float) -> Statevector:
    """Circuit form of the mixer for F = all bitstrings (preparation H^n).

    Applies H on all qubits, X on all qubits, an (n-1)-controlled Phase(-beta)
    on the last qubit, X on all qubits, H on all qubits. Must agree with
    apply_grover_mixer for the full-space feasible set to 1e-12.
    """
    n = state.n
    if n < 2:
        raise ValueError("circuit form needs n >= 2")
    for q in range(n):
        apply_h(state, q)
    for q in range(n):
        apply_x(state, q)
    apply_controlled_phase(state, list(range(n - 1)), n - 1, -beta)
    for q in range(n):
        apply_x(state, q)
    for q in range(n):
        apply_h(state, q)
    return state


def save_feasible(feasible: FeasibleSet, path: str) -> None:
    """Write the text format: header n=<int>, one decimal index per line."""
    with open(path, "w") as fh:
        fh.write(f"n={feasible.n}\n")
        for i in feasible.indices:
            fh.write(f"{i}\n")


def load_feasible(path: str) -> FeasibleSet:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError(f"{path}:1: expected header 'n=<int>'")
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise ValueError(f"{path}:1: cannot parse header {lines[0]!r}") from exc
    try:
        idxs = tuple(int(ln) for ln in lines[1:])
    except ValueError as exc:
        raise ValueError(f"{path}: non-integer index line") from exc
    return FeasibleSet(n=n, indices=idxs, source="explicit")
