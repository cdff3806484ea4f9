"""Exact diagonalization of small interpolated Hamiltonians.

Assembles H(s) = (1-s) * (-strength * sum_i X_i) + s * diag(model) as a dense
real-symmetric matrix, diagonalizes it with cyclic Jacobi rotations, tracks
the spectral gap along the schedule, and provides the step-wise exact
evolution that serves as the no-Trotter-error oracle for the layered circuit.

Everything here is deliberately dense and real-symmetric: the models carry no
Y terms, so a real eigensolver suffices at these sizes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import IsingModel, diagonal
from .statevector import Statevector

SPECTRAL_MAX_QUBITS = 12
EVOLUTION_MAX_QUBITS = 10


class ConvergenceError(RuntimeError):
    """Jacobi sweeps exhausted before reaching the off-diagonal threshold."""


@dataclass(frozen=True)
class DenseHamiltonian:
    """Real symmetric 2^n x 2^n matrix."""
    n: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (1 << self.n, 1 << self.n):
            raise ValueError(f"expected {1 << self.n} x {1 << self.n} matrix, "
                             f"got {m.shape}")
        if np.max(np.abs(m - m.T)) > 1e-12:
            raise ValueError("matrix is not symmetric within 1e-12")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class GapSchedule:
    """Samples (s, E0, E1, gap) along the interpolation; g_min = min gap."""
    samples: tuple[tuple[float, float, float, float], ...]
    g_min: float

    def __post_init__(self):
        if not self.samples:
            raise ValueError("schedule needs at least one sample")
        gaps = [g for _, _, _, g in self.samples]
        if min(gaps) < -1e-10:
            raise ValueError(f"negative gap {min(gaps)} in schedule")
        if abs(self.g_min - min(gaps)) > 1e-12:
            raise ValueError("g_min does not match the sample minimum")


def transverse_field_matrix(n: int) -> np.ndarray:
    """sum_i X_i as a dense matrix (bit i = qubit i)."""
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=np.float64)
    for x in range(dim):
        for i in range(n):
            m[x, x ^ (1 << i)] += 1.0
    return m


def assemble(ising: IsingModel, strength: float, s: float) -> DenseHamiltonian:
    """(1 - s) * (-strength * sum X_i) + s * diag(model)."""
    if ising.n > SPECTRAL_MAX_QUBITS:
        raise ValueError(f"dense assembly capped at n <= {SPECTRAL_MAX_QUBITS}")
    m = (1.0 - s) * (-strength) * transverse_field_matrix(ising.n)
    m[np.diag_indices_from(m)] += s * diagonal(ising)
    return DenseHamiltonian(n=ising.n, matrix=m)


def jacobi_eigh(matrix: np.ndarray, tol: float = 1e-10,
                max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Sweeps rotate away every off-diagonal pair until the off-diagonal
    Frobenius norm drops below tol. Returns (ascending eigenvalues,
    orthonormal eigenvector columns in matching order).
    """
    a = np.array(matrix, dtype=np.float64)
    m = a.shape[0]
    v = np.eye(m)
    if m == 1:
        return a.diagonal().copy(), v

    def off_norm() -> float:
        return float(np.sqrt(np.sum(np.tril(a, -1) ** 2) * 2.0))

    converged = False
    for _ in range(max_sweeps):
        if off_norm() < tol:
            converged = True
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # classic 2x2 rotation annihilating a[p, q]
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) \
                    if theta != 0.0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vec_p = v[:, p].copy()
                v[:, p] = c * vec_p - s * v[:, q]
                v[:, q] = s * vec_p + c * v[:, q]
    if not converged and off_norm() >= tol:
        raise ConvergenceError(
            f"jacobi sweeps exhausted ({max_sweeps}) with off-diagonal "
            f"{off_norm():.3e}")
    w = a.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigen_spectrum(ham: DenseHamiltonian, vectors: bool = False):
    """Ascending eigenvalues (and optionally eigenvectors) of H."""
    w, v = jacobi_eigh(ham.matrix)
    return (w, v) if vectors else w


def gap_schedule(ising: IsingModel, strength: float, steps: int) -> GapSchedule:
    """Two lowest levels at s = k/(steps-1); gap may hit 0 for degenerate optima."""
    if steps < 2:
        raise ValueError("need at least the two endpoint samples")
    samples = []
    for k in range(steps):
        s = k / (steps - 1)
        w = eigen_spectrum(assemble(ising, strength, s))
        samples.append((s, float(w[0]), float(w[1]), float(w[1] - w[0])))
    return GapSchedule(samples=tuple(samples),
                       g_min=min(g for _, _, _, g in samples))


def exact_step_evolution(ising: IsingModel, strength: float, p: int, T: float,
                         psi0: Statevector) -> Statevector:
    """Apply the exact step propagators e^{-i H(t_k) delta}, k = 0..p-1.

    Each step is computed through a fresh eigendecomposition, so the result
    carries no splitting error: it is the oracle the layered circuit converges
    to as p grows at fixed T.
    """
    if ising.n > EVOLUTION_MAX_QUBITS:
        raise ValueError(f"exact evolution capped at n <= {EVOLUTION_MAX_QUBITS}")
    if ising.n != psi0.n:
        raise ValueError(f"model is over {ising.n} qubits, state over {psi0.n}")
    if p < 1 or T <= 0:
        raise ValueError("need p >= 1 and T > 0")
    delta = T / p
    amps = psi0.amps.copy()
    for k in range(p):
        w, v = jacobi_eigh(assemble(ising, strength, k / p).matrix)
        amps = v @ (np.exp(-1j * w * delta) * (v.T @ amps))
    return Statevector(psi0.n, amps)


def save_gap_csv(schedule: GapSchedule, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("s,E0,E1,gap\n")
        for s, e0, e1, g in schedule.samples:
            fh.write(f"{s!r},{e0!r},{e1!r},{g!r}\n")


def load_gap_csv(path: str) -> GapSchedule:
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "s,E0,E1,gap":
            raise ValueError(f"{path}: expected 's,E0,E1,gap' header, got {header!r}")
        samples = tuple(tuple(float(v) for v in line.split(","))
                        for line in fh if line.strip())
    if not samples:
        raise ValueError(f"{path}: no samples")
    return GapSchedule(samples=samples, g_min=min(s[3] for s in samples))
