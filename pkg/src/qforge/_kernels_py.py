"""Pure-numpy gate kernels.

Fallback implementation of the amplitude-update primitives, used when the
compiled extension is unavailable. Every function mutates the complex128
amplitude array in place and mirrors the signature of its compiled twin in
``_kernels.pyx`` exactly.

Index convention: bit i of a basis index is the state of qubit i, so qubit 0
is the least-significant bit.
"""
import numpy as np


def _parity(v: np.ndarray) -> np.ndarray:
    """Bitwise parity (popcount mod 2) of each entry, for masks below 2^48."""
    v = v.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> shift
    return v & 1


def apply_2x2(amps: np.ndarray, qubit: int, m00: complex, m01: complex,
              m10: complex, m11: complex) -> None:
    """Apply a general 2x2 unitary to one qubit."""
    t = amps.reshape(-1, 2, 1 << qubit)
    lo = t[:, 0, :].copy()
    hi = t[:, 1, :]
    t[:, 0, :] = m00 * lo + m01 * hi
    t[:, 1, :] = m10 * lo + m11 * hi


def apply_diag1(amps: np.ndarray, qubit: int, d0: complex, d1: complex) -> None:
    """Apply a diagonal single-qubit gate diag(d0, d1)."""
    t = amps.reshape(-1, 2, 1 << qubit)
    t[:, 0, :] *= d0
    t[:, 1, :] *= d1


def apply_cnot(amps: np.ndarray, control: int, target: int) -> None:
    """Flip the target bit wherever the control bit is 1."""
    idx = np.arange(amps.size)
    sel = idx[((idx >> control) & 1 == 1) & ((idx >> target) & 1 == 0)]
    flipped = sel | (1 << target)
    amps[sel], amps[flipped] = amps[flipped], amps[sel]


def apply_parity_phase(amps: np.ndarray, mask: int, theta: float) -> None:
    """Multiply each |x> by exp(-i theta/2 * (-1)^parity(x & mask)).

    This is the action of exp(-i theta/2 * Z...Z) over the masked qubits.
    """
    par = _parity(np.arange(amps.size) & mask)
    even = np.exp(-0.5j * theta)
    odd = np.exp(0.5j * theta)
    amps *= np.where(par == 1, odd, even)


def apply_masked_phase(amps: np.ndarray, mask: int, phase: complex) -> None:
    """Multiply |x> by ``phase`` wherever all bits of ``mask`` are set in x."""
    idx = np.arange(amps.size)
    amps[(idx & mask) == mask] *= phase


def apply_rx_all(amps: np.ndarray, n: int, theta: float) -> None:
    """Apply RX(theta) = exp(-i theta X / 2) to every one of the n qubits."""
    c = np.cos(theta / 2.0)
    s = -1j * np.sin(theta / 2.0)
    for q in range(n):
        apply_2x2(amps, q, c, s, s, c)
