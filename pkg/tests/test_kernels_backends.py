"""Compiled and numpy kernel backends must agree on every primitive.

Pure index permutations (cnot) must match bit-for-bit; arithmetic kernels may
differ by a few ULPs because numpy's SIMD loops round complex products
slightly differently than scalar C, so those compare at 1e-14.
"""
import numpy as np
import pytest

from qforge import _kernels_py

compiled = pytest.importorskip("qforge._kernels",
                               reason="compiled kernels not built")

TOL = 1e-14


def random_amps(n, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return np.ascontiguousarray(amps / np.linalg.norm(amps))


@pytest.mark.parametrize("n", [1, 3, 6])
def test_apply_2x2_agrees(n):
    rng = np.random.default_rng(n)
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    for qubit in range(n):
        a = random_amps(n, 10 + qubit)
        b = a.copy()
        compiled.apply_2x2(a, qubit, m[0, 0], m[0, 1], m[1, 0], m[1, 1])
        _kernels_py.apply_2x2(b, qubit, m[0, 0], m[0, 1], m[1, 0], m[1, 1])
        assert np.max(np.abs(a - b)) < TOL


@pytest.mark.parametrize("n", [2, 4, 6])
def test_apply_diag1_agrees(n):
    for qubit in range(n):
        a = random_amps(n, 20 + qubit)
        b = a.copy()
        compiled.apply_diag1(a, qubit, 0.6 - 0.8j, 1j)
        _kernels_py.apply_diag1(b, qubit, 0.6 - 0.8j, 1j)
        assert np.max(np.abs(a - b)) < TOL


@pytest.mark.parametrize("n", [2, 4, 6])
def test_apply_cnot_is_bit_identical(n):
    for control in range(n):
        for target in range(n):
            if control == target:
                continue
            a = random_amps(n, 100 + control * n + target)
            b = a.copy()
            compiled.apply_cnot(a, control, target)
            _kernels_py.apply_cnot(b, control, target)
            assert np.array_equal(a, b)


@pytest.mark.parametrize("mask", [0b11, 0b101, 0b1110, 0b111111])
def test_apply_parity_phase_agrees(mask):
    a = random_amps(6, mask)
    b = a.copy()
    compiled.apply_parity_phase(a, mask, 0.77)
    _kernels_py.apply_parity_phase(b, mask, 0.77)
    assert np.max(np.abs(a - b)) < TOL


@pytest.mark.parametrize("mask", [0b1, 0b1011, 0b111111])
def test_apply_masked_phase_agrees(mask):
    a = random_amps(6, 3 * mask + 1)
    b = a.copy()
    compiled.apply_masked_phase(a, mask, np.exp(0.3j))
    _kernels_py.apply_masked_phase(b, mask, np.exp(0.3j))
    assert np.max(np.abs(a - b)) < TOL


@pytest.mark.parametrize("n", [1, 4, 6])
def test_apply_rx_all_agrees(n):
    a = random_amps(n, 55 + n)
    b = a.copy()
    compiled.apply_rx_all(a, n, -1.3)
    _kernels_py.apply_rx_all(b, n, -1.3)
    assert np.max(np.abs(a - b)) < TOL


def test_full_layer_sequence_agrees():
    # a realistic layer: cost parity phases + mixer sweep on both backends
    n = 6
    a = random_amps(n, 99)
    b = a.copy()
    for mod in (compiled, _kernels_py):
        amps = a if mod is compiled else b
        for mask in (0b11, 0b110, 0b1100, 0b100001):
            mod.apply_parity_phase(amps, mask, 0.21)
        mod.apply_rx_all(amps, n, -0.53)
    assert np.max(np.abs(a - b)) < TOL
