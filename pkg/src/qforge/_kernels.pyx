# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled gate kernels.

Hot amplitude loops of the statevector simulator. Signature-compatible with
the numpy fallback in ``_kernels_py.py``; all functions mutate the complex128
amplitude array in place. Qubit 0 is the least-significant bit of the basis
index.
"""
from libc.math cimport cos, sin

ctypedef double complex cplx

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define qforge_popcount(x) __builtin_popcountll(x)
    #else
    static int qforge_popcount(unsigned long long v) {
        int c = 0;
        while (v) { v &= v - 1; ++c; }
        return c;
    }
    #endif
    """
    int qforge_popcount(unsigned long long) nogil


def apply_2x2(cplx[::1] amps, Py_ssize_t qubit, cplx m00, cplx m01,
              cplx m10, cplx m11):
    """Apply a general 2x2 unitary to one qubit."""
    cdef Py_ssize_t size = amps.shape[0]
    cdef Py_ssize_t half = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t step = half << 1
    cdef Py_ssize_t base, i
    cdef cplx lo, hi
    for base in range(0, size, step):
        for i in range(base, base + half):
            lo = amps[i]
            hi = amps[i + half]
            amps[i] = m00 * lo + m01 * hi
            amps[i + half] = m10 * lo + m11 * hi


def apply_diag1(cplx[::1] amps, Py_ssize_t qubit, cplx d0, cplx d1):
    """Apply a diagonal single-qubit gate diag(d0, d1)."""
    cdef Py_ssize_t size = amps.shape[0]
    cdef Py_ssize_t bit = (<Py_ssize_t>1) << qubit
    cdef Py_ssize_t x
    for x in range(size):
        if x & bit:
            amps[x] = amps[x] * d1
        else:
            amps[x] = amps[x] * d0


def apply_cnot(cplx[::1] amps, Py_ssize_t control, Py_ssize_t target):
    """Flip the target bit wherever the control bit is 1."""
    cdef Py_ssize_t size = amps.shape[0]
    cdef Py_ssize_t cbit = (<Py_ssize_t>1) << control
    cdef Py_ssize_t tbit = (<Py_ssize_t>1) << target
    cdef Py_ssize_t x
    cdef cplx tmp
    for x in range(size):
        if (x & cbit) and not (x & tbit):
            tmp = amps[x]
            amps[x] = amps[x | tbit]
            amps[x | tbit] = tmp


def apply_parity_phase(cplx[::1] amps, unsigned long long mask, double theta):
    """Multiply each |x> by exp(-i theta/2 * (-1)^parity(x & mask))."""
    cdef Py_ssize_t size = amps.shape[0]
    cdef double h = 0.5 * theta
    cdef cplx even = cos(h) - 1j * sin(h)
    cdef cplx odd = cos(h) + 1j * sin(h)
    cdef Py_ssize_t x
    for x in range(size):
        if qforge_popcount((<unsigned long long>x) & mask) & 1:
            amps[x] = amps[x] * odd
        else:
            amps[x] = amps[x] * even


def apply_masked_phase(cplx[::1] amps, unsigned long long mask, cplx phase):
    """Multiply |x> by ``phase`` wherever all bits of ``mask`` are set in x."""
    cdef Py_ssize_t size = amps.shape[0]
    cdef Py_ssize_t x
    for x in range(size):
        if ((<unsigned long long>x) & mask) == mask:
            amps[x] = amps[x] * phase


def apply_rx_all(cplx[::1] amps, Py_ssize_t n, double theta):
    """Apply RX(theta) = exp(-i theta X / 2) to every one of the n qubits."""
    cdef cplx c = cos(0.5 * theta)
    cdef cplx s = -1j * sin(0.5 * theta)
    cdef Py_ssize_t size = amps.shape[0]
    cdef Py_ssize_t q, half, step, base, i
    cdef cplx lo, hi
    for q in range(n):
        half = (<Py_ssize_t>1) << q
        step = half << 1
        for base in range(0, size, step):
            for i in range(base, base + half):
                lo = amps[i]
                hi = amps[i + half]
                amps[i] = c * lo + s * hi
                amps[i + half] = s * lo + c * hi
