"""Cost-function algebra.

Binary polynomials over x in {0,1}^n, Ising models over spins s in {-1,+1}^n
(arbitrary interaction order plus a constant offset), the x -> (1-z)/2
substitution between them, diagonal evaluation, rescaling, and Pauli-string
decomposition of small Hermitian matrices.

Sign convention: coefficients are stored exactly as they enter the energy,
    energy(s) = offset + sum_i h_i s_i + sum_{i<j} J_ij s_i s_j
              + sum_{|S|>=3} J_S prod_{i in S} s_i,
with no implicit minus signs. Minimization is the canonical direction;
encode maximization problems by negating the objective.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from .statevector import check_capacity

PAULI_1Q = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _validate_indices(idxs: tuple[int, ...], n: int) -> None:
    if list(idxs) != sorted(set(idxs)):
        raise ValueError(f"term indices must be sorted and distinct: {idxs}")
    if idxs and (idxs[0] < 0 or idxs[-1] >= n):
        raise ValueError(f"term indices {idxs} out of range for n={n}")


@dataclass(frozen=True)
class BinaryPolynomial:
    """Multilinear polynomial over binary variables x_i in {0,1}.

    terms maps a sorted index tuple S to its coefficient; the empty tuple
    holds the constant. Zero coefficients are never stored.
    """
    n: int
    terms: dict[tuple[int, ...], float]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("variable count must be >= 1")
        cleaned = {}
        for idxs, c in self.terms.items():
            idxs = tuple(idxs)
            _validate_indices(idxs, self.n)
            if c != 0.0:
                cleaned[idxs] = float(c)
        object.__setattr__(self, "terms", cleaned)

    def evaluate(self, bits: Sequence[int]) -> float:
        if len(bits) != self.n:
            raise ValueError(f"expected {self.n} bits, got {len(bits)}")
        total = 0.0
        for idxs, c in self.terms.items():
            prod = 1
            for i in idxs:
                prod *= bits[i]
            total += c * prod
        return total


@dataclass(frozen=True)
class IsingModel:
    """Spin model with linear fields, pairwise and higher-order couplings."""
    n: int
    h: dict[int, float] = field(default_factory=dict)
    j2: dict[tuple[int, int], float] = field(default_factory=dict)
    jk: dict[tuple[int, ...], float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("spin count must be >= 1")
        h = {int(i): float(c) for i, c in self.h.items() if c != 0.0}
        for i in h:
            if not 0 <= i < self.n:
                raise ValueError(f"field index {i} out of range for n={self.n}")
        j2 = {}
        for idxs, c in self.j2.items():
            idxs = tuple(idxs)
            _validate_indices(idxs, self.n)
            if len(idxs) != 2:
                raise ValueError(f"pairwise coupling needs 2 indices: {idxs}")
            if c != 0.0:
                j2[idxs] = float(c)
        jk = {}
        for idxs, c in self.jk.items():
            idxs = tuple(idxs)
            _validate_indices(idxs, self.n)
            if len(idxs) < 3:
                raise ValueError(f"higher-order coupling needs >= 3 indices: {idxs}")
            if c != 0.0:
                jk[idxs] = float(c)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "j2", j2)
        object.__setattr__(self, "jk", jk)
        object.__setattr__(self, "offset", float(self.offset))

    def terms(self) -> Iterator[tuple[tuple[int, ...], float]]:
        """All non-constant terms as (sorted index tuple, coefficient)."""
        for i, c in sorted(self.h.items()):
            yield (i,), c
        for idxs, c in sorted(self.j2.items()):
            yield idxs, c
        for idxs, c in sorted(self.jk.items()):
            yield idxs, c


def from_terms(n: int, terms: dict[tuple[int, ...], float],
               offset: float = 0.0) -> IsingModel:
    """Build an IsingModel from a flat {index tuple: coefficient} map."""
    h, j2, jk = {}, {}, {}
    for idxs, c in terms.items():
        idxs = tuple(idxs)
        if len(idxs) == 0:
            offset += c
        elif len(idxs) == 1:
            h[idxs[0]] = h.get(idxs[0], 0.0) + c
        elif len(idxs) == 2:
            j2[idxs] = j2.get(idxs, 0.0) + c
        else:
            jk[idxs] = jk.get(idxs, 0.0) + c
    return IsingModel(n=n, h=h, j2=j2, jk=jk, offset=offset)


def binary_to_ising(poly: BinaryPolynomial) -> IsingModel:
    """Substitute x_i = (1 - s_i)/2 and expand, merging like monomials.

    With s_i = 1 - 2 x_i (so x_i = 0 maps to s_i = +1), the resulting model
    satisfies energy(s) == poly.evaluate(x) for every assignment. All
    coefficients are dyadic multiples of the inputs, hence exact in floats.
    """
    acc: dict[tuple[int, ...], float] = {}
    for idxs, c in poly.terms.items():
        scale = c / (1 << len(idxs))
        for r in range(len(idxs) + 1):
            for sub in combinations(idxs, r):
                sign = -1.0 if r % 2 else 1.0
                acc[sub] = acc.get(sub, 0.0) + sign * scale
    acc = {k: v for k, v in acc.items() if v != 0.0}
    return from_terms(poly.n, acc)


def classical_energy(ising: IsingModel, spins: Sequence[int]) -> float:
    """Energy of a +/-1 spin assignment."""
    if len(spins) != ising.n:
        raise ValueError(f"expected {ising.n} spins, got {len(spins)}")
    total = ising.offset
    for idxs, c in ising.terms():
        prod = 1
        for i in idxs:
            prod *= spins[i]
        total += c * prod
    return total


def _spin_products(n: int, mask: int) -> np.ndarray:
    """Vector over basis indices of prod_{i in mask} s_i with s_i = 1-2*bit_i."""
    v = np.arange(1 << n, dtype=np.int64) & mask
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> shift
    return 1.0 - 2.0 * (v & 1)


def diagonal(ising: IsingModel) -> np.ndarray:
    """Diagonal of the cost Hamiltonian: entry x = energy at s_i = 1-2*bit_i(x)."""
    check_capacity(ising.n)
    d = np.full(1 << ising.n, ising.offset, dtype=np.float64)
    for idxs, c in ising.terms():
        mask = 0
        for i in idxs:
            mask |= 1 << i
        d += c * _spin_products(ising.n, mask)
    return d


def eigenvalue_bound(ising: IsingModel) -> float:
    """L1 coefficient sum: a certified upper bound on max |diagonal|."""
    return abs(ising.offset) + sum(abs(c) for _, c in ising.terms())


def rescale(ising: IsingModel, bound: float) -> IsingModel:
    """Divide all coefficients and the offset by a certified bound.

    The caller guarantees bound >= max |diagonal| (e.g. the edge count for
    MaxCut), so the rescaled diagonal lies in [-1, 1].
    """
    if bound <= 0:
        raise ValueError(f"bound must be positive, got {bound}")
    return IsingModel(
        n=ising.n,
        h={i: c / bound for i, c in ising.h.items()},
        j2={k: c / bound for k, c in ising.j2.items()},
        jk={k: c / bound for k, c in ising.jk.items()},
        offset=ising.offset / bound,
    )


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis with a real coefficient.

    ops[i] is the letter acting on qubit i.
    """
    ops: str
    coefficient: float

    def __post_init__(self):
        if not self.ops or any(ch not in "IXYZ" for ch in self.ops):
            raise ValueError(f"invalid Pauli letters in {self.ops!r}")
        if not np.isfinite(self.coefficient):
            raise ValueError("coefficient must be finite")


def pauli_matrix(ops: str) -> np.ndarray:
    """Dense matrix of a Pauli string, qubit 0 = least-significant bit."""
    m = np.array([[1.0]], dtype=np.complex128)
    for ch in ops:  # qubit i joins as the faster-varying factor
        m = np.kron(PAULI_1Q[ch], m)
    return m


def pauli_reconstruct(strings: Sequence[PauliString], n: int) -> np.ndarray:
    """Sum of coefficient * string over the list, as a dense matrix."""
    total = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for s in strings:
        if len(s.ops) != n:
            raise ValueError(f"string length {len(s.ops)} does not match n={n}")
        total += s.coefficient * pauli_matrix(s.ops)
    return total


def pauli_decompose(matrix: np.ndarray, drop_tol: float = 1e-14) -> list[PauliString]:
    """Decompose a Hermitian matrix into Pauli strings.

    Coefficients are tr(P_k H) / 2^n, so that the weighted sum of strings
    reconstructs H; strings with |coefficient| <= drop_tol are omitted.
    Cost grows as 16^n, capped at n = 6.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    dim = matrix.shape[0]
    if matrix.shape != (dim, dim) or dim & (dim - 1) != 0 or dim < 2:
        raise ValueError(f"expected a 2^n x 2^n matrix, got {matrix.shape}")
    n = dim.bit_length() - 1
    if n > 6:
        raise ValueError(f"pauli_decompose supports n <= 6, got n={n}")
    if np.max(np.abs(matrix - matrix.conj().T)) > 1e-12:
        raise ValueError("matrix is not Hermitian within 1e-12")
    out = []
    for letters in product("IXYZ", repeat=n):
        ops = "".join(letters)
        coeff = np.einsum("ij,ji->", pauli_matrix(ops), matrix) / dim
        if abs(coeff.imag) > 1e-10:
            raise ValueError(f"non-real coefficient for {ops}: {coeff}")
        if abs(coeff.real) > drop_tol:
            out.append(PauliString(ops=ops, coefficient=float(coeff.real)))
    return out


def save_ising(ising: IsingModel, path: str) -> None:
    """Write the term-per-line text format: coefficient then sorted indices."""
    lines = ["# qforge ising model: coefficient followed by sorted spin indices",
             f"# n={ising.n}"]
    if ising.offset != 0.0:
        lines.append(repr(ising.offset))
    for idxs, c in ising.terms():
        lines.append(f"{c!r} " + " ".join(str(i) for i in idxs))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_ising(path: str, n: int | None = None) -> IsingModel:
    """Parse the term-per-line format; n defaults to 1 + max index seen.

    An ``# n=<int>`` comment (as written by save_ising) also sets n.
    """
    terms: dict[tuple[int, ...], float] = {}
    offset = 0.0
    max_idx = -1
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line.startswith("#"):
                body = line[1:].strip()
                if n is None and body.startswith("n="):
                    try:
                        n = int(body[2:])
                    except ValueError:
                        pass
                continue
            if not line:
                continue
            toks = line.split()
            try:
                c = float(toks[0])
                idxs = tuple(int(t) for t in toks[1:])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: cannot parse term {line!r}") from exc
            if idxs:
                if list(idxs) != sorted(set(idxs)):
                    raise ValueError(
                        f"{path}:{lineno}: indices must be sorted and distinct")
                max_idx = max(max_idx, idxs[-1])
                terms[idxs] = terms.get(idxs, 0.0) + c
            else:
                offset += c
    if n is None:
        n = max_idx + 1 if max_idx >= 0 else 1
    return from_terms(n, terms, offset)
