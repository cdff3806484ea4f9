"""Binary polynomials, Ising models, diagonals, and Pauli decomposition."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qforge import (BinaryPolynomial, IsingModel, PauliString, binary_to_ising,
                    classical_energy, cycle_graph, diagonal, eigenvalue_bound,
                    maxcut_ising, pauli_decompose, pauli_matrix,
                    pauli_reconstruct, rescale)
from qforge.hamiltonian import load_ising, save_ising


def all_bit_vectors(n):
    return [[(x >> i) & 1 for i in range(n)] for x in range(1 << n)]


def test_single_variable_substitution():
    ising = binary_to_ising(BinaryPolynomial(1, {(0,): 1.0}))
    assert ising.offset == 0.5
    assert ising.h == {0: -0.5}
    assert not ising.j2 and not ising.jk


def test_two_variable_product_substitution():
    ising = binary_to_ising(BinaryPolynomial(2, {(0, 1): 1.0}))
    assert ising.offset == 0.25
    assert ising.h == {0: -0.25, 1: -0.25}
    assert ising.j2 == {(0, 1): 0.25}


def test_cubic_term_produces_third_order_coupling():
    poly = BinaryPolynomial(3, {(0, 1, 2): 1.0})
    ising = binary_to_ising(poly)
    assert ising.jk == {(0, 1, 2): -0.125}
    for bits in all_bit_vectors(3):
        spins = [1 - 2 * b for b in bits]
        assert classical_energy(ising, spins) == poly.evaluate(bits)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_binary_to_ising_round_trip_random_polynomials(data):
    n = data.draw(st.integers(min_value=1, max_value=6))
    n_terms = data.draw(st.integers(min_value=0, max_value=6))
    terms = {}
    for _ in range(n_terms):
        size = data.draw(st.integers(min_value=1, max_value=min(4, n)))
        idxs = tuple(sorted(data.draw(
            st.sets(st.integers(0, n - 1), min_size=size, max_size=size))))
        coeff = data.draw(st.integers(-8, 8)) / 4.0
        terms[idxs] = terms.get(idxs, 0.0) + coeff
    terms[()] = data.draw(st.integers(-8, 8)) / 4.0
    poly = BinaryPolynomial(n, terms)
    ising = binary_to_ising(poly)
    diag = diagonal(ising)
    for x, bits in enumerate(all_bit_vectors(n)):
        assert diag[x] == poly.evaluate(bits)


def test_classical_energy_examples():
    ferro = IsingModel(n=2, j2={(0, 1): -1.0})
    assert classical_energy(ferro, [1, 1]) == -1.0
    assert classical_energy(IsingModel(n=3, offset=3.5), [1, -1, 1]) == 3.5
    with pytest.raises(ValueError):
        classical_energy(ferro, [1, 1, 1])


def test_energy_matches_diagonal_on_random_model():
    rng = np.random.default_rng(9)
    model = IsingModel(n=4, h={0: rng.normal(), 2: rng.normal()},
                       j2={(0, 1): rng.normal(), (1, 3): rng.normal()},
                       jk={(0, 2, 3): rng.normal()}, offset=rng.normal())
    diag = diagonal(model)
    for x, bits in enumerate(all_bit_vectors(4)):
        spins = [1 - 2 * b for b in bits]
        assert diag[x] == pytest.approx(classical_energy(model, spins), abs=1e-12)


def test_diagonal_small_examples():
    assert np.array_equal(diagonal(IsingModel(n=1, h={0: 1.0})), [1.0, -1.0])
    assert np.array_equal(diagonal(IsingModel(n=2, j2={(0, 1): 1.0})),
                          [1.0, -1.0, -1.0, 1.0])


def test_maxcut_c4_diagonal_is_cut_count():
    # oracle: enumerate cut edges of the 4-cycle directly
    from qforge import cut_value
    from qforge.statevector import index_to_bits
    g = cycle_graph(4)
    diag = diagonal(maxcut_ising(g))
    for x in range(16):
        assert diag[x] == -cut_value(g, index_to_bits(x, 4))
    assert diag[int("0101"[::-1], 2)] == -4  # alternating partition cuts all



def test_rescale_examples():
    # spectrum {0, 2pi} scaled by 2pi lands on {0, 1}
    model = IsingModel(n=1, h={0: -np.pi}, offset=np.pi)
    assert np.allclose(diagonal(model), [0.0, 2 * np.pi])
    scaled = rescale(model, 2 * np.pi)
    assert np.allclose(diagonal(scaled), [0.0, 1.0])
    with pytest.raises(ValueError):
        rescale(model, 0.0)


def test_rescale_exact_bound_and_argmin_preservation():
    rng = np.random.default_rng(17)
    model = IsingModel(n=4, h={i: rng.normal() for i in range(4)},
                       j2={(0, 2): rng.normal()}, offset=rng.normal())
    diag = diagonal(model)
    bound = np.max(np.abs(diag))
    scaled_diag = diagonal(rescale(model, bound))
    assert np.max(np.abs(scaled_diag)) == pytest.approx(1.0)
    assert np.array_equal(np.argsort(scaled_diag), np.argsort(diag))


def test_eigenvalue_bound():
    model = IsingModel(n=2, h={0: 1.0, 1: -2.0}, j2={(0, 1): 3.0})
    assert eigenvalue_bound(model) == 6.0
    assert eigenvalue_bound(IsingModel(n=2)) == 0.0
    c4 = maxcut_ising(cycle_graph(4))
    assert eigenvalue_bound(c4) == 4.0
    assert eigenvalue_bound(c4) == -np.min(diagonal(c4))  # true max cut is 4


def test_pauli_decompose_simple():
    (zs,) = pauli_decompose(np.diag([1.0, -1.0]))
    assert zs.ops == "Z" and zs.coefficient == 1.0
    (ident,) = pauli_decompose(np.eye(2))
    assert ident.ops == "I" and ident.coefficient == 1.0


def test_pauli_decompose_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        pauli_decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_pauli_decompose_maxcut_c4_pattern():
    from qforge import cut_diagonal
    strings = pauli_decompose(np.diag(cut_diagonal(cycle_graph(4))))
    coeffs = {s.ops: s.coefficient for s in strings}
    assert coeffs == {
        "IIII": 2.0,
        "ZZII": -0.5, "IZZI": -0.5, "IIZZ": -0.5, "ZIIZ": -0.5,
    }


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pauli_round_trip_random_hermitian(n):
    rng = np.random.default_rng(31 + n)
    a = rng.normal(size=(1 << n, 1 << n)) + 1j * rng.normal(size=(1 << n, 1 << n))
    h = (a + a.conj().T) / 2
    strings = pauli_decompose(h)
    assert np.max(np.abs(pauli_reconstruct(strings, n) - h)) < 1e-12


def test_pauli_matrix_qubit_order():
    # Z on qubit 0 alternates with the least-significant bit
    m = pauli_matrix("ZI")
    assert np.array_equal(np.diag(m).real, [1, -1, 1, -1])


def test_pauli_string_validation():
    with pytest.raises(ValueError):
        PauliString("AZ", 1.0)
    with pytest.raises(ValueError):
        PauliString("XZ", float("nan"))


def test_ising_text_round_trip(tmp_path):
    model = IsingModel(n=5, h={0: 0.5, 4: -1.25}, j2={(1, 3): 2.0},
                       jk={(0, 2, 4): -0.375}, offset=0.125)
    path = tmp_path / "model.txt"
    save_ising(model, str(path))
    loaded = load_ising(str(path))
    assert loaded == model


def test_ising_text_parsing_and_errors(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("# comment\n1.5\n-0.25 0 2\n")
    model = load_ising(str(path))
    assert model.offset == 1.5
    assert model.j2 == {(0, 2): -0.25}
    assert model.n == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("0.5 2 1\n")
    with pytest.raises(ValueError, match="sorted"):
        load_ising(str(bad))
    bad.write_text("abc 0\n")
    with pytest.raises(ValueError, match="bad.txt:1"):
        load_ising(str(bad))


def test_model_validation():
    with pytest.raises(ValueError):
        IsingModel(n=2, h={2: 1.0})
    with pytest.raises(ValueError):
        IsingModel(n=3, j2={(1, 1): 1.0})
    with pytest.raises(ValueError):
        IsingModel(n=3, jk={(0, 1): 1.0})
    # zero coefficients are dropped on construction
    m = IsingModel(n=2, h={0: 0.0}, j2={(0, 1): 0.0})
    assert not m.h and not m.j2
