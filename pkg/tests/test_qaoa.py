"""Layered evolution: schedules, cost/mixer unitaries, end-to-end circuits."""
import math

import numpy as np
import pytest

from qforge import (IsingModel, QaoaParams, Schedule, UnscaledModelError,
                    apply_cnot, apply_cost_unitary, apply_h,
                    apply_mixer_unitary, apply_rx, apply_rz, brute_force,
                    cost_expectation, cost_expectation_sampled, cut_diagonal,
                    cycle_graph, diagonal, dicke_one_hot, grover_mixer,
                    init_plus_state, linear_ramp_params, maxcut_ising,
                    new_state, probabilities, qaoa_evolve, rescale,
                    trotterized_aqc, x_mixer)
from qforge.statevector import Statevector


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return Statevector(n, amps / np.linalg.norm(amps))


def random_model(n, seed, scale=0.25):
    """Random model with terms up to order 3, safely inside the phase range."""
    rng = np.random.default_rng(seed)
    h = {i: scale * rng.uniform(-1, 1) for i in range(n) if rng.random() < 0.7}
    j2, jk = {}, {}
    for i in range(n - 1):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                j2[(i, j)] = scale * rng.uniform(-1, 1)
    if n >= 3:
        for _ in range(2):
            tri = tuple(sorted(rng.choice(n, size=3, replace=False)))
            jk[tri] = scale * rng.uniform(-1, 1)
    return IsingModel(n=n, h=h, j2=j2, jk=jk, offset=scale * rng.uniform(-1, 1))


def test_init_plus_state():
    s = init_plus_state(1)
    assert np.allclose(s.amps, 1 / math.sqrt(2))
    s = init_plus_state(2)
    assert np.allclose(s.amps, 0.5)


def test_plus_state_is_transverse_field_ground_state():
    # <+|(-sum X)|+> = -n, one term per qubit
    n = 3
    s = init_plus_state(n)
    total = 0.0
    for q in range(n):
        flipped = s.copy()
        # X|x> swaps the q-th bit: reuse rx(pi) up to the -i phase
        apply_rx(flipped, q, math.pi)
        total += (-1) * np.real(1j * np.vdot(s.amps, flipped.amps))
    assert total == pytest.approx(-n, abs=1e-12)


def test_linear_ramp_matches_printed_schedule():
    params = linear_ramp_params(10, 7.5)
    assert params.gammas == pytest.approx(tuple(0.075 * k for k in range(10)))
    assert params.betas == pytest.approx(
        tuple(-(1 - k / 10) * 0.75 for k in range(10)))
    assert params.gammas[0] == 0.0
    assert params.betas[0] == -0.75
    single = linear_ramp_params(1, 1.0)
    assert single.gammas == (0.0,)
    assert single.betas == (-1.0,)


def test_linear_ramp_monotonicity():
    params = linear_ramp_params(17, 4.2)
    assert all(b <= a for a, b in zip(params.gammas[1:], params.gammas))
    assert all(b <= a for a, b in zip(params.betas[1:], params.betas))
    assert all(b < 0 for b in params.betas)


def test_schedule_invariants():
    sched = Schedule(T=7.5, p=10)
    assert sched.delta * sched.p == pytest.approx(7.5)
    svals = sched.s_values
    assert svals[0] == 0.0 and svals[-1] < 1.0
    assert all(b >= a for a, b in zip(svals, svals[1:]))


def test_cost_unitary_identity_at_zero():
    model = random_model(4, 0)
    s = random_state(4, 1)
    ref = s.copy()
    apply_cost_unitary(s, model, 0.0)
    assert np.max(np.abs(s.amps - ref.amps)) < 1e-15


def test_cost_unitary_single_field_phases():
    model = IsingModel(n=1, h={0: 1.0})
    s = init_plus_state(1)
    apply_cost_unitary(s, model, 0.6)
    expect = np.array([np.exp(-0.6j), np.exp(0.6j)]) / math.sqrt(2)
    assert np.max(np.abs(s.amps - expect)) < 1e-12


@pytest.mark.parametrize("seed", range(6))
def test_cost_unitary_matches_diagonal_phase_oracle(seed):
    rng = np.random.default_rng(seed + 100)
    n = int(rng.integers(2, 7))
    model = random_model(n, seed)
    gamma = float(rng.uniform(-2, 2))
    s = random_state(n, seed + 50)
    oracle = s.amps * np.exp(-1j * gamma * diagonal(model))
    apply_cost_unitary(s, model, gamma)
    assert np.max(np.abs(s.amps - oracle)) < 1e-12


def test_cost_unitary_rejects_unscaled_model():
    model = maxcut_ising(cycle_graph(4))  # coefficient bound 4 > pi
    s = init_plus_state(4)
    with pytest.raises(UnscaledModelError, match="[Rr]escale"):
        apply_cost_unitary(s, model, 0.3)
    apply_cost_unitary(s, model, 0.3, allow_unscaled=True)  # override works


def test_cost_unitary_term_order_is_irrelevant():
    model = random_model(5, 3)
    reordered = IsingModel(n=5, h=dict(reversed(list(model.h.items()))),
                           j2=dict(reversed(list(model.j2.items()))),
                           jk=model.jk, offset=model.offset)
    a = random_state(5, 8)
    b = a.copy()
    apply_cost_unitary(a, model, 0.9)
    apply_cost_unitary(b, reordered, 0.9)
    assert np.max(np.abs(a.amps - b.amps)) < 1e-12


def test_mixer_identity_at_zero():
    s = random_state(3, 2)
    ref = s.copy()
    apply_mixer_unitary(s, x_mixer(), 0.0)
    assert np.max(np.abs(s.amps - ref.amps)) < 1e-15


def test_mixer_beta_pi_half_flips_zero_state():
    # rx angle is 2*beta*strength; beta = pi/2 gives RX(pi)|0> = -i|1>
    s = new_state(1)
    apply_mixer_unitary(s, x_mixer(), math.pi / 2)
    assert np.max(np.abs(s.amps - np.array([0, -1j]))) < 1e-12


def test_mixer_fixes_plus_state_up_to_phase():
    s = init_plus_state(3)
    apply_mixer_unitary(s, x_mixer(), -0.77)
    probs = probabilities(s)
    assert np.max(np.abs(probs - 1 / 8)) < 1e-12
    # global phase only: amplitudes stay proportional to the uniform vector
    assert np.max(np.abs(s.amps / s.amps[0] - 1)) < 1e-12


def test_mixer_grover_kind_delegates():
    feas = dicke_one_hot(3)
    spec = grover_mixer(feas)
    s = qaoa_evolve(IsingModel(n=3), QaoaParams((0.0,), (0.4,)), spec)
    # cost is the zero model; the grover mixer only phases |F>
    outside = np.delete(probabilities(s), list(feas.indices))
    assert np.max(outside) < 1e-12


def test_qaoa_evolve_zero_params_returns_initial_state():
    model = rescale(maxcut_ising(cycle_graph(4)), 4.0)
    params = QaoaParams((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))
    s = qaoa_evolve(model, params, x_mixer())
    assert np.array_equal(s.amps, init_plus_state(4).amps)


def explicit_c4_layer(model, gamma, beta):
    """Gate-by-gate single QAOA layer for the 4-cycle: Hadamards, a
    CNOT-RZ-CNOT block per edge, then a mixer rotation per qubit."""
    s = new_state(4)
    for q in range(4):
        apply_h(s, q)
    for (i, j), coeff in sorted(model.j2.items()):
        apply_cnot(s, i, j)
        apply_rz(s, j, 2.0 * gamma * coeff)
        apply_cnot(s, i, j)
    for q in range(4):
        apply_rx(s, q, 2.0 * beta)
    return s


@pytest.mark.parametrize("seed", range(4))
def test_single_layer_matches_explicit_gate_list(seed):
    rng = np.random.default_rng(seed)
    gamma, beta = rng.uniform(-1.5, 1.5, size=2)
    model = rescale(maxcut_ising(cycle_graph(4)), 4.0)
    params = QaoaParams((gamma,), (beta,))
    via_evolve = qaoa_evolve(model, params, x_mixer(), include_offset=False)
    explicit = explicit_c4_layer(model, gamma, beta)
    assert np.max(np.abs(via_evolve.amps - explicit.amps)) < 1e-12


def test_ramp_evolution_c4_top_two_are_optimal_pair():
    model = rescale(maxcut_ising(cycle_graph(4)), 4.0)
    s = qaoa_evolve(model, linear_ramp_params(10, 7.5), x_mixer())
    probs = probabilities(s)
    top2 = set(np.argsort(-probs)[:2])
    assert top2 == {0b0101, 0b1010}
    assert probs[0b0101] == pytest.approx(probs[0b1010], abs=1e-10)
    optima = set(brute_force(maxcut_ising(cycle_graph(4))).argmin_set)
    assert top2 == optima


def test_unitarity_along_evolution():
    model = random_model(5, 12)
    params = QaoaParams(tuple(np.linspace(0, 1, 4)), tuple(-np.linspace(1, 0.1, 4)))
    s = qaoa_evolve(model, params, x_mixer())
    assert abs(s.norm() ** 2 - 1) < 1e-10


def test_complement_symmetry_for_pure_coupling_models():
    # no linear terms: p(x) == p(~x) at any parameters
    g = cycle_graph(5)
    model = rescale(maxcut_ising(g), float(g.n_edges))
    rng = np.random.default_rng(5)
    params = QaoaParams(tuple(rng.uniform(-1, 1, 3)), tuple(rng.uniform(-1, 1, 3)))
    probs = probabilities(qaoa_evolve(model, params, x_mixer()))
    flipped = probs[::-1]  # complement of x is (2^n - 1) - x
    assert np.max(np.abs(probs - flipped)) < 1e-10


def test_cost_expectation_uniform_state_mean():
    model = maxcut_ising(cycle_graph(4))
    params = QaoaParams((0.0,), (0.0,))
    value = cost_expectation(model, params, x_mixer(), bound=4.0)
    assert value == pytest.approx(-2.0, abs=1e-12)  # mean of -cut over 16 strings
    # reporting convention: expected cut is the negation
    assert -value == pytest.approx(cut_diagonal(cycle_graph(4)).mean())


def test_cost_expectation_bounded_by_diagonal_range():
    model = random_model(4, 21)
    d = diagonal(model)
    rng = np.random.default_rng(2)
    for _ in range(5):
        params = QaoaParams(tuple(rng.uniform(-1, 1, 2)),
                            tuple(rng.uniform(-1, 1, 2)))
        val = cost_expectation(model, params, x_mixer())
        assert d.min() - 1e-10 <= val <= d.max() + 1e-10


def test_cost_expectation_grover_on_optimal_subspace():
    from qforge import FeasibleSet
    g = cycle_graph(4)
    model = maxcut_ising(g)
    optima = brute_force(model).argmin_set
    spec = grover_mixer(FeasibleSet(n=4, indices=tuple(optima)))
    rng = np.random.default_rng(3)
    for _ in range(3):
        params = QaoaParams(tuple(rng.uniform(-1, 1, 2)),
                            tuple(rng.uniform(-1, 1, 2)))
        val = cost_expectation(model, params, spec, bound=4.0)
        assert val == pytest.approx(-4.0, abs=1e-10)


def test_trotterized_single_coarse_step_is_mixer_only():
    model = rescale(maxcut_ising(cycle_graph(4)), 4.0)
    s = trotterized_aqc(model, p=1, T=1.0, spec=x_mixer())
    probs = probabilities(s)
    assert np.max(np.abs(probs - 1 / 16)) < 1e-12  # |+>^4 up to phase


def test_trotterized_c4_reaches_optimal_mass():
    model = maxcut_ising(cycle_graph(4))
    optima = brute_force(model).argmin_set
    s = trotterized_aqc(model, p=100, T=20.0, spec=x_mixer(),
                        allow_unscaled=True)
    mass = probabilities(s)[list(optima)].sum()
    assert mass >= 0.9


def test_sampled_expectation_tracks_exact_value():
    model = maxcut_ising(cycle_graph(4))
    params = linear_ramp_params(4, 3.0)
    exact = cost_expectation(model, params, x_mixer(), bound=4.0)
    est = cost_expectation_sampled(model, params, x_mixer(), shots=200_000,
                                   seed=5, bound=4.0)
    assert est == pytest.approx(exact, abs=0.05)  # statistical, not tolerance-tested
    again = cost_expectation_sampled(model, params, x_mixer(), shots=200_000,
                                     seed=5, bound=4.0)
    assert est == again


def test_params_validation():
    with pytest.raises(ValueError):
        QaoaParams((0.1,), (0.2, 0.3))
    with pytest.raises(ValueError):
        QaoaParams((), ())
    with pytest.raises(ValueError):
        QaoaParams((float("nan"),), (0.0,))
