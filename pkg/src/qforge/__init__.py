"""qforge: a from-scratch statevector QAOA toolkit.

Encodes combinatorial problems as (higher-order) Ising models, builds and
evolves layered QAOA and Grover-mixer circuits on a dense simulator, trains
parameters with exact parameter-shift gradients, and validates against
brute-force enumeration and exact diagonalization at desk scale.

The hot gate kernels run through a compiled extension when available and a
numpy fallback otherwise; see qforge.kernels.BACKEND for the active choice.
"""
from .gradients import (GradientMethodError, GradientReport, finite_difference,
                        qaoa_gradient_layer_shift, qaoa_gradient_per_gate,
                        shift_rule_single)
from .grover import (FeasibleSet, InfeasibleError, apply_grover_mixer,
                     dicke_one_hot, enumerate_feasible,
                     grover_mixer_circuit_full_space, load_feasible,
                     save_feasible, uniform_feasible_state)
from .hamiltonian import (BinaryPolynomial, IsingModel, PauliString,
                          binary_to_ising, classical_energy, diagonal,
                          eigenvalue_bound, load_ising, pauli_decompose,
                          pauli_matrix, pauli_reconstruct, rescale, save_ising)
from .kernels import BACKEND
from .optimizers import (AdamState, OptimizerConfig, Trajectory, adam_step,
                         gd_step, load_params_json, load_trajectory_csv,
                         minimize, save_params_json, save_trajectory_csv)
from .problems import (BruteForceResult, Graph, brute_force, cut_diagonal,
                       cut_value, cycle_graph, erdos_renyi, load_graph,
                       maxcut_ising, save_graph)
from .qaoa import (MixerSpec, QaoaParams, Schedule, UnscaledModelError,
                   apply_cost_unitary, apply_mixer_unitary, cost_expectation,
                   cost_expectation_sampled, grover_mixer, init_plus_state,
                   linear_ramp_params, qaoa_evolve, trotterized_aqc, x_mixer)
from .spectral import (ConvergenceError, DenseHamiltonian, GapSchedule,
                       assemble, eigen_spectrum, exact_step_evolution,
                       gap_schedule, jacobi_eigh, load_gap_csv, save_gap_csv)
from .statevector import (CapacityError, Gate1Q, ShotCounts, Statevector,
                          apply_1q, apply_cnot, apply_controlled_phase,
                          apply_global_phase, apply_h, apply_parity_phase,
                          apply_phase, apply_rx, apply_rz, apply_x,
                          bits_to_index, expectation_diagonal, index_to_bits,
                          inner_product, max_qubits, new_state, probabilities,
                          sample)

__version__ = "0.1.0"
