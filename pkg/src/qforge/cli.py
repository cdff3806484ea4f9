"""Command-line surface.

Subcommands tie the pipeline together: instance generation, end-to-end
solving with trajectory/params/probability artifacts, gradient-method
cross-checks, spectral-gap export, and finite-shot sampling. Data goes to
files or stdout; diagnostics go to stderr; exit code 0 means success.

The capacity cap can be raised with the QFORGE_MAX_QUBITS environment
variable. All JSON output uses sorted keys for diffability.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .gradients import (finite_difference, qaoa_gradient_layer_shift,
                        qaoa_gradient_per_gate)
from .grover import load_feasible
from .hamiltonian import (IsingModel, classical_energy, diagonal,
                          eigenvalue_bound, load_ising, rescale)
from .optimizers import (OptimizerConfig, load_params_json, minimize,
                         save_params_json, save_trajectory_csv)
from .problems import cut_value, erdos_renyi, load_graph, maxcut_ising, save_graph
from .qaoa import (MixerSpec, QaoaParams, grover_mixer, linear_ramp_params,
                   qaoa_evolve, x_mixer)
from .spectral import gap_schedule, save_gap_csv
from .statevector import expectation_diagonal, index_to_bits, probabilities, sample


def load_probs_csv(path: str) -> list[tuple[str, float]]:
    """Rows of a probs.csv written by the solve command."""
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "bitstring,probability":
            raise ValueError(f"{path}: unexpected header {header!r}")
        rows = []
        for line in fh:
            if not line.strip():
                continue
            bits, value = line.strip().split(",")
            rows.append((bits, float(value)))
    return rows


class _Instance:
    """Loaded model plus the reporting hooks that depend on its origin."""

    def __init__(self, descriptor: dict, model: IsingModel, graph=None):
        self.descriptor = descriptor
        self.model = model
        self.graph = graph

    @property
    def bound(self) -> float | None:
        if self.graph is not None:
            return float(self.graph.n_edges) if self.graph.n_edges else None
        b = eigenvalue_bound(self.model)
        return b if b > np.pi else None

    def bitstring_cost(self, bits: str) -> float:
        if self.graph is not None:
            return float(cut_value(self.graph, bits))
        spins = [1 - 2 * int(b) for b in bits]
        return classical_energy(self.model, spins)


def _load_instance(args) -> _Instance:
    if getattr(args, "graph", None):
        g = load_graph(args.graph)
        return _Instance({"graph": args.graph}, maxcut_ising(g), graph=g)
    model = load_ising(args.ising)
    return _Instance({"ising": args.ising}, model)


def _mixer_from_args(args) -> MixerSpec:
    if getattr(args, "mixer", "x") == "grover":
        if not getattr(args, "feasible", None):
            raise ValueError("--mixer grover requires --feasible <file>")
        return grover_mixer(load_feasible(args.feasible))
    return x_mixer()


def cmd_generate(args) -> int:
    g = erdos_renyi(args.n, args.prob, args.seed)
    save_graph(g, args.out)
    print(f"wrote {args.out}: {g.n_vertices} vertices, {g.n_edges} edges",
          file=sys.stderr)
    return 0


def cmd_solve(args) -> int:
    t0 = time.perf_counter()
    inst = _load_instance(args)
    spec = _mixer_from_args(args)
    grad_method = args.grad
    if spec.kind == "grover" and grad_method == "per-gate-shift":
        grad_method = "finite-difference"
        print("grover mixer: switching gradients to finite differences",
              file=sys.stderr)
    config = OptimizerConfig(method=args.optimizer, learning_rate=args.lr,
                             max_steps=args.steps, gradient_method=grad_method,
                             seed=args.seed)
    init = linear_ramp_params(args.p, args.T)
    bound = inst.bound
    traj = minimize(inst.model, init, spec, config, bound=bound)

    dynamics = inst.model if bound is None else rescale(inst.model, bound)
    state = qaoa_evolve(dynamics, traj.params_final, spec)
    probs = probabilities(state)
    order = np.argsort(-probs, kind="stable")

    os.makedirs(args.out_dir, exist_ok=True)
    traj_path = os.path.join(args.out_dir, "trajectory.csv")
    save_trajectory_csv(traj, traj_path)
    save_params_json(traj.params_final, os.path.join(args.out_dir, "params.json"))
    probs_path = os.path.join(args.out_dir, "probs.csv")
    n = inst.model.n
    with open(probs_path, "w") as fh:
        fh.write("bitstring,probability\n")
        for x in order:
            fh.write(f"{index_to_bits(int(x), n)},{float(probs[x])!r}\n")

    best_bits = index_to_bits(int(order[0]), n)
    expected_cost = expectation_diagonal(state, diagonal(inst.model))
    report = {
        "instance": inst.descriptor,
        "config": {
            "p": args.p, "T": args.T, "steps": args.steps,
            "optimizer": args.optimizer, "learning_rate": args.lr,
            "gradient_method": grad_method, "mixer": spec.kind,
            "seed": args.seed, "rescale_bound": bound,
        },
        "best_bitstring": best_bits,
        "best_cost": inst.bitstring_cost(best_bits),
        "expected_cost": expected_cost,
        "top": [
            {
                "bitstring": index_to_bits(int(x), n),
                "probability": float(probs[x]),
                "cost": inst.bitstring_cost(index_to_bits(int(x), n)),
            }
            for x in order[:8]
        ],
        "trajectory": traj_path,
        "wall_ms": int((time.perf_counter() - t0) * 1000),
    }
    if inst.graph is not None:
        report["expected_cut"] = -expected_cost
    with open(os.path.join(args.out_dir, "report.json"), "w") as fh:
        json.dump(report, fh, sort_keys=True, indent=2)
        fh.write("\n")
    print(f"best {best_bits} cost {report['best_cost']} "
          f"({report['wall_ms']} ms)", file=sys.stderr)
    return 0


def cmd_gradcheck(args) -> int:
    inst = _load_instance(args)
    spec = x_mixer()
    rng = np.random.default_rng(args.seed)
    params = QaoaParams(tuple(rng.uniform(-1.0, 1.0, args.p)),
                        tuple(rng.uniform(-1.0, 1.0, args.p)))
    bound = inst.bound
    pg = qaoa_gradient_per_gate(inst.model, params, spec, bound=bound)
    ls = qaoa_gradient_layer_shift(inst.model, params, spec, bound=bound)
    fd = finite_difference(inst.model, params, spec, bound=bound)

    rows = []
    for name, rep in (("per-gate", pg), ("layer-shift", ls), ("finite-diff", fd)):
        rows.append((name, rep.grad_gammas + rep.grad_betas, rep.evaluations))
    header = [f"gamma[{i}]" for i in range(args.p)] + \
             [f"beta[{i}]" for i in range(args.p)]
    print("parameter," + ",".join(name for name, _, _ in rows))
    for j, pname in enumerate(header):
        print(f"{pname}," + ",".join(f"{vals[j]: .10e}" for _, vals, _ in rows))
    dev_fd = max(abs(a - b) for a, b in zip(rows[0][1], rows[2][1]))
    dev_ls = max(abs(a - b) for a, b in zip(rows[0][1], rows[1][1]))
    print(f"max|per-gate - finite-diff|,{dev_fd!r}")
    print(f"max|per-gate - layer-shift|,{dev_ls!r}")
    if dev_fd > 1e-5:
        print(f"gradcheck FAILED: per-gate vs finite-difference deviation "
              f"{dev_fd:.3e} exceeds 1e-5", file=sys.stderr)
        return 1
    return 0


def cmd_spectrum(args) -> int:
    inst = _load_instance(args)
    sched = gap_schedule(inst.model, args.strength, args.steps)
    if args.out:
        save_gap_csv(sched, args.out)
        print(f"wrote {args.out} (g_min={sched.g_min!r})", file=sys.stderr)
    else:
        print("s,E0,E1,gap")
        for s, e0, e1, g in sched.samples:
            print(f"{s!r},{e0!r},{e1!r},{g!r}")
    return 0


def cmd_sample(args) -> int:
    inst = _load_instance(args)
    spec = _mixer_from_args(args)
    params = load_params_json(args.params)
    bound = inst.bound
    dynamics = inst.model if bound is None else rescale(inst.model, bound)
    state = qaoa_evolve(dynamics, params, spec)
    counts = sample(state, args.shots, args.seed)
    payload = {"counts": counts.counts, "shots": counts.shots,
               "seed": counts.seed}
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _add_instance_args(sub) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph", help="graph file (MaxCut instance)")
    group.add_argument("--ising", help="ising model file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qforge",
        description="Statevector QAOA toolkit: encode, evolve, train, verify.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("generate", help="write a random graph instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--prob", type=float, default=0.5)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    solve = subs.add_parser("solve", help="train QAOA on an instance")
    _add_instance_args(solve)
    solve.add_argument("--p", type=int, default=10, help="layer count")
    solve.add_argument("--T", type=float, default=7.5,
                       help="total ramp time for the initial schedule")
    solve.add_argument("--steps", type=int, default=1000)
    solve.add_argument("--optimizer", choices=("adam", "gd"), default="adam")
    solve.add_argument("--lr", type=float, default=0.01)
    solve.add_argument("--grad", choices=("per-gate-shift", "finite-difference"),
                       default="per-gate-shift")
    solve.add_argument("--mixer", choices=("x", "grover"), default="x")
    solve.add_argument("--feasible", help="feasible-set file for --mixer grover")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--out-dir", required=True)
    solve.set_defaults(func=cmd_solve)

    grad = subs.add_parser("gradcheck",
                           help="compare the three gradient methods")
    _add_instance_args(grad)
    grad.add_argument("--p", type=int, default=2)
    grad.add_argument("--seed", type=int, default=0)
    grad.set_defaults(func=cmd_gradcheck)

    spec = subs.add_parser("spectrum", help="export the gap schedule CSV")
    _add_instance_args(spec)
    spec.add_argument("--strength", type=float, default=1.0,
                      help="transverse field strength")
    spec.add_argument("--steps", type=int, default=51)
    spec.add_argument("--out")
    spec.set_defaults(func=cmd_spectrum)

    samp = subs.add_parser("sample", help="finite-shot readout at fixed params")
    _add_instance_args(samp)
    samp.add_argument("--params", required=True, help="params.json from solve")
    samp.add_argument("--mixer", choices=("x", "grover"), default="x")
    samp.add_argument("--feasible")
    samp.add_argument("--shots", type=int, default=10000)
    samp.add_argument("--seed", type=int, default=0)
    samp.add_argument("--out")
    samp.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
