"""Problem instances and the exhaustive oracle.

MaxCut encoding onto spin models, seeded random graph generation, cut
evaluation, graph file IO, and brute-force minimization of a model diagonal.
The canonical direction is minimization: the MaxCut model diagonal equals
-cut(x), and cut_diagonal exposes the +cut values for reporting.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .hamiltonian import IsingModel, diagonal
from .statevector import check_capacity


@dataclass(frozen=True)
class Graph:
    """Undirected graph: edges are distinct pairs (i, j) with i < j."""
    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class BruteForceResult:
    """Exact minimum of a model diagonal and every index attaining it."""
    best_value: float
    argmin_set: tuple[int, ...]
    evaluated: int


def cycle_graph(n: int) -> Graph:
    """n-cycle 0-1-...-(n-1)-0; the 4-cycle is the standard worked example."""
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def maxcut_ising(graph: Graph) -> IsingModel:
    """Spin model whose diagonal is -cut(x): offset -|E|/2, J_ij = +1/2.

    An edge contributes -1/2 when cut (s_i s_j = -1) and +1/2 otherwise, so
    minimizing the energy maximizes the cut.
    """
    j2 = {e: 0.5 for e in graph.edges}
    return IsingModel(n=graph.n_vertices, j2=j2, offset=-graph.n_edges / 2.0)


def cut_value(graph: Graph, bitstring: str) -> int:
    """Number of edges whose endpoints get different bits (char i = vertex i)."""
    if len(bitstring) != graph.n_vertices:
        raise ValueError(f"bitstring length {len(bitstring)} != "
                         f"{graph.n_vertices} vertices")
    if any(ch not in "01" for ch in bitstring):
        raise ValueError(f"invalid bitstring {bitstring!r}")
    return sum(1 for u, v in graph.edges if bitstring[u] != bitstring[v])


def cut_diagonal(graph: Graph) -> np.ndarray:
    """Cut counts over all basis indices (the +cut reporting convention)."""
    check_capacity(graph.n_vertices)
    idx = np.arange(1 << graph.n_vertices)
    d = np.zeros(idx.size, dtype=np.float64)
    for u, v in graph.edges:
        d += ((idx >> u) ^ (idx >> v)) & 1
    return d


def erdos_renyi(n: int, prob: float, seed: int) -> Graph:
    """G(n, prob): each pair kept independently, deterministic per seed.

    Pairs are visited in the fixed order (0,1), (0,2), ..., (n-2,n-1) with one
    uniform draw each, so edge sets are reproducible across runs.
    """
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"probability {prob} outside [0, 1]")
    rng = random.Random(seed)
    edges = []
    for i in range(n - 1):
        for j in range(i + 1, n):
            if rng.random() < prob:
                edges.append((i, j))
    return Graph(n, tuple(edges))


def brute_force(ising: IsingModel) -> BruteForceResult:
    """Exact minimum of the model diagonal over all 2^n assignments."""
    check_capacity(ising.n)
    d = diagonal(ising)
    best = float(d.min())
    argmin = tuple(int(i) for i in np.flatnonzero(d == best))
    return BruteForceResult(best_value=best, argmin_set=argmin, evaluated=d.size)


def save_graph(graph: Graph, path: str) -> None:
    """Write the edge-list format: 'p <n> <m>' header then 'u v' lines."""
    lines = [f"p {graph.n_vertices} {graph.n_edges}"]
    lines += [f"{u} {v}" for u, v in graph.edges]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_graph(path: str) -> Graph:
    """Parse the edge-list format, rejecting malformed lines by number."""
    n = None
    declared_edges = None
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if n is None:
                if toks[0] != "p" or len(toks) != 3:
                    raise ValueError(
                        f"{path}:{lineno}: expected header 'p <n> <m>', got {line!r}")
                try:
                    n, declared_edges = int(toks[1]), int(toks[2])
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: bad header {line!r}") from exc
                continue
            if len(toks) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'u v', got {line!r}")
            try:
                u, v = int(toks[0]), int(toks[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad edge {line!r}") from exc
            if u == v:
                raise ValueError(f"{path}:{lineno}: self-loop {u} {v}")
            e = (min(u, v), max(u, v))
            if e in edges:
                raise ValueError(f"{path}:{lineno}: duplicate edge {u} {v}")
            edges.append(e)
    if n is None:
        raise ValueError(f"{path}: missing 'p <n> <m>' header")
    if declared_edges != len(edges):
        raise ValueError(f"{path}: header declares {declared_edges} edges, "
                         f"found {len(edges)}")
    return Graph(n, tuple(edges))
