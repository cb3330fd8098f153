"""Seeded random instances for verification and property tests.

Random stabilizer states are drawn as random graph states followed by
random per-qubit symplectic rotations; that construction reaches every
stabilizer state.  Codes are random-rank subgroups of random states.
"""
from __future__ import annotations

import numpy as np

from . import gf2
from .pauli import PauliSubgroup, QubitSubset
from .states import Bipartition, Graph, LocalCliffordRecord, _GL2, graph_state_group


def random_graph(rng: np.random.Generator, num_vertices: int, edge_prob: float = 0.5) -> Graph:
    adj = (rng.random((num_vertices, num_vertices)) < edge_prob).astype(np.uint8)
    adj = np.triu(adj, 1)
    return Graph(num_vertices, adj | adj.T)


def random_bipartite_graph(
    rng: np.random.Generator, bip: Bipartition, edge_prob: float = 0.5
) -> Graph:
    m = bip.size
    adj = np.zeros((m, m), dtype=np.uint8)
    for a in bip.alice.indices:
        for b in bip.bob.indices:
            if rng.random() < edge_prob:
                adj[a, b] = adj[b, a] = 1
    return Graph(m, adj)


def random_local_cliffords(rng: np.random.Generator, num_qubits: int) -> LocalCliffordRecord:
    picks = rng.integers(0, len(_GL2), size=num_qubits)
    return LocalCliffordRecord(np.stack([_GL2[i] for i in picks]))


def random_state_group(rng: np.random.Generator, num_qubits: int) -> PauliSubgroup:
    """Random stabilizer-state group (isotropic, full rank)."""
    graph = random_graph(rng, num_qubits)
    record = random_local_cliffords(rng, num_qubits)
    return record.apply_to(graph_state_group(graph))


def random_isotropic_group(
    rng: np.random.Generator, num_qubits: int, rank: int | None = None
) -> PauliSubgroup:
    """Random commuting subgroup: a random-rank subspace of a random state."""
    if rank is None:
        rank = int(rng.integers(1, num_qubits + 1))
    if not 0 < rank <= num_qubits:
        raise ValueError(f"rank {rank} out of range for {num_qubits} qubits")
    state = random_state_group(rng, num_qubits)
    while True:
        combos = (rng.random((rank, num_qubits)) < 0.5).astype(np.uint8)
        if gf2.rank(combos) == rank:
            break
    return PauliSubgroup(num_qubits, gf2.matmul(combos, state.canonical_matrix))


def random_subgroup(
    rng: np.random.Generator, num_qubits: int, num_generators: int | None = None
) -> PauliSubgroup:
    """Random (not necessarily commuting) subgroup."""
    if num_generators is None:
        num_generators = int(rng.integers(1, 2 * num_qubits + 1))
    mat = (rng.random((num_generators, 2 * num_qubits)) < 0.5).astype(np.uint8)
    return PauliSubgroup(num_qubits, mat)


def random_bipartition(
    rng: np.random.Generator, num_qubits: int, k: int | None = None
) -> Bipartition:
    if k is None:
        k = int(rng.integers(1, num_qubits))
    alice = rng.choice(num_qubits, size=k, replace=False)
    return Bipartition.from_alice(num_qubits, (int(a) for a in alice))


def random_distribution(rng: np.random.Generator, num_labels: int) -> np.ndarray:
    raw = rng.random(num_labels) + 1e-3
    return raw / raw.sum()
