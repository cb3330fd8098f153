"""Brute-force dense density-matrix reference for small systems.

Builds code projectors with an all-(+1) sign convention, applies Pauli
product channels exactly, and computes marginals and von Neumann
entropies by diagonalization.  Meant for verification at small qubit
counts, not for production runs.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .noise import PauliChannelSpec
from .pauli import PauliString, PauliSubgroup, QubitSubset
from .states import Bipartition, Graph

DENSE_QUBIT_CAP = 12


def _check_dense_cap(m: int):
    if m > DENSE_QUBIT_CAP:
        raise ValueError(
            f"dense reference is capped at {DENSE_QUBIT_CAP} qubits, got {m}"
        )


def _pauli_phases(m: int, x_int: int, z_int: int) -> np.ndarray:
    """Phase of each computational basis column under the Pauli (x, z):
    P|c> = i^{|x&z|} (-1)^{z.c} |c ^ x>."""
    c = np.arange(1 << m, dtype=np.uint64)
    signs = 1.0 - 2.0 * (np.bitwise_count(c & np.uint64(z_int)) & np.uint8(1)).astype(
        np.float64
    )
    return signs * (1j ** int(bin(x_int & z_int).count("1")))


def _bits_to_int(bits: np.ndarray) -> int:
    return int(sum(int(b) << i for i, b in enumerate(bits)))


def pauli_dense(p: PauliString) -> np.ndarray:
    """Dense matrix of a Pauli string (Y carries its usual phases)."""
    _check_dense_cap(p.num_qubits)
    m = p.num_qubits
    x_int = _bits_to_int(p.x_bits)
    z_int = _bits_to_int(p.z_bits)
    dim = 1 << m
    phases = _pauli_phases(m, x_int, z_int)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    cols = np.arange(dim)
    mat[cols ^ x_int, cols] = phases
    return mat


def projector_from_group(group: PauliSubgroup) -> np.ndarray:
    """Trace-one code projector with every generator at eigenvalue +1."""
    if not group.is_isotropic:
        raise ValueError("code projectors need a commuting (isotropic) group")
    m = group.num_qubits
    _check_dense_cap(m)
    dim = 1 << m
    rho = np.eye(dim, dtype=np.complex128)
    cols = np.arange(dim)
    for row in group.canonical_matrix:
        x_int = _bits_to_int(row[:m])
        z_int = _bits_to_int(row[m:])
        phases = _pauli_phases(m, x_int, z_int)
        # (rho + P rho) / 2 with P acting by row permutation and phases
        rho = (rho + phases[cols ^ x_int, None] * rho[cols ^ x_int, :]) / 2.0
    return rho / np.trace(rho).real


def apply_channel(rho: np.ndarray, channel: PauliChannelSpec) -> np.ndarray:
    """Apply each per-qubit Pauli channel as an exact superoperator."""
    m = channel.num_qubits
    _check_dense_cap(m)
    if rho.shape != (1 << m, 1 << m):
        raise ValueError(f"state has shape {rho.shape}, channel acts on {m} qubits")
    dim = 1 << m
    idx = np.arange(dim)
    out = np.array(rho, dtype=np.complex128)
    for q in channel.support.indices:
        p_i, p_x, p_y, p_z = channel.table[q]
        bit = 1 << q
        flipped = idx ^ bit
        sign = 1.0 - 2.0 * ((idx >> q) & 1).astype(np.float64)
        acc = p_i * out
        if p_x:
            acc = acc + p_x * out[np.ix_(flipped, flipped)]
        if p_z:
            acc = acc + p_z * (sign[:, None] * out * sign[None, :])
        if p_y:
            z_conj = sign[:, None] * out * sign[None, :]
            acc = acc + p_y * z_conj[np.ix_(flipped, flipped)]
        out = acc
    return out


def partial_trace(rho: np.ndarray, keep: QubitSubset) -> np.ndarray:
    """Trace out every qubit not in ``keep`` (order of kept qubits is
    preserved)."""
    m = keep.size
    _check_dense_cap(m)
    if rho.shape != (1 << m, 1 << m):
        raise ValueError(f"state has shape {rho.shape}, subset register is {m} qubits")
    tensor = rho.reshape((2,) * (2 * m))
    # Qubit q is tensor axis q (row) and m + q (column): qubit 0 packs
    # into the least-significant bit, so axis order is reversed.
    traced = sorted((q for q in range(m) if q not in keep), reverse=True)
    cur_m = m
    for q in traced:
        axis_row = cur_m - 1 - q
        axis_col = 2 * cur_m - 1 - q
        tensor = np.trace(tensor, axis1=axis_row, axis2=axis_col)
        cur_m -= 1
    dim = 1 << len(keep)
    return tensor.reshape(dim, dim)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits from the eigenvalue spectrum; tiny negative
    eigenvalues are clipped, genuinely negative ones are an error."""
    evals = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)
    if evals.min() < -1e-9:
        raise ValueError(f"state has negative eigenvalue {evals.min()}")
    evals = evals[evals > 1e-12]
    return float(-(evals * np.log2(evals)).sum())


class DenseCIResult(NamedTuple):
    s_b_bits: float
    s_ab_bits: float
    coherent_information_bits: float


def ci_dense(
    state: PauliSubgroup,
    bip: Bipartition,
    channel: PauliChannelSpec,
    scope: str = "all",
) -> DenseCIResult:
    """Coherent information straight from the density matrix."""
    if scope not in ("all", "bob"):
        raise ValueError(f"unknown scope {scope!r}")
    ch = channel if scope == "all" else channel.mask_to(bip.bob)
    rho = apply_channel(projector_from_group(state), ch)
    s_ab = von_neumann_entropy(rho)
    s_b = von_neumann_entropy(partial_trace(rho, bip.bob))
    return DenseCIResult(s_b, s_ab, s_b - s_ab)


def plus_states_density(m: int) -> np.ndarray:
    """Density matrix of m qubits, each in the +1 eigenstate of X."""
    _check_dense_cap(m)
    dim = 1 << m
    return np.full((dim, dim), 1.0 / dim, dtype=np.complex128)


def apply_cz_layer(rho: np.ndarray, graph: Graph) -> np.ndarray:
    """Conjugate by the diagonal entangling layer given by the graph's edges."""
    m = graph.num_vertices
    _check_dense_cap(m)
    idx = np.arange(1 << m, dtype=np.uint64)
    sign = np.ones(1 << m, dtype=np.float64)
    for u, v in graph.edges():
        both = ((idx >> np.uint64(u)) & (idx >> np.uint64(v)) & np.uint64(1)).astype(bool)
        sign[both] *= -1.0
    return sign[:, None] * rho * sign[None, :]


def ci_dense_graph_prep_post(
    graph: Graph,
    bip: Bipartition,
    prep_channel: PauliChannelSpec | None = None,
    post_channel: PauliChannelSpec | None = None,
    scope: str = "all",
) -> DenseCIResult:
    """Dense coherent information for a graph state with noise applied to
    the plus states before the entangling layer and optionally after."""
    if scope not in ("all", "bob"):
        raise ValueError(f"unknown scope {scope!r}")
    rho = plus_states_density(graph.num_vertices)
    if prep_channel is not None:
        rho = apply_channel(rho, prep_channel)
    rho = apply_cz_layer(rho, graph)
    if post_channel is not None:
        ch = post_channel if scope == "all" else post_channel.mask_to(bip.bob)
        rho = apply_channel(rho, ch)
    s_ab = von_neumann_entropy(rho)
    s_b = von_neumann_entropy(partial_trace(rho, bip.bob))
    return DenseCIResult(s_b, s_ab, s_b - s_ab)
