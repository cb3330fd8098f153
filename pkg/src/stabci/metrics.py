"""Entropies and coherent information of noisy stabilizer states.

All entropies are in bits.  The coherent information of a state shared
across a bipartition (A, B) is S(rho_B) - S(rho_AB); for stabilizer
states under Pauli noise both terms reduce to syndrome entropies of
groups derived from the state by deletion/contraction of A.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gf2, noise
from .errors import RankDropError
from .pauli import PauliSubgroup, QubitSubset
from .states import Bipartition, Graph, biadjacency, graph_state_group


def shannon_entropy(dist) -> float:
    """Base-2 entropy of a probability vector; 0*log(0) is 0."""
    if isinstance(dist, noise.SyndromeDistribution):
        p = dist.probs
    else:
        p = np.asarray(dist, dtype=np.float64)
    p = p[p > 0.0]
    return float(-(p * np.log2(p)).sum())


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return float(-p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p))


@dataclass(frozen=True)
class CoherentInformationReport:
    """Result of one coherent-information evaluation."""

    n: int
    k: int
    s_b_bits: float
    s_ab_bits: float
    coherent_information_bits: float
    components: dict[str, float]
    noise: str
    method: str

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "S_B_bits": self.s_b_bits,
            "S_AB_bits": self.s_ab_bits,
            "coherent_information_bits": self.coherent_information_bits,
            "components": dict(self.components),
            "noise": self.noise,
            "method": self.method,
        }


def _report(n, k, s_b, s_ab, components, noise_label, method) -> CoherentInformationReport:
    return CoherentInformationReport(
        n, k, s_b, s_ab, s_b - s_ab, components, noise_label, method
    )


def noisy_projector_entropy(
    group: PauliSubgroup, channel: noise.PauliChannelSpec, enum_cap: int | None = None
) -> float:
    """Entropy of a code projector after Pauli noise.

    The noisy state is a mixture of orthogonal conjugate-code projectors,
    one per coset of the group's dual, each uniform over 2^kappa basis
    states: the entropy is kappa plus the syndrome entropy of the dual.
    """
    if not group.is_isotropic:
        raise ValueError("noisy projector entropy needs a commuting (isotropic) group")
    kappa = group.num_qubits - group.rank
    dist = noise.syndrome_distribution(group.dual(), channel, enum_cap=enum_cap)
    return kappa + shannon_entropy(dist)


def _delete_checked(state: PauliSubgroup, alice: QubitSubset) -> PauliSubgroup:
    deleted, preserved = state.delete(alice)
    if not preserved:
        raise RankDropError(
            "removing Alice's qubits dropped the group rank; the bipartition "
            "does not define k logical qubits for this state"
        )
    return deleted


def _check_state(state: PauliSubgroup, bip: Bipartition):
    if bip.size != state.num_qubits:
        raise ValueError("bipartition register size does not match the state")
    if not state.is_isotropic or state.rank != state.num_qubits:
        raise ValueError("expected the stabilizer group of a state (isotropic, full rank)")


def ci_all_qubit_noise(
    state: PauliSubgroup,
    bip: Bipartition,
    channel: noise.PauliChannelSpec,
    enum_cap: int | None = None,
) -> CoherentInformationReport:
    """Coherent information when noise acts on every qubit (or per the
    channel's own support mask).

    S_AB is the syndrome entropy over cosets of the state's own group;
    S_B is k plus the syndrome entropy over cosets of the deleted group,
    with the channel restricted to B (noise on A cannot reach rho_B).
    """
    _check_state(state, bip)
    n, k = bip.n, bip.k
    deleted = _delete_checked(state, bip.alice)
    s_ab = shannon_entropy(noise.syndrome_distribution(state, channel, enum_cap=enum_cap))
    dist_b = noise.syndrome_distribution(
        deleted, channel.restrict_to(bip.bob), enum_cap=enum_cap
    )
    syn_b = shannon_entropy(dist_b)
    s_b = k + syn_b
    return _report(
        n,
        k,
        s_b,
        s_ab,
        {"syndrome_entropy_b": syn_b, "syndrome_entropy_ab": s_ab},
        channel.describe(),
        "pauli-coset/all",
    )


def ci_bob_only_noise(
    state: PauliSubgroup,
    bip: Bipartition,
    channel: noise.PauliChannelSpec,
    enum_cap: int | None = None,
) -> CoherentInformationReport:
    """Coherent information when noise acts on Bob's qubits only.

    rho_B is unchanged from the all-qubit case; for rho_AB the Paulis
    supported on B fall into cosets of the contracted group, so S_AB is
    that (cheaper) syndrome entropy.
    """
    _check_state(state, bip)
    if any(q not in bip.bob for q in channel.support):
        raise ValueError("channel must be supported on Bob's qubits")
    n, k = bip.n, bip.k
    deleted = _delete_checked(state, bip.alice)
    ch_b = channel.restrict_to(bip.bob)
    contracted = state.contract(bip.alice)
    syn_ab = shannon_entropy(
        noise.syndrome_distribution(contracted, ch_b, enum_cap=enum_cap)
    )
    syn_b = shannon_entropy(noise.syndrome_distribution(deleted, ch_b, enum_cap=enum_cap))
    s_b = k + syn_b
    return _report(
        n,
        k,
        s_b,
        syn_ab,
        {"syndrome_entropy_b": syn_b, "syndrome_entropy_ab": syn_ab},
        channel.describe(),
        "pauli-coset/bob",
    )


def ci_graph_dephasing(
    graph: Graph,
    bip: Bipartition,
    p: float,
    bob_only: bool = False,
    enum_cap: int | None = None,
) -> CoherentInformationReport:
    """Coherent information of a graph state under uniform dephasing,
    via the classical code generated by the biadjacency matrix.

    Edges internal to A or B act as removable local gates, so only the
    cross edges matter: S_B reduces to k plus the syndrome entropy of the
    classical code with generator matrix G_AB under bit-flip probability
    1 - p, and S_AB is just (n + k) (or n, for Bob-only noise) binary
    entropies.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"dephasing parameter {p} outside [0, 1]")
    n, k = bip.n, bip.k
    gab = biadjacency(graph, bip)
    method = "graph-classical/bob" if bob_only else "graph-classical/all"
    if gf2.rank(gab) < k:
        method += "!rank-deficient-biadjacency"
    syn_b = shannon_entropy(
        noise.classical_syndrome_distribution(gab, 1.0 - p, enum_cap=enum_cap)
    )
    per_qubit = binary_entropy(p)
    s_ab = (n if bob_only else n + k) * per_qubit
    s_b = k + syn_b
    return _report(
        n,
        k,
        s_b,
        s_ab,
        {
            "classical_syndrome_entropy": syn_b,
            "per_qubit_dephasing_entropy": per_qubit,
        },
        f"dephase:{p:.17g}" + ("@B" if bob_only else ""),
        method,
    )


def prep_dephasing_param(prep_depol: float = 1.0, prep_dephase: float = 1.0) -> float:
    """Effective dephasing parameter of noisy plus-state preparation.

    Depolarizing with parameter L on a plus state flips it to minus with
    probability (1 - L) / 2, i.e. acts as dephasing with parameter
    (1 + L) / 2; an independent preparation dephasing stage then combines
    by convolving the flip probabilities.
    """
    q_depol = (1.0 - prep_depol) / 2.0
    q_deph = 1.0 - prep_dephase
    q = q_depol + q_deph - 2.0 * q_depol * q_deph
    return 1.0 - q


def ci_graph_prep_and_post(
    graph: Graph,
    bip: Bipartition,
    prep_depol: float = 1.0,
    prep_dephase: float = 1.0,
    post_channel: noise.PauliChannelSpec | None = None,
    enum_cap: int | None = None,
) -> CoherentInformationReport:
    """Coherent information of a graph state with noisy preparation of the
    plus states (before the entangling gates) and optional noise after.

    Preparation depolarizing/dephasing collapses to one effective
    dephasing stage that commutes with the entangling gates; each stage's
    syndrome distribution lives on the same coset space, so the combined
    distribution is their XOR-convolution.
    """
    m = graph.num_vertices
    if bip.size != m:
        raise ValueError("bipartition register size does not match the graph")
    if post_channel is not None:
        full = QubitSubset.full(m)
        support_ok = post_channel.support in (full, bip.bob)
        kind_ok = post_channel.is_z_only or _is_masked_uniform_depol(post_channel)
        if not (support_ok and kind_ok):
            raise ValueError(
                "post-stage channel must be uniform depolarizing or dephasing, "
                "supported on all qubits or on B only"
            )
    n, k = bip.n, bip.k
    p_eff = prep_dephasing_param(prep_depol, prep_dephase)
    state = graph_state_group(graph)
    deleted = _delete_checked(state, bip.alice)

    prep_ab = noise.PauliChannelSpec.dephasing(m, p_eff)
    prep_b = noise.PauliChannelSpec.dephasing(n, p_eff)
    q_ab = noise.syndrome_distribution(state, prep_ab, enum_cap=enum_cap)
    q_b = noise.syndrome_distribution(deleted, prep_b, enum_cap=enum_cap)
    if post_channel is not None:
        post_ab = noise.syndrome_distribution(state, post_channel, enum_cap=enum_cap)
        post_b = noise.syndrome_distribution(
            deleted, post_channel.restrict_to(bip.bob), enum_cap=enum_cap
        )
        q_ab = noise.convolve(q_ab, post_ab)
        q_b = noise.convolve(q_b, post_b)
    s_ab = shannon_entropy(q_ab)
    syn_b = shannon_entropy(q_b)
    s_b = k + syn_b
    post_label = post_channel.describe() if post_channel is not None else "none"
    return _report(
        n,
        k,
        s_b,
        s_ab,
        {
            "syndrome_entropy_b": syn_b,
            "syndrome_entropy_ab": s_ab,
            "prep_effective_dephasing": p_eff,
        },
        f"prep[dephase:{p_eff:.17g}]+post[{post_label}]",
        "prep-post-convolution",
    )


def _is_masked_uniform_depol(channel: noise.PauliChannelSpec) -> bool:
    supp = list(channel.support.indices)
    if not supp:
        return True
    rows = channel.table[supp]
    row = rows[0]
    if not np.allclose(rows, row[None, :], rtol=0.0, atol=1e-14):
        return False
    return bool(np.allclose(row[1:], row[1], rtol=0.0, atol=1e-14))


def sweep(
    state: PauliSubgroup,
    bip: Bipartition,
    family: str,
    grid,
    scope: str = "all",
    graph: Graph | None = None,
    use_reduction: bool = True,
    enum_cap: int | None = None,
) -> list[CoherentInformationReport]:
    """Evaluate coherent information over a grid of noise parameters.

    ``family`` is "depol" or "dephase"; ``scope`` is "all" or "bob".
    Exact weight counts are computed once and re-weighted per grid point.
    When a graph is supplied and the family is dephasing, the classical
    reduction is used unless ``use_reduction`` is false.
    """
    grid = [float(g) for g in grid]
    if any(not 0.0 <= g <= 1.0 for g in grid):
        raise ValueError("grid values must lie in [0, 1]")
    if family not in ("depol", "dephase"):
        raise ValueError(f"unknown noise family {family!r}")
    if scope not in ("all", "bob"):
        raise ValueError(f"unknown scope {scope!r}")
    if not grid:
        return []
    _check_state(state, bip)
    n, k = bip.n, bip.k
    deleted = _delete_checked(state, bip.alice)

    if family == "dephase" and graph is not None and use_reduction:
        return [
            ci_graph_dephasing(graph, bip, p, bob_only=(scope == "bob"), enum_cap=enum_cap)
            for p in grid
        ]

    ab_group = state if scope == "all" else state.contract(bip.alice)
    method = f"pauli-coset/{scope}"
    reports = []
    if family == "depol":
        table_ab = noise.coset_weight_table(ab_group, enum_cap=enum_cap)
        table_b = noise.coset_weight_table(deleted, enum_cap=enum_cap)
        for lam in grid:
            s_ab = shannon_entropy(noise.distribution_from_coset_table(table_ab, lam))
            syn_b = shannon_entropy(noise.distribution_from_coset_table(table_b, lam))
            reports.append(
                _report(
                    n,
                    k,
                    k + syn_b,
                    s_ab,
                    {"syndrome_entropy_b": syn_b, "syndrome_entropy_ab": s_ab},
                    f"depol:{lam:.17g}" + ("@B" if scope == "bob" else ""),
                    method,
                )
            )
    else:
        counts_ab, basis_ab = noise._z_weight_table(ab_group, enum_cap=enum_cap)
        counts_b, basis_b = noise._z_weight_table(deleted, enum_cap=enum_cap)
        for p in grid:
            vec_ab = noise.dephasing_weight_vector(ab_group.num_qubits, p)
            vec_b = noise.dephasing_weight_vector(deleted.num_qubits, p)
            s_ab = shannon_entropy(
                noise._distribution_from_counts(counts_ab, basis_ab, vec_ab, 1.0)
            )
            syn_b = shannon_entropy(
                noise._distribution_from_counts(counts_b, basis_b, vec_b, 1.0)
            )
            reports.append(
                _report(
                    n,
                    k,
                    k + syn_b,
                    s_ab,
                    {"syndrome_entropy_b": syn_b, "syndrome_entropy_ab": s_ab},
                    f"dephase:{p:.17g}" + ("@B" if scope == "bob" else ""),
                    method,
                )
            )
    return reports
