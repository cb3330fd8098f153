"""Graph states, code-to-state extension, and graph-code conversion.

A graph state on a simple graph G has one generator per vertex v:
X on v and Z on every neighbour, i.e. tableau [I | adjacency].
Any isotropic group (a stabilizer code) extends to the group of a
state on extra qubits whose contraction recovers it, and from there
converts to a graph state up to single-qubit symplectic rotations.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Iterable

import numpy as np

from . import gf2
from .pauli import PauliString, PauliSubgroup, QubitSubset, symplectic_product

# The six invertible 2x2 GF(2) matrices: every phase-free single-qubit
# symplectic action is one of these, acting on the row vector (x, z).
_GL2 = tuple(
    np.array(m, dtype=np.uint8)
    for m in (
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[1, 1], [0, 1]],
        [[1, 0], [1, 1]],
        [[0, 1], [1, 1]],
        [[1, 1], [1, 0]],
    )
)


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph as a symmetric GF(2) adjacency matrix."""

    num_vertices: int
    adjacency: np.ndarray

    def __post_init__(self):
        adj = gf2.as_gf2(self.adjacency)
        if adj.shape != (self.num_vertices, self.num_vertices):
            raise ValueError(
                f"adjacency has shape {adj.shape}, expected "
                f"({self.num_vertices}, {self.num_vertices})"
            )
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.diagonal(adj).any():
            raise ValueError("adjacency matrix must have zero diagonal")
        adj = adj.copy()
        adj.flags.writeable = False
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = np.zeros((num_vertices, num_vertices), dtype=np.uint8)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            adj[u, v] = adj[v, u] = 1
        return cls(num_vertices, adj)

    @classmethod
    def complete(cls, num_vertices: int) -> "Graph":
        adj = np.ones((num_vertices, num_vertices), dtype=np.uint8)
        np.fill_diagonal(adj, 0)
        return cls(num_vertices, adj)

    @classmethod
    def star(cls, num_leaves: int, center: int = 0) -> "Graph":
        return cls.from_edges(
            num_leaves + 1,
            [(center, v) for v in range(num_leaves + 1) if v != center],
        )

    @classmethod
    def edgeless(cls, num_vertices: int) -> "Graph":
        return cls(num_vertices, np.zeros((num_vertices, num_vertices), dtype=np.uint8))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.num_vertices):
            for v in range(u + 1, self.num_vertices):
                if self.adjacency[u, v]:
                    out.append((u, v))
        return out

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(int(w) for w in np.nonzero(self.adjacency[v])[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.num_vertices == other.num_vertices and np.array_equal(
            self.adjacency, other.adjacency
        )

    def __hash__(self) -> int:
        return hash((self.num_vertices, self.adjacency.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(num_vertices={self.num_vertices}, edges={self.edges()})"


@dataclass(frozen=True)
class Bipartition:
    """Split of the qubits into Alice's part A (size k) and Bob's B (size n)."""

    alice: QubitSubset
    bob: QubitSubset

    def __post_init__(self):
        if self.alice.size != self.bob.size:
            raise ValueError("A and B refer to different register sizes")
        if set(self.alice.indices) & set(self.bob.indices):
            raise ValueError("A and B overlap")
        if len(self.alice) + len(self.bob) != self.alice.size:
            raise ValueError("A and B must cover all qubits")

    @classmethod
    def from_alice(cls, size: int, alice_indices: Iterable[int]) -> "Bipartition":
        a = QubitSubset(size, tuple(alice_indices))
        return cls(a, a.complement())

    @property
    def k(self) -> int:
        return len(self.alice)

    @property
    def n(self) -> int:
        return len(self.bob)

    @property
    def size(self) -> int:
        return self.alice.size


def graph_state_group(graph: Graph) -> PauliSubgroup:
    """Stabilizer group of the graph state: tableau [I | adjacency]."""
    m = graph.num_vertices
    mat = np.concatenate([np.eye(m, dtype=np.uint8), graph.adjacency], axis=1)
    return PauliSubgroup(m, mat)


def biadjacency(graph: Graph, bip: Bipartition) -> np.ndarray:
    """k x n submatrix of the adjacency with rows in A, columns in B."""
    if bip.size != graph.num_vertices:
        raise ValueError("bipartition does not match the graph's vertex count")
    rows = np.array(bip.alice.indices, dtype=int)
    cols = np.array(bip.bob.indices, dtype=int)
    return graph.adjacency[np.ix_(rows, cols)].copy()


def restrict_to_bipartite(graph: Graph, bip: Bipartition) -> Graph:
    """Drop all edges internal to A or internal to B."""
    if bip.size != graph.num_vertices:
        raise ValueError("bipartition does not match the graph's vertex count")
    side = np.zeros(graph.num_vertices, dtype=bool)
    for q in bip.alice.indices:
        side[q] = True
    cross = side[:, None] ^ side[None, :]
    return Graph(graph.num_vertices, graph.adjacency & cross)


@dataclass(frozen=True, eq=False)
class LocalCliffordRecord:
    """Per-qubit 2x2 invertible GF(2) blocks acting on (x, z) column pairs."""

    blocks: np.ndarray  # shape (m, 2, 2)

    def __post_init__(self):
        arr = np.asarray(self.blocks, dtype=np.uint8) & 1
        if arr.ndim != 3 or arr.shape[1:] != (2, 2):
            raise ValueError(f"blocks have shape {arr.shape}, expected (m, 2, 2)")
        for q, block in enumerate(arr):
            if (block[0, 0] & block[1, 1]) ^ (block[0, 1] & block[1, 0]) != 1:
                raise ValueError(f"block for qubit {q} is singular over GF(2)")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "blocks", arr)

    @classmethod
    def identity(cls, num_qubits: int) -> "LocalCliffordRecord":
        return cls(np.tile(np.eye(2, dtype=np.uint8), (num_qubits, 1, 1)))

    @property
    def num_qubits(self) -> int:
        return self.blocks.shape[0]

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.blocks, self.identity(self.num_qubits).blocks))

    def inverse(self) -> "LocalCliffordRecord":
        # 2x2 GF(2) inverse: swap diagonal, keep off-diagonal (det is 1).
        inv = self.blocks.copy()
        inv[:, 0, 0], inv[:, 1, 1] = self.blocks[:, 1, 1], self.blocks[:, 0, 0]
        return LocalCliffordRecord(inv)

    def apply_to(self, group: PauliSubgroup) -> PauliSubgroup:
        """Transform each qubit's (x, z) column pair by its block."""
        m = group.num_qubits
        if m != self.num_qubits:
            raise ValueError(f"record is for {self.num_qubits} qubits, group has {m}")
        mat = group.canonical_matrix.copy()
        for q in range(m):
            x, z = mat[:, q].copy(), mat[:, m + q].copy()
            b = self.blocks[q]
            mat[:, q] = (x & b[0, 0]) ^ (z & b[1, 0])
            mat[:, m + q] = (x & b[0, 1]) ^ (z & b[1, 1])
        return PauliSubgroup(m, gf2.canonical(mat))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalCliffordRecord):
            return NotImplemented
        return np.array_equal(self.blocks, other.blocks)

    def __hash__(self) -> int:
        return hash(self.blocks.tobytes())


@dataclass(frozen=True)
class SymplecticCompletion:
    """Generating set of dual(H) split as {x_1..x_k, x_{k+1}..x_n, z_1..z_k}.

    The tail x operators generate H itself; x_i and z_j anticommute iff
    i == j and every other pair commutes.
    """

    x_ops: tuple[PauliString, ...]
    z_ops: tuple[PauliString, ...]

    @property
    def k(self) -> int:
        return len(self.z_ops)

    def group_generators(self) -> tuple[PauliString, ...]:
        return self.x_ops[self.k :]


@dataclass(frozen=True)
class ExtensionResult:
    """A stabilizer state whose contraction over ``new_qubits`` is the input code."""

    state: PauliSubgroup
    new_qubits: QubitSubset


@dataclass(frozen=True)
class GraphCodeResult:
    graph: Graph
    new_qubits: QubitSubset
    record: LocalCliffordRecord


def _require_isotropic(h: PauliSubgroup, what: str):
    if not h.is_isotropic:
        raise ValueError(f"{what} requires a commuting (isotropic) group")


def symplectic_completion(h: PauliSubgroup) -> SymplecticCompletion:
    """Hyperbolic basis of dual(h) seeded with h's own generators.

    Works by symplectic Gram-Schmidt on the part of dual(h) outside h:
    the symplectic form is non-degenerate there, so it splits into k
    anticommuting (x_i, z_i) pairs that commute with everything else.
    """
    _require_isotropic(h, "symplectic completion")
    m = h.num_qubits
    h_gens = [row.copy() for row in h.canonical_matrix]
    k = m - h.rank

    ech = gf2.Echelon(2 * m, rows=h.canonical_matrix)
    unpaired: list[np.ndarray] = []
    for row in h.dual().canonical_matrix:
        if ech.add(row):
            unpaired.append(row.copy())
    assert len(unpaired) == 2 * k

    def sym(u: np.ndarray, v: np.ndarray) -> int:
        return int((int(u[:m] @ v[m:]) + int(u[m:] @ v[:m])) & 1)

    x_pairs: list[np.ndarray] = []
    z_pairs: list[np.ndarray] = []
    while unpaired:
        u = unpaired.pop(0)
        partner = next(i for i, w in enumerate(unpaired) if sym(u, w))
        w = unpaired.pop(partner)
        for v in unpaired:
            if sym(v, w):
                v ^= u
            if sym(v, u):
                v ^= w
        x_pairs.append(u)
        z_pairs.append(w)

    x_ops = tuple(PauliString.from_bits(v) for v in x_pairs + h_gens)
    z_ops = tuple(PauliString.from_bits(v) for v in z_pairs)
    return SymplecticCompletion(x_ops, z_ops)


def extend_with_completion(
    h: PauliSubgroup, completion: SymplecticCompletion
) -> ExtensionResult:
    """Attach one new qubit per (x_i, z_i) pair: X on it for x_i, Z for z_i.

    New qubits are appended after the existing ones (position n + i for
    pair i) and reported in ``new_qubits``.
    """
    n = h.num_qubits
    k = completion.k
    total = n + k
    rows = []
    for i, x in enumerate(completion.x_ops):
        row = np.zeros(2 * total, dtype=np.uint8)
        row[:n] = x.x_bits
        row[total : total + n] = x.z_bits
        if i < k:
            row[n + i] = 1  # X on new qubit i
        rows.append(row)
    for i, z in enumerate(completion.z_ops):
        row = np.zeros(2 * total, dtype=np.uint8)
        row[:n] = z.x_bits
        row[total : total + n] = z.z_bits
        row[total + n + i] = 1  # Z on new qubit i
        rows.append(row)
    state = PauliSubgroup(total, np.stack(rows))
    assert state.rank == total and state.is_isotropic
    return ExtensionResult(state, QubitSubset(total, tuple(range(n, total))))


def extend_to_state(h: PauliSubgroup) -> ExtensionResult:
    """Embed a code as the contraction of a stabilizer state (k new qubits)."""
    _require_isotropic(h, "extension to a state")
    return extend_with_completion(h, symplectic_completion(h))


def to_graph_state(state: PauliSubgroup) -> tuple[Graph, LocalCliffordRecord]:
    """Reduce a stabilizer-state group to graph form [I | adjacency].

    Gaussian elimination first; qubits whose X column lacks a pivot get
    an X/Z column swap, after which the X block is invertible; a final
    Z-column shear clears the diagonal.  The returned record maps the
    graph-state group back onto the input: record.apply_to(graph group)
    has the same row span as ``state``.
    """
    _require_isotropic(state, "graph-state conversion")
    m = state.num_qubits
    if state.rank != m:
        raise ValueError(
            f"group of rank {state.rank} on {m} qubits is not a state (need rank {m})"
        )
    mat = state.canonical_matrix.copy()
    blocks = np.tile(np.eye(2, dtype=np.uint8), (m, 1, 1))

    def column_op(q: int, op: np.ndarray):
        x, z = mat[:, q].copy(), mat[:, m + q].copy()
        mat[:, q] = (x & op[0, 0]) ^ (z & op[1, 0])
        mat[:, m + q] = (x & op[0, 1]) ^ (z & op[1, 1])
        blocks[q] = gf2.matmul(blocks[q], op)

    swap = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    shear = np.array([[1, 1], [0, 1]], dtype=np.uint8)

    _, _, x_pivots = gf2.rref(mat[:, :m])
    for q in range(m):
        if q not in x_pivots:
            column_op(q, swap)
    x_inv = gf2.inverse(mat[:, :m])
    mat = gf2.matmul(x_inv, mat)  # row operations: X block becomes I
    for q in range(m):
        if mat[q, m + q]:
            column_op(q, shear)

    adj = mat[:, m:]
    graph = Graph(m, adj)
    record = LocalCliffordRecord(blocks).inverse()
    return graph, record


def code_to_graph_code(h: PauliSubgroup) -> GraphCodeResult:
    """Present a code as the contraction of a graph state.

    Guarantee: contract(record.apply_to(graph state group), new_qubits)
    equals the input group.
    """
    extension = extend_to_state(h)
    graph, record = to_graph_state(extension.state)
    return GraphCodeResult(graph, extension.new_qubits, record)


BUILTIN_NAMES = ("bell", "rep7", "five_qubit", "c422_a", "c422_b", "c833")

# [4,2,2]-code graphs: two "diamond" vertices (1, 2) over a 4-cycle
# (3-4-5-6); each diamond attaches to an antipodal pair of the cycle.
# Variant b adds the diamond-diamond edge; the marginal on the cycle
# qubits is unchanged by it.
_C422_EDGES = [(2, 3), (3, 4), (4, 5), (5, 2), (0, 3), (0, 5), (1, 2), (1, 4)]


@dataclass(frozen=True)
class BuiltinSpec:
    """A named example state: either a graph or a generator-defined code."""

    name: str
    description: str
    graph: Graph | None = None
    bipartition: Bipartition | None = None
    code: PauliSubgroup | None = None

    def as_graph_state(self) -> tuple[Graph, Bipartition]:
        """Resolve to a graph plus bipartition.

        Generator-defined codes are extended to a state and converted to
        graph form; Alice's part is the set of appended qubits.
        """
        if self.graph is not None:
            assert self.bipartition is not None
            return self.graph, self.bipartition
        assert self.code is not None
        result = code_to_graph_code(self.code)
        bip = Bipartition.from_alice(result.graph.num_vertices, result.new_qubits.indices)
        return result.graph, bip


def _load_code_data(filename: str) -> PauliSubgroup:
    from .pauli import subgroup_from_text

    text = resources.files("stabci").joinpath(f"data/{filename}").read_text()
    return subgroup_from_text(text)


def builtin(name: str) -> BuiltinSpec:
    """Named example states used by the command-line tool and tests."""
    if name == "bell":
        return BuiltinSpec(
            name,
            "Bell pair: complete graph on 2 vertices, Alice holds vertex 1",
            graph=Graph.complete(2),
            bipartition=Bipartition.from_alice(2, [0]),
        )
    if name == "rep7":
        return BuiltinSpec(
            name,
            "7-qubit repetition code state: star graph, Alice at the center",
            graph=Graph.star(7, center=0),
            bipartition=Bipartition.from_alice(8, [0]),
        )
    if name == "c422_a":
        return BuiltinSpec(
            name,
            "[4,2,2]-code graph state without the diamond-diamond edge",
            graph=Graph.from_edges(6, _C422_EDGES),
            bipartition=Bipartition.from_alice(6, [0, 1]),
        )
    if name == "c422_b":
        return BuiltinSpec(
            name,
            "[4,2,2]-code graph state with the diamond-diamond edge",
            graph=Graph.from_edges(6, _C422_EDGES + [(0, 1)]),
            bipartition=Bipartition.from_alice(6, [0, 1]),
        )
    if name == "five_qubit":
        return BuiltinSpec(
            name,
            "five-qubit code, generator-defined",
            code=_load_code_data("five_qubit.txt"),
        )
    if name == "c833":
        return BuiltinSpec(
            name,
            "[8,3,3] code, generator-defined",
            code=_load_code_data("c833.txt"),
        )
    raise ValueError(f"unknown builtin {name!r}; choose from {BUILTIN_NAMES}")


def parse_graph_text(text: str) -> tuple[Graph, Bipartition | None]:
    """Graph file format: first line is the vertex count, then one
    1-based "u v" edge per line; an optional "A: 1 3" line names Alice's
    vertices.  Blank lines and '#' comments are ignored."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty graph file")
    try:
        m = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the vertex count, got {lines[0]!r}") from None
    edges = []
    alice: list[int] | None = None
    for line in lines[1:]:
        if line.upper().startswith("A:"):
            alice = [int(tok) for tok in line[2:].replace(",", " ").split()]
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (1 <= u <= m and 1 <= v <= m):
            raise ValueError(f"edge {u} {v} out of range 1..{m}")
        edges.append((u - 1, v - 1))
    graph = Graph.from_edges(m, edges)
    bip = None
    if alice is not None:
        bip = Bipartition.from_alice(m, [a - 1 for a in alice])
    return graph, bip


def graph_to_text(graph: Graph, bip: Bipartition | None = None) -> str:
    lines = [str(graph.num_vertices)]
    lines += [f"{u + 1} {v + 1}" for u, v in graph.edges()]
    if bip is not None:
        lines.append("A: " + " ".join(str(i) for i in bip.alice.to_1based()))
    return "\n".join(lines) + "\n"
