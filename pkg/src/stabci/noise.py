"""Pauli channels, error bases, coset weight tables and syndrome
distributions.

Exhaustive enumeration is done on bit-packed integers: bit q of a packed
word is the X bit of qubit q, bit m+q its Z bit.  Coset labels are the
coordinates of a Pauli in the greedy error basis; weight counts are kept
as exact integers so results are deterministic and independent of any
partitioning of the enumeration.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .errors import EnumerationCapError
from .pauli import PauliString, PauliSubgroup, QubitSubset

DEFAULT_ENUM_CAP = 1 << 28
ENUM_CAP_ENV = "STABCI_MAX_ENUM"

_CHUNK = 1 << 22

# Letter order used during enumeration: index x + 2z -> I, X, Z, Y.
_ENUM_LETTER_ORDER = (0, 1, 3, 2)  # positions into (pI, pX, pY, pZ) rows


def resolve_enum_cap(cap: int | None = None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get(ENUM_CAP_ENV)
    if env:
        return int(env)
    return DEFAULT_ENUM_CAP


def _check_cap(work: int, cap: int | None, what: str):
    limit = resolve_enum_cap(cap)
    if work > limit:
        raise EnumerationCapError(
            f"{what} needs {work} enumeration steps, cap is {limit} "
            f"(raise via {ENUM_CAP_ENV} or an explicit cap argument)"
        )


def _pack_rows(mat: np.ndarray) -> np.ndarray:
    """Pack each GF(2) row into a uint64 (bit j = column j)."""
    mat = gf2.as_gf2(mat)
    if mat.shape[1] > 63:
        raise EnumerationCapError(f"{mat.shape[1]} columns exceed packed-word width")
    weights = (np.uint64(1) << np.arange(mat.shape[1], dtype=np.uint64))
    return (mat.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


# ---------------------------------------------------------------------------
# Pauli channels


@dataclass(frozen=True, eq=False)
class PauliChannelSpec:
    """Per-qubit Pauli error distribution with an optional support mask.

    ``table`` rows are (p_I, p_X, p_Y, p_Z); qubits outside ``support``
    are left untouched (their rows are forced to the identity).
    """

    num_qubits: int
    table: np.ndarray
    support: QubitSubset
    label: str

    def __post_init__(self):
        tab = np.asarray(self.table, dtype=np.float64)
        if tab.shape != (self.num_qubits, 4):
            raise ValueError(f"table has shape {tab.shape}, expected ({self.num_qubits}, 4)")
        if self.support.size != self.num_qubits:
            raise ValueError("support mask register size mismatch")
        tab = tab.copy()
        outside = [q for q in range(self.num_qubits) if q not in self.support]
        tab[outside] = (1.0, 0.0, 0.0, 0.0)
        if tab.min() < -1e-15:
            raise ValueError("channel probabilities must be nonnegative")
        tab[tab < 0] = 0.0
        sums = tab.sum(axis=1)
        if np.abs(sums - 1.0).max() > 1e-12:
            raise ValueError("each per-qubit distribution must sum to 1 (within 1e-12)")
        tab.flags.writeable = False
        object.__setattr__(self, "table", tab)

    @classmethod
    def uniform_depolarizing(
        cls, num_qubits: int, lam: float, support: QubitSubset | None = None
    ) -> "PauliChannelSpec":
        if not 0.0 <= lam <= 1.0:
            raise ValueError(f"depolarizing parameter {lam} outside [0, 1]")
        t = (1.0 - lam) / 4.0
        row = (lam + t, t, t, t)
        support = support if support is not None else QubitSubset.full(num_qubits)
        label = f"depol:{lam:.17g}" + _mask_suffix(support)
        return cls(num_qubits, np.tile(row, (num_qubits, 1)), support, label)

    @classmethod
    def dephasing(
        cls, num_qubits: int, p: float, support: QubitSubset | None = None
    ) -> "PauliChannelSpec":
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"dephasing parameter {p} outside [0, 1]")
        row = (p, 0.0, 0.0, 1.0 - p)
        support = support if support is not None else QubitSubset.full(num_qubits)
        label = f"dephase:{p:.17g}" + _mask_suffix(support)
        return cls(num_qubits, np.tile(row, (num_qubits, 1)), support, label)

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[float]],
        support: QubitSubset | None = None,
        label: str | None = None,
    ) -> "PauliChannelSpec":
        tab = np.asarray(rows, dtype=np.float64)
        m = tab.shape[0]
        support = support if support is not None else QubitSubset.full(m)
        if label is None:
            label = "pauli:" + ";".join(
                ",".join(f"{v:.17g}" for v in row) for row in tab
            ) + _mask_suffix(support)
        return cls(m, tab, support, label)

    @classmethod
    def identity(cls, num_qubits: int) -> "PauliChannelSpec":
        return cls.uniform_depolarizing(num_qubits, 1.0)

    @cached_property
    def depolarizing_param(self) -> float | None:
        """The uniform depolarizing parameter, if this channel is exactly
        uniform depolarizing on all qubits; else None."""
        if len(self.support) != self.num_qubits:
            return None
        row = self.table[0]
        if not np.allclose(self.table, row[None, :], rtol=0.0, atol=1e-14):
            return None
        t = row[1]
        if not np.allclose(row[1:], t, rtol=0.0, atol=1e-14):
            return None
        lam = 1.0 - 4.0 * t
        if abs(row[0] - (lam + t)) > 1e-12 or not -1e-12 <= lam <= 1 + 1e-12:
            return None
        return float(min(max(lam, 0.0), 1.0))

    @cached_property
    def is_z_only(self) -> bool:
        return bool(np.all(self.table[:, 1:3] == 0.0))

    @cached_property
    def dephasing_param(self) -> float | None:
        if not self.is_z_only or len(self.support) != self.num_qubits:
            return None
        row = self.table[0]
        if not np.allclose(self.table, row[None, :], rtol=0.0, atol=1e-14):
            return None
        return float(row[0])

    def probability(self, p: PauliString) -> float:
        """Probability that the channel applies exactly ``p``."""
        if p.num_qubits != self.num_qubits:
            raise ValueError(f"size mismatch: {p.num_qubits} vs {self.num_qubits} qubits")
        prob = 1.0
        for q in range(self.num_qubits):
            letter = int(p.x_bits[q]) + 2 * int(p.z_bits[q])
            if q not in self.support:
                if letter:
                    return 0.0
                continue
            prob *= self.table[q, _ENUM_LETTER_ORDER[letter]]
        return prob

    def restrict_to(self, subset: QubitSubset) -> "PauliChannelSpec":
        """The channel induced on ``subset``'s qubits (reindexed)."""
        if subset.size != self.num_qubits:
            raise ValueError("subset register size mismatch")
        keep = list(subset.indices)
        new_support = tuple(
            i for i, q in enumerate(keep) if q in self.support
        )
        return PauliChannelSpec(
            len(keep),
            self.table[keep],
            QubitSubset(len(keep), new_support),
            self.label + "|restricted",
        )

    def mask_to(self, subset: QubitSubset) -> "PauliChannelSpec":
        """Same register, support narrowed to ``subset``."""
        if subset.size != self.num_qubits:
            raise ValueError("subset register size mismatch")
        new_support = QubitSubset(
            self.num_qubits, tuple(q for q in self.support if q in subset)
        )
        return PauliChannelSpec(self.num_qubits, self.table, new_support, self.label)

    def compose(self, other: "PauliChannelSpec") -> "PauliChannelSpec":
        """Channel applying ``self`` then ``other`` (order is immaterial)."""
        if other.num_qubits != self.num_qubits:
            raise ValueError("cannot compose channels on different registers")
        order = np.array(_ENUM_LETTER_ORDER)
        a = self.table[:, order]  # per-qubit rows in (x + 2z) letter order
        b = other.table[:, order]
        out = np.zeros_like(a)
        for l1 in range(4):
            for l2 in range(4):
                out[:, l1 ^ l2] += a[:, l1] * b[:, l2]
        merged = np.empty_like(out)
        merged[:, order] = out  # back to (pI, pX, pY, pZ) order
        support = QubitSubset(
            self.num_qubits, tuple(sorted(set(self.support) | set(other.support)))
        )
        return PauliChannelSpec(
            self.num_qubits, merged, support, f"{self.label}*{other.label}"
        )

    def describe(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"PauliChannelSpec({self.label!r}, num_qubits={self.num_qubits})"


def _mask_suffix(support: QubitSubset) -> str:
    if len(support) == support.size:
        return ""
    return "@" + ",".join(str(i) for i in support.to_1based())


def pauli_probability(channel: PauliChannelSpec, p: PauliString) -> float:
    return channel.probability(p)


def parse_channel_spec(
    text: str,
    num_qubits: int,
    bob: QubitSubset | None = None,
    alice: QubitSubset | None = None,
) -> PauliChannelSpec:
    """Parse channel syntax: "depol:L", "dephase:P",
    "pauli:pI,pX,pY,pZ[;per-qubit...]", with an optional support suffix
    "@B", "@A" or "@1,3,5" (1-based)."""
    body, _, mask = text.partition("@")
    support = None
    if mask:
        if mask.strip().upper() == "B":
            if bob is None:
                raise ValueError("channel mask '@B' needs a bipartition")
            support = bob
        elif mask.strip().upper() == "A":
            if alice is None:
                raise ValueError("channel mask '@A' needs a bipartition")
            support = alice
        else:
            support = QubitSubset.from_1based(
                num_qubits, (int(tok) for tok in mask.replace(",", " ").split())
            )
    kind, _, arg = body.partition(":")
    kind = kind.strip().lower()
    if kind == "depol":
        return PauliChannelSpec.uniform_depolarizing(num_qubits, float(arg), support)
    if kind == "dephase":
        return PauliChannelSpec.dephasing(num_qubits, float(arg), support)
    if kind == "pauli":
        groups = [g for g in arg.split(";") if g.strip()]
        rows = [tuple(float(v) for v in g.split(",")) for g in groups]
        if any(len(r) != 4 for r in rows):
            raise ValueError(f"each pauli group needs 4 probabilities: {text!r}")
        supp = support if support is not None else QubitSubset.full(num_qubits)
        full = np.tile((1.0, 0.0, 0.0, 0.0), (num_qubits, 1))
        if len(rows) == 1:
            for q in supp:
                full[q] = rows[0]
        elif len(rows) == len(supp):
            for q, row in zip(supp.indices, rows):
                full[q] = row
        else:
            raise ValueError(
                f"got {len(rows)} per-qubit groups for {len(supp)} supported qubits"
            )
        return PauliChannelSpec(num_qubits, full, supp, text)
    raise ValueError(f"unknown channel spec {text!r}")


# ---------------------------------------------------------------------------
# Error bases and syndrome maps


@dataclass(frozen=True)
class ErrorBasis:
    """Standard-basis vectors generating the ambient space modulo a group.

    ``indices`` are 0-based column positions in greedy discovery order;
    coset label bit i is the coordinate of basis vector i.  ``group_key``
    fingerprints the defining group so label spaces can be compared.
    """

    num_columns: int
    indices: tuple[int, ...]
    kind: str  # "pauli" or "classical"
    group_key: bytes

    @property
    def num_labels(self) -> int:
        return 1 << len(self.indices)

    @property
    def num_qubits(self) -> int:
        if self.kind != "pauli":
            raise ValueError("not a Pauli-group basis")
        return self.num_columns // 2

    def indices_1based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.indices)

    def vectors(self) -> np.ndarray:
        out = np.zeros((len(self.indices), self.num_columns), dtype=np.uint8)
        for i, j in enumerate(self.indices):
            out[i, j] = 1
        return out


def _greedy_basis(seed_rows: np.ndarray, n_cols: int, order: Iterable[int]) -> tuple[int, ...]:
    ech = gf2.Echelon(n_cols, rows=seed_rows)
    picked = []
    vec = np.zeros(n_cols, dtype=np.uint8)
    for j in order:
        if ech.rank == n_cols:
            break
        vec[:] = 0
        vec[j] = 1
        if ech.add(vec):
            picked.append(j)
    return tuple(picked)


def build_error_basis(group: PauliSubgroup) -> ErrorBasis:
    """Greedy completion of the group's tableau by standard basis vectors.

    For a stabilizer-state tableau (isotropic, full rank) the Z-block
    columns are scanned first, matching the convention that Z patterns
    label a state's cosets; any other tableau is scanned in plain column
    order.  Deterministic either way.
    """
    m = group.num_qubits
    mat = group.canonical_matrix
    if group.is_isotropic and group.rank == m:
        order = list(range(m, 2 * m)) + list(range(m))
    else:
        order = list(range(2 * m))
    indices = _greedy_basis(mat, 2 * m, order)
    return ErrorBasis(2 * m, indices, "pauli", mat.tobytes())


class _SyndromeMap:
    """Linear map from packed vectors to coset labels for a fixed basis."""

    def __init__(self, matrix: np.ndarray, indices: tuple[int, ...], n_cols: int):
        kernel = gf2.nullspace(gf2.canonical(matrix))
        if kernel.shape[0] != len(indices):
            raise ValueError("basis size does not match the group's corank")
        if len(indices) == 0:
            self.rows = np.zeros((0, n_cols), dtype=np.uint8)
        else:
            mix = gf2.inverse(kernel[:, list(indices)])
            self.rows = gf2.matmul(mix, kernel)
        self.masks = _pack_rows(self.rows) if self.rows.shape[0] else np.zeros(0, np.uint64)
        self.num_labels = 1 << len(indices)

    def labels_of(self, packed: np.ndarray) -> np.ndarray:
        labels = np.zeros(packed.shape, dtype=np.uint32)
        for i, mask in enumerate(self.masks):
            bit = (np.bitwise_count(packed & mask) & np.uint8(1)).astype(np.uint32)
            labels |= bit << np.uint32(i)
        return labels

    def label_of_vector(self, vec: np.ndarray) -> int:
        bits = gf2.matmul(self.rows, vec.reshape(-1, 1)).ravel()
        return int(sum(int(b) << i for i, b in enumerate(bits)))


def syndrome_of(p: PauliString, group: PauliSubgroup, basis: ErrorBasis) -> int:
    """Label of the coset of ``group`` containing ``p`` (coordinates in
    ``basis``: p xor sum(s_i * E_i) lies in the group's row span)."""
    if basis.group_key != group.canonical_matrix.tobytes():
        raise ValueError("error basis was built against a different group")
    smap = _SyndromeMap(group.canonical_matrix, basis.indices, 2 * group.num_qubits)
    return smap.label_of_vector(p.to_bits())


# ---------------------------------------------------------------------------
# Weight tables


@dataclass(frozen=True)
class CosetWeightTable:
    """Exact element counts by (coset label, weight) over all Paulis."""

    counts: np.ndarray  # (num_labels, m + 1) int64
    basis: ErrorBasis
    num_qubits: int
    group_rank: int

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=np.int64).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "counts", arr)

    def to_lists(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.counts]


def _scan_weight_counts(
    smap: _SyndromeMap,
    m: int,
    values: Iterable[tuple[int, int]],
    weight_mask: int,
    shape: tuple[int, int],
) -> np.ndarray:
    """Histogram (label, weight) over packed ranges [start, stop)."""
    counts = np.zeros(shape[0] * shape[1], dtype=np.int64)
    xmask = np.uint64(weight_mask)
    shift = np.uint64(m)
    for start, stop in values:
        v = np.arange(start, stop, dtype=np.uint64)
        w = np.bitwise_count((v | (v >> shift)) & xmask).astype(np.int64)
        labels = smap.labels_of(v).astype(np.int64)
        counts += np.bincount(labels * shape[1] + w, minlength=counts.size)
    return counts.reshape(shape)


def _chunks(total: int, chunk: int = _CHUNK):
    start = 0
    while start < total:
        yield start, min(start + chunk, total)
        start += chunk


def coset_weight_table(
    group: PauliSubgroup,
    method: str = "scan",
    enum_cap: int | None = None,
) -> CosetWeightTable:
    """Exact weight counts for every coset of the group in the full
    Pauli group on its qubits.

    ``method="scan"`` makes a single pass over all 4^m Paulis;
    ``method="span"`` enumerates the group's row span once per coset
    representative.  Both produce identical tables.
    """
    m = group.num_qubits
    basis = build_error_basis(group)
    smap = _SyndromeMap(group.canonical_matrix, basis.indices, 2 * m)
    total = 1 << (2 * m)
    _check_cap(total, enum_cap, f"coset table over {m} qubits")
    _check_cap(basis.num_labels * (m + 1), enum_cap, "coset table size")
    shape = (basis.num_labels, m + 1)
    if method == "scan":
        counts = _scan_weight_counts(smap, m, _chunks(total), (1 << m) - 1, shape)
    elif method == "span":
        gens = _pack_rows(group.canonical_matrix)
        span = np.zeros(1, dtype=np.uint64)
        for g in gens:
            span = np.concatenate([span, span ^ g])
        reps = _pack_rows(basis.vectors()) if basis.indices else np.zeros(0, np.uint64)
        xmask = np.uint64((1 << m) - 1)
        shift = np.uint64(m)
        counts = np.zeros(shape, dtype=np.int64)
        for label in range(basis.num_labels):
            rep = np.uint64(0)
            for i, r in enumerate(reps):
                if (label >> i) & 1:
                    rep ^= r
            coset = span ^ rep
            w = np.bitwise_count((coset | (coset >> shift)) & xmask).astype(np.int64)
            counts[label] = np.bincount(w, minlength=m + 1)
    else:
        raise ValueError(f"unknown method {method!r}")
    return CosetWeightTable(counts, basis, m, group.rank)


def _z_weight_table(
    group: PauliSubgroup, enum_cap: int | None = None
) -> tuple[np.ndarray, ErrorBasis]:
    """Weight counts by coset over Z-type strings only."""
    m = group.num_qubits
    basis = build_error_basis(group)
    smap = _SyndromeMap(group.canonical_matrix, basis.indices, 2 * m)
    total = 1 << m
    _check_cap(total, enum_cap, f"Z-string table over {m} qubits")
    counts = np.zeros(basis.num_labels * (m + 1), dtype=np.int64)
    for start, stop in _chunks(total):
        z = np.arange(start, stop, dtype=np.uint64)
        v = z << np.uint64(m)
        w = np.bitwise_count(z).astype(np.int64)
        labels = smap.labels_of(v).astype(np.int64)
        counts += np.bincount(labels * (m + 1) + w, minlength=counts.size)
    return counts.reshape(basis.num_labels, m + 1), basis


def _classical_weight_table(
    gen_matrix, enum_cap: int | None = None
) -> tuple[np.ndarray, ErrorBasis]:
    """Weight counts by coset of a classical code's row span in F_2^n."""
    gmat = gf2.as_gf2(gen_matrix)
    n = gmat.shape[1]
    canon = gf2.canonical(gmat)
    indices = _greedy_basis(canon, n, range(n))
    basis = ErrorBasis(n, indices, "classical", canon.tobytes())
    smap = _SyndromeMap(canon, indices, n)
    total = 1 << n
    _check_cap(total, enum_cap, f"classical syndrome table over {n} bits")
    counts = np.zeros(basis.num_labels * (n + 1), dtype=np.int64)
    for start, stop in _chunks(total):
        z = np.arange(start, stop, dtype=np.uint64)
        w = np.bitwise_count(z).astype(np.int64)
        labels = smap.labels_of(z).astype(np.int64)
        counts += np.bincount(labels * (n + 1) + w, minlength=counts.size)
    return counts.reshape(basis.num_labels, n + 1), basis


def weight_enumerator_eval(weights: Sequence[int], x: float, y: float) -> float:
    """Evaluate sum_w W_w x^(n-w) y^w in extended precision."""
    w = np.asarray(weights, dtype=np.int64)
    n = w.size - 1
    xs = np.power(np.longdouble(x), np.arange(n, -1, -1))
    ys = np.power(np.longdouble(y), np.arange(0, n + 1))
    return float((w * xs * ys).sum(dtype=np.longdouble))


# ---------------------------------------------------------------------------
# Syndrome distributions


@dataclass(frozen=True, eq=False)
class SyndromeDistribution:
    """Probability vector over coset labels of a fixed error basis."""

    probs: np.ndarray
    basis: ErrorBasis

    def __post_init__(self):
        arr = np.asarray(self.probs, dtype=np.float64).copy()
        if arr.shape != (self.basis.num_labels,):
            raise ValueError(
                f"got {arr.shape[0]} probabilities for {self.basis.num_labels} labels"
            )
        if arr.min() < -1e-9:
            raise ValueError(f"negative probability {arr.min()}")
        arr[arr < 0.0] = 0.0
        total = arr.sum()
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {total}, not 1 (within 1e-10)")
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    @property
    def num_labels(self) -> int:
        return self.probs.size

    def to_json_dict(self, weight_counts: CosetWeightTable | None = None) -> dict:
        out = {
            "basis": list(self.basis.indices_1based()),
            "probs": [float(v) for v in self.probs],
        }
        if weight_counts is not None:
            out["weight_counts"] = weight_counts.to_lists()
        return out


def _distribution_from_counts(
    counts: np.ndarray, basis: ErrorBasis, weight_probs: np.ndarray, norm: float
) -> SyndromeDistribution:
    probs = (counts.astype(np.longdouble) @ weight_probs) / np.longdouble(norm)
    return SyndromeDistribution(probs.astype(np.float64), basis)


def depolarizing_weight_vector(m: int, lam: float) -> np.ndarray:
    """(1+3L)^(m-w) (1-L)^w for w = 0..m, in extended precision."""
    w = np.arange(m + 1)
    return np.power(np.longdouble(1 + 3 * lam), m - w) * np.power(
        np.longdouble(1 - lam), w
    )


def dephasing_weight_vector(m: int, p: float) -> np.ndarray:
    """p^(m-w) (1-p)^w for w = 0..m: probability of a given Z pattern of
    weight w under per-qubit dephasing that applies Z with probability 1-p."""
    w = np.arange(m + 1)
    return np.power(np.longdouble(p), m - w) * np.power(np.longdouble(1 - p), w)


def distribution_from_coset_table(
    table: CosetWeightTable, lam: float
) -> SyndromeDistribution:
    """Uniform-depolarizing syndrome distribution from exact weight counts."""
    m = table.num_qubits
    return _distribution_from_counts(
        table.counts, table.basis, depolarizing_weight_vector(m, lam), 4.0**m
    )


def syndrome_distribution(
    group: PauliSubgroup,
    channel: PauliChannelSpec,
    method: str = "auto",
    enum_cap: int | None = None,
) -> SyndromeDistribution:
    """Distribution over cosets of ``group`` induced by the channel.

    Dispatch: exact weight-enumerator evaluation for uniform depolarizing
    on all qubits, Z-string enumeration for purely dephasing channels,
    and a general supported-Pauli enumeration otherwise.  All paths agree
    wherever they overlap.
    """
    m = group.num_qubits
    if channel.num_qubits != m:
        raise ValueError(f"channel acts on {channel.num_qubits} qubits, group on {m}")
    if method == "auto":
        if channel.depolarizing_param is not None:
            method = "weight-enumerator"
        elif channel.is_z_only:
            method = "z-enumeration"
        else:
            method = "general"
    if method == "weight-enumerator":
        lam = channel.depolarizing_param
        if lam is None:
            raise ValueError("weight-enumerator path needs uniform depolarizing on all qubits")
        return distribution_from_coset_table(
            coset_weight_table(group, enum_cap=enum_cap), lam
        )
    if method == "z-enumeration":
        if not channel.is_z_only:
            raise ValueError("Z-enumeration path needs a dephasing-type channel")
        return _zonly_distribution(group, channel, enum_cap)
    if method == "general":
        return _general_distribution(group, channel, enum_cap)
    raise ValueError(f"unknown method {method!r}")


def _zonly_distribution(
    group: PauliSubgroup, channel: PauliChannelSpec, enum_cap: int | None
) -> SyndromeDistribution:
    m = group.num_qubits
    basis = build_error_basis(group)
    smap = _SyndromeMap(group.canonical_matrix, basis.indices, 2 * m)
    supp = list(channel.support.indices)
    s = len(supp)
    _check_cap(1 << s, enum_cap, f"Z-string enumeration over {s} qubits")
    probs = np.zeros(basis.num_labels, dtype=np.float64)
    p_i = channel.table[supp, 0]
    p_z = channel.table[supp, 3]
    for start, stop in _chunks(1 << s):
        idx = np.arange(start, stop, dtype=np.uint64)
        v = np.zeros(idx.shape, dtype=np.uint64)
        weight = np.ones(idx.shape, dtype=np.float64)
        for j, q in enumerate(supp):
            bit = (idx >> np.uint64(j)) & np.uint64(1)
            v |= bit << np.uint64(m + q)
            weight *= np.where(bit.astype(bool), p_z[j], p_i[j])
        labels = smap.labels_of(v)
        probs += np.bincount(labels, weights=weight, minlength=basis.num_labels)
    return SyndromeDistribution(probs, basis)


def _general_distribution(
    group: PauliSubgroup, channel: PauliChannelSpec, enum_cap: int | None
) -> SyndromeDistribution:
    m = group.num_qubits
    basis = build_error_basis(group)
    smap = _SyndromeMap(group.canonical_matrix, basis.indices, 2 * m)
    supp = list(channel.support.indices)
    s = len(supp)
    _check_cap(1 << (2 * s), enum_cap, f"Pauli enumeration over {s} qubits")
    letter_probs = channel.table[:, list(_ENUM_LETTER_ORDER)]  # (m, 4) in x+2z order
    probs = np.zeros(basis.num_labels, dtype=np.float64)
    for start, stop in _chunks(1 << (2 * s)):
        idx = np.arange(start, stop, dtype=np.uint64)
        v = np.zeros(idx.shape, dtype=np.uint64)
        weight = np.ones(idx.shape, dtype=np.float64)
        for j, q in enumerate(supp):
            letter = ((idx >> np.uint64(2 * j)) & np.uint64(3)).astype(np.int64)
            v |= (letter & 1).astype(np.uint64) << np.uint64(q)
            v |= ((letter >> 1) & 1).astype(np.uint64) << np.uint64(m + q)
            weight *= letter_probs[q][letter]
        labels = smap.labels_of(v)
        probs += np.bincount(labels, weights=weight, minlength=basis.num_labels)
    return SyndromeDistribution(probs, basis)


def classical_syndrome_distribution(
    gen_matrix, flip_prob: float, enum_cap: int | None = None
) -> SyndromeDistribution:
    """Distribution over cosets of a classical code under a binary
    symmetric channel: each bit flips independently with ``flip_prob``."""
    if not 0.0 <= flip_prob <= 1.0:
        raise ValueError(f"flip probability {flip_prob} outside [0, 1]")
    counts, basis = _classical_weight_table(gen_matrix, enum_cap)
    n = counts.shape[1] - 1
    w = np.arange(n + 1)
    wvec = np.power(np.longdouble(flip_prob), w) * np.power(
        np.longdouble(1 - flip_prob), n - w
    )
    return _distribution_from_counts(counts, basis, wvec, 1.0)


# ---------------------------------------------------------------------------
# Convolution of syndrome distributions


def walsh_hadamard_transform(values) -> np.ndarray:
    """In-place-style fast transform over Z_2^c; length must be a power of 2."""
    a = np.asarray(values, dtype=np.float64).copy()
    n = a.size
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of 2")
    h = 1
    while h < n:
        a = a.reshape(-1, 2, h)
        top = a[:, 0, :] + a[:, 1, :]
        bottom = a[:, 0, :] - a[:, 1, :]
        a = np.concatenate([top[:, None, :], bottom[:, None, :]], axis=1).reshape(n)
        h *= 2
    return a


def convolve(
    q1: SyndromeDistribution, q2: SyndromeDistribution, method: str = "wht"
) -> SyndromeDistribution:
    """XOR-convolution: the syndrome distribution of two independent noise
    stages acting in sequence."""
    if q1.basis != q2.basis:
        raise ValueError("label spaces differ: distributions use different error bases")
    n = q1.num_labels
    if method == "wht":
        spec = walsh_hadamard_transform(q1.probs) * walsh_hadamard_transform(q2.probs)
        out = walsh_hadamard_transform(spec) / n
    elif method == "direct":
        _check_cap(n * n, None, "direct XOR-convolution")
        idx = np.arange(n)
        xor = idx[:, None] ^ idx[None, :]
        table = q1.probs[:, None] * q2.probs[None, :]
        out = np.bincount(xor.ravel(), weights=table.ravel(), minlength=n)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SyndromeDistribution(out, q1.basis)
