"""Phase-free Pauli strings and Pauli subgroups as GF(2) row spaces.

A Pauli string on m qubits is a pair of m-bit vectors (x, z); the letter
on qubit q is I, X, Z or Y for (x_q, z_q) = (0,0), (1,0), (0,1), (1,1).
A subgroup is the row span of an r x 2m matrix in [X-part | Z-part]
column order.  Signs are never tracked: multiplication is XOR and every
element is an involution.

Qubit indices are 0-based everywhere in this module; user-facing text
formats are 1-based (see :mod:`stabci.cli`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from . import gf2
from .errors import EnumerationCapError

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_LETTER = {bits: letter for letter, bits in _LETTER_TO_BITS.items()}

DEFAULT_ELEMENT_CAP = 26


def _frozen_bits(bits, length: int, name: str) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.uint8) & 1
    if arr.shape != (length,):
        raise ValueError(f"{name} has shape {arr.shape}, expected ({length},)")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class PauliString:
    """Immutable phase-free Pauli string."""

    num_qubits: int
    x_bits: np.ndarray
    z_bits: np.ndarray

    def __post_init__(self):
        if self.num_qubits <= 0:
            raise ValueError("num_qubits must be positive")
        object.__setattr__(
            self, "x_bits", _frozen_bits(self.x_bits, self.num_qubits, "x_bits")
        )
        object.__setattr__(
            self, "z_bits", _frozen_bits(self.z_bits, self.num_qubits, "z_bits")
        )

    @classmethod
    def identity(cls, num_qubits: int) -> "PauliString":
        zeros = np.zeros(num_qubits, dtype=np.uint8)
        return cls(num_qubits, zeros, zeros.copy())

    @classmethod
    def from_string(cls, text: str) -> "PauliString":
        """Parse a letter string like ``"XZZ"``."""
        text = text.strip().upper()
        if not text:
            raise ValueError("empty Pauli string")
        try:
            pairs = [_LETTER_TO_BITS[ch] for ch in text]
        except KeyError as exc:
            raise ValueError(f"invalid Pauli letter {exc.args[0]!r} in {text!r}") from None
        arr = np.array(pairs, dtype=np.uint8)
        return cls(len(text), arr[:, 0], arr[:, 1])

    @classmethod
    def from_bits(cls, bits) -> "PauliString":
        """Build from a 2m-bit [X-part | Z-part] row vector."""
        vec = np.asarray(bits, dtype=np.uint8) & 1
        if vec.ndim != 1 or vec.size % 2 != 0 or vec.size == 0:
            raise ValueError(f"expected a nonempty even-length bit vector, got shape {vec.shape}")
        m = vec.size // 2
        return cls(m, vec[:m], vec[m:])

    def to_bits(self) -> np.ndarray:
        """The 2m-bit [X-part | Z-part] row vector."""
        return np.concatenate([self.x_bits, self.z_bits])

    def weight(self) -> int:
        """Number of non-identity tensor factors."""
        return int(np.count_nonzero(self.x_bits | self.z_bits))

    def is_identity(self) -> bool:
        return not (self.x_bits.any() or self.z_bits.any())

    def commutes_with(self, other: "PauliString") -> bool:
        return symplectic_product(self, other) == 0

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.num_qubits != other.num_qubits:
            raise ValueError(
                f"size mismatch: {self.num_qubits} vs {other.num_qubits} qubits"
            )
        return PauliString(
            self.num_qubits, self.x_bits ^ other.x_bits, self.z_bits ^ other.z_bits
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return (
            self.num_qubits == other.num_qubits
            and np.array_equal(self.x_bits, other.x_bits)
            and np.array_equal(self.z_bits, other.z_bits)
        )

    def __hash__(self) -> int:
        return hash((self.num_qubits, self.x_bits.tobytes(), self.z_bits.tobytes()))

    def __str__(self) -> str:
        return "".join(
            _BITS_TO_LETTER[(int(x), int(z))] for x, z in zip(self.x_bits, self.z_bits)
        )

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"


def symplectic_product(p: PauliString, q: PauliString) -> int:
    """Binary symplectic form: 0 iff ``p`` and ``q`` commute."""
    if p.num_qubits != q.num_qubits:
        raise ValueError(f"size mismatch: {p.num_qubits} vs {q.num_qubits} qubits")
    return int(np.bitwise_xor.reduce((p.x_bits & q.z_bits) ^ (p.z_bits & q.x_bits)))


def weight(p: PauliString) -> int:
    return p.weight()


def multiply(p: PauliString, q: PauliString) -> PauliString:
    return p * q


@dataclass(frozen=True, eq=False)
class QubitSubset:
    """A subset of qubit positions within a register of ``size`` qubits."""

    size: int
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        if len(idx) != len(self.indices):
            raise ValueError("qubit indices must be distinct")
        if idx and (idx[0] < 0 or idx[-1] >= self.size):
            raise ValueError(f"qubit indices {idx} out of range for size {self.size}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_1based(cls, size: int, indices: Iterable[int]) -> "QubitSubset":
        return cls(size, tuple(int(i) - 1 for i in indices))

    @classmethod
    def empty(cls, size: int) -> "QubitSubset":
        return cls(size, ())

    @classmethod
    def full(cls, size: int) -> "QubitSubset":
        return cls(size, tuple(range(size)))

    def to_1based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.indices)

    def complement(self) -> "QubitSubset":
        members = set(self.indices)
        return QubitSubset(self.size, tuple(i for i in range(self.size) if i not in members))

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, item) -> bool:
        return int(item) in self.indices

    def __iter__(self):
        return iter(self.indices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QubitSubset):
            return NotImplemented
        return self.size == other.size and self.indices == other.indices

    def __hash__(self) -> int:
        return hash((self.size, self.indices))

    def __repr__(self) -> str:
        return f"QubitSubset(size={self.size}, indices={self.indices})"


class DeletionResult(NamedTuple):
    group: "PauliSubgroup"
    rank_preserved: bool


def _column_selector(subset: QubitSubset, keep_complement: bool) -> np.ndarray:
    """Boolean mask over 2m tableau columns for a qubit subset."""
    m = subset.size
    mask = np.zeros(2 * m, dtype=bool)
    for q in subset.indices:
        mask[q] = True
        mask[m + q] = True
    return ~mask if keep_complement else mask


@dataclass(frozen=True, eq=False)
class PauliSubgroup:
    """Subgroup of the phase-free Pauli group, as a GF(2) generator matrix."""

    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.num_qubits <= 0:
            raise ValueError("num_qubits must be positive")
        mat = gf2.as_gf2(self.matrix)
        if mat.size == 0:
            mat = np.zeros((0, 2 * self.num_qubits), dtype=np.uint8)
        if mat.shape[1] != 2 * self.num_qubits:
            raise ValueError(
                f"matrix has {mat.shape[1]} columns, expected {2 * self.num_qubits}"
            )
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_generators(cls, generators: Iterable[PauliString]) -> "PauliSubgroup":
        gens = list(generators)
        if not gens:
            raise ValueError("need at least one generator (use trivial() for {I})")
        m = gens[0].num_qubits
        if any(g.num_qubits != m for g in gens):
            raise ValueError("generators act on different qubit counts")
        return cls(m, np.stack([g.to_bits() for g in gens]))

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "PauliSubgroup":
        return cls.from_generators(PauliString.from_string(s) for s in strings)

    @classmethod
    def trivial(cls, num_qubits: int) -> "PauliSubgroup":
        return cls(num_qubits, np.zeros((0, 2 * num_qubits), dtype=np.uint8))

    @classmethod
    def full_group(cls, num_qubits: int) -> "PauliSubgroup":
        return cls(num_qubits, np.eye(2 * num_qubits, dtype=np.uint8))

    @cached_property
    def canonical_matrix(self) -> np.ndarray:
        mat = gf2.canonical(self.matrix)
        mat.flags.writeable = False
        return mat

    @cached_property
    def rank(self) -> int:
        return self.canonical_matrix.shape[0]

    @cached_property
    def is_isotropic(self) -> bool:
        """True iff all pairs of elements commute."""
        m = self.num_qubits
        a = self.canonical_matrix
        swapped = np.concatenate([a[:, m:], a[:, :m]], axis=1)
        return not (gf2.matmul(a, swapped.T)).any()

    @property
    def generators(self) -> list[PauliString]:
        """The generator rows as given (possibly redundant)."""
        return [PauliString.from_bits(row) for row in self.matrix]

    def canonical(self) -> "PauliSubgroup":
        return PauliSubgroup(self.num_qubits, self.canonical_matrix)

    def member(self, p: PauliString) -> bool:
        if p.num_qubits != self.num_qubits:
            raise ValueError(
                f"size mismatch: {p.num_qubits} vs {self.num_qubits} qubits"
            )
        return gf2.in_span(self.canonical_matrix, p.to_bits())

    def __contains__(self, p: PauliString) -> bool:
        return self.member(p)

    def spans_equal(self, other: "PauliSubgroup") -> bool:
        return self.num_qubits == other.num_qubits and np.array_equal(
            self.canonical_matrix, other.canonical_matrix
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliSubgroup):
            return NotImplemented
        return self.spans_equal(other)

    def __hash__(self) -> int:
        return hash((self.num_qubits, self.canonical_matrix.tobytes()))

    def dual(self) -> "PauliSubgroup":
        """Symplectic orthogonal complement (the logical-operator group)."""
        m = self.num_qubits
        a = self.canonical_matrix
        swapped = np.concatenate([a[:, m:], a[:, :m]], axis=1)
        basis = gf2.nullspace(swapped)
        return PauliSubgroup(m, gf2.canonical(basis))

    def contract(self, subset: QubitSubset) -> "PauliSubgroup":
        """Elements without support on ``subset``, with those qubits removed."""
        self._check_subset(subset)
        if len(subset) == 0:
            return self.canonical()
        if len(subset) == self.num_qubits:
            raise ValueError("cannot remove every qubit")
        mat = self.canonical_matrix
        on_t = mat[:, _column_selector(subset, keep_complement=False)]
        combos = gf2.nullspace(on_t.T)
        kept = gf2.matmul(combos, mat)[:, _column_selector(subset, keep_complement=True)]
        return PauliSubgroup(self.num_qubits - len(subset), gf2.canonical(kept))

    def delete(self, subset: QubitSubset) -> DeletionResult:
        """Remove ``subset``'s tensor factors from every element.

        Also reports whether the group rank survived: when it did not,
        code-parameter readings of the result (k from rank) are invalid.
        """
        self._check_subset(subset)
        if len(subset) == 0:
            return DeletionResult(self.canonical(), True)
        if len(subset) == self.num_qubits:
            raise ValueError("cannot remove every qubit")
        kept = self.canonical_matrix[:, _column_selector(subset, keep_complement=True)]
        group = PauliSubgroup(self.num_qubits - len(subset), gf2.canonical(kept))
        return DeletionResult(group, group.rank == self.rank)

    def enumerate_elements(self, max_rank: int = DEFAULT_ELEMENT_CAP) -> Iterator[PauliString]:
        """Yield each of the 2^rank elements exactly once (Gray-code order)."""
        if self.rank > max_rank:
            raise EnumerationCapError(
                f"group rank {self.rank} exceeds enumeration cap {max_rank}"
            )
        gens = self.canonical_matrix
        current = np.zeros(2 * self.num_qubits, dtype=np.uint8)
        yield PauliString.from_bits(current)
        for i in range(1, 1 << self.rank):
            flip = (i & -i).bit_length() - 1
            current = current ^ gens[flip]
            yield PauliString.from_bits(current)

    def elements_as_strings(self, max_rank: int = DEFAULT_ELEMENT_CAP) -> set[str]:
        return {str(p) for p in self.enumerate_elements(max_rank)}

    def _check_subset(self, subset: QubitSubset):
        if subset.size != self.num_qubits:
            raise ValueError(
                f"subset is for {subset.size} qubits, group has {self.num_qubits}"
            )

    def __repr__(self) -> str:
        return (
            f"PauliSubgroup(num_qubits={self.num_qubits}, rank={self.rank}, "
            f"generators={[str(g) for g in self.generators]})"
        )


def dual(h: PauliSubgroup) -> PauliSubgroup:
    return h.dual()


def contract(h: PauliSubgroup, subset: QubitSubset) -> PauliSubgroup:
    return h.contract(subset)


def delete(h: PauliSubgroup, subset: QubitSubset) -> DeletionResult:
    return h.delete(subset)


def member(p: PauliString, h: PauliSubgroup) -> bool:
    return h.member(p)


def enumerate_elements(
    h: PauliSubgroup, max_rank: int = DEFAULT_ELEMENT_CAP
) -> Iterator[PauliString]:
    return h.enumerate_elements(max_rank)


def parse_pauli_lines(text: str) -> list[PauliString]:
    """Parse the Pauli text format: one letter string per line,
    blank lines and '#' comments ignored."""
    strings = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            strings.append(PauliString.from_string(line))
    if strings:
        m = strings[0].num_qubits
        for p in strings:
            if p.num_qubits != m:
                raise ValueError("Pauli strings in one file must have equal length")
    return strings


def subgroup_from_text(text: str) -> PauliSubgroup:
    strings = parse_pauli_lines(text)
    if not strings:
        raise ValueError("no Pauli strings found")
    return PauliSubgroup.from_generators(strings)


def subgroup_to_text(h: PauliSubgroup) -> str:
    return "\n".join(str(g) for g in h.generators) + "\n"
