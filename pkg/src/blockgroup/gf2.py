"""Bit-packed linear algebra over GF(2).

Vectors are stored as Python ints (bit ``i`` is position ``i``); the
rank and echelon kernels are dispatched to the compiled backend when it
is available (see :mod:`blockgroup.kernels`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels

MAX_COLS = 1023


@dataclass(frozen=True)
class BitVector:
    """Fixed-length binary vector."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("BitVector length must be positive")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#x} do not fit in length {self.length}")

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise ValueError(f"index {i} out of range for length {length}")
            bits |= 1 << i
        return cls(length, bits)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        """Parse ``"1011000"``; the first character is position 0."""
        return cls.from_indices(len(s), (i for i, ch in enumerate(s) if ch == "1"))

    def __getitem__(self, i: int) -> int:
        if i >= self.length or i < 0:
            return 0
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        return xor(self, other)

    def __and__(self, other: "BitVector") -> "BitVector":
        _same_length(self, other)
        return BitVector(self.length, self.bits & other.bits)

    def __str__(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.length))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> list[int]:
        return bits_to_indices(self.bits)


def _same_length(a: BitVector, b: BitVector) -> None:
    if a.length != b.length:
        raise ValueError(f"length mismatch: {a.length} != {b.length}")


def xor(a: BitVector, b: BitVector) -> BitVector:
    _same_length(a, b)
    return BitVector(a.length, a.bits ^ b.bits)


def popcount(x: int) -> int:
    return x.bit_count()


def bits_to_indices(x: int) -> list[int]:
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def indices_to_bits(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << i
    return bits


@dataclass(frozen=True)
class GF2Matrix:
    """Dense binary matrix; each row is an int of ``col_count`` bits."""

    col_count: int
    rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.col_count <= MAX_COLS:
            raise ValueError(f"column count must be in 0..{MAX_COLS}")
        rows = tuple(int(r) for r in self.rows)
        for i, r in enumerate(rows):
            if r < 0 or r >> self.col_count:
                raise ValueError(f"row {i} has bits beyond column {self.col_count}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], col_count: int | None = None) -> "GF2Matrix":
        if col_count is None:
            if not vectors:
                raise ValueError("col_count required for an empty vector list")
            col_count = vectors[0].length
        for vec in vectors:
            if vec.length != col_count:
                raise ValueError("all rows must have the same length")
        return cls(col_count, tuple(vec.bits for vec in vectors))

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> "GF2Matrix":
        ncols = len(data[0]) if data else 0
        rows = []
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(indices_to_bits(j for j, x in enumerate(row) if x & 1))
        return cls(ncols, tuple(rows))

    @classmethod
    def identity(cls, size: int) -> "GF2Matrix":
        return cls(size, tuple(1 << i for i in range(size)))

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.col_count, r) for r in self.rows]

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.col_count)] for r in self.rows]

    def transpose(self) -> "GF2Matrix":
        cols = [0] * self.col_count
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    cols[j] |= 1 << i
                r >>= 1
                j += 1
        return GF2Matrix(self.row_count, tuple(cols))


def gf2_rank(m: GF2Matrix) -> int:
    """Dimension of the row space of ``m``."""
    return kernels.backend.rank(list(m.rows), m.col_count)


def rref(m: GF2Matrix) -> GF2Matrix:
    """Reduced row echelon form with zero rows dropped.

    The pivot of a row is its lowest set bit; pivots increase down the
    rows and every pivot column holds exactly one set bit.
    """
    return GF2Matrix(m.col_count, tuple(kernels.backend.rref(list(m.rows), m.col_count)))


def span_size(basis: GF2Matrix) -> int:
    return 1 << gf2_rank(basis)


def span(rows: Sequence[int]) -> list[int]:
    """All 2**len(rows) XOR combinations; index bit i selects rows[i]."""
    out = [0]
    for r in rows:
        out += [x ^ r for x in out]
    return out


def in_row_space(vec: int, m: GF2Matrix) -> bool:
    basis = rref(m).rows
    for r in basis:
        low = r & -r
        if vec & low:
            vec ^= r
    return vec == 0
