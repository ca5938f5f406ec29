"""Block designs over points ``0..v-1``: verification, complements, the
incidence matrix bridge and the canonical text format."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .gf2 import BitVector, GF2Matrix, bits_to_indices, indices_to_bits


class DesignError(ValueError):
    """Structurally invalid design (bad indices, empty or full blocks)."""


class NotBIBDError(ValueError):
    """Raised by :func:`verify_bibd`; carries the first violation found.

    ``reason`` is one of ``"no-blocks"``, ``"too-few-points"``,
    ``"block-size"``, ``"k-range"``, ``"pair-coverage"``.
    """

    def __init__(self, reason: str, message: str, witness: Optional[tuple] = None):
        super().__init__(message)
        self.reason = reason
        self.witness = witness


class DesignFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def block_sort_key(block: int, v: int) -> int:
    """Bit-reversed value: point 0 is the most significant bit."""
    return int(format(block, f"0{v}b")[::-1], 2) if v else 0


@dataclass(frozen=True)
class Design:
    """``v`` points and a canonically ordered tuple of distinct blocks.

    Blocks are bitmasks over the points. Construction sorts and
    deduplicates them. Unless ``raw`` is set, empty and full blocks are
    rejected.
    """

    v: int
    blocks: tuple[int, ...]
    raw: bool = False

    def __post_init__(self) -> None:
        if self.v < 1:
            raise DesignError("a design needs at least one point")
        full = (1 << self.v) - 1
        uniq = set()
        for b in self.blocks:
            b = int(b)
            if b < 0 or b > full:
                raise DesignError(f"block {b:#x} has points outside 0..{self.v - 1}")
            if not self.raw and (b == 0 or b == full):
                raise DesignError("empty or full block in a non-raw design")
            uniq.add(b)
        ordered = tuple(sorted(uniq, key=lambda b: block_sort_key(b, self.v)))
        object.__setattr__(self, "blocks", ordered)

    @classmethod
    def from_blocks(cls, v: int, blocks: Iterable[Iterable[int]], raw: bool = False) -> "Design":
        masks = []
        for blk in blocks:
            blk = list(blk)
            for p in blk:
                if not 0 <= p < v:
                    raise DesignError(f"point {p} out of range 0..{v - 1}")
            masks.append(indices_to_bits(blk))
        return cls(v, tuple(masks), raw)

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def full(self) -> int:
        return (1 << self.v) - 1

    def block_sets(self) -> list[list[int]]:
        return [bits_to_indices(b) for b in self.blocks]

    def block_vectors(self) -> list[BitVector]:
        return [BitVector(self.v, b) for b in self.blocks]

    def index_of(self) -> dict[int, int]:
        return {b: i for i, b in enumerate(self.blocks)}

    def point_rows(self) -> list[int]:
        """Per point, the bitmask of blocks (canonical indices) containing it."""
        rows = [0] * self.v
        for j, b in enumerate(self.blocks):
            for p in bits_to_indices(b):
                rows[p] |= 1 << j
        return rows


@dataclass(frozen=True)
class DesignParams:
    v: int
    b: int
    k: int
    lam: int
    r: int

    @property
    def symmetric(self) -> bool:
        return self.v == self.b

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.v, self.b, self.k, self.lam, self.r)


def verify_bibd(d: Design) -> DesignParams:
    """Check the 2-design axioms and return ``(v, b, k, lambda, r)``.

    Violations are scanned in a fixed order (block sizes, the range of
    ``k``, then point pairs lexicographically) and the first one raises
    :class:`NotBIBDError` with a witness.
    """
    if d.b == 0:
        raise NotBIBDError("no-blocks", "design has no blocks")
    if d.v < 2:
        raise NotBIBDError("too-few-points", "need at least two points")
    k = d.blocks[0].bit_count()
    for j, blk in enumerate(d.blocks):
        if blk.bit_count() != k:
            raise NotBIBDError(
                "block-size",
                f"block {j} has size {blk.bit_count()}, block 0 has size {k}",
                (j,),
            )
    if not (d.v > k >= 2):
        raise NotBIBDError("k-range", f"block size k={k} violates v > k >= 2 with v={d.v}", (0,))
    rows = d.point_rows()
    lam = None
    for p, q in combinations(range(d.v), 2):
        cnt = (rows[p] & rows[q]).bit_count()
        if lam is None:
            lam = cnt
        elif cnt != lam:
            raise NotBIBDError(
                "pair-coverage",
                f"pair ({p},{q}) lies in {cnt} blocks, pair (0,1) lies in {lam}",
                (p, q),
            )
    r = rows[0].bit_count()
    return DesignParams(d.v, d.b, k, lam, r)


def is_symmetric(d: Design) -> tuple[bool, Optional[int]]:
    """``(True, lambda)`` when v = b; every block pair is checked to meet in lambda points."""
    params = verify_bibd(d)
    if d.v != d.b:
        return False, None
    for i, j in combinations(range(d.b), 2):
        size = (d.blocks[i] & d.blocks[j]).bit_count()
        if size != params.lam:
            raise AssertionError(
                f"blocks {i},{j} meet in {size} points; symmetric design needs {params.lam}"
            )
    return True, params.lam


def coverage_number(d: Design, t: int) -> Optional[int]:
    """Number of blocks through every t-subset, or None if it varies."""
    if d.b == 0:
        raise ValueError("design has no blocks")
    k = max(b.bit_count() for b in d.blocks)
    if t < 1 or t > k:
        raise ValueError(f"t={t} must lie in 1..k={k}")
    rows = d.point_rows()
    value = None
    for pts in combinations(range(d.v), t):
        acc = -1
        for p in pts:
            acc &= rows[p]
        cnt = acc.bit_count() if acc >= 0 else 0
        if value is None:
            value = cnt
        elif cnt != value:
            return None
    return value


def complement_design(d: Design) -> Design:
    full = d.full
    for j, blk in enumerate(d.blocks):
        if blk == 0 or blk == full:
            raise DesignError(f"block {j} is {'empty' if blk == 0 else 'full'}; complement undefined")
    return Design(d.v, tuple(full ^ b for b in d.blocks))


def incidence_matrix(d: Design) -> GF2Matrix:
    """v x b matrix, rows are points and column j is block j."""
    return GF2Matrix(d.b, tuple(d.point_rows()))


def design_from_matrix(m: GF2Matrix, raw: bool = False) -> Design:
    return Design(m.row_count, m.transpose().rows, raw)


# -- text format -----------------------------------------------------------


def format_design(d: Design) -> str:
    lines = [f"DESIGN {d.v} {d.b}"]
    lines += [" ".join(map(str, pts)) for pts in d.block_sets()]
    return "\n".join(lines) + "\n"


def parse_design(text: str, raw: bool = False) -> Design:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise DesignFormatError("empty input", 1)
    head = lines[0].split(" ")
    if len(head) != 3 or head[0] != "DESIGN":
        raise DesignFormatError("expected header 'DESIGN <v> <b>'", 1)
    try:
        v, b = int(head[1]), int(head[2])
    except ValueError:
        raise DesignFormatError("v and b must be integers", 1, len(head[0]) + 2) from None
    if v < 1 or b < 0:
        raise DesignFormatError("v must be positive and b nonnegative", 1, len(head[0]) + 2)
    body = lines[1:]
    if len(body) != b:
        raise DesignFormatError(f"header declares {b} blocks, found {len(body)}", len(lines))
    masks = []
    for ln, line in enumerate(body, start=2):
        mask = 0
        col = 1
        for tok in line.split(" ") if line else []:
            if not tok.isdigit():
                raise DesignFormatError(f"bad point index {tok!r}", ln, col)
            p = int(tok)
            if p >= v:
                raise DesignFormatError(f"point {p} >= v={v}", ln, col)
            if mask >> p & 1:
                raise DesignFormatError(f"duplicate point {p} in block", ln, col)
            mask |= 1 << p
            col += len(tok) + 1
        if mask in masks:
            raise DesignFormatError("duplicate block", ln)
        masks.append(mask)
    try:
        return Design(v, tuple(masks), raw)
    except DesignError as exc:
        raise DesignFormatError(str(exc), 2) from None
