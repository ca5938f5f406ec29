"""Concrete designs: PG(n-1, 2) and its complement, Sylvester Hadamard
matrices with their 2- and 3-designs, and the (16, 6, 2) SDP biplane.

Coordinates: the nonzero vector ``x`` of GF(2)^n is point ``x - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .design import Design, verify_bibd


def _parity(x: int) -> int:
    return x.bit_count() & 1


def _check_n(n: int, lo: int, hi: int = 10) -> None:
    if not lo <= n <= hi:
        raise ValueError(f"n={n} out of range {lo}..{hi}")


def pg_hyperplanes(n: int) -> Design:
    """Points and hyperplanes of PG(n-1, 2): a (2^n-1, 2^(n-1)-1, 2^(n-2)-1) design."""
    _check_n(n, 2)
    size = 1 << n
    blocks = []
    for a in range(1, size):
        blocks.append(sum(1 << (x - 1) for x in range(1, size) if not _parity(a & x)))
    return Design(size - 1, tuple(blocks))


def pg_complement_block(n: int, a: int) -> int:
    """Block ``{x != 0 : <a, x> = 1}`` of the complement of PG(n-1, 2)."""
    size = 1 << n
    if not 0 < a < size:
        raise ValueError(f"functional {a} must be nonzero and < 2^{n}")
    return sum(1 << (x - 1) for x in range(1, size) if _parity(a & x))


def pg_complement(n: int) -> Design:
    """The (2^n-1, 2^(n-1), 2^(n-2)) complement of PG(n-1, 2)."""
    _check_n(n, 2)
    return Design((1 << n) - 1, tuple(pg_complement_block(n, a) for a in range(1, 1 << n)))


@dataclass(frozen=True, eq=False)
class HadamardMatrix:
    entries: np.ndarray

    def __post_init__(self) -> None:
        h = np.asarray(self.entries, dtype=np.int64)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError("Hadamard matrix must be square")
        if not np.all(np.abs(h) == 1):
            raise ValueError("entries must be +1 or -1")
        order = h.shape[0]
        if not np.array_equal(h @ h.T, order * np.eye(order, dtype=np.int64)):
            raise ValueError("rows are not pairwise orthogonal")
        h.setflags(write=False)
        object.__setattr__(self, "entries", h)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HadamardMatrix) and np.array_equal(self.entries, other.entries)

    def normalized(self) -> "HadamardMatrix":
        """Negate columns, then rows, so the first row and column are all +1."""
        h = self.entries.copy()
        h = h * h[0][np.newaxis, :]
        h = h * h[:, 0][:, np.newaxis]
        return HadamardMatrix(h)


def sylvester_hadamard(n: int) -> HadamardMatrix:
    """Order 2^n matrix with entry (i, j) = (-1)^<i, j>."""
    _check_n(n, 0)
    idx = np.arange(1 << n)
    and_ = idx[:, None] & idx[None, :]
    parity = np.zeros_like(and_)
    for bit in range(n):
        parity ^= (and_ >> bit) & 1
    return HadamardMatrix(1 - 2 * parity)


def _design_order(h: HadamardMatrix) -> None:
    if h.order < 8 or h.order % 4:
        raise ValueError(f"design extraction needs order >= 8 divisible by 4, got {h.order}")


def hadamard_to_2design(h: HadamardMatrix) -> Design:
    """Drop the first row and column of the normalised matrix; column j
    gives the block of rows holding -1. Order 4t yields a (4t-1, 2t, t) design."""
    _design_order(h)
    m = h.normalized().entries
    order = h.order
    blocks = []
    for j in range(1, order):
        blocks.append(sum(1 << (i - 1) for i in range(1, order) if m[i, j] < 0))
    return Design(order - 1, tuple(blocks))


def hadamard_to_3design(h: HadamardMatrix) -> Design:
    """Each non-first row of the normalised matrix contributes its +1
    positions and its -1 positions: a 3-(4t, 2t, t-1) design."""
    _design_order(h)
    m = h.normalized().entries
    order = h.order
    blocks = []
    for i in range(1, order):
        plus = sum(1 << j for j in range(order) if m[i, j] > 0)
        blocks.append(plus)
        blocks.append(((1 << order) - 1) ^ plus)
    return Design(order, tuple(blocks))


def quadratic_form(x: int) -> int:
    """Q(x) = x1 x2 + x3 x4 on GF(2)^4, with x1 the lowest bit."""
    bit = [(x >> i) & 1 for i in range(4)]
    return (bit[0] & bit[1]) ^ (bit[2] & bit[3])


def sdp_biplane() -> Design:
    """The (16, 6, 2) biplane from level sets of a bent function."""
    blocks = []
    for a in range(16):
        level = [quadratic_form(x) ^ _parity(a & x) for x in range(16)]
        ones = sum(1 << x for x in range(16) if level[x])
        if ones.bit_count() not in (6, 10):
            raise AssertionError(f"level set of weight {ones.bit_count()} for a={a}; form is not bent")
        blocks.append(ones if ones.bit_count() == 6 else 0xFFFF ^ ones)
    d = Design(16, tuple(blocks))
    params = verify_bibd(d)
    if params.as_tuple() != (16, 16, 6, 2, 6):
        raise AssertionError(f"biplane construction produced {params}")
    from .group import sdp_check

    if not sdp_check(d).is_sdp:
        raise AssertionError("biplane lacks the symmetric difference property")
    return d
