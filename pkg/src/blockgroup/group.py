"""Group laws on blocks.

Covers closure of ``B ∪ {∅}`` under symmetric difference, the parameters
this closure forces, the rank criterion for it, the 2-rank lower bound
for (2^n-1, 2^(n-1), 2^(n-2)) designs, Kantor's law on designs with the
symmetric difference property and Kimberley's law on good block classes.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Optional

from .design import Design, DesignParams, coverage_number, incidence_matrix, verify_bibd
from .gf2 import bits_to_indices, gf2_rank


class AmbiguousSumError(ValueError):
    """Both ``B Δ X Δ Y`` and its complement are blocks."""


class MissingSumError(ValueError):
    """Neither ``B Δ X Δ Y`` nor its complement is a block."""


class ClosureError(ValueError):
    pass


@dataclass(frozen=True)
class GroupCheckReport:
    closed: bool
    witness: Optional[tuple[int, int]] = None
    group_order: Optional[int] = None
    dimension_n: Optional[int] = None
    elementary_abelian: Optional[bool] = None

    def as_dict(self) -> dict:
        return asdict(self)


def delta_closure_check(d: Design) -> GroupCheckReport:
    """Is ``blocks ∪ {∅}`` closed under symmetric difference?

    Returns the first escaping pair (lexicographic in block index) when
    it is not. A closed set is automatically an elementary abelian
    2-group since every element is its own inverse.
    """
    members = set(d.blocks)
    if 0 in members:
        raise ValueError("empty block present; closure is checked on nonempty blocks")
    for i, j in combinations(range(d.b), 2):
        if d.blocks[i] ^ d.blocks[j] not in members:
            return GroupCheckReport(closed=False, witness=(i, j))
    order = d.b + 1
    if order & (order - 1):
        raise AssertionError(f"closed set of order {order} is not a power of two")
    return GroupCheckReport(
        closed=True,
        group_order=order,
        dimension_n=order.bit_length() - 1,
        elementary_abelian=True,
    )


def forced_params(lam: int) -> DesignParams:
    """Parameters of any design whose blocks and ∅ form a group: (4λ-1, 2λ, λ), symmetric."""
    if lam < 1:
        raise ValueError("lambda must be positive")
    return DesignParams(v=4 * lam - 1, b=4 * lam - 1, k=2 * lam, lam=lam, r=2 * lam)


def group_law_params(n: int) -> Optional[tuple[int, int, int, int]]:
    """(v, b, k, λ) = (2^n-1, 2^n-1, 2^(n-1), 2^(n-2)), or None for n < 2."""
    if n < 2:
        return None
    v = (1 << n) - 1
    return (v, v, 1 << (n - 1), 1 << (n - 2))


def shape_exponent(params: DesignParams) -> Optional[int]:
    """The n with params = (2^n-1, 2^(n-1), 2^(n-2)) symmetric, if any."""
    n = (params.v + 1).bit_length() - 1
    if (1 << n) != params.v + 1:
        return None
    if group_law_params(n) == (params.v, params.b, params.k, params.lam):
        return n
    return None


@dataclass(frozen=True)
class Lemma2Result:
    closed: bool
    params_match: bool
    n_from_rank: int
    consistent: bool

    def as_dict(self) -> dict:
        return asdict(self)


def lemma2_predicate(d: Design) -> Lemma2Result:
    """Evaluate both sides of: closed under Δ ⟺ parameters are
    (2^n-1, 2^(n-1), 2^(n-2)) with n the 2-rank of the incidence matrix."""
    params = verify_bibd(d)
    n = gf2_rank(incidence_matrix(d))
    closed = delta_closure_check(d).closed
    match = group_law_params(n) == (params.v, params.b, params.k, params.lam)
    return Lemma2Result(closed=closed, params_match=match, n_from_rank=n, consistent=closed == match)


@dataclass(frozen=True)
class HamadaResult:
    n: int
    rank: int
    bound_holds: bool
    equality: bool

    def as_dict(self) -> dict:
        return asdict(self)


def hamada_bound_check(d: Design) -> HamadaResult:
    params = verify_bibd(d)
    n = shape_exponent(params)
    if n is None:
        raise ValueError(
            f"parameters (v={params.v}, k={params.k}, λ={params.lam}) are not (2^n-1, 2^(n-1), 2^(n-2))"
        )
    rank = gf2_rank(incidence_matrix(d))
    return HamadaResult(n=n, rank=rank, bound_holds=rank >= n, equality=rank == n)


@dataclass(frozen=True)
class SdpReport:
    is_sdp: bool
    witness: Optional[tuple[int, int, int]] = None
    witness_set: Optional[list[int]] = None

    def as_dict(self) -> dict:
        return asdict(self)


def sdp_check(d: Design) -> SdpReport:
    """Symmetric difference property over all triples of distinct blocks.

    Triples with a repeated block reduce to a single block and always pass.
    """
    members = set(d.blocks)
    full = d.full
    for i, j, k in combinations(range(d.b), 3):
        t = d.blocks[i] ^ d.blocks[j] ^ d.blocks[k]
        if t not in members and full ^ t not in members:
            return SdpReport(False, (i, j, k), bits_to_indices(t))
    return SdpReport(True)


@dataclass(frozen=True)
class KantorGroup:
    base: int
    table: tuple[tuple[int, ...], ...]
    identity_ok: bool
    exponent_two: bool
    commutative: bool
    associative: bool

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def valid(self) -> bool:
        return self.identity_ok and self.exponent_two and self.commutative and self.associative

    def as_dict(self) -> dict:
        out = asdict(self)
        out.update(order=self.order, valid=self.valid)
        return out


def _axioms(table: list[list[int]], e: int) -> tuple[bool, bool, bool, bool]:
    m = len(table)
    identity = all(table[e][x] == x and table[x][e] == x for x in range(m))
    exp2 = all(table[x][x] == e for x in range(m))
    comm = all(table[x][y] == table[y][x] for x in range(m) for y in range(x + 1, m))
    assoc = all(
        table[table[x][y]][z] == table[x][table[y][z]]
        for x in range(m)
        for y in range(m)
        for z in range(m)
    )
    return identity, exp2, comm, assoc


def kantor_group(d: Design, base: int = 0) -> KantorGroup:
    """``X + Y`` is whichever of ``B Δ X Δ Y`` and its complement is a
    block, with ``B`` the block at index ``base``."""
    if not 0 <= base < d.b:
        raise IndexError(f"base block {base} out of range")
    report = sdp_check(d)
    if not report.is_sdp:
        raise ValueError(f"design lacks the symmetric difference property: triple {report.witness}")
    index = d.index_of()
    full = d.full
    bb = d.blocks[base]
    table = [[0] * d.b for _ in range(d.b)]
    for x in range(d.b):
        for y in range(d.b):
            s = bb ^ d.blocks[x] ^ d.blocks[y]
            hit, hit_c = index.get(s), index.get(full ^ s)
            if hit is not None and hit_c is not None:
                raise AmbiguousSumError(f"both candidates for blocks {x} + {y} are blocks")
            if hit is None and hit_c is None:
                raise MissingSumError(f"no candidate for blocks {x} + {y} is a block")
            table[x][y] = hit if hit is not None else hit_c
    flags = _axioms(table, base)
    return KantorGroup(base, tuple(map(tuple, table)), *flags)


@dataclass(frozen=True)
class GoodBlockReport:
    design: Design = field(repr=False)
    good_flags: tuple[bool, ...]
    witnesses: tuple[Optional[int], ...]
    classes: tuple[tuple[int, int], ...]
    group_table_ok: bool

    def as_dict(self) -> dict:
        return {
            "good_flags": list(self.good_flags),
            "witnesses": list(self.witnesses),
            "classes": [list(c) for c in self.classes],
            "group_table_ok": self.group_table_ok,
        }


def good_block_classes(d: Design) -> GoodBlockReport:
    """Flag every block B for which B Δ C is a block for each block C
    other than B and its complement, and pair good blocks with their complements."""
    index = d.index_of()
    full = d.full
    for j, blk in enumerate(d.blocks):
        if full ^ blk not in index:
            raise ValueError(f"complement of block {j} is not a block")
    if coverage_number(d, 3) is None:
        raise ValueError("design is not a 3-design")
    flags = []
    witnesses = []
    for i, blk in enumerate(d.blocks):
        comp = full ^ blk
        bad = None
        for j, other in enumerate(d.blocks):
            if other == blk or other == comp:
                continue
            if blk ^ other not in index:
                bad = j
                break
        flags.append(bad is None)
        witnesses.append(bad)
    classes = []
    for i, blk in enumerate(d.blocks):
        j = index[full ^ blk]
        if flags[i] != flags[j]:
            raise AssertionError(f"block {i} and its complement {j} disagree on goodness")
        if flags[i] and i < j:
            classes.append((i, j))
    report = GoodBlockReport(d, tuple(flags), tuple(witnesses), tuple(classes), False)
    try:
        ok = _kimberley_table(report)[2]
    except ClosureError:
        ok = False
    return GoodBlockReport(d, tuple(flags), tuple(witnesses), tuple(classes), ok)


@dataclass(frozen=True)
class KimberleyGroup:
    """Element 0 is the identity class {X, ∅}; element i > 0 is ``classes[i-1]``."""

    classes: tuple[tuple[int, int], ...]
    table: tuple[tuple[int, ...], ...]
    identity_ok: bool
    exponent_two: bool
    commutative: bool
    associative: bool

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def valid(self) -> bool:
        return self.identity_ok and self.exponent_two and self.commutative and self.associative

    def as_dict(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "table": [list(r) for r in self.table],
            "order": self.order,
            "identity_ok": self.identity_ok,
            "exponent_two": self.exponent_two,
            "commutative": self.commutative,
            "associative": self.associative,
            "valid": self.valid,
        }


def _kimberley_table(report: GoodBlockReport):
    d = report.design
    full = d.full
    elem_of = {0: 0, full: 0}
    reps = [0]
    for c, (i, j) in enumerate(report.classes, start=1):
        elem_of[d.blocks[i]] = c
        elem_of[d.blocks[j]] = c
        reps.append(d.blocks[i])
    m = len(reps)
    table = [[0] * m for _ in range(m)]
    for x in range(m):
        for y in range(m):
            s = reps[x] ^ reps[y]
            if s not in elem_of:
                raise ClosureError(f"class {x} ◦ class {y} is not a good class")
            table[x][y] = elem_of[s]
    flags = _axioms(table, 0)
    return table, flags, all(flags)


def kimberley_group(report: GoodBlockReport) -> KimberleyGroup:
    """Good classes plus {X, ∅} under {B, B̄} ◦ {C, C̄} = class of B Δ C."""
    if not report.classes:
        raise ValueError("no good block classes")
    table, flags, _ = _kimberley_table(report)
    return KimberleyGroup(report.classes, tuple(map(tuple, table)), *flags)
