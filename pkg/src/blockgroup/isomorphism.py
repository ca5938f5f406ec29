"""Design isomorphism by canonical labeling.

The search individualizes points one at a time and refines the ordered
point partition by colour refinement on the point/block incidence graph.
Leaves (discrete partitions) are labelings; the canonical form is the
lexicographically least relabeled block list over the leaves visited.
Subtrees are skipped when a discovered automorphism maps them onto one
already explored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .design import Design, verify_bibd
from .gf2 import bits_to_indices

MAX_CANON_V = 63


@dataclass(frozen=True)
class PointPermutation:
    """Bijection ``p -> mapping[p]`` on ``0..v-1``."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(int(x) for x in self.mapping)
        if sorted(m) != list(range(len(m))):
            raise ValueError("mapping is not a permutation")
        object.__setattr__(self, "mapping", m)

    @classmethod
    def identity(cls, v: int) -> "PointPermutation":
        return cls(tuple(range(v)))

    def __len__(self) -> int:
        return len(self.mapping)

    def __call__(self, p: int) -> int:
        return self.mapping[p]

    def inverse(self) -> "PointPermutation":
        inv = [0] * len(self.mapping)
        for p, q in enumerate(self.mapping):
            inv[q] = p
        return PointPermutation(tuple(inv))

    def then(self, other: "PointPermutation") -> "PointPermutation":
        """Apply ``self`` first, then ``other``."""
        return PointPermutation(tuple(other.mapping[q] for q in self.mapping))

    def __str__(self) -> str:
        return " ".join(map(str, self.mapping))

    @classmethod
    def parse(cls, line: str) -> "PointPermutation":
        return cls(tuple(int(tok) for tok in line.split()))


def _map_block(block: int, mapping: Sequence[int]) -> int:
    out = 0
    p = 0
    while block:
        if block & 1:
            out |= 1 << mapping[p]
        block >>= 1
        p += 1
    return out


def apply_permutation(d: Design, p: PointPermutation) -> Design:
    if len(p) != d.v:
        raise ValueError(f"permutation length {len(p)} != v={d.v}")
    return Design(d.v, tuple(_map_block(b, p.mapping) for b in d.blocks), d.raw)


def verify_certificate(d1: Design, d2: Design, p: PointPermutation) -> bool:
    """True iff ``p`` maps the block set of ``d1`` onto that of ``d2``."""
    if d1.v != d2.v or d1.b != d2.b or len(p) != d1.v:
        return False
    image = {_map_block(b, p.mapping) for b in d1.blocks}
    return image == set(d2.blocks)


@dataclass(frozen=True)
class CanonicalForm:
    design: Design
    labeling: PointPermutation


class _Search:
    def __init__(self, d: Design):
        self.d = d
        self.v = d.v
        self.block_points = [bits_to_indices(b) for b in d.blocks]
        self.point_blocks: list[list[int]] = [[] for _ in range(d.v)]
        for j, pts in enumerate(self.block_points):
            for p in pts:
                self.point_blocks[p].append(j)
        self.root = self.refine(self._initial_colors())

    # -- partitions ----------------------------------------------------------

    @staticmethod
    def _position_colors(keys: list) -> list[int]:
        """Colour = number of points whose key sorts strictly lower."""
        counts: dict = {}
        for k in keys:
            counts[k] = counts.get(k, 0) + 1
        start = {}
        acc = 0
        for k in sorted(counts):
            start[k] = acc
            acc += counts[k]
        return [start[k] for k in keys]

    def _initial_colors(self) -> list[int]:
        rows = [0] * self.v
        for j, pts in enumerate(self.block_points):
            for p in pts:
                rows[p] |= 1 << j
        keys = []
        for p in range(self.v):
            co = sorted((rows[p] & rows[q]).bit_count() for q in range(self.v) if q != p)
            keys.append((rows[p].bit_count(), tuple(co)))
        return self._position_colors(keys)

    def refine(self, colors: list[int]) -> list[int]:
        ncells = len(set(colors))
        while True:
            bkeys = [tuple(sorted([colors[p] for p in pts])) for pts in self.block_points]
            rank = {k: i for i, k in enumerate(sorted(set(bkeys)))}
            bcol = [rank[k] for k in bkeys]
            pkeys = [
                (colors[p], tuple(sorted([bcol[j] for j in self.point_blocks[p]])))
                for p in range(self.v)
            ]
            new = self._position_colors(pkeys)
            n2 = len(set(new))
            colors = new
            if n2 == ncells:
                return colors
            ncells = n2

    def target_cell(self, colors: list[int]) -> Optional[list[int]]:
        """Points of the lowest-coloured non-singleton cell, by index."""
        size: dict[int, int] = {}
        for c in colors:
            size[c] = size.get(c, 0) + 1
        cands = [c for c, s in size.items() if s > 1]
        if not cands:
            return None
        c = min(cands)
        return [p for p in range(self.v) if colors[p] == c]

    def individualize(self, colors: list[int], u: int) -> list[int]:
        c = colors[u]
        new = [x + 1 if x == c and p != u else x for p, x in enumerate(colors)]
        return self.refine(new)

    def shape(self, colors: list[int]) -> tuple:
        size: dict[int, int] = {}
        for c in colors:
            size[c] = size.get(c, 0) + 1
        return tuple(sorted(size.items()))

    def encode(self, labeling: Sequence[int]) -> tuple[int, ...]:
        return tuple(sorted(_map_block(b, labeling) for b in self.d.blocks))


def _orbit_root(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _orbits(v: int, gens: Sequence[Sequence[int]]) -> list[int]:
    parent = list(range(v))
    for g in gens:
        for p in range(v):
            a, b = _orbit_root(parent, p), _orbit_root(parent, g[p])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [_orbit_root(parent, p) for p in range(v)]


def _automorphism(lab_from: Sequence[int], lab_to: Sequence[int]) -> list[int]:
    """gamma with lab_to[gamma(p)] = lab_from[p]."""
    inv = [0] * len(lab_to)
    for p, q in enumerate(lab_to):
        inv[q] = p
    return [inv[q] for q in lab_from]


class _Canonizer:
    def __init__(self, d: Design, prune: bool = True):
        self.s = _Search(d)
        self.prune = prune
        self.best: Optional[tuple] = None
        self.best_lab: Optional[list[int]] = None
        self.best_path: list[int] = []
        self.first: Optional[tuple] = None
        self.first_lab: Optional[list[int]] = None
        self.first_path: list[int] = []
        self.gens: list[list[int]] = []
        self.leaves = 0

    def run(self) -> tuple[tuple, list[int]]:
        self._dfs(self.s.root, [])
        assert self.best is not None and self.best_lab is not None
        return self.best, self.best_lab

    def _leaf(self, colors: list[int], path: list[int]) -> Optional[int]:
        self.leaves += 1
        enc = self.s.encode(colors)
        if self.first is None:
            self.first, self.first_lab, self.first_path = enc, colors, list(path)
            self.best, self.best_lab, self.best_path = enc, colors, list(path)
            return None
        jump = None
        if self.prune:
            for ref, lab, rpath in (
                (self.first, self.first_lab, self.first_path),
                (self.best, self.best_lab, self.best_path),
            ):
                if enc == ref:
                    self.gens.append(_automorphism(colors, lab))
                    common = 0
                    while common < min(len(path), len(rpath)) and path[common] == rpath[common]:
                        common += 1
                    jump = common if jump is None else min(jump, common)
        if enc < self.best:
            self.best, self.best_lab, self.best_path = enc, colors, list(path)
        return jump

    def _dfs(self, colors: list[int], path: list[int]) -> Optional[int]:
        cell = self.s.target_cell(colors)
        if cell is None:
            return self._leaf(colors, path)
        depth = len(path)
        explored: list[int] = []
        for u in cell:
            if self.prune and explored:
                fixing = [g for g in self.gens if all(g[p] == p for p in path)]
                if fixing:
                    orb = _orbits(self.s.v, fixing)
                    if any(orb[u] == orb[w] for w in explored):
                        continue
            res = self._dfs(self.s.individualize(colors, u), path + [u])
            explored.append(u)
            if res is not None and res < depth:
                return res
        return None


def _check_size(d: Design) -> None:
    if d.v > MAX_CANON_V:
        raise ValueError(f"v={d.v} exceeds the canonical-form cap of {MAX_CANON_V}")


def canonical_form(d: Design, prune: bool = True, check: bool = True) -> CanonicalForm:
    """Relabeling-invariant representative of ``d`` and the labeling reaching it."""
    _check_size(d)
    if check:
        verify_bibd(d)
    enc, lab = _Canonizer(d, prune).run()
    labeling = PointPermutation(tuple(lab))
    return CanonicalForm(Design(d.v, enc, d.raw), labeling)


def _screen(d1: Design, d2: Design) -> bool:
    return (
        d1.v == d2.v
        and d1.b == d2.b
        and sorted(b.bit_count() for b in d1.blocks) == sorted(b.bit_count() for b in d2.blocks)
    )


def are_isomorphic(d1: Design, d2: Design, check: bool = True) -> Optional[PointPermutation]:
    """A permutation mapping ``d1`` onto ``d2``, or None if none exists."""
    if check:
        verify_bibd(d1)
        verify_bibd(d2)
    if not _screen(d1, d2):
        return None
    c1 = canonical_form(d1, check=False)
    c2 = canonical_form(d2, check=False)
    if c1.design != c2.design:
        return None
    cert = c1.labeling.then(c2.labeling.inverse())
    if not verify_certificate(d1, d2, cert):
        raise AssertionError("canonical labelings produced an invalid certificate")
    return cert


def automorphism_group_order(d: Design) -> int:
    """|Aut(d)| as the product of orbit lengths along the first search path.

    For each level of the path the orbit of the chosen point under the
    stabilizer of the earlier points is found by searching each sibling
    subtree for a leaf equivalent to the first leaf.
    """
    _check_size(d)
    s = _Search(d)
    # first path
    nodes = [s.root]
    path: list[int] = []
    while True:
        cell = s.target_cell(nodes[-1])
        if cell is None:
            break
        path.append(cell[0])
        nodes.append(s.individualize(nodes[-1], cell[0]))
    first_lab = nodes[-1]
    target = s.encode(first_lab)
    shapes = [s.shape(c) for c in nodes]
    gens: list[list[int]] = []

    def find(colors: list[int], depth: int, prefix: list[int]) -> Optional[list[int]]:
        if s.shape(colors) != shapes[depth]:
            return None
        cell = s.target_cell(colors)
        if cell is None:
            return colors if s.encode(colors) == target else None
        explored: list[int] = []
        for u in cell:
            fixing = [g for g in gens if all(g[p] == p for p in prefix)]
            if explored and fixing:
                orb = _orbits(s.v, fixing)
                if any(orb[u] == orb[w] for w in explored):
                    continue
            hit = find(s.individualize(colors, u), depth + 1, prefix + [u])
            if hit is not None:
                return hit
            explored.append(u)
        return None

    order = 1
    for level in range(len(path) - 1, -1, -1):
        prefix = path[:level]
        cell = s.target_cell(nodes[level])
        assert cell is not None
        for u in cell:
            fixing = [g for g in gens if all(g[p] == p for p in prefix)]
            orb = _orbits(s.v, fixing)
            if orb[u] == orb[path[level]]:
                continue
            hit = find(s.individualize(nodes[level], u), level + 1, prefix + [u])
            if hit is not None:
                gens.append(_automorphism(first_lab, hit))
        fixing = [g for g in gens if all(g[p] == p for p in prefix)]
        orb = _orbits(s.v, fixing)
        order *= sum(1 for u in cell if orb[u] == orb[path[level]])
    return order
