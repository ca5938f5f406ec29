"""Pure-Python kernels; the reference behaviour for ``_speedups``."""

from __future__ import annotations

from typing import Callable, Iterator, Optional, Sequence

HEARTBEAT_MASK = (1 << 22) - 1


def rank(rows: Sequence[int], ncols: int) -> int:
    pivots: dict[int, int] = {}
    for x in rows:
        while x:
            low = x & -x
            p = pivots.get(low)
            if p is None:
                pivots[low] = x
                break
            x ^= p
    return len(pivots)


def rref(rows: Sequence[int], ncols: int) -> list[int]:
    pivots: dict[int, int] = {}
    for x in rows:
        while x:
            low = x & -x
            p = pivots.get(low)
            if p is None:
                pivots[low] = x
                break
            x ^= p
    order = sorted(pivots)
    basis = [pivots[k] for k in order]
    # back-substitute from the highest pivot down
    for i in range(len(basis) - 1, -1, -1):
        low = order[i]
        for j in range(i):
            if basis[j] & low:
                basis[j] ^= basis[i]
    return basis


def _rows_for_level(v: int, n: int, d: int, cls: list[int], pivot: int) -> Iterator[int]:
    """Rows extending a depth-``d`` partial basis, in increasing order.

    ``cls[p]`` is the column of point ``p`` in the current basis. A new
    row takes exactly ``2**(n-1-d)`` points from every column class,
    only points above ``pivot``, and its lowest point must lie in the
    zero-column class.
    """
    k = 1 << (n - 1 - d)
    nclass = 1 << d
    need = [k] * nclass
    # avail[p] = points of class cls[p] in (pivot, p)
    avail = [0] * v
    seen = [0] * nclass
    for p in range(pivot + 1, v):
        avail[p] = seen[cls[p]]
        seen[cls[p]] += 1
    if any(seen[c] < k for c in range(nclass)):
        return

    def rec(pos: int, r: int) -> Iterator[int]:
        if pos == pivot:
            yield r
            return
        c = cls[pos]
        if need[c] <= avail[pos]:
            yield from rec(pos - 1, r)
        if need[c] > 0 and (c == 0 or need[0] > 0):
            need[c] -= 1
            yield from rec(pos - 1, r | (1 << pos))
            need[c] += 1

    yield from rec(v - 1, 0)


def iter_bases(v: int, n: int, first_rows: Optional[Sequence[int]] = None) -> Iterator[tuple[int, ...]]:
    """Yield every RREF basis of an n-dim subspace of GF(2)^v whose
    nonzero vectors all have weight 2**(n-1), in scan order."""
    allowed = None if first_rows is None else set(first_rows)
    rows: list[int] = []

    def rec(d: int, cls: list[int], pivot: int) -> Iterator[tuple[int, ...]]:
        for r in _rows_for_level(v, n, d, cls, pivot):
            if d == 0 and allowed is not None and r not in allowed:
                continue
            rows.append(r)
            if d + 1 == n:
                yield tuple(rows)
            else:
                bit = 1 << d
                ncls = [c | bit if (r >> p) & 1 else c for p, c in enumerate(cls)]
                yield from rec(d + 1, ncls, (r & -r).bit_length() - 1)
            rows.pop()

    yield from rec(0, [0] * v, -1)


def _leaf_stats(v: int, n: int, rows: Sequence[int]) -> tuple[bool, bool]:
    """(pair coverage constant, columns distinct and nonzero)."""
    blocks = [0]
    for r in rows:
        blocks += [x ^ r for x in blocks]
    blocks = blocks[1:]
    prow = [0] * v
    for j, b in enumerate(blocks):
        p = 0
        while b:
            if b & 1:
                prow[p] |= 1 << j
            b >>= 1
            p += 1
    lam = (prow[0] & prow[1]).bit_count()
    bibd = all(
        (prow[p] & prow[q]).bit_count() == lam for p in range(v) for q in range(p + 1, v)
    )
    cols = [0] * v
    for i, r in enumerate(rows):
        for p in range(v):
            if (r >> p) & 1:
                cols[p] |= 1 << i
    simplex = 0 not in cols and len(set(cols)) == v
    return bibd, simplex


def search(
    v: int,
    n: int,
    first_rows: Optional[Sequence[int]] = None,
    heartbeat: Optional[Callable[[int, int], None]] = None,
) -> dict:
    """Aggregate the basis search without materialising every leaf.

    Returns node and leaf counts, the number of leaves whose columns are
    distinct and nonzero, the number failing pair coverage, the first
    such "simplex" basis, and every other basis verbatim.
    """
    nodes = leaves = simplex = bibd_fail = 0
    first_simplex = None
    others: list[tuple[int, ...]] = []
    allowed = None if first_rows is None else set(first_rows)
    rows: list[int] = []

    def rec(d: int, cls: list[int], pivot: int) -> None:
        nonlocal nodes, leaves, simplex, bibd_fail, first_simplex
        for r in _rows_for_level(v, n, d, cls, pivot):
            if d == 0 and allowed is not None and r not in allowed:
                continue
            nodes += 1
            if heartbeat is not None and not nodes & HEARTBEAT_MASK:
                heartbeat(nodes, leaves)
            rows.append(r)
            if d + 1 == n:
                leaves += 1
                ok, simp = _leaf_stats(v, n, rows)
                if not ok:
                    bibd_fail += 1
                if simp:
                    simplex += 1
                    if first_simplex is None:
                        first_simplex = tuple(rows)
                else:
                    others.append(tuple(rows))
            else:
                bit = 1 << d
                ncls = [c | bit if (r >> p) & 1 else c for p, c in enumerate(cls)]
                rec(d + 1, ncls, (r & -r).bit_length() - 1)
            rows.pop()

    rec(0, [0] * v, -1)
    return {
        "nodes": nodes,
        "leaves": leaves,
        "simplex": simplex,
        "bibd_fail": bibd_fail,
        "first_simplex": first_simplex,
        "others": others,
    }
