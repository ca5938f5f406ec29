"""Exhaustive search for Δ-closed block sets on 2^n - 1 points.

A block set closed under symmetric difference, together with ∅, is an
n-dimensional subspace of GF(2)^v whose nonzero vectors all have weight
2^(n-1). Each subspace is visited once through its RREF basis; the
designs found are then sorted into isomorphism classes.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from . import kernels
from .constructions import pg_complement
from .design import Design, NotBIBDError, format_design, verify_bibd
from .gf2 import GF2Matrix, span
from .isomorphism import (
    PointPermutation,
    are_isomorphic,
    automorphism_group_order,
    canonical_form,
    verify_certificate,
)

MAX_N = 4
LONG_N = 5
PARALLEL_ROOT_LIMIT = 1_000_000


def dimension_for(v: int) -> int:
    n = (v + 1).bit_length() - 1
    if v < 1 or (1 << n) != v + 1:
        raise ValueError(f"v={v} is not of the form 2^n - 1")
    return n


def _check_range(n: int, allow_long: bool) -> None:
    if n < 2:
        raise ValueError("need n >= 2 (v >= 3)")
    if n > LONG_N:
        raise ValueError(f"n={n} is beyond the supported range (n <= {LONG_N})")
    if n > MAX_N and not allow_long:
        raise ValueError(f"n={n} needs allow_long; the search space grows super-polynomially")


def basis_design(v: int, rows: Sequence[int]) -> Design:
    """The design whose blocks are the nonzero vectors spanned by ``rows``."""
    return Design(v, tuple(x for x in span(rows) if x))


def column_certificate(v: int, rows: Sequence[int]) -> Optional[PointPermutation]:
    """Map point p to the point of PG(n-1,2) named by its column in the basis.

    When the columns are distinct and nonzero, block ``{p : <a, col_p> = 1}``
    lands on block ``a`` of the PG(n-1,2) complement, so this map is an
    isomorphism onto ``pg_complement(n)``.
    """
    cols = []
    for p in range(v):
        col = 0
        for i, r in enumerate(rows):
            col |= ((r >> p) & 1) << i
        cols.append(col)
    if 0 in cols or len(set(cols)) != v or max(cols) != v:
        return None
    return PointPermutation(tuple(c - 1 for c in cols))


def weight_filtered_basis_search(v: int, n: int) -> Iterator[GF2Matrix]:
    """Stream RREF bases (pivot = lowest set bit) of every n-dim subspace of
    GF(2)^v with all nonzero weights 2^(n-1), rows in pivot order, bases in lexicographic order."""
    for rows in kernels.backend.iter_bases(v, n):
        yield GF2Matrix(v, rows)


@dataclass
class EnumerationResult:
    v: int
    n: int
    labeled_count: int
    class_representatives: list[Design]
    class_sizes: list[int]
    all_bibd: bool
    nodes_visited: int
    first_basis: Optional[tuple[int, ...]] = None
    automorphism_orders: list[int] = field(default_factory=list)
    pg_certificates: list[Optional[PointPermutation]] = field(default_factory=list)
    backend: str = ""

    @property
    def class_count(self) -> int:
        return len(self.class_representatives)

    def orbit_identity_holds(self) -> bool:
        """Each class holds v!/|Aut| labeled designs."""
        fact = math.factorial(self.v)
        return all(
            size * aut == fact for size, aut in zip(self.class_sizes, self.automorphism_orders)
        )

    def summary(self) -> dict:
        return {
            "v": self.v,
            "n": self.n,
            "labeled_count": self.labeled_count,
            "class_count": self.class_count,
            "class_sizes": list(self.class_sizes),
            "automorphism_orders": list(self.automorphism_orders),
            "all_bibd": self.all_bibd,
            "nodes_visited": self.nodes_visited,
            "isomorphic_to_pg_complement": [c is not None for c in self.pg_certificates],
            "orbit_identity": self.orbit_identity_holds(),
            "backend": self.backend,
        }


def _search_chunk(args):
    v, n, chunk, backend_name = args
    kernels.use(backend_name)
    return kernels.backend.search(v, n, chunk)


def _merge(parts: Sequence[dict]) -> dict:
    out = {"nodes": 0, "leaves": 0, "simplex": 0, "bibd_fail": 0, "first_simplex": None, "others": []}
    for part in parts:
        for key in ("nodes", "leaves", "simplex", "bibd_fail"):
            out[key] += part[key]
        if out["first_simplex"] is None:
            out["first_simplex"] = part["first_simplex"]
        out["others"].extend(part["others"])
    return out


def _run_search(v: int, n: int, workers: int, heartbeat) -> dict:
    root = math.comb(v, 1 << (n - 1))
    if workers <= 1 or root > PARALLEL_ROOT_LIMIT:
        return kernels.backend.search(v, n, None, heartbeat)
    from ._purepy import _rows_for_level

    firsts = list(_rows_for_level(v, n, 0, [0] * v, -1))
    size = -(-len(firsts) // workers)
    chunks = [firsts[i : i + size] for i in range(0, len(firsts), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_search_chunk, [(v, n, c, kernels.BACKEND) for c in chunks]))
    return _merge(parts)


def enumerate_delta_closed(
    v: int,
    allow_long: bool = False,
    workers: int = 1,
    heartbeat: Optional[Callable[[int, int], None]] = None,
) -> EnumerationResult:
    n = dimension_for(v)
    _check_range(n, allow_long)
    raw = _run_search(v, n, workers, heartbeat)

    reps: list[Design] = []
    sizes: list[int] = []
    all_bibd = raw["bibd_fail"] == 0
    first_basis = None
    pg = pg_complement(n)

    def check(d: Design) -> bool:
        try:
            verify_bibd(d)
        except NotBIBDError:
            return False
        return True

    if raw["simplex"]:
        rep = basis_design(v, raw["first_simplex"])
        cert = column_certificate(v, raw["first_simplex"])
        if cert is None or not verify_certificate(rep, pg, cert):
            raise AssertionError("column certificate failed on the representative")
        all_bibd &= check(rep)
        reps.append(rep)
        sizes.append(raw["simplex"])
        first_basis = raw["first_simplex"]

    # designs whose columns repeat or vanish: classify by canonical form
    buckets: dict[Design, int] = {}
    for rows in raw["others"]:
        d = basis_design(v, rows)
        ok = check(d)
        all_bibd &= ok
        if first_basis is None:
            first_basis = rows
        key = canonical_form(d, check=False).design
        if key not in buckets:
            buckets[key] = len(reps)
            reps.append(d)
            sizes.append(0)
        sizes[buckets[key]] += 1

    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if are_isomorphic(reps[i], reps[j], check=False) is not None:
                raise AssertionError(f"class representatives {i} and {j} are isomorphic")

    certs = []
    for rep in reps:
        certs.append(are_isomorphic(rep, pg, check=False) if check(rep) else None)

    return EnumerationResult(
        v=v,
        n=n,
        labeled_count=raw["leaves"],
        class_representatives=reps,
        class_sizes=sizes,
        all_bibd=all_bibd,
        nodes_visited=raw["nodes"],
        first_basis=first_basis,
        automorphism_orders=[automorphism_group_order(r) for r in reps],
        pg_certificates=certs,
        backend=kernels.BACKEND,
    )


def write_results(result: EnumerationResult, out_dir: str) -> list[str]:
    """Write ``summary.tsv`` and ``class_<i>.txt`` per representative."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    summary = os.path.join(out_dir, "summary.tsv")
    with open(summary, "w") as fh:
        fh.write("v\tn\tlabeled_count\tclass_count\n")
        fh.write(f"{result.v}\t{result.n}\t{result.labeled_count}\t{result.class_count}\n")
    paths.append(summary)
    for i, rep in enumerate(result.class_representatives):
        path = os.path.join(out_dir, f"class_{i}.txt")
        with open(path, "w") as fh:
            fh.write(format_design(rep))
        paths.append(path)
    return paths
