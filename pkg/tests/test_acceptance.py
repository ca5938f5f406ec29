"""Acceptance gate: one PASS/FAIL line per criterion, each under its time limit.

Run ``python tests/test_acceptance.py`` for the bare report, or let pytest
collect it; both print the same lines.
"""
import math
import os
import random
import sys
import time
from itertools import combinations

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from blockgroup import (  # noqa: E402
    PointPermutation,
    apply_permutation,
    are_isomorphic,
    canonical_form,
    delta_closure_check,
    enumerate_delta_closed,
    gf2_rank,
    good_block_classes,
    hadamard_to_2design,
    hadamard_to_3design,
    hamada_bound_check,
    incidence_matrix,
    kantor_group,
    kimberley_group,
    lemma2_predicate,
    pg_complement,
    rref,
    sdp_biplane,
    sdp_check,
    sylvester_hadamard,
    verify_bibd,
    verify_certificate,
)
from blockgroup.enumeration import basis_design, weight_filtered_basis_search  # noqa: E402
from blockgroup.gf2 import GF2Matrix  # noqa: E402
from blockgroup.group import shape_exponent  # noqa: E402

from corpus import named_corpus  # noqa: E402
from oracles import closed_triples_v7, rank_lists, rref_lists  # noqa: E402


def c1_pg_complement_equality():
    for n in (3, 4, 5):
        d = pg_complement(n)
        p = verify_bibd(d)
        assert (p.v, p.k, p.lam) == (2**n - 1, 2 ** (n - 1), 2 ** (n - 2)), n
        rep = delta_closure_check(d)
        assert rep.closed and rep.dimension_n == n
        assert gf2_rank(incidence_matrix(d)) == n


def c2_forced_parameters():
    designs = [d for _, d in named_corpus()]
    designs += [basis_design(7, m.rows) for m in weight_filtered_basis_search(7, 3)]
    closed = 0
    for d in designs:
        if not delta_closure_check(d).closed:
            continue
        closed += 1
        p = verify_bibd(d)
        assert (p.v, p.b, p.k) == (4 * p.lam - 1, 4 * p.lam - 1, 2 * p.lam), p
    assert closed >= 30 + 4


def c3_rank_criterion():
    corpus = named_corpus()
    assert len(corpus) >= 20
    outcomes = set()
    for name, d in corpus:
        r = lemma2_predicate(d)
        assert r.consistent, name
        outcomes.add(r.closed)
    assert outcomes == {True, False}


def c4_rank_bound():
    checked = equal = 0
    for name, d in named_corpus():
        n = shape_exponent(verify_bibd(d))
        if n is None:
            continue
        h = hamada_bound_check(d)
        assert h.bound_holds, name
        iso = are_isomorphic(d, pg_complement(n)) is not None
        assert h.equality == iso, name
        checked += 1
        equal += h.equality
    assert checked > equal > 0


def c5_enumeration():
    oracle = closed_triples_v7()
    t = time.perf_counter()
    r7 = enumerate_delta_closed(7)
    assert time.perf_counter() - t < 60
    assert r7.labeled_count == len(oracle) == 30
    assert r7.class_count == 1 and r7.pg_certificates[0] is not None
    t = time.perf_counter()
    r15 = enumerate_delta_closed(15)
    assert time.perf_counter() - t < 3600
    assert r15.class_count == 1 and r15.pg_certificates[0] is not None
    assert r15.labeled_count == math.factorial(15) // 20160
    assert r15.orbit_identity_holds() and r15.all_bibd


def c6_sylvester():
    for n in (3, 4, 5):
        assert hadamard_to_2design(sylvester_hadamard(n)) == pg_complement(n)


def c7_kantor():
    d = sdp_biplane()
    assert verify_bibd(d).as_tuple()[:4] == (16, 16, 6, 2)
    assert len(list(combinations(range(d.b), 3))) == 560
    assert sdp_check(d).is_sdp
    for base in range(d.b):
        g = kantor_group(d, base)
        assert g.order == 16 and g.commutative and g.exponent_two and g.valid


def c8_kimberley():
    rep = good_block_classes(hadamard_to_3design(sylvester_hadamard(3)))
    assert len(rep.good_flags) == 14 and all(rep.good_flags)
    g = kimberley_group(rep)
    assert g.order == 8 and g.valid
    assert all(g.table[x][x] == 0 for x in range(8))
    assert all(g.table[x][y] == g.table[y][x] for x in range(8) for y in range(8))


def c9_isomorphism():
    rng = random.Random(99)
    for n in (3, 4):
        d = pg_complement(n)
        c = canonical_form(d).design
        for _ in range(100):
            p = list(range(d.v))
            rng.shuffle(p)
            e = apply_permutation(d, PointPermutation(tuple(p)))
            cert = are_isomorphic(d, e)
            assert cert is not None and verify_certificate(d, e, cert)
            assert canonical_form(e).design == c


def c10_kernels():
    rng = random.Random(7)
    for _ in range(1000):
        a, b = rng.getrandbits(64), rng.getrandbits(64)
        assert bin(a ^ b).count("1") == bin(a).count("1") + bin(b).count("1") - 2 * bin(a & b).count("1")
    for _ in range(1000):
        r, c = rng.randint(1, 12), rng.randint(1, 12)
        m = [[rng.getrandbits(1) for _ in range(c)] for _ in range(r)]
        g = GF2Matrix.from_lists(m)
        once = rref(g)
        assert rref(once) == once
        assert gf2_rank(g) == gf2_rank(g.transpose()) == rank_lists(m)
        assert sorted(x for x in once.rows if x) == sorted(
            x for x in GF2Matrix.from_lists(rref_lists(m)).rows if x
        )


CRITERIA = [
    (1, "equality case: pg_complement(3..5) parameters, closure, rank", c1_pg_complement_equality, 1),
    (2, "closed designs have parameters (4l-1, 2l, l)", c2_forced_parameters, 5),
    (3, "rank criterion consistent on the corpus", c3_rank_criterion, 5),
    (4, "rank >= n; equality iff isomorphic to pg_complement(n)", c4_rank_bound, 10),
    (5, "enumeration v=7 and v=15 give one class, the PG complement", c5_enumeration, 3600 + 60),
    (6, "Sylvester 2-design equals pg_complement(n), n=3..5", c6_sylvester, 1),
    (7, "Kantor group law on the SDP biplane", c7_kantor, 5),
    (8, "Kimberley group law on the Sylvester 3-(8,4,1) design", c8_kimberley, 1),
    (9, "isomorphism certificates and canonical forms", c9_isomorphism, 30),
    (10, "GF(2) kernel identities on 1000 random instances", c10_kernels, 10),
]


def evaluate(fn, limit):
    t = time.perf_counter()
    error = None
    try:
        fn()
    except Exception as exc:  # report, then let the caller decide
        error = exc
    elapsed = time.perf_counter() - t
    ok = error is None and elapsed < limit
    return ok, elapsed, error


def report_line(num, label, ok, elapsed, limit, error):
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] criterion {num:2d}: {label} ({elapsed:.2f}s, limit {limit}s)"
    if error is not None:
        line += f" -- {type(error).__name__}: {error}"
    return line


@pytest.mark.parametrize("num, label, fn, limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, label, fn, limit, capsys):
    ok, elapsed, error = evaluate(fn, limit)
    with capsys.disabled():
        print("\n" + report_line(num, label, ok, elapsed, limit, error))
    if error is not None:
        raise error
    assert elapsed < limit


if __name__ == "__main__":
    failed = 0
    for num, label, fn, limit in CRITERIA:
        ok, elapsed, error = evaluate(fn, limit)
        failed += not ok
        print(report_line(num, label, ok, elapsed, limit, error), flush=True)
    sys.exit(1 if failed else 0)
