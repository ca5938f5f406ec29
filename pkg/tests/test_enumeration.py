import os
from itertools import combinations

import pytest

from blockgroup import (
    delta_closure_check,
    enumerate_delta_closed,
    gf2_rank,
    incidence_matrix,
    kernels,
    pg_complement,
    rref,
    verify_bibd,
    verify_certificate,
)
from blockgroup.enumeration import (
    basis_design,
    column_certificate,
    dimension_for,
    weight_filtered_basis_search,
    write_results,
)
from blockgroup.gf2 import GF2Matrix, indices_to_bits

from oracles import closed_triples_v7

V7_NODE_BUDGET = 11811  # Gaussian binomial [7 choose 3]_2: all 3-dim subspaces of GF(2)^7


@pytest.fixture(scope="module")
def v7():
    return enumerate_delta_closed(7)


def _oracle_bases():
    out = set()
    for blocks in closed_triples_v7():
        rows = tuple(indices_to_bits(sorted(b)) for b in blocks)
        basis = rref(GF2Matrix(7, rows)).rows
        out.add(tuple(sorted(r for r in basis if r)))
    return out


def test_v7_matches_triple_oracle(v7):
    oracle = _oracle_bases()
    assert len(oracle) == 30
    assert v7.labeled_count == 30
    found = {tuple(sorted(m.rows)) for m in weight_filtered_basis_search(7, 3)}
    assert found == oracle


def test_v7_single_class(v7):
    assert v7.class_count == 1
    assert v7.class_sizes == [30]
    assert v7.automorphism_orders == [168]
    assert v7.orbit_identity_holds()
    assert v7.all_bibd
    cert = v7.pg_certificates[0]
    assert cert is not None and verify_certificate(v7.class_representatives[0], pg_complement(3), cert)


def test_v7_search_effort_and_golden_basis(v7):
    assert 0 < v7.nodes_visited <= V7_NODE_BUDGET
    assert v7.first_basis == (53, 86, 120)


def test_every_emitted_set_is_closed_design():
    for m in weight_filtered_basis_search(7, 3):
        d = basis_design(7, m.rows)
        rep = delta_closure_check(d)
        assert rep.closed and rep.dimension_n == 3
        assert verify_bibd(d).as_tuple() == (7, 7, 4, 2, 4)
        assert gf2_rank(incidence_matrix(d)) == 3
        cert = column_certificate(7, m.rows)
        assert cert is not None and verify_certificate(d, pg_complement(3), cert)


def test_bases_are_rref_in_lexicographic_order():
    stream = [m.rows for m in weight_filtered_basis_search(7, 3)]
    assert stream == sorted(stream)
    for rows in stream:
        pivots = [(r & -r).bit_length() - 1 for r in rows]
        assert pivots == sorted(set(pivots))
        assert rref(GF2Matrix(7, rows)).rows == rows


def test_v3_boundary():
    res = enumerate_delta_closed(3)
    assert res.labeled_count == 1 and res.class_count == 1
    assert res.first_basis == (5, 6)
    assert res.pg_certificates[0] is not None


@pytest.mark.parametrize("v", [0, 1, 2, 4, 6, 8, 14, 16])
def test_bad_v(v):
    with pytest.raises(ValueError):
        enumerate_delta_closed(v)


def test_dimension_for():
    assert [dimension_for(v) for v in (3, 7, 15, 31)] == [2, 3, 4, 5]


def test_v31_needs_allow_long():
    with pytest.raises(ValueError, match="allow_long"):
        enumerate_delta_closed(31)


def test_workers_deterministic(v7):
    par = enumerate_delta_closed(7, workers=2)
    assert par.summary() == v7.summary()
    assert par.first_basis == v7.first_basis


def test_python_backend_agrees(v7):
    prev = kernels.BACKEND
    kernels.use("python")
    try:
        res = enumerate_delta_closed(7)
    finally:
        kernels.use(prev)
    assert res.backend == "python"
    s1, s2 = res.summary(), v7.summary()
    s1.pop("backend"), s2.pop("backend")
    assert s1 == s2


def test_write_results(v7, tmp_path):
    paths = write_results(v7, str(tmp_path / "out"))
    assert [os.path.basename(p) for p in paths] == ["summary.tsv", "class_0.txt"]
    lines = open(paths[0]).read().splitlines()
    assert lines[1].split("\t") == ["7", "3", "30", "1"]
    from blockgroup import parse_design

    assert parse_design(open(paths[1]).read()) == v7.class_representatives[0]


def test_labeled_count_v7_brute_force():
    # independent of the triple oracle: count 3-subsets of weight-4 vectors
    # generating a closed 7-set, divided by the number of bases per space
    vecs = [sum(1 << i for i in c) for c in combinations(range(7), 4)]
    vs = set(vecs)
    gens = 0
    for a, b, c in combinations(vecs, 3):
        span = {a, b, c, a ^ b, a ^ c, b ^ c, a ^ b ^ c}
        if len(span) == 7 and span <= vs:
            gens += 1
    # each 3-dim space has 28 unordered bases
    assert gens % 28 == 0 and gens // 28 == 30
