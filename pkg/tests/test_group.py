import random
from itertools import combinations

import pytest

from blockgroup import (
    Design,
    delta_closure_check,
    forced_params,
    good_block_classes,
    hadamard_to_3design,
    hamada_bound_check,
    kantor_group,
    kimberley_group,
    lemma2_predicate,
    pg_complement,
    sdp_biplane,
    sdp_check,
    sylvester_hadamard,
    verify_bibd,
)
from blockgroup.constructions import pg_complement_block
from blockgroup.group import group_law_params

from corpus import non_pg_15_8_4, paley_hadamard, random_relabel, switched_hadamard_16


def test_closure_pg_complement_3():
    d = pg_complement(3)
    # oracle: B_a Δ B_b = B_{a^b} for all 21 pairs of functionals
    blocks = {pg_complement_block(3, a) for a in range(1, 8)}
    assert all(
        pg_complement_block(3, a) ^ pg_complement_block(3, b) in blocks
        for a, b in combinations(range(1, 8), 2)
    )
    rep = delta_closure_check(d)
    assert rep.closed and rep.group_order == 8 and rep.dimension_n == 3 and rep.elementary_abelian


def test_closure_pg_complement_4():
    rep = delta_closure_check(pg_complement(4))
    assert (rep.closed, rep.group_order, rep.dimension_n) == (True, 16, 4)


def test_closure_fano_fails(fano_plane):
    rep = delta_closure_check(fano_plane)
    assert not rep.closed
    i, j = rep.witness
    x = fano_plane.blocks[i] ^ fano_plane.blocks[j]
    # |B Δ B'| = 2k - 2λ = 4 while blocks have size 3
    assert x.bit_count() == 4 and x not in fano_plane.blocks


def test_closure_single_block():
    rep = delta_closure_check(Design(4, (0b0011,)))
    assert rep.closed and rep.group_order == 2 and rep.dimension_n == 1


@pytest.mark.parametrize(
    "lam, expected",
    [(1, (3, 3, 2, 1, 2)), (2, (7, 7, 4, 2, 4)), (4, (15, 15, 8, 4, 8))],
)
def test_forced_params(lam, expected):
    assert forced_params(lam).as_tuple() == expected


def test_forced_params_invalid():
    with pytest.raises(ValueError):
        forced_params(0)


def test_lemma2_predicate_examples(fano_plane):
    r = lemma2_predicate(pg_complement(3))
    assert (r.n_from_rank, r.closed, r.params_match, r.consistent) == (3, True, True, True)
    r = lemma2_predicate(fano_plane)
    assert (r.n_from_rank, r.closed, r.params_match, r.consistent) == (4, False, False, True)
    assert group_law_params(4) == (15, 15, 8, 4)
    r = lemma2_predicate(pg_complement(4))
    assert (r.n_from_rank, r.closed, r.params_match, r.consistent) == (4, True, True, True)


def test_hamada_bound_check_examples():
    h = hamada_bound_check(pg_complement(5))
    assert (h.n, h.rank, h.bound_holds, h.equality) == (5, 5, True, True)
    rng = random.Random(9)
    for _ in range(5):
        assert hamada_bound_check(random_relabel(pg_complement(4), rng)).rank == 4
    other = non_pg_15_8_4()
    assert not delta_closure_check(other).closed
    h = hamada_bound_check(other)
    assert h.rank >= 5 and not h.equality


def test_hamada_bound_check_rejects_wrong_shape(fano_plane):
    with pytest.raises(ValueError):
        hamada_bound_check(fano_plane)


def test_sdp_examples(fano_plane):
    assert sdp_check(sdp_biplane()).is_sdp
    rep = sdp_check(pg_complement(3))
    assert not rep.is_sdp
    d = pg_complement(3)
    i, j, k = rep.witness
    t = d.blocks[i] ^ d.blocks[j] ^ d.blocks[k]
    assert t not in d.blocks and d.full ^ t not in d.blocks
    # B_1 Δ B_2 Δ B_3 is empty
    assert pg_complement_block(3, 1) ^ pg_complement_block(3, 2) ^ pg_complement_block(3, 3) == 0
    assert not sdp_check(fano_plane).is_sdp


def test_sdp_exhaustive_triples_on_biplane():
    d = sdp_biplane()
    blocks = set(d.blocks)
    triples = list(combinations(d.blocks, 3))
    assert len(triples) == 560
    assert all((a ^ b ^ c) in blocks or (0xFFFF ^ a ^ b ^ c) in blocks for a, b, c in triples)


def test_kantor_group_biplane():
    d = sdp_biplane()
    g = kantor_group(d, 0)
    assert g.valid and g.order == 16
    for x in range(16):
        assert g.table[x][x] == 0
        assert g.table[0][x] == x


def test_kantor_rejects_non_sdp():
    with pytest.raises(ValueError):
        kantor_group(pg_complement(3), 0)


def test_kantor_group_every_base():
    d = sdp_biplane()
    for base in range(d.b):
        g = kantor_group(d, base)
        assert g.valid and g.table[base][base] == base


def test_kantor_base_out_of_range():
    with pytest.raises(IndexError):
        kantor_group(sdp_biplane(), 16)


def test_good_blocks_sylvester_3design():
    d = hadamard_to_3design(sylvester_hadamard(3))
    rep = good_block_classes(d)
    assert all(rep.good_flags) and len(rep.good_flags) == 14
    assert len(rep.classes) == 7 == sum(rep.good_flags) // 2
    assert rep.group_table_ok


def test_good_blocks_with_failures():
    d = hadamard_to_3design(switched_hadamard_16())
    rep = good_block_classes(d)
    assert 0 < sum(rep.good_flags) < d.b
    assert len(rep.classes) == sum(rep.good_flags) // 2
    full = d.full
    for i, good in enumerate(rep.good_flags):
        comp = d.index_of()[full ^ d.blocks[i]]
        assert rep.good_flags[comp] == good
        if not good:
            j = rep.witnesses[i]
            assert d.blocks[i] ^ d.blocks[j] not in d.blocks
            assert d.blocks[j] not in (d.blocks[i], full ^ d.blocks[i])
    g = kimberley_group(rep)
    assert g.valid and g.order == len(rep.classes) + 1


def test_no_good_blocks_in_paley_3design():
    rep = good_block_classes(hadamard_to_3design(paley_hadamard()))
    assert not any(rep.good_flags)
    with pytest.raises(ValueError):
        kimberley_group(rep)


def test_good_blocks_precondition(fano_plane):
    with pytest.raises(ValueError):
        good_block_classes(fano_plane)


def test_kimberley_group():
    rep = good_block_classes(hadamard_to_3design(sylvester_hadamard(3)))
    g = kimberley_group(rep)
    assert g.valid and g.order == 8
    for x in range(8):
        assert g.table[x][x] == 0
        assert g.table[0][x] == x == g.table[x][0]


def test_closure_invariant_under_relabeling():
    rng = random.Random(2)
    for d in (pg_complement(3), pg_complement(4), Design.from_blocks(7, [{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}])):
        base = delta_closure_check(d)
        for _ in range(20):
            r = delta_closure_check(random_relabel(d, rng))
            assert (r.closed, r.dimension_n) == (base.closed, base.dimension_n)


def test_closed_corpus_has_forced_params(corpus):
    for name, d in corpus:
        if delta_closure_check(d).closed:
            p = verify_bibd(d)
            assert p.as_tuple() == forced_params(p.lam).as_tuple(), name
