import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from parityperm.orientation import (
    RankTooSmall, classify_mapping, classify_sequence, cyclic_descents,
    monotone_via_injective_quadruples, op_via_injective_triples, or_via_injective_quadruples,
    order_preserving_via_injective_pairs,
)
from parityperm.perm import compose, cyclic_shift, dihedral_group, identity, reversal
from parityperm.tables import (
    all_words, anticyclic, cyclic, order_preserving, order_reversing, ranks,
    via_injective_pairs, via_injective_quadruples, via_injective_triples,
)


def maps(min_n=1, max_n=8):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(tuple))


class TestSequences:
    def test_one_descent(self):
        c = classify_sequence((1, 2, 3, 0))
        assert c.is_cyclic and not c.is_anticyclic

    def test_constant_is_both(self):
        c = classify_sequence((5, 5, 5))
        assert c.is_cyclic and c.is_anticyclic

    def test_neither(self):
        assert oracles.descents_with_wrap((0, 2, 1, 3)) == 2
        c = classify_sequence((0, 2, 1, 3))
        assert not c.is_oriented

    def test_short_sequences_are_both(self):
        for seq in [(3,), (0, 1), (1, 0)]:
            c = classify_sequence(seq)
            assert c.is_cyclic and c.is_anticyclic

    @given(st.lists(st.integers(0, 9), min_size=1, max_size=12))
    def test_reverse_swaps(self, seq):
        a = classify_sequence(seq)
        b = classify_sequence(seq[::-1])
        assert (a.is_cyclic, a.is_anticyclic) == (b.is_anticyclic, b.is_cyclic)

    @given(st.lists(st.integers(0, 9), min_size=1, max_size=12))
    def test_descents_match_oracle(self, seq):
        assert cyclic_descents(seq) == oracles.descents_with_wrap(seq)


class TestMappingFlags:
    def test_identity_one(self):
        assert all(classify_mapping(identity(1)).as_dict().values())

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_identity(self, n):
        f = classify_mapping(identity(n))
        assert f.order_preserving and f.monotone and f.orientation_preserving and f.oriented
        assert not f.order_reversing and not f.orientation_reversing

    def test_gap_witness_not_op(self):
        assert not classify_mapping((0, 1, 0, 1, 1)).orientation_preserving

    def test_reversal(self):
        f = classify_mapping(reversal(6))
        assert f.order_reversing and f.orientation_reversing and not f.order_preserving

    @given(maps())
    def test_flags_match_oracle(self, w):
        f = classify_mapping(w)
        assert f.order_preserving == oracles.is_o(w)
        assert f.monotone == oracles.is_m(w)
        assert f.orientation_preserving == oracles.is_op(w)
        assert f.oriented == oracles.is_or(w)

    @given(maps(min_n=3), st.data())
    def test_dihedral_preserves_orientedness(self, w, data):
        n = len(w)
        xi = data.draw(st.sampled_from(sorted(dihedral_group(n), key=lambda g: g.images)))
        assert classify_mapping(compose(xi, w)).oriented == classify_mapping(w).oriented


class TestRestrictionForms:
    def test_shift_op(self):
        assert op_via_injective_triples(cyclic_shift(5))

    def test_rank_two_rejected(self):
        with pytest.raises(RankTooSmall, match="rank >= 3"):
            op_via_injective_triples((0, 1, 0, 1, 1))

    def test_width4_witness_op(self):
        w = (2, 2, 3, 0, 1)
        assert oracles.descents_with_wrap(w) == 1
        assert op_via_injective_triples(w)
        assert classify_mapping(w).orientation_preserving
        assert not monotone_via_injective_quadruples(w)

    def test_reversal_oriented(self):
        assert or_via_injective_quadruples(reversal(7))
        assert monotone_via_injective_quadruples(reversal(8))

    def test_width5_witness_not_oriented(self):
        assert not or_via_injective_quadruples((3, 4, 1, 2, 0))

    def test_quadruple_rank_gate(self):
        with pytest.raises(RankTooSmall):
            or_via_injective_quadruples((0, 1, 2, 2, 2))
        with pytest.raises(RankTooSmall):
            monotone_via_injective_quadruples((0, 1, 2, 2, 2))

    def test_order_preserving_rank4(self):
        for w in [(0, 1, 2, 3, 4), (0, 0, 1, 2, 3), (0, 1, 1, 2, 3, 3)]:
            assert monotone_via_injective_quadruples(w)

    def test_dihedral_then_order_preserving(self):
        # xi in D_7 followed by an order-preserving map of rank >= 4
        deltas = [w for w in itertools.product(range(7), repeat=7) if oracles.is_o(w) and oracles.rank(w) >= 4]
        deltas = deltas[::97]
        for xi in dihedral_group(7):
            for d in deltas:
                alpha = compose(xi, d)
                assert or_via_injective_quadruples(alpha)
                assert classify_mapping(alpha).oriented

    @given(maps(min_n=3, max_n=7))
    def test_agree_with_direct_forms(self, w):
        f = classify_mapping(w)
        assert order_preserving_via_injective_pairs(w) == f.order_preserving
        r = len(set(w))
        if r >= 3:
            assert op_via_injective_triples(w) == f.orientation_preserving
        if r >= 4:
            assert or_via_injective_quadruples(w) == f.oriented
            assert monotone_via_injective_quadruples(w) == f.monotone


@pytest.mark.parametrize("n", [4, 5, 6])
def test_vectorised_tables_match_scalar(n):
    words = all_words(n)
    assert np.array_equal(order_preserving(words), [oracles.is_o(w) for w in map(tuple, words)])
    assert np.array_equal(order_reversing(words), [oracles.is_rev(w) for w in map(tuple, words)])
    assert np.array_equal(cyclic(words), [oracles.is_op(w) for w in map(tuple, words)])
    anti = [oracles.ascents_with_wrap(w) <= 1 for w in map(tuple, words)]
    assert np.array_equal(anticyclic(words), anti)
    assert np.array_equal(ranks(words), [oracles.rank(w) for w in map(tuple, words)])


@pytest.mark.parametrize("n", [5, 6])
def test_vectorised_restriction_forms(n):
    words = all_words(n)
    r = ranks(words)
    ops = cyclic(words)
    oriented = ops | anticyclic(words)
    mono = order_preserving(words) | order_reversing(words)
    assert np.array_equal(via_injective_pairs(words), order_preserving(words))
    assert np.array_equal(via_injective_triples(words)[r >= 3], ops[r >= 3])
    assert np.array_equal(via_injective_quadruples(words, "oriented")[r >= 4], oriented[r >= 4])
    assert np.array_equal(via_injective_quadruples(words, "monotone")[r >= 4], mono[r >= 4])


def test_sharded_scan_matches_single_worker():
    from parityperm import tables
    single = np.concatenate([v for _, v in tables.scan_all(6, cyclic)])
    try:
        tables.set_workers(4)
        shards = tables.scan_all(6, cyclic)
    finally:
        tables.set_workers(1)
    assert len(shards) == 4
    assert [s for s, _ in shards] == sorted(s for s, _ in shards)
    assert np.array_equal(np.concatenate([v for _, v in shards]), single)
