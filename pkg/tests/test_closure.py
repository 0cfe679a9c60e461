import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from parityperm.closure import (
    ClosureBudgetError, boundary_counterexample_check, boundary_mapping, closure,
    generated_residue_check, generated_monoid, is_composition_closed, top_rank_generators,
    top_rank_words,
)
from parityperm.groups import parity_group
from parityperm.mapset import MonoidSet
from parityperm.monoids import classical_monoid, full_monoid, parity_monoid
from parityperm.orientation import classify_mapping
from parityperm.perm import CapError, cyclic_group, cyclic_shift, dihedral_group, identity, reversal


def word_set(mset):
    return {tuple(int(x) for x in w) for w in mset.words()}


class TestClosure:
    def test_cyclic(self):
        m, stats = closure([cyclic_shift(3).images])
        assert m.size == 3
        assert word_set(m) == {g.images for g in cyclic_group(3)}
        assert stats.generators_used == 1

    def test_empty_generators(self):
        m, _ = closure([], n=4)
        assert word_set(m) == {(0, 1, 2, 3)}

    def test_empty_needs_n(self):
        with pytest.raises(ValueError):
            closure([])

    def test_mixed_sizes(self):
        with pytest.raises(ValueError):
            closure([(0, 1), (0, 1, 2)])

    def test_budget(self):
        with pytest.raises(ClosureBudgetError) as info:
            closure([(1, 2, 3, 4, 5, 6, 0)], budget_mb=1)
        assert info.value.stats.generators_used == 0

    def test_cap(self):
        with pytest.raises(CapError):
            closure([tuple(range(9))])

    def test_left_check(self):
        m, _ = closure(top_rank_words(5, 3), check_left=True)
        assert m == classical_monoid(5, "OP")

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 4).flatmap(lambda n: st.lists(
        st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(tuple), min_size=1, max_size=4)))
    def test_matches_naive_closure(self, gens):
        n = len(gens[0])
        m, _ = closure(gens)
        assert word_set(m) == oracles.generated(gens, n)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 5).flatmap(lambda n: st.lists(
        st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(tuple), min_size=0, max_size=5)
        .map(lambda g: (n, g))))
    def test_idempotent(self, case):
        n, gens = case
        m, _ = closure(gens, n=n)
        again, _ = closure(m, n=n)
        assert again == m
        assert is_composition_closed(m)

    @pytest.mark.parametrize("seed", range(10))
    def test_monotone(self, seed):
        rng = random.Random(seed)
        n = rng.randint(3, 5)
        pool = [tuple(rng.randrange(n) for _ in range(n)) for _ in range(6)]
        small = pool[:rng.randint(0, 3)]
        a, _ = closure(small, n=n)
        b, _ = closure(pool, n=n)
        assert a.issubset(b)

    def test_stats_count_products(self):
        _, stats = closure(top_rank_words(5, 2))
        assert stats.products_evaluated > 0
        assert stats.generator_count == len(top_rank_words(5, 2))
        assert 1 <= stats.generators_used <= stats.generator_count

    def test_not_closed(self):
        m = MonoidSet.from_words(3, [(0, 1, 2), (1, 2, 0)])
        assert not is_composition_closed(m)
        m = MonoidSet.from_words(3, [(1, 2, 0), (2, 0, 1)])
        assert not is_composition_closed(m)


class TestGenerators:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_top_rank_words(self, n):
        for t in range(1, n + 1):
            expected = {w for w in oracles.all_maps(n)
                        if oracles.rank(w) >= n - 1 and oracles.in_parity_monoid(w, t)}
            assert {g.images for g in top_rank_generators(n, t)} == expected

    @pytest.mark.parametrize("n", range(3, 7))
    def test_classical_generating_sets(self, n):
        o = classical_monoid(n, "O")
        o_top = o.rank_slice(n - 1)
        assert closure(o_top, n=n)[0] == o
        rho = [reversal(n).images]
        assert closure(np.vstack([o.words(), rho]), n=n)[0] == classical_monoid(n, "M")
        rot = [g.images for g in cyclic_group(n)]
        assert closure(np.vstack([o.words(), rot]), n=n)[0] == classical_monoid(n, "OP")
        dih = [g.images for g in dihedral_group(n)]
        assert closure(np.vstack([o.words(), dih]), n=n)[0] == classical_monoid(n, "OR")


class TestGeneratedMonoids:
    def test_n4_width2(self):
        m, _ = generated_monoid(4, 2)
        assert m.size == oracles.count_maps(4, oracles.is_o) == 35
        assert m == classical_monoid(4, "O")

    def test_n5_width3(self):
        m, _ = generated_monoid(5, 3)
        assert m.size == oracles.count_maps(5, oracles.is_op)
        assert m == classical_monoid(5, "OP")

    @pytest.mark.parametrize("n,t", [(6, 2), (6, 3), (7, 4), (5, 2), (7, 2), (7, 3)])
    def test_residue_shape(self, n, t):
        r = generated_residue_check(n, t)
        assert r.passed, r.line()

    def test_residue_shape_range(self):
        with pytest.raises(ValueError):
            generated_residue_check(6, 4)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_extreme_widths(self, n):
        assert generated_monoid(n, 1)[0] == full_monoid(n)
        assert generated_monoid(n, n)[0] == parity_monoid(n, n)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_units_and_containment(self, n):
        perms = full_monoid(n) - full_monoid(n, n - 1)
        for t in range(1, n + 1):
            m, _ = generated_monoid(n, t)
            assert (m & perms) == MonoidSet.from_words(n, parity_group(n, t).words)
            assert m.issubset(parity_monoid(n, t))


class TestBoundary:
    def test_mapping(self):
        assert boundary_mapping(6).images == (2, 3, 0, 1, 4, 4)
        with pytest.raises(ValueError):
            boundary_mapping(5)

    def test_n6(self):
        alpha = boundary_mapping(6)
        m, _ = generated_monoid(6, 4)
        assert alpha.images in m
        assert not classify_mapping(alpha).oriented
        assert alpha.images not in classical_monoid(6, "OR")
        assert m.size == 11138

    def test_n6_width3_excludes(self):
        alpha = boundary_mapping(6)
        m, _ = generated_monoid(6, 3)
        assert m == classical_monoid(6, "OP")
        assert alpha.images not in m

    def test_report(self):
        reps = boundary_counterexample_check(6)
        assert len(reps) == 4 and all(r.passed for r in reps)
        assert reps[2].witness == "2 3 0 1 4 4"

    def test_generated_contains_identity(self):
        m, _ = generated_monoid(6, 4)
        assert identity(6).images in m


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(tuple), min_size=1, max_size=5)))
def test_products_cover_non_generators(gens):
    m, stats = closure(gens)
    assert stats.products_evaluated >= m.size - stats.generator_count


def test_empty_generating_set_inserts_identity_without_products():
    m, stats = closure([], n=3)
    assert m.size == 1 and stats.products_evaluated == 0
