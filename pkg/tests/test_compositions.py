"""Exact composition order: products, weights, tie groups, selection."""

import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from setshaping import (
    ClassOrder,
    ResourceLimitError,
    class_order,
    class_weight,
    composition_count,
    composition_info_bits,
    enumerate_compositions,
    exact_compare,
    multinomial,
    order_product,
    sorted_compositions,
)
from setshaping.compositions import check_composition_cap


def compositions():
    return st.integers(min_value=2, max_value=5).flatmap(
        lambda a: st.integers(min_value=1, max_value=12).flatmap(
            lambda n: st.sampled_from(list(enumerate_compositions(n, a)))
        )
    )


class TestCounting:
    def test_composition_count_is_stars_and_bars(self):
        for n in range(1, 8):
            for a in range(1, 6):
                assert composition_count(n, a) == math.comb(n + a - 1, a - 1)

    def test_enumeration_length_matches_count(self):
        for n, a in [(1, 2), (4, 3), (6, 2), (5, 4)]:
            comps = list(enumerate_compositions(n, a))
            assert len(comps) == composition_count(n, a)
            assert len(set(comps)) == len(comps)
            assert all(sum(c) == n and len(c) == a for c in comps)

    def test_enumeration_is_lexicographic(self):
        comps = list(enumerate_compositions(5, 3))
        assert comps == sorted(comps)

    def test_multinomial_matches_factorials(self):
        for counts in [(3,), (2, 2), (1, 2, 3), (0, 5, 0), (4, 4, 4, 4, 0)]:
            n = sum(counts)
            expect = math.factorial(n)
            for c in counts:
                expect //= math.factorial(c)
            assert multinomial(counts) == expect

    def test_class_sizes_tile_the_string_space(self):
        for n, a in [(4, 2), (5, 3), (3, 4)]:
            assert sum(multinomial(c) for c in enumerate_compositions(n, a)) == a**n

    def test_cap_enforced(self):
        with pytest.raises(ResourceLimitError):
            check_composition_cap(101, 10)
        with pytest.raises(ResourceLimitError):
            ClassOrder(40, 10)
        # the boundary itself is allowed
        assert check_composition_cap(4, 3, cap=composition_count(4, 3)) == 15


class TestOrderKeys:
    def test_order_product_matches_oracle(self):
        for counts in [(0, 0), (3, 0), (1, 1, 2), (4, 4, 4, 4, 0), (8, 2, 2, 2, 2)]:
            assert order_product(counts) == oracles.order_product(counts)

    def test_zero_counts_contribute_one(self):
        assert order_product((0, 0, 0)) == 1
        assert order_product((5, 0)) == 5**5

    def test_info_bits_match_oracle_realization(self):
        # realize a string with the given composition, delegate to the oracle
        for counts in [(2, 1), (3, 3), (0, 4), (1, 1, 1), (5, 2, 0, 1)]:
            s = [v for v, c in enumerate(counts) for _ in range(c)]
            got = composition_info_bits(counts)
            assert math.isclose(got, oracles.empirical_info(s, len(counts)), abs_tol=1e-12)

    def test_product_order_is_info_order(self):
        # larger product means lower information content, exactly
        n, a = 9, 3
        comps = list(enumerate_compositions(n, a))
        for c1 in comps[::7]:
            for c2 in comps[::5]:
                p1, p2 = order_product(c1), order_product(c2)
                i1, i2 = composition_info_bits(c1), composition_info_bits(c2)
                if p1 > p2:
                    assert i1 < i2 + 1e-9
                elif p1 < p2:
                    assert i1 > i2 - 1e-9

    def test_exact_compare_orders_by_product_then_counts(self):
        assert exact_compare((3, 0), (0, 3)) == 1
        assert exact_compare((0, 3), (3, 0)) == -1
        assert exact_compare((2, 1), (2, 1)) == 0
        # higher product sorts earlier
        assert exact_compare((0, 3), (1, 2)) == -1

    def test_cross_partition_exact_tie(self):
        # 4^4 repeated four times equals 8^8 * 2^2 four times: same product,
        # different partitions, so the count vector breaks the tie
        c1 = (4, 4, 4, 4, 0)
        c2 = (8, 2, 2, 2, 2)
        assert order_product(c1) == order_product(c2)
        assert exact_compare(c1, c2) == -1
        assert exact_compare(c2, c1) == 1

    @given(compositions(), compositions())
    def test_exact_compare_is_antisymmetric(self, c1, c2):
        if len(c1) != len(c2) or sum(c1) != sum(c2):
            return
        assert exact_compare(c1, c2) == -exact_compare(c2, c1)

    @given(compositions())
    def test_exact_compare_reflexive(self, c):
        assert exact_compare(c, c) == 0


class TestClassWeight:
    def test_uniform_weight_is_class_share(self):
        n, a = 5, 3
        probs = [1.0 / a] * a
        for counts in enumerate_compositions(n, a):
            got = class_weight(probs, counts)
            assert math.isclose(got, multinomial(counts) / a**n, rel_tol=1e-12)

    def test_weights_sum_to_one(self):
        for probs in [(0.5, 0.5), (0.7, 0.3), (0.5, 0.25, 0.25), (0.9, 0.05, 0.05)]:
            n = 8
            total = math.fsum(class_weight(probs, c) for c in enumerate_compositions(n, len(probs)))
            assert math.isclose(total, 1.0, abs_tol=1e-12)

    def test_weight_matches_exact_fraction(self):
        probs = (0.5, 0.25, 0.25)
        counts = (2, 1, 1)
        exact = multinomial(counts) * Fraction(1, 2) ** 2 * Fraction(1, 4) ** 2
        assert math.isclose(class_weight(probs, counts), float(exact), rel_tol=1e-12)

    def test_zero_probability_symbol(self):
        probs = (1.0, 0.0)
        assert class_weight(probs, (3, 0)) == 1.0
        assert class_weight(probs, (2, 1)) == 0.0


class TestSortedOrder:
    @pytest.mark.parametrize("a", [2, 3, 4])
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_matches_brute_force_class_order(self, n, a):
        got = [c for c, _ in sorted_compositions(n, a)]
        seen = []
        for s in oracles.all_strings_sorted(n, a):
            c = oracles.counts_of(s, a)
            if not seen or seen[-1] != c:
                seen.append(c)
        assert got == seen

    def test_sizes_accompany_compositions(self):
        for counts, size in sorted_compositions(5, 3):
            assert size == multinomial(counts)

    def test_info_is_nondecreasing_along_order(self):
        infos = [composition_info_bits(c) for c, _ in sorted_compositions(7, 3)]
        assert all(x <= y + 1e-12 for x, y in zip(infos, infos[1:]))


class TestClassOrder:
    def test_group_totals_tile_everything(self):
        order = ClassOrder(8, 3)
        assert sum(order.group_string_totals) == 3**8
        assert sum(order.group_class_totals) == composition_count(8, 3)
        assert order.num_compositions == composition_count(8, 3)

    def test_group_products_strictly_descending(self):
        order = ClassOrder(16, 5)
        prods = order.group_products
        assert all(x > y for x, y in zip(prods, prods[1:]))

    def test_group_infos_strictly_increasing(self):
        order = ClassOrder(16, 5)
        infos = list(order.group_infos)
        assert all(x < y for x, y in zip(infos, infos[1:]))

    def test_cross_partition_tie_lands_in_one_group(self):
        order = ClassOrder(16, 5)
        gi = order.group_of((4, 4, 4, 4, 0))
        assert order.group_of((8, 2, 2, 2, 2)) == gi
        assert len(order.group_partitions[gi]) == 2

    def test_strings_before_class_matches_brute_force(self):
        n, a = 5, 3
        order = ClassOrder(n, a)
        strings = oracles.all_strings_sorted(n, a)
        first_index = {}
        for i, s in enumerate(strings):
            c = oracles.counts_of(s, a)
            first_index.setdefault(c, i)
        for counts, start in first_index.items():
            assert order.strings_before_class(counts) == start

    def test_classes_before_matches_sorted_position(self):
        n, a = 6, 3
        order = ClassOrder(n, a)
        comps = [c for c, _ in sorted_compositions(n, a)]
        for i, c in enumerate(comps):
            assert order.classes_before(c) == i

    def test_locate_string_walks_every_class_boundary(self):
        n, a = 5, 3
        order = ClassOrder(n, a)
        strings = oracles.all_strings_sorted(n, a)
        for index in range(a**n):
            counts, offset = order.locate_string(index)
            assert counts == oracles.counts_of(strings[index], a)
            within = [s for s in strings[:index] if oracles.counts_of(s, a) == counts]
            assert offset == len(within)

    def test_info_at_matches_string_info(self):
        n, a = 5, 3
        order = ClassOrder(n, a)
        strings = oracles.all_strings_sorted(n, a)
        for index in range(0, a**n, 7):
            assert math.isclose(
                order.info_at(index), oracles.empirical_info(strings[index], a), abs_tol=1e-12
            )

    def test_index_bounds_checked(self):
        order = ClassOrder(3, 2)
        with pytest.raises(ValueError):
            order.locate_string(-1)
        with pytest.raises(ValueError):
            order.locate_string(8)
        with pytest.raises(ValueError):
            order.info_at(8)

    def test_foreign_composition_rejected(self):
        order = ClassOrder(4, 2)
        with pytest.raises(ValueError):
            order.strings_before_class((2, 1))
        with pytest.raises(ValueError):
            order.group_of((3, 3))

    def test_iter_group_classes_is_lex_within_group(self):
        order = ClassOrder(16, 5)
        gi = order.group_of((4, 4, 4, 4, 0))
        got = list(order.iter_group_classes(gi))
        vectors = [v for v, _ in got]
        assert vectors == sorted(vectors)
        assert len(vectors) == order.group_class_totals[gi]
        assert all(size == multinomial(v) for v, size in got)

    def test_iter_classes_agrees_with_materialized_list(self):
        order = ClassOrder(6, 4)
        assert list(order.iter_classes()) == sorted_compositions(6, 4)

    def test_shared_instances_are_cached(self):
        assert class_order(7, 2) is class_order(7, 2)

    @settings(max_examples=60)
    @given(st.integers(min_value=2, max_value=4), st.integers(min_value=1, max_value=7), st.data())
    def test_locate_inverts_strings_before(self, a, n, data):
        order = class_order(n, a)
        index = data.draw(st.integers(min_value=0, max_value=a**n - 1))
        counts, offset = order.locate_string(index)
        assert sum(counts) == n
        start = order.strings_before_class(counts)
        assert start <= index < start + multinomial(counts)
        assert offset == index - start
