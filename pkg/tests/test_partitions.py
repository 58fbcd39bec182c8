import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plancherel_hurwitz import partitions as P
from plancherel_hurwitz.partitions import Partition


def _partitions_rec(n, cap=None):
    # independent oracle: recursive generation, then sorted lex-descending
    cap = n if cap is None else cap
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, cap), 0, -1):
        out += [(first,) + rest for rest in _partitions_rec(n - first, first)]
    return out


def _hooks_naive(lam):
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    return [lam[i] - j - 1 + conj[j] - i - 1 + 1 for i in range(len(lam)) for j in range(lam[i])]


def _count_syt(lam):
    # standard Young tableaux by removing the largest entry from each corner
    lam = tuple(lam)
    if sum(lam) <= 1:
        return 1
    total = 0
    for i in range(len(lam)):
        if i == len(lam) - 1 or lam[i] > lam[i + 1]:
            mu = list(lam)
            mu[i] -= 1
            total += _count_syt(tuple(p for p in mu if p))
    return total


partition_st = st.lists(st.integers(1, 12), min_size=0, max_size=10).map(lambda xs: Partition(sorted(xs, reverse=True)))
nonempty_st = st.lists(st.integers(1, 12), min_size=1, max_size=10).map(lambda xs: Partition(sorted(xs, reverse=True)))


class TestPartitionType:
    def test_validation(self):
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((3, 0))
        with pytest.raises(ValueError):
            Partition((2, -1))

    def test_size_and_string(self):
        lam = Partition((4, 2, 1))
        assert lam.size == 7 and lam.length == 3
        assert str(lam) == "[4,2,1]"
        assert Partition.parse("[4, 2, 1]") == lam
        assert lam.to_json() == [4, 2, 1]
        assert lam.part(10) == 0

    def test_hashable_equal_to_tuple(self):
        assert {Partition((2, 1)): 1}[(2, 1)] == 1


class TestEnumeration:
    @pytest.mark.parametrize("n", range(0, 16))
    def test_matches_recursive_oracle(self, n):
        assert [tuple(p) for p in P.partitions_of(n)] == _partitions_rec(n)

    def test_pentagonal_count(self):
        for n in range(0, 41):
            assert P.partition_count(n) == sum(1 for _ in P.partitions_of(n))
        assert [P.partition_count(n) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
        assert P.partition_count(10) == 42
        assert P.partition_count(62) == 1_300_156
        assert P.partition_count(64) == 1_741_630

    def test_hardy_ramanujan_trend(self):
        # log p(n) / (pi sqrt(2n/3)) tends to 1 from below
        ratios = [math.log(P.partition_count(n)) / (math.pi * math.sqrt(2 * n / 3)) for n in (100, 400, 1600)]
        assert ratios[0] < ratios[1] < ratios[2] < 1

    @pytest.mark.parametrize("n", [5, 9, 12])
    def test_first_part_blocks(self, n):
        blocks = [list(P.partitions_of(n, first_part=k)) for k in range(n, 0, -1)]
        assert sum(blocks, []) == list(P.partitions_of(n))
        for k, block in zip(range(n, 0, -1), blocks):
            assert all(lam[0] == k for lam in block)


class TestHooksAndDimensions:
    def test_examples(self):
        assert P.dim_syt((2, 1)) == 2
        assert P.dim_syt((4, 2, 1)) == 35
        assert P.content_sum((4, 2, 1)) == 3
        assert sorted(P.hook_lengths((4, 2, 1))) == [1, 1, 1, 2, 3, 4, 6]
        assert P.conjugate((7, 4, 2, 1)) == (4, 3, 2, 2, 1, 1, 1)
        assert P.dim_syt(()) == 1 and P.content_sum(()) == 0

    @pytest.mark.parametrize("n", range(1, 10))
    def test_dim_matches_tableau_count(self, n):
        for lam in P.partitions_of(n):
            assert P.dim_syt(lam) == _count_syt(lam)

    def test_log_dim(self):
        for lam in [(5, 5, 5), (4, 2, 1), (10,), (3, 3, 2, 1, 1)]:
            assert abs(P.log_dim_syt(lam) - math.log(P.dim_syt(lam))) < 1e-9

    @pytest.mark.parametrize("n", range(0, 21, 4))
    def test_branching_rule(self, n):
        for lam in P.partitions_of(n):
            if n:
                assert sum(P.dim_syt(mu) for mu in P.remove_box_shapes(lam)) == P.dim_syt(lam)

    @given(nonempty_st)
    def test_hooks_match_naive(self, lam):
        assert P.hook_lengths(lam) == _hooks_naive(lam)

    @given(partition_st)
    def test_conjugation(self, lam):
        conj = P.conjugate(lam)
        assert P.conjugate(conj) == lam
        assert conj.size == lam.size
        assert P.content_sum(conj) == -P.content_sum(lam)
        if lam.size <= 40:
            assert P.dim_syt(conj) == P.dim_syt(lam)

    @given(nonempty_st)
    def test_content_bound(self, lam):
        assert 2 * P.content_sum(lam) <= lam[0] * lam.size

    @given(nonempty_st, st.integers(0, 13))
    def test_split_identity(self, lam, threshold):
        big, small = P.split_big_small(lam, threshold)
        assert big.size + small.size == lam.size
        assert P.content_sum(big) - len(big) * small.size + P.content_sum(small) == P.content_sum(lam)


class TestCorners:
    def test_add_remove_shapes(self):
        assert P.add_box_shapes((2, 1)) == [(3, 1), (2, 2), (2, 1, 1)]
        assert P.remove_box_shapes((2, 1)) == [(1, 1), (2,)]
        assert P.add_box_shapes(()) == [(1,)]

    @given(partition_st)
    def test_add_then_remove(self, lam):
        for nu in P.add_box_shapes(lam):
            assert nu.size == lam.size + 1
            assert lam in P.remove_box_shapes(nu)


class TestProfile:
    def test_single_box(self):
        prof = P.rescaled_profile((1,))
        assert [tuple(p) for p in prof.raw] == [(-1, 1), (0, 2), (1, 1)]
        assert prof.area() == 2

    def test_empty(self):
        prof = P.rescaled_profile(())
        assert prof(0.5) == 0.5

    @given(nonempty_st)
    @settings(max_examples=50)
    def test_shape_properties(self, lam):
        prof = P.rescaled_profile(lam)
        assert prof.area() == 2
        xs = np.linspace(-4, 4, 401)
        ys = prof(xs)
        assert np.all(ys >= np.abs(xs) - 1e-12)
        assert np.all(np.abs(np.diff(ys)) <= np.diff(xs) + 1e-12)
        mirror = P.rescaled_profile(P.conjugate(lam))
        assert np.allclose(mirror(xs), prof(-xs))

    def test_larger_scale(self):
        prof = P.rescaled_profile((2,), n=8)
        assert prof.area() == Fraction(2 * 2, 8)
