from itertools import combinations, product
from math import comb, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lambdacubes.linalg import QQ, ExactMatrix, block_diag, compound, kron
from lambdacubes.multilinear import (
    char_e,
    compositions,
    cross_effect_map,
    cross_effect_ranks,
    verify_cauchy_character,
)

from conftest import F7, invertible, mat


def brute_compositions(r, i):
    return sorted((c for c in product(range(1, r + 1), repeat=i) if sum(c) == r), reverse=True)


def brute_rank(r, ranks):
    return sum(prod(comb(p, j) for p, j in zip(ranks, js)) for js in brute_compositions(r, len(ranks)))


class TestCompositions:
    @pytest.mark.parametrize("r,i", [(r, i) for r in range(1, 7) for i in range(1, 7)])
    def test_against_brute(self, r, i):
        assert list(compositions(r, i)) == brute_compositions(r, i)
        assert len(compositions(r, i)) == (comb(r - 1, i - 1) if i <= r else 0)

    def test_order_matches_display(self):
        # Lambda^2 P_1 (x) P_2 comes before P_1 (x) Lambda^2 P_2
        assert compositions(3, 2) == ((2, 1), (1, 2))


class TestRanks:
    @pytest.mark.parametrize("p", range(0, 5))
    def test_r3_i2(self, p):
        assert cross_effect_ranks(3, 2, (p, p))[1] == comb(p, 2) * p + p * comb(p, 2)

    @pytest.mark.parametrize("r,p", [(r, p) for r in range(1, 5) for p in range(1, 4)])
    def test_top_cross_effect(self, r, p):
        assert cross_effect_ranks(r, r, (p,) * r)[1] == p ** r

    def test_i_above_r(self):
        assert cross_effect_ranks(2, 3, (2, 2, 2))[1] == 0

    @given(st.integers(1, 5), st.lists(st.integers(0, 4), min_size=1, max_size=4))
    def test_brute_sum(self, r, ranks):
        layout, total = cross_effect_ranks(r, len(ranks), ranks)
        assert total == brute_rank(r, ranks)
        assert list(layout.offsets) == sorted(layout.offsets)

    @given(st.integers(1, 5), st.integers(2, 4), st.lists(st.integers(0, 3), min_size=3, max_size=3))
    def test_direct_sum_complement(self, r, i, ranks):
        """cr_{i-1}(P1 + P2, rest) = cr_{i-1}(P1, rest) + cr_{i-1}(P2, rest) + cr_i(P1, P2, rest)."""
        p1, p2, p3 = ranks
        rest = (p3,) * (i - 2)
        lhs = cross_effect_ranks(r, i - 1, (p1 + p2,) + rest)[1]
        rhs = (cross_effect_ranks(r, i - 1, (p1,) + rest)[1] + cross_effect_ranks(r, i - 1, (p2,) + rest)[1]
               + cross_effect_ranks(r, i, (p1, p2) + rest)[1])
        assert lhs == rhs


class TestMaps:
    def test_i1_is_compound(self):
        a = mat([[1, 2, 0], [3, 4, 1], [0, 1, 1]])
        assert cross_effect_map(2, 1, [a]) == compound(a, 2)

    def test_r2_i2_is_kron(self):
        a, b = mat([[1, 2], [3, 4]]), mat([[0, 1], [1, 1]])
        assert cross_effect_map(2, 2, [a, b]) == kron(a, b)

    def test_r3_blocks(self):
        a = mat([[1, 2], [3, 5]])
        i2 = ExactMatrix.identity(QQ, 2)
        want = block_diag(QQ, [kron(compound(a, 2), i2), kron(a, ExactMatrix.identity(QQ, 1))])
        assert cross_effect_map(3, 2, [a, i2]) == want

    @given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3).flatmap(
        lambda n: st.tuples(st.lists(invertible(size=n), min_size=3, max_size=3),
                            st.lists(invertible(size=n), min_size=3, max_size=3))))
    def test_functorial(self, r, i, pair):
        a, b = pair[0][:i], pair[1][:i]
        ab = [x @ y for x, y in zip(a, b)]
        assert cross_effect_map(r, i, ab) == cross_effect_map(r, i, a) @ cross_effect_map(r, i, b)

    @given(st.integers(1, 4), st.integers(1, 3), st.integers(1, 3))
    def test_size_matches_rank(self, r, i, p):
        m = cross_effect_map(r, i, [ExactMatrix.identity(QQ, p)] * i)
        assert m.shape == (cross_effect_ranks(r, i, (p,) * i)[1],) * 2


class TestCharacters:
    def test_examples(self):
        assert char_e(ExactMatrix.identity(QQ, 3), 1) == 3
        assert char_e(ExactMatrix.diag(QQ, [2, 3]), 2) == 6
        assert char_e(ExactMatrix.diag(QQ, [2, 3]), 3) == 0

    def test_cauchy_diag_value(self):
        a, b = ExactMatrix.diag(QQ, [2, 3]), ExactMatrix.diag(QQ, [5, 7])
        vals = [10, 14, 15, 21]
        oracle = sum(x * y for x, y in combinations(vals, 2))
        assert oracle == 1319
        assert char_e(kron(a, b), 2) == oracle
        assert verify_cauchy_character(a, b, 2)

    @pytest.mark.parametrize("r", range(1, 5))
    def test_trivial(self, r):
        i1 = ExactMatrix.identity(QQ, 1)
        assert verify_cauchy_character(i1, i1, r)

    @given(invertible(size=3), invertible(size=3))
    def test_random_q(self, a, b):
        assert verify_cauchy_character(a, b, 3)

    @given(invertible(field=F7), invertible(field=F7), st.integers(1, 4))
    def test_random_f7(self, a, b, r):
        assert verify_cauchy_character(a, b, r)

    def test_bound(self):
        with pytest.raises(ValueError):
            verify_cauchy_character(mat([[1]]), mat([[1]]), 5)
