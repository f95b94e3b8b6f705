import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lambdacubes.bincx import BinaryComplexPair, is_acyclic
from lambdacubes.linalg import QQ, ExactMatrix
from lambdacubes.sampling import random_invertible, random_matrix
from lambdacubes.simplicial import (
    BoundedComplex,
    apply_functor_degreewise,
    dold_kan_unit,
    exterior_power_binary,
    gamma,
    koszul_double_complex,
    normalize,
    simplicial_tensor,
    two_term,
    verify_dold_kan_unit,
)

from conftest import F7, FIELDS, invertible, mat


def random_complex(rng, field, length):
    ranks = [rng.randint(1, 3)]
    diffs = []
    for _ in range(length):
        if diffs:
            k = diffs[-1].kernel()
            if k.cols == 0:
                break
            # random combination of kernel vectors keeps d^2 = 0
            mix = random_matrix(rng, field, k.cols, rng.randint(1, 2))
            d = k @ mix
        else:
            d = random_matrix(rng, field, ranks[0], rng.randint(1, 3))
        diffs.append(d)
        ranks.append(d.cols)
    return BoundedComplex(field, ranks, diffs)


def rank_of(m):
    return m.rank() if m.rows and m.cols else 0


def exact_by_ranks(ranks, diffs):
    """rank d_{k+1} + rank d_k = dim_k in every degree."""
    for k, dim in enumerate(ranks):
        incoming = rank_of(diffs[k]) if k < len(diffs) else 0
        outgoing = rank_of(diffs[k - 1]) if k >= 1 else 0
        if incoming + outgoing != dim:
            return False
    return True


class TestGamma:
    def test_constant(self):
        c = BoundedComplex(QQ, (3,), ())
        s = gamma(c, 3)
        assert s.dims == (3, 3, 3, 3)
        assert all(m.is_identity() for level in s.faces for m in level)

    @pytest.mark.parametrize("q,p", [(1, 1), (2, 1), (2, 3)])
    def test_two_term_dims(self, q, p):
        c = BoundedComplex(QQ, (q, p), (ExactMatrix.zeros(QQ, q, p),))
        assert gamma(c, 5).dims == tuple(q + n * p for n in range(6))

    @pytest.mark.parametrize("seed", range(6))
    def test_identities_d4(self, seed):
        rng = random.Random(seed)
        c = random_complex(rng, FIELDS[seed % 2], rng.randint(1, 3))
        s = gamma(c, 4)
        assert s.identity_failures() == []

    def test_truncation_below_support(self):
        c = BoundedComplex(QQ, (1, 1), (mat([[2]]),))
        with pytest.raises(ValueError):
            gamma(c, 0)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_functor_preserves_identities(self, r):
        c = BoundedComplex(QQ, (2, 2), (mat([[1, 2], [3, 4]]),))
        s = apply_functor_degreewise(gamma(c, 4), r)
        assert s.check_identities()
        assert s.dims == tuple(comb(d, r) for d in gamma(c, 4).dims)

    def test_functor_on_constant(self):
        s = apply_functor_degreewise(gamma(BoundedComplex(QQ, (4,), ()), 2), 2)
        assert set(s.dims) == {comb(4, 2)}


class TestNormalize:
    @pytest.mark.parametrize("seed", range(10))
    def test_dold_kan_unit(self, seed):
        rng = random.Random(100 + seed)
        c = random_complex(rng, FIELDS[seed % 2], rng.randint(0, 3))
        nc, phis = dold_kan_unit(c)
        assert nc.ranks == c.ranks
        for k in range(c.length):
            assert nc.diff[k] @ phis[k + 1] == phis[k] @ c.diff[k]
        assert verify_dold_kan_unit(c)

    def test_upto_bound(self):
        c = BoundedComplex(QQ, (1, 1), (mat([[2]]),))
        with pytest.raises(ValueError):
            normalize(gamma(c, 2), 2)

    @pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name)
    def test_lambda2_ranks(self, field):
        rng = random.Random(7)
        a, b = random_invertible(rng, field, 2), random_invertible(rng, field, 2)
        ext = exterior_power_binary(two_term(field, a, b), 2)
        assert ext.ranks == (1, 5, 4)
        assert sum((-1) ** k * x for k, x in enumerate(ext.ranks)) == 0
        assert is_acyclic(ext)
        assert exact_by_ranks(ext.ranks, ext.top) and exact_by_ranks(ext.ranks, ext.bottom)

    @pytest.mark.parametrize("r,p", [(r, p) for r in (1, 2, 3) for p in (1, 2, 3)])
    def test_ranks_match_koszul(self, r, p):
        rng = random.Random(r * 10 + p)
        a = random_invertible(rng, QQ, p)
        ext = exterior_power_binary(two_term(QQ, a), r)
        k = koszul_double_complex(r, a)
        assert ext.ranks == k.total_ranks()
        assert len(ext.ranks) <= r + 1
        assert is_acyclic(ext)

    def test_shared_graded_object(self):
        # top and bottom differentials live on the same normalised basis, so
        # a diagonal input yields a diagonal output
        a = mat([[1, 2], [3, 5]])
        ext = exterior_power_binary(two_term(QQ, a, a), 2)
        assert ext.top == ext.bottom


class TestKoszul:
    def test_r1(self):
        a = mat([[2, 1], [0, 1]])
        k = koszul_double_complex(1, a)
        assert k.vertical == (a,)
        assert k.total_ranks() == (2, 2)

    def test_r2_ranks(self):
        k = koszul_double_complex(2, mat([[2, 1], [0, 1]]))
        assert k.top_ranks == (1, 4) and k.bottom_ranks == (1, 4)
        assert k.total_ranks() == (1, 5, 4)
        assert k.euler_characteristic() == 0


class TestTensor:
    @pytest.mark.parametrize("a,b", [(2, 3), (-1, 5), (7, 7)])
    def test_rank_one(self, a, b):
        out = simplicial_tensor(two_term(QQ, mat([[a]])), two_term(QQ, mat([[b]])))
        assert out.ranks == (1, 3, 2)
        assert is_acyclic(out)

    def test_diagonal_stays_diagonal(self):
        x = two_term(QQ, mat([[2]]), mat([[2]]))
        y = two_term(QQ, mat([[3]]), mat([[3]]))
        out = simplicial_tensor(x, y)
        assert out.top == out.bottom

    def test_upto_too_small(self):
        x = two_term(QQ, mat([[2]]))
        with pytest.raises(ValueError):
            simplicial_tensor(x, x, upto=1)

    @given(invertible(size=2), invertible(size=1))
    def test_euler_characteristic(self, a, b):
        out = simplicial_tensor(two_term(QQ, a), two_term(QQ, b))
        assert sum((-1) ** k * x for k, x in enumerate(out.ranks)) == 0
        assert is_acyclic(out)
