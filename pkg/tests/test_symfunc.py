from itertools import combinations
from math import prod

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from lambdacubes.symfunc import (
    Partition,
    SymPoly,
    conjugate,
    newton_poly,
    partitions_of,
    product_poly,
    schur_in_e,
    top_specialization,
    verify_newton_multiplicativity,
)

X = lambda k: SymPoly.var("X", k)
Y = lambda k: SymPoly.var("Y", k)


def elem(vals, k):
    return sum((prod(c) for c in combinations(vals, k)), sympy.Integer(0))


def bialternant(mu, xs):
    """s_mu(x_1..x_m) as a ratio of alternants; independent of Jacobi-Trudi."""
    m = len(xs)
    parts = list(mu.parts) + [0] * (m - len(mu.parts))
    num = sympy.Matrix(m, m, lambda i, j: xs[i] ** (parts[j] + m - 1 - j))
    den = sympy.Matrix(m, m, lambda i, j: xs[i] ** (m - 1 - j))
    return sympy.cancel(num.det() / den.det())


def in_variables(poly, xs, ys=()):
    vals = {("X", k): elem(xs, k) for k in range(1, len(xs) + 1)}
    vals.update({("Y", k): elem(ys, k) for k in range(1, len(ys) + 1)})
    return sympy.expand(poly.evaluate(vals, sympy.Integer(0)))


def brute_partitions(r, cap=None):
    cap = r if cap is None else cap
    if r == 0:
        return [()]
    return [(k,) + rest for k in range(min(r, cap), 0, -1) for rest in brute_partitions(r - k, k)]


class TestPartitions:
    def test_counts(self):
        assert [p.parts for p in partitions_of(1)] == [(1,)]
        assert len(partitions_of(4)) == 5
        assert len(partitions_of(6)) == 11

    @pytest.mark.parametrize("r", range(1, 8))
    def test_reverse_lex_against_enumeration(self, r):
        assert [p.parts for p in partitions_of(r)] == brute_partitions(r)

    def test_conjugate_examples(self):
        assert conjugate(Partition((4,))) == Partition((1, 1, 1, 1))
        assert conjugate(Partition((2, 1))) == Partition((2, 1))
        assert conjugate(Partition((3, 1))) == Partition((2, 1, 1))

    @given(st.integers(1, 8).flatmap(lambda r: st.sampled_from(partitions_of(r))))
    def test_conjugate_involution(self, mu):
        assert mu.conjugate().conjugate() == mu
        assert mu.conjugate().weight == mu.weight

    def test_rejects_increasing(self):
        with pytest.raises(ValueError):
            Partition((1, 2))


class TestSchur:
    def test_examples(self):
        assert schur_in_e(Partition((1, 1))) == X(2)
        assert schur_in_e(Partition((2,))) == X(1) ** 2 - X(2)
        assert schur_in_e(Partition((2, 1))) == X(1) * X(2) - X(3)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_column_is_elementary(self, k):
        assert schur_in_e(Partition((1,) * k)) == X(k)

    def test_bound(self):
        with pytest.raises(ValueError):
            schur_in_e(Partition((3,)), bound=2)

    @pytest.mark.parametrize("mu", [m for r in range(1, 5) for m in partitions_of(r)], ids=str)
    def test_against_bialternant(self, mu):
        xs = sympy.symbols("x1:5")
        assert in_variables(schur_in_e(mu), xs) == sympy.expand(bialternant(mu, xs))


class TestNewton:
    def test_examples(self):
        assert newton_poly(1) == X(1)
        assert newton_poly(2) == X(1) ** 2 - 2 * X(2)
        assert newton_poly(3) == X(1) ** 3 - 3 * X(1) * X(2) + 3 * X(3)

    @pytest.mark.parametrize("r", range(1, 6))
    def test_power_sum(self, r):
        xs = sympy.symbols(f"x1:{r + 1}")
        assert in_variables(newton_poly(r), xs) == sympy.expand(sum(x ** r for x in xs))

    @pytest.mark.parametrize("r", range(1, 7))
    def test_top_specialization(self, r):
        assert newton_poly(r).specialize_zero([("X", r)]) == (-1) ** (r - 1) * r * X(r)


class TestProductPoly:
    def test_examples(self):
        assert product_poly(1) == X(1) * Y(1)
        assert product_poly(2) == X(1) ** 2 * Y(2) + X(2) * Y(1) ** 2 - 2 * X(2) * Y(2)
        assert str(product_poly(2)) == "X1^2*Y2 + X2*Y1^2 - 2*X2*Y2"

    @pytest.mark.parametrize("r", range(1, 7))
    def test_top_specialization(self, r):
        assert top_specialization(product_poly(r), r) == (-1) ** (r - 1) * r * X(r) * Y(r)

    @pytest.mark.parametrize("r", range(1, 7))
    def test_symmetric_in_alphabets(self, r):
        p = product_poly(r)
        swapped = p.rename("X", "T").rename("Y", "X").rename("T", "Y")
        assert swapped == p

    @pytest.mark.parametrize("r", range(1, 7))
    def test_bihomogeneous(self, r):
        assert product_poly(r).weighted_degrees() == {(r, r)}

    @pytest.mark.parametrize("r", range(1, 4))
    def test_dual_cauchy(self, r):
        """P_r evaluated on alphabets is e_r of all pairwise products."""
        xs = sympy.symbols(f"x1:{r + 1}")
        ys = sympy.symbols(f"y1:{r + 1}")
        rhs = elem([x * y for x in xs for y in ys], r)
        assert in_variables(product_poly(r), xs, ys) == sympy.expand(rhs)

    @pytest.mark.parametrize("r", range(1, 7))
    def test_newton_multiplicativity(self, r):
        assert verify_newton_multiplicativity(r)

    def test_newton_bound(self):
        with pytest.raises(ValueError):
            verify_newton_multiplicativity(7)


class TestSymPoly:
    @given(st.integers(-5, 5), st.integers(-5, 5))
    def test_ring_laws(self, a, b):
        p = X(1) + a * Y(2)
        q = b * X(1) * X(2) - Y(1)
        assert (p + q) * (p - q) == p * p - q * q
        assert p - p == SymPoly()

    def test_graded_lex_printing(self):
        assert str(newton_poly(3)) == "X1^3 - 3*X1*X2 + 3*X3"
        assert str(SymPoly()) == "0"
