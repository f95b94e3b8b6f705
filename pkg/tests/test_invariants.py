import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from lambdacubes.bincx import BinaryComplexPair, Cube, CubeError, FormalSum, cube_to_complex
from lambdacubes.invariants import (
    FactorizationError,
    SymbolElement,
    det_invariant,
    factor_int,
    primitive_root,
    symbol,
    symbol_of_sum,
    symbol_of_units,
    symbol_to_unit,
    torsion,
    unit_repr,
)
from lambdacubes.kops import lambda_cube
from lambdacubes.linalg import QQ, ExactMatrix, FieldSpec, det
from lambdacubes.sampling import random_invertible
from lambdacubes.simplicial import exterior_power_binary, simplicial_tensor, two_term

from conftest import F7, FIELDS, invertible, mat


class TestUnits:
    def test_examples(self):
        assert unit_repr(6, QQ).labels() == {2: 1, 3: 1}
        r = unit_repr(Fraction(-1, 2), QQ)
        assert r.negative and r.labels() == {-1: 1, 2: -1}
        assert primitive_root(7) == 3
        assert unit_repr(3, F7).dlog == 1

    def test_zero(self):
        with pytest.raises(ValueError):
            unit_repr(0, QQ)

    @given(st.integers(1, 10 ** 6))
    def test_factor_against_sympy(self, n):
        assert dict(factor_int(n)) == sympy.factorint(n)

    def test_factor_bound(self):
        with pytest.raises(FactorizationError):
            factor_int(1000003 * 1000033, bound=1000)

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 101, 9973])
    def test_primitive_root(self, p):
        g = primitive_root(p)
        assert g == (sympy.primitive_root(p) if p > 2 else 1)

    @given(st.integers(1, 6))
    def test_dlog(self, x):
        e = unit_repr(x, F7).dlog
        assert pow(3, e, 7) == x


class TestTorsion:
    def test_two_term(self):
        assert torsion(cube_to_complex(Cube(QQ, 1, (mat([[5]]),)))) == 5

    def test_conjugated_diag(self):
        u = mat([[1, 1], [0, 1]])
        a = u @ ExactMatrix.diag(QQ, [2, 3]) @ u.inverse()
        assert torsion(two_term(QQ, a)) == 6

    @given(invertible(max_size=4))
    def test_det(self, a):
        assert torsion(two_term(QQ, a)) == det(a)

    @given(invertible(field=F7, max_size=4))
    def test_det_f7(self, a):
        assert torsion(two_term(F7, a)) == det(a)

    @given(invertible(max_size=3))
    def test_diagonal_is_one(self, a):
        assert torsion(two_term(QQ, a, a)) == 1

    def test_not_acyclic(self):
        with pytest.raises(CubeError):
            torsion(BinaryComplexPair(QQ, (1, 1), (mat([[0]]),), (mat([[1]]),)))

    @pytest.mark.parametrize("seed", range(8))
    def test_splitting_independent(self, seed):
        rng = random.Random(seed)
        a = random_invertible(rng, QQ, 2)
        c = exterior_power_binary(two_term(QQ, a), 2)
        base = torsion(c)
        orders = [list(range(n)) for n in c.ranks]
        for o in orders:
            rng.shuffle(o)
        assert torsion(c, orders) == base

    def test_conjugation_invariant(self):
        rng = random.Random(9)
        a, b = random_invertible(rng, QQ, 2), random_invertible(rng, QQ, 2)
        u = mat([[1, 3], [0, 1]])  # determinant one
        c1 = two_term(QQ, a, b)
        c2 = two_term(QQ, u @ a, u @ b)
        assert torsion(c1) == torsion(c2)

    @pytest.mark.parametrize("a,b", [(2, 3), (-1, 5), (Fraction(1, 2), 7)])
    def test_simplicial_tensor_vanishes(self, a, b):
        out = simplicial_tensor(two_term(QQ, mat([[a]])), two_term(QQ, mat([[b]])))
        assert torsion(out) == 1


class TestSymbols:
    def test_examples(self):
        six = Cube.from_eigen(QQ, [[6]])
        assert symbol(six) == SymbolElement(1, QQ, {(2,): 1, (3,): 1})
        assert symbol(Cube.from_eigen(QQ, [[2], [3]])) == SymbolElement(2, QQ, {(2, 3): 1})
        assert symbol(Cube.from_eigen(QQ, [[4]])) == SymbolElement(1, QQ, {(2,): 2})

    def test_minus_one_is_two_torsion(self):
        s = symbol(Cube.from_eigen(QQ, [[-1, -1]]))
        assert s.is_zero()
        assert symbol(Cube.from_eigen(QQ, [[1]])).is_zero()

    def test_f7_modulus(self):
        # 3 is the primitive root, 3^6 = 1
        s = symbol_of_units([F7.coerce(3)], F7)
        assert 6 * s == SymbolElement(1, F7)

    def test_missing_eigen(self):
        with pytest.raises(CubeError):
            symbol(Cube(QQ, 1, (mat([[2]]),)))

    def test_lambda_rank_one_n2(self):
        c = Cube.from_eigen(QQ, [[2], [3]])
        assert symbol_of_sum(lambda_cube(c, 2).terms) == SymbolElement(2, QQ, {(2, 3): -2})

    def test_lambda_diag(self):
        c = Cube.from_eigen(QQ, [[2, 3]])
        s = symbol_of_sum(lambda_cube(c, 2).terms)
        assert s == -(symbol_of_units([2], QQ) + symbol_of_units([3], QQ))
        assert symbol_to_unit(s, QQ) == Fraction(1, 6)

    def test_empty(self):
        assert symbol_of_sum(FormalSum()).is_zero()

    @given(st.lists(st.sampled_from([2, 3, 5, -1, Fraction(1, 2), Fraction(-3, 5)]), min_size=1, max_size=3))
    def test_collapse_to_torsion(self, diag):
        c = Cube.from_eigen(QQ, [diag], mat([[1 if i <= j else 0 for j in range(len(diag))] for i in range(len(diag))]))
        s = symbol(c)
        t = torsion(cube_to_complex(c))
        assert symbol_of_units([t], QQ) == s
        # sign information survives only mod 2, so compare absolute values
        assert abs(symbol_to_unit(s, QQ)) == abs(t)

    def test_det_invariant(self):
        s = FormalSum([(2, Cube(QQ, 1, (mat([[3]]),))), (-1, Cube(QQ, 1, (mat([[2]]),)))])
        assert det_invariant(s) == Fraction(9, 2)

    def test_multilinearity_only(self):
        """The symbol does not kill Steinberg symbols {a, 1 - a}."""
        s = symbol(Cube.from_eigen(QQ, [[2], [-1]]))
        t = symbol(Cube.from_eigen(QQ, [[3], [-2]]))
        assert not t.is_zero() and not s.is_zero()
