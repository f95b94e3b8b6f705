"""Seeded generators of random test objects."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .bincx import BinaryComplexPair, Cube, GeneralCube, cube_to_bincx
from .linalg import ExactMatrix, FieldSpec, det

Q_UNITS = (2, 3, 5, -1, Fraction(1, 2))


def random_matrix(rng: random.Random, field: FieldSpec, rows: int, cols: int, bound: int = 3) -> ExactMatrix:
    if field.is_rational:
        vals = [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    else:
        vals = [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)]
    return ExactMatrix.from_rows(field, vals, cols)


def random_invertible(rng: random.Random, field: FieldSpec, p: int, bound: int = 3) -> ExactMatrix:
    while True:
        m = random_matrix(rng, field, p, p, bound)
        if det(m) != 0:
            return m


def random_unit(rng: random.Random, field: FieldSpec, pool: Sequence = Q_UNITS):
    if field.is_rational:
        return field.coerce(rng.choice(pool))
    return field.coerce(rng.randrange(1, field.p))


def random_diagonal_cube(rng: random.Random, field: FieldSpec, n: int, p: int,
                         conjugate: bool = True, pool: Sequence = Q_UNITS) -> Cube:
    """A cube with eigen-data; the basis is random when ``conjugate`` is set."""
    diags = [[random_unit(rng, field, pool) for _ in range(p)] for _ in range(n)]
    basis = random_invertible(rng, field, p) if conjugate else None
    return Cube.from_eigen(field, diags, basis)


def random_general_cube(rng: random.Random, field: FieldSpec, n: int, p: int) -> GeneralCube:
    """cube_to_bincx of a random cube, transported along random vertex isomorphisms.

    The bottom edges are no longer identities, so normalisation has real work to do.
    """
    c = random_diagonal_cube(rng, field, n, p)
    g = cube_to_bincx(c)
    return g.conjugate({v: random_invertible(rng, field, p) for v in g.vertices()})


def random_two_term(rng: random.Random, field: FieldSpec, p: int) -> BinaryComplexPair:
    """P -(A, B)-> P with random invertible A and B."""
    a, b = random_invertible(rng, field, p), random_invertible(rng, field, p)
    return BinaryComplexPair(field, (p, p), (a,), (b,))
