"""Exterior power and Adams operations on cubes.

lambda^r [P; A_1, ..., A_n] is computed by the cross-effect formula

    sum_{i=1}^r (-1)^{i-1} [cr_i Lambda^r(P, ..., P); B_1, ..., B_n]

with B_1 = cr_i Lambda^r(A_1, 1, ..., 1) and B_j = cr_i Lambda^r(A_j, ..., A_j).
The direction that receives the (A, 1, ..., 1) tuple is a parameter so the
independence of that choice can be examined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bincx import (
    Cube,
    CubeError,
    EigenData,
    FormalSum,
    GeneralCube,
    cube_to_complex,
    external_product,
    normalize_cube,
    raise_,
)
from .linalg import ExactMatrix, FieldError, commute_check, det, exterior_power, kron_all
from .multilinear import compositions, cross_effect_map, cross_effect_ranks


def _cr_diagonal(r: int, i: int, diags: Sequence[Sequence], field) -> tuple:
    """Diagonal of cr_i Lambda^r applied to diagonal matrices."""
    m = cross_effect_map(r, i, [ExactMatrix.diag(field, d) for d in diags])
    return m.diagonal()


@dataclass(frozen=True)
class LambdaOutput:
    cube: Cube
    r: int
    cubes: tuple[Cube, ...]  # the i-th entry is the i-th cross-effect cube, i = 1..r
    layouts: tuple

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple((-1) ** i for i in range(self.r))

    @property
    def terms(self) -> FormalSum:
        return FormalSum([(s, c) for s, c in zip(self.signs, self.cubes)])

    def split_terms(self) -> FormalSum:
        """The same element with every cube split into its composition blocks.

        Uses [Q_1 (+) Q_2; B_1 (+) B_2] = [Q_1; B_1] + [Q_2; B_2], which holds
        in K_n because direct sums are split short exact sequences.
        """
        out = []
        for s, c, lay in zip(self.signs, self.cubes, self.layouts):
            for k in range(len(lay.blocks)):
                idx = list(lay.block_slice(k))
                if not idx:
                    continue
                autos = [a.submatrix(idx, idx) for a in c.autos]
                out.append((s, Cube._trusted(c.field, len(idx), autos)))
        return FormalSum(out)

    def det_product(self):
        """prod_i det(B_1 of term i) ** (-1)^(i-1): the K_1 class for n = 1."""
        f = self.cube.field
        out = f.one
        for s, c in zip(self.signs, self.cubes):
            d = det(c.autos[0]) if c.autos else f.one
            out = out * d if s > 0 else out / d
        return out


def lambda_cube(c: Cube, r: int, distinguished: int = 0, check: bool = True) -> LambdaOutput:
    """lambda^r of [P; A_1..A_n] by the cross-effect formula.

    Eigen-data, when present, is carried through: cross-effects of diagonal
    matrices are diagonal and cr_i(S, ..., S) conjugates everything at once.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if c.n and not 0 <= distinguished < c.n:
        raise ValueError(f"direction {distinguished} out of range")
    f = c.field
    p = c.rank
    ident = ExactMatrix.identity(f, p)
    cubes, layouts = [], []
    for i in range(1, r + 1):
        layout, total = cross_effect_ranks(r, i, (p,) * i)
        autos = []
        for j, a in enumerate(c.autos):
            args = (a,) + (ident,) * (i - 1) if j == distinguished else (a,) * i
            autos.append(cross_effect_map(r, i, args))
        if check and not commute_check(autos):
            raise CubeError("cross-effect automorphisms fail to commute")
        eigen = None
        if c.eigen is not None:
            basis = cross_effect_map(r, i, (c.eigen.basis,) * i)
            ones = (f.one,) * p
            diags = []
            for j, d in enumerate(c.eigen.diagonals):
                args = (d,) + (ones,) * (i - 1) if j == distinguished else (d,) * i
                diags.append(_cr_diagonal(r, i, args, f))
            eigen = EigenData(basis, tuple(diags))
        cubes.append(Cube._trusted(f, total, autos, eigen))
        layouts.append(layout)
    return LambdaOutput(c, r, tuple(cubes), tuple(layouts))


def adams(c: Cube, r: int) -> FormalSum:
    """psi^r = (-1)^(r-1) r lambda^r on positive-degree classes."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1:
        return FormalSum.of(c)
    return ((-1) ** (r - 1) * r) * lambda_cube(c, r).terms


def adams_sum(s: FormalSum, r: int) -> FormalSum:
    out = FormalSum()
    for cube, k in s.items():
        out = out + k * adams(cube, r)
    return out


def lambda_sum(s: FormalSum, r: int) -> FormalSum:
    """lambda^r of a single-term sum k*[x] only when k = 1; lambda is not additive."""
    items = s.items()
    if len(items) != 1 or items[0][1] != 1:
        raise ValueError("lambda_sum is only defined on a single cube with coefficient 1")
    return lambda_cube(items[0][0], r).terms


def external_product_sum(x: FormalSum, y: FormalSum) -> FormalSum:
    """Bilinear extension of the external product of cubes."""
    out = []
    for cx, kx in x.items():
        for cy, ky in y.items():
            if cx.field != cy.field:
                raise FieldError("external product over different fields")
            out.append((kx * ky, external_product(cx, cy)))
    return FormalSum(out)


# ---------------------------------------------------------------------------
# general cubes


def c_cube(g: GeneralCube, r: int, i: int) -> GeneralCube:
    """The n-cube c_i(g) whose signed sum over i is lambda^r(g).

    Vertex v holds cr_i Lambda^r(P_v, ..., P_v) when v[0] = 1 and
    cr_i Lambda^r(P_v, P_{v+e_0}, ..., P_{v+e_0}) when v[0] = 0; edges are
    cr_i Lambda^r of the matching edges of g, with identities in the slots
    where the module does not change.
    """
    if g.n < 1:
        raise ValueError("c_i needs n >= 1")
    f = g.field
    ranks = {}
    for v in g.vertices():
        if v[0] == 1:
            ranks[v] = cross_effect_ranks(r, i, (g.vertex_ranks[v],) * i)[1]
        else:
            up = raise_(v, 0)
            ranks[v] = cross_effect_ranks(r, i, (g.vertex_ranks[v],) + (g.vertex_ranks[up],) * (i - 1))[1]
    edges = {}
    for (d, v), pair in g.edges.items():
        new = []
        for which in (0, 1):
            m = pair[which]
            if d == 0:
                ident = ExactMatrix.identity(f, g.vertex_ranks[v])
                new.append(cross_effect_map(r, i, (m,) + (ident,) * (i - 1)))
            elif v[0] == 1:
                new.append(cross_effect_map(r, i, (m,) * i))
            else:
                m_up = g.edge(d, raise_(v, 0))[which]
                new.append(cross_effect_map(r, i, (m,) + (m_up,) * (i - 1)))
        edges[(d, v)] = tuple(new)
    return GeneralCube(f, g.n, ranks, edges)


def lambda_general_cube(g: GeneralCube, r: int) -> FormalSum:
    terms = []
    for i in range(1, r + 1):
        ci = c_cube(g, r, i)
        cube, _ = normalize_cube(ci)
        terms.append(((-1) ** (i - 1), cube))
    return FormalSum(terms)


def lambda_general_with_certificates(g: GeneralCube, r: int):
    """Per-term normalised cubes of c_i(g) together with their certificates."""
    out = []
    for i in range(1, r + 1):
        ci = c_cube(g, r, i)
        cube, cert = normalize_cube(ci)
        out.append((ci, cube, cert))
    return out


def transport_matrix(r: int, i: int, g_cert: dict, term_cert: dict, n: int) -> ExactMatrix:
    """Isomorphism from term i of lambda_cube(normalize(g)) to normalize(c_i(g)).

    ``g_cert`` normalises g, ``term_cert`` normalises c_i(g).  At the origin
    the functoriality of c_i gives cr_i(g_cert[0], g_cert[e_0], ...), which is
    an isomorphism from c_i(g) at the origin to the normal term.
    """
    origin = (0,) * n
    e0 = raise_(origin, 0)
    nat = cross_effect_map(r, i, (g_cert[origin],) + (g_cert[e0],) * (i - 1))
    return term_cert[origin] @ nat.inverse()


# ---------------------------------------------------------------------------
# Hiller's alternating sum on K_1


@dataclass(frozen=True)
class HillerTerm:
    sign: int
    parts: tuple[int, ...]  # (a, b_1, ..., b_u)
    cube: Cube


def hiller_terms(rank: int, a: ExactMatrix, r: int) -> list[HillerTerm]:
    """All summands (a, b_1..b_u), a >= 0, b_k >= 1, of lambda^r([P, A] - [P, 1]).

    u = 0 contributes the single tuple (r,) with sign +1.
    """
    if not a.is_square or a.rows != rank:
        raise ValueError("A must be a rank x rank matrix")
    if det(a) == 0:
        raise ValueError("A must be invertible")
    f = a.field
    ident = ExactMatrix.identity(f, rank)
    out = []
    for u in range(0, r + 1):
        for head in range(0, r - u + 1):
            tails = compositions(r - head, u) if u else ([()] if head == r else [])
            for bs in tails:
                factors = [exterior_power(a, head)] + [exterior_power(ident, b) for b in bs]
                m = kron_all(f, factors)
                if m.rows == 0:
                    continue
                out.append(HillerTerm((-1) ** u, (head,) + bs, Cube._trusted(f, m.rows, (m,))))
    return out


def hiller_lambda(rank: int, a: ExactMatrix, r: int, reduced: bool = False) -> FormalSum:
    """Hiller-style lambda^r on K_1 as a formal sum of 1-cubes.

    With ``reduced`` the summands with a = 0, whose automorphism is the
    identity, are dropped.
    """
    terms = hiller_terms(rank, a, r)
    if reduced:
        terms = [t for t in terms if t.parts[0] > 0]
    return FormalSum([(t.sign, t.cube) for t in terms])


def hiller_dropped(rank: int, a: ExactMatrix, r: int) -> list[HillerTerm]:
    return [t for t in hiller_terms(rank, a, r) if t.parts[0] == 0]


def one_cube_complexes(s: FormalSum):
    return [(k, cube_to_complex(c)) for c, k in s.items()]


def alternating_rank(p: int, r: int) -> int:
    """sum_i (-1)^(i-1) rank cr_i Lambda^r(P, ..., P) for rank P = p."""
    return sum((-1) ** (i - 1) * cross_effect_ranks(r, i, (p,) * i)[1] for i in range(1, r + 1))


def general_lambda_agrees(g: GeneralCube, r: int) -> bool:
    """lambda_general_cube(g) against lambda_cube(normalize(g)), term by term.

    Normalisation is unique only up to simultaneous conjugation, so each pair
    of terms is compared through the explicit transport matrix: it must be
    invertible and intertwine every automorphism.
    """
    base, cert = normalize_cube(g)
    lo = lambda_cube(base, r)
    for i, (_, cube, tc) in enumerate(lambda_general_with_certificates(g, r), 1):
        want = lo.cubes[i - 1]
        if cube.rank != want.rank:
            return False
        if cube.rank == 0:
            continue
        t = transport_matrix(r, i, cert, tc, g.n)
        if det(t) == 0:
            return False
        if any(t @ x != y @ t for x, y in zip(want.autos, cube.autos)):
            return False
    return True
