"""Binary complexes, cubes of commuting automorphisms and formal sums of cubes.

Direction indices are 0-based in code.  A vertex of an n-cube is a 0/1 tuple
of length n and every binary edge in direction i points from a vertex ``v``
with ``v[i] == 1`` to ``v`` with that coordinate lowered, matching the
convention that differentials have degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import (
    DimensionError,
    ExactMatrix,
    FieldError,
    FieldSpec,
    commute_check,
    det,
    kron,
)


class CubeError(ValueError):
    """A cube or multicomplex violates one of its structural invariants."""


# ---------------------------------------------------------------------------
# one-dimensional binary complexes


@dataclass(frozen=True)
class BinaryComplexPair:
    """Graded free modules on degrees 0..d with two differentials.

    ``top[k]`` and ``bottom[k]`` map degree k+1 to degree k, so they have
    shape ``(ranks[k], ranks[k+1])``.
    """

    field: FieldSpec
    ranks: tuple[int, ...]
    top: tuple[ExactMatrix, ...]
    bottom: tuple[ExactMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "top", tuple(self.top))
        object.__setattr__(self, "bottom", tuple(self.bottom))
        nd = max(len(self.ranks) - 1, 0)
        for name, ds in (("top", self.top), ("bottom", self.bottom)):
            if len(ds) != nd:
                raise CubeError(f"{name}: expected {nd} differentials, got {len(ds)}")
            for k, d in enumerate(ds):
                if d.field != self.field:
                    raise FieldError(f"{name}[{k}] lives over {d.field.name}")
                if d.shape != (self.ranks[k], self.ranks[k + 1]):
                    raise DimensionError(
                        f"{name}[{k}] has shape {d.shape}, expected {(self.ranks[k], self.ranks[k + 1])}")
            for k in range(nd - 1):
                if not (ds[k] @ ds[k + 1]).is_zero():
                    raise CubeError(f"{name} differential does not square to zero at degree {k + 2}")

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def differentials(self, which: str) -> tuple[ExactMatrix, ...]:
        if which not in ("top", "bottom"):
            raise ValueError(which)
        return self.top if which == "top" else self.bottom

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))


def is_exact(ranks: Sequence[int], diffs: Sequence[ExactMatrix]) -> bool:
    rk = [0] + [d.rank() for d in diffs] + [0]
    # rk[k] is the rank of the map out of degree k (into k-1); rk[k+1] the map into degree k
    return all(rk[k] + rk[k + 1] == ranks[k] for k in range(len(ranks)))


def is_acyclic(c: BinaryComplexPair) -> bool:
    return is_exact(c.ranks, c.top) and is_exact(c.ranks, c.bottom)


def is_diagonal(c: BinaryComplexPair) -> bool:
    return c.top == c.bottom


# ---------------------------------------------------------------------------
# cubes [P; A_1, ..., A_n]


@dataclass(frozen=True)
class EigenData:
    """Simultaneous diagonalisation: ``basis^-1 @ autos[i] @ basis == diag(diagonals[i])``."""

    basis: ExactMatrix
    diagonals: tuple[tuple, ...]


@dataclass(frozen=True, eq=False)
class Cube:
    field: FieldSpec
    rank: int
    autos: tuple[ExactMatrix, ...]
    eigen: EigenData | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "autos", tuple(self.autos))
        for a in self.autos:
            if a.field != self.field:
                raise FieldError(f"automorphism over {a.field.name} in a cube over {self.field.name}")
            if a.shape != (self.rank, self.rank):
                raise DimensionError(f"automorphism of shape {a.shape} on a rank-{self.rank} module")
        if not commute_check(self.autos):
            raise CubeError("automorphisms must be invertible and pairwise commuting")
        if self.eigen is not None:
            check_eigen(self)

    @classmethod
    def from_eigen(cls, field: FieldSpec, diagonals: Sequence[Sequence], basis: ExactMatrix | None = None) -> Cube:
        """Build the diagonalisable cube with the given joint eigenvalues."""
        diagonals = tuple(tuple(field.coerce(x) for x in d) for d in diagonals)
        if not diagonals:
            raise CubeError("from_eigen needs at least one direction")
        p = len(diagonals[0])
        if basis is None:
            basis = ExactMatrix.identity(field, p)
        binv = basis.inverse()
        autos = tuple(basis @ ExactMatrix.diag(field, d) @ binv for d in diagonals)
        return cls(field, p, autos, EigenData(basis, diagonals))

    @classmethod
    def _trusted(cls, field: FieldSpec, rank: int, autos: Sequence[ExactMatrix], eigen: EigenData | None = None) -> Cube:
        """Construct without revalidation; callers guarantee the invariants."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "rank", rank)
        object.__setattr__(obj, "autos", tuple(autos))
        object.__setattr__(obj, "eigen", eigen)
        return obj

    @property
    def n(self) -> int:
        return len(self.autos)

    @property
    def key(self) -> tuple:
        sk = self.field.sort_key
        return (self.field.name, self.rank, len(self.autos),
                tuple(tuple(sk(x) for x in a.flat()) for a in self.autos))

    def __eq__(self, other):
        if not isinstance(other, Cube):
            return NotImplemented
        return self.field == other.field and self.rank == other.rank and self.autos == other.autos

    def __hash__(self):
        return hash((self.field, self.rank, self.autos))

    def __repr__(self):
        autos = ", ".join(repr(a) for a in self.autos)
        return f"Cube[{self.field.name}^{self.rank}; {autos}]"

    def without_eigen(self) -> Cube:
        return Cube._trusted(self.field, self.rank, self.autos)


def check_eigen(c: Cube) -> None:
    e = c.eigen
    if len(e.diagonals) != c.n:
        raise CubeError(f"eigen-data has {len(e.diagonals)} directions, cube has {c.n}")
    if e.basis.shape != (c.rank, c.rank) or det(e.basis) == 0:
        raise CubeError("eigen basis must be an invertible rank x rank matrix")
    for a, d in zip(c.autos, e.diagonals):
        if len(d) != c.rank:
            raise CubeError("eigenvalue tuple has the wrong length")
        if a @ e.basis != e.basis @ ExactMatrix.diag(c.field, d):
            raise CubeError("eigen-data does not diagonalise the automorphisms")


def external_product(x: Cube, y: Cube) -> Cube:
    """[P; A...] boxtimes [Q; B...] = [P (x) Q; A (x) 1, ..., 1 (x) B, ...]."""
    if x.field != y.field:
        raise FieldError("external product over different fields")
    f = x.field
    ip, iq = ExactMatrix.identity(f, x.rank), ExactMatrix.identity(f, y.rank)
    autos = [kron(a, iq) for a in x.autos] + [kron(ip, b) for b in y.autos]
    eigen = None
    if x.eigen is not None and y.eigen is not None:
        dx = [tuple(a for a in d for _ in range(y.rank)) for d in x.eigen.diagonals]
        dy = [tuple(b for _ in range(x.rank) for b in d) for d in y.eigen.diagonals]
        eigen = EigenData(kron(x.eigen.basis, y.eigen.basis), tuple(dx + dy))
    return Cube._trusted(f, x.rank * y.rank, autos, eigen)


def permute_directions(c: Cube, sigma: Sequence[int]) -> Cube:
    """Reorder directions: direction k of the result is direction ``sigma[k]`` of ``c``."""
    if sorted(sigma) != list(range(c.n)):
        raise ValueError(f"{list(sigma)} is not a permutation of range({c.n})")
    eigen = None
    if c.eigen is not None:
        eigen = EigenData(c.eigen.basis, tuple(c.eigen.diagonals[s] for s in sigma))
    return Cube._trusted(c.field, c.rank, [c.autos[s] for s in sigma], eigen)


def cube_to_complex(c: Cube) -> BinaryComplexPair:
    """The 1-cube [P; A] as the two-term binary complex P -(A, 1)-> P."""
    if c.n != 1:
        raise CubeError("only 1-cubes are binary complexes")
    return BinaryComplexPair(c.field, (c.rank, c.rank), (c.autos[0],), (ExactMatrix.identity(c.field, c.rank),))


# ---------------------------------------------------------------------------
# general n-cubes


Vertex = tuple[int, ...]


def lower(v: Vertex, i: int) -> Vertex:
    return v[:i] + (0,) + v[i + 1:]


def raise_(v: Vertex, i: int) -> Vertex:
    return v[:i] + (1,) + v[i + 1:]


class GeneralCube:
    """A binary multicomplex supported on {0,1}^n.

    ``edges[(i, v)] = (top, bottom)`` for each vertex ``v`` with ``v[i] == 1``,
    both maps going from the module at ``v`` to the module at ``lower(v, i)``.
    """

    def __init__(self, field: FieldSpec, n: int, vertex_ranks: Mapping[Vertex, int],
                 edges: Mapping[tuple[int, Vertex], tuple[ExactMatrix, ExactMatrix]], validate: bool = True):
        self.field = field
        self.n = n
        self.vertex_ranks = dict(vertex_ranks)
        self.edges = dict(edges)
        if validate:
            self.validate()

    def vertices(self) -> Iterator[Vertex]:
        return iter(product((0, 1), repeat=self.n))

    def edge(self, i: int, v: Vertex) -> tuple[ExactMatrix, ExactMatrix]:
        return self.edges[(i, v)]

    def validate(self) -> None:
        if set(self.vertex_ranks) != set(self.vertices()):
            raise CubeError("vertex set must be {0,1}^n")
        want = {(i, v) for v in self.vertices() for i in range(self.n) if v[i] == 1}
        if set(self.edges) != want:
            raise CubeError("edge set does not match the n-cube")
        for (i, v), pair in self.edges.items():
            w = lower(v, i)
            for m in pair:
                if m.field != self.field:
                    raise FieldError("edge over the wrong field")
                if m.shape != (self.vertex_ranks[w], self.vertex_ranks[v]):
                    raise DimensionError(f"edge {(i, v)} has shape {m.shape}")
                if not m.is_square or det(m) == 0:
                    raise CubeError(f"edge {(i, v)} is not invertible")
        for v in self.vertices():
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    if v[i] != 1 or v[j] != 1:
                        continue
                    for x in (0, 1):
                        for y in (0, 1):
                            # x-differential in direction i against y-differential in direction j
                            lhs = self.edges[(i, lower(v, j))][x] @ self.edges[(j, v)][y]
                            rhs = self.edges[(j, lower(v, i))][y] @ self.edges[(i, v)][x]
                            if lhs != rhs:
                                raise CubeError(f"square in directions {i},{j} at {v} does not commute")

    def is_acyclic(self) -> bool:
        return all(det(t) != 0 and det(b) != 0 for t, b in self.edges.values())

    def is_diagonal(self) -> bool:
        """Diagonal in at least one direction."""
        return any(all(t == b for (i, _), (t, b) in self.edges.items() if i == d) for d in range(self.n))

    def edge_complex(self, i: int, v: Vertex) -> BinaryComplexPair:
        t, b = self.edges[(i, v)]
        w = lower(v, i)
        return BinaryComplexPair(self.field, (self.vertex_ranks[w], self.vertex_ranks[v]), (t,), (b,))

    def face(self, i: int, value: int) -> GeneralCube:
        """The (n-1)-cube of vertices whose i-th coordinate equals ``value``."""
        drop = lambda v: v[:i] + v[i + 1:]
        ranks = {drop(v): r for v, r in self.vertex_ranks.items() if v[i] == value}
        edges = {}
        for (j, v), pair in self.edges.items():
            if j == i or v[i] != value:
                continue
            edges[(j - (j > i), drop(v))] = pair
        return GeneralCube(self.field, self.n - 1, ranks, edges, validate=False)

    def conjugate(self, iso: Mapping[Vertex, ExactMatrix]) -> GeneralCube:
        """Transport the cube along vertexwise isomorphisms ``iso[v]``."""
        inv = {v: m.inverse() for v, m in iso.items()}
        edges = {}
        for (i, v), (t, b) in self.edges.items():
            w = lower(v, i)
            edges[(i, v)] = (iso[w] @ t @ inv[v], iso[w] @ b @ inv[v])
        ranks = {v: iso[v].rows for v in self.vertices()}
        return GeneralCube(self.field, self.n, ranks, edges, validate=False)

    def __eq__(self, other):
        if not isinstance(other, GeneralCube):
            return NotImplemented
        return (self.field, self.n, self.vertex_ranks, self.edges) == (other.field, other.n, other.vertex_ranks, other.edges)

    def __repr__(self):
        return f"GeneralCube[{self.field.name}, n={self.n}, ranks={sorted(self.vertex_ranks.items())}]"


def cube_to_bincx(c: Cube) -> GeneralCube:
    """[P; A_1..A_n] as the n-cube with vertices P and direction-i edges (A_i, 1)."""
    ident = ExactMatrix.identity(c.field, c.rank)
    verts = list(product((0, 1), repeat=c.n))
    edges = {(i, v): (c.autos[i], ident) for v in verts for i in range(c.n) if v[i] == 1}
    return GeneralCube(c.field, c.n, {v: c.rank for v in verts}, edges, validate=False)


def normalize_cube(g: GeneralCube) -> tuple[Cube, dict[Vertex, ExactMatrix]]:
    """Reduce an n-cube to the form [P; A_1, ..., A_n].

    Works from the last direction inwards: the edge pair (alpha, beta) is
    replaced by (alpha beta^-1, 1) by transporting the upper face along
    beta, then the lower face is normalised recursively.  Returns the cube
    and isomorphisms ``cert[v]: P_v -> P`` such that conjugating ``g`` by
    ``cert`` gives exactly ``cube_to_bincx(cube)``.  The vertex at the origin
    always receives the identity.
    """
    if not g.is_acyclic():
        raise CubeError("normalize_cube needs invertible edges")
    n = g.n
    if n == 0:
        p = g.vertex_ranks[()]
        return Cube._trusted(g.field, p, ()), {(): ExactMatrix.identity(g.field, p)}
    last = n - 1
    beta = {}
    for v in g.vertices():
        if v[last] == 1:
            beta[v] = g.edge(last, v)[1]
    base, psi = normalize_cube(g.face(last, 0))
    comps = []
    for u, m in psi.items():
        v = u + (1,)
        alpha, b = g.edge(last, v)
        comps.append(m @ alpha @ b.inverse() @ m.inverse())
    a_last = comps[0]
    if any(c != a_last for c in comps[1:]):
        raise CubeError("last-direction components disagree; the cube's squares do not commute")
    cert = {}
    for u, m in psi.items():
        cert[u + (0,)] = m
        cert[u + (1,)] = m @ beta[u + (1,)]
    cube = Cube._trusted(g.field, base.rank, base.autos + (a_last,))
    if not commute_check(cube.autos):
        raise CubeError("normalised automorphisms fail to commute")
    return cube, cert


def verify_certificate(g: GeneralCube, c: Cube, cert: Mapping[Vertex, ExactMatrix]) -> bool:
    """Check ``cert[w] @ edge == target @ cert[v]`` on every edge, top and bottom."""
    if c.n != g.n or c.field != g.field:
        return False
    ident = ExactMatrix.identity(c.field, c.rank)
    for v in g.vertices():
        m = cert[v]
        if m.shape != (c.rank, g.vertex_ranks[v]) or det(m) == 0:
            return False
    for (i, v), (t, b) in g.edges.items():
        w = lower(v, i)
        if cert[w] @ t != c.autos[i] @ cert[v]:
            return False
        if cert[w] @ b != ident @ cert[v]:
            return False
    return True


# ---------------------------------------------------------------------------
# formal sums


class FormalSum:
    """Integer combination of cubes, keyed by the cube's matrices.

    Rank-0 cubes are the zero object and are dropped.  Equality is equality
    of canonical forms, which is finer than equality of K-classes.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[int, Cube]] = ()):
        acc: dict[Cube, int] = {}
        fld = None
        for coeff, cube in terms:
            if fld is None:
                fld = cube.field
            elif cube.field != fld:
                raise FieldError("formal sum mixes fields")
            if coeff == 0 or cube.rank == 0:
                continue
            acc[cube] = acc.get(cube, 0) + coeff
        self._terms = {c: k for c, k in acc.items() if k != 0}

    @classmethod
    def of(cls, cube: Cube, coeff: int = 1) -> FormalSum:
        return cls([(coeff, cube)])

    def items(self) -> list[tuple[Cube, int]]:
        """Terms in canonical order (by cube key)."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].key)

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def coefficient(self, cube: Cube) -> int:
        return self._terms.get(cube, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: FormalSum) -> FormalSum:
        return FormalSum([(k, c) for c, k in self._terms.items()] + [(k, c) for c, k in other._terms.items()])

    def __neg__(self) -> FormalSum:
        return FormalSum([(-k, c) for c, k in self._terms.items()])

    def __sub__(self, other: FormalSum) -> FormalSum:
        return self + (-other)

    def __rmul__(self, n: int) -> FormalSum:
        if not isinstance(n, int):
            return NotImplemented
        return FormalSum([(n * k, c) for c, k in self._terms.items()])

    __mul__ = __rmul__

    def __repr__(self):
        if not self._terms:
            return "FormalSum(0)"
        return "FormalSum(" + " ".join(f"{k:+d}*{c!r}" for c, k in self.items()) + ")"
