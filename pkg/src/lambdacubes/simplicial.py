"""Dold-Kan machinery for one-dimensional complexes.

``gamma`` builds the simplicial module of a bounded complex, truncated at a
finite simplicial degree; ``apply_functor_degreewise`` applies Lambda^r
levelwise; ``normalize`` takes the Moore complex N_n = ker d_1 ∩ ... ∩ ker d_n
with differential d_0.

The faces d_i with i >= 1 of a Gamma-object never involve the differential
of the complex (a face can only lose the value 0 of a surjection through
d_0), so for a binary complex the top and bottom simplicial modules share
them.  ``normalize_binary`` relies on this and uses one kernel basis for both
differentials.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from .bincx import BinaryComplexPair, CubeError, is_acyclic
from .linalg import (
    DimensionError,
    ExactMatrix,
    FieldError,
    FieldSpec,
    compound,
    kron,
    stacked_kernel_basis,
)
from .multilinear import cross_effect_map, cross_effect_ranks


@dataclass(frozen=True)
class BoundedComplex:
    """Chain complex on degrees 0..d; ``diff[k]`` maps degree k+1 to degree k."""

    field: FieldSpec
    ranks: tuple[int, ...]
    diff: tuple[ExactMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "diff", tuple(self.diff))
        if len(self.diff) != max(len(self.ranks) - 1, 0):
            raise CubeError("need one differential per consecutive pair of degrees")
        for k, d in enumerate(self.diff):
            if d.field != self.field:
                raise FieldError("differential over the wrong field")
            if d.shape != (self.ranks[k], self.ranks[k + 1]):
                raise DimensionError(f"diff[{k}] has shape {d.shape}")
        for k in range(len(self.diff) - 1):
            if not (self.diff[k] @ self.diff[k + 1]).is_zero():
                raise CubeError(f"d^2 != 0 at degree {k + 2}")

    @property
    def length(self) -> int:
        return len(self.ranks) - 1


@dataclass(frozen=True)
class TruncatedSimplicialModule:
    """Levels 0..D.  ``faces[n]`` holds d_0..d_n out of level n (empty at n = 0);
    ``degeneracies[n]`` holds s_0..s_n out of level n (empty at n = D)."""

    field: FieldSpec
    dims: tuple[int, ...]
    faces: tuple[tuple[ExactMatrix, ...], ...]
    degeneracies: tuple[tuple[ExactMatrix, ...], ...]

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def identity_failures(self) -> list[str]:
        """Every simplicial identity that fails within the truncation."""
        D = self.top_degree
        d, s = self.faces, self.degeneracies
        bad = []
        for n in range(2, D + 1):
            for j in range(n + 1):
                for i in range(j):
                    if d[n - 1][i] @ d[n][j] != d[n - 1][j - 1] @ d[n][i]:
                        bad.append(f"d{i}d{j}=d{j - 1}d{i} at level {n}")
        for n in range(0, D):
            ident = ExactMatrix.identity(self.field, self.dims[n])
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = d[n + 1][i] @ s[n][j]
                    if i < j:
                        ok = lhs == s[n - 1][j - 1] @ d[n][i]
                    elif i in (j, j + 1):
                        ok = lhs == ident
                    else:
                        ok = lhs == s[n - 1][j] @ d[n][i - 1]
                    if not ok:
                        bad.append(f"d{i}s{j} at level {n}")
        for n in range(0, D - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if s[n + 1][i] @ s[n][j] != s[n + 1][j + 1] @ s[n][i]:
                        bad.append(f"s{i}s{j}=s{j + 1}s{i} at level {n}")
        return bad

    def check_identities(self) -> bool:
        return not self.identity_failures()


# ---------------------------------------------------------------------------
# Gamma


def _summands(n: int, d: int) -> list[tuple[int, tuple[int, ...]]]:
    """Monotone surjections [n] -> [k], k <= d, as (k, jump positions)."""
    return [(k, jumps) for k in range(min(n, d) + 1) for jumps in combinations(range(1, n + 1), k)]


def _act(theta: Sequence[int], k: int, jumps: tuple[int, ...]):
    """Pull the summand (k, jumps) of level n back along theta: [m] -> [n].

    Returns (target summand, kind) with kind 'id', 'd' (the complex's
    differential C_k -> C_{k-1}) or None for the zero map.
    """
    tau = [sum(1 for t in jumps if t <= x) for x in theta]
    image = sorted(set(tau))
    if len(image) == k + 1:
        kind = "id"
    elif image == list(range(1, k + 1)):
        kind = "d"
    else:
        return None, None
    pos = {v: i for i, v in enumerate(image)}
    epi = [pos[t] for t in tau]
    new_jumps = tuple(j for j in range(1, len(epi)) if epi[j] != epi[j - 1])
    return (len(image) - 1, new_jumps), kind


def _operator_matrix(c: BoundedComplex, n: int, m: int, theta: Sequence[int]) -> ExactMatrix:
    d = c.length
    src, dst = _summands(n, d), _summands(m, d)
    off_src, off_dst = _offsets(c, src), _offsets(c, dst)
    dst_index = {s: i for i, s in enumerate(dst)}
    data = {}
    one = c.field.one
    for si, (k, jumps) in enumerate(src):
        target, kind = _act(theta, k, jumps)
        if kind is None:
            continue
        ti = dst_index[target]
        r0, c0 = off_dst[ti], off_src[si]
        if kind == "id":
            for a in range(c.ranks[k]):
                data[(r0 + a, c0 + a)] = one
        else:
            dm = c.diff[k - 1]
            for a, row in enumerate(dm.entries):
                for b, x in enumerate(row):
                    if x != 0:
                        data[(r0 + a, c0 + b)] = x
    rows = sum(c.ranks[k] for k, _ in dst)
    cols = sum(c.ranks[k] for k, _ in src)
    return ExactMatrix._from_sparse(c.field, rows, cols, data)


def _offsets(c: BoundedComplex, summands) -> list[int]:
    out, acc = [], 0
    for k, _ in summands:
        out.append(acc)
        acc += c.ranks[k]
    return out


def gamma_dim(ranks: Sequence[int], n: int) -> int:
    return sum(comb(n, k) * r for k, r in enumerate(ranks) if k <= n)


def gamma(c: BoundedComplex, D: int) -> TruncatedSimplicialModule:
    if D < c.length:
        raise ValueError(f"truncation degree {D} is below the support [0, {c.length}]")
    dims = tuple(gamma_dim(c.ranks, n) for n in range(D + 1))
    faces = [()]
    for n in range(1, D + 1):
        faces.append(tuple(
            _operator_matrix(c, n, n - 1, [j if j < i else j + 1 for j in range(n)]) for i in range(n + 1)))
    degens = []
    for n in range(D):
        degens.append(tuple(
            _operator_matrix(c, n, n + 1, [j if j <= i else j - 1 for j in range(n + 2)]) for i in range(n + 1)))
    degens.append(())
    return TruncatedSimplicialModule(c.field, dims, tuple(faces), tuple(degens))


def gamma_summand_inclusion(c: BoundedComplex, n: int) -> ExactMatrix:
    """Inclusion of C_n as the summand of Gamma(C)_n indexed by the identity of [n]."""
    summ = _summands(n, c.length)
    idx = summ.index((n, tuple(range(1, n + 1))))
    off = _offsets(c, summ)[idx]
    dim = gamma_dim(c.ranks, n)
    one = c.field.one
    return ExactMatrix._from_sparse(c.field, dim, c.ranks[n], {(off + a, a): one for a in range(c.ranks[n])})


# ---------------------------------------------------------------------------
# functors and normalisation


def apply_functor_degreewise(s: TruncatedSimplicialModule, r: int) -> TruncatedSimplicialModule:
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1:
        return s
    return TruncatedSimplicialModule(
        s.field,
        tuple(comb(d, r) for d in s.dims),
        tuple(tuple(compound(m, r) for m in level) for level in s.faces),
        tuple(tuple(compound(m, r) for m in level) for level in s.degeneracies),
    )


def tensor_levelwise(s: TruncatedSimplicialModule, t: TruncatedSimplicialModule) -> TruncatedSimplicialModule:
    if s.field != t.field:
        raise FieldError("tensor of simplicial modules over different fields")
    D = min(s.top_degree, t.top_degree)
    return TruncatedSimplicialModule(
        s.field,
        tuple(s.dims[n] * t.dims[n] for n in range(D + 1)),
        tuple(tuple(kron(a, b) for a, b in zip(s.faces[n], t.faces[n])) for n in range(D + 1)),
        tuple(tuple(kron(a, b) for a, b in zip(s.degeneracies[n], t.degeneracies[n])) if n < D else ()
              for n in range(D + 1)),
    )


@dataclass(frozen=True)
class NormalizedBasis:
    """Columns of ``matrix`` span N_n; ``free`` are the rows where it is the identity."""

    matrix: ExactMatrix
    free: tuple[int, ...]


def moore_bases(s: TruncatedSimplicialModule, upto: int) -> list[NormalizedBasis]:
    out = [NormalizedBasis(ExactMatrix.identity(s.field, s.dims[0]), tuple(range(s.dims[0])))]
    for n in range(1, upto + 1):
        k, free = stacked_kernel_basis(s.field, s.faces[n][1:], s.dims[n])
        out.append(NormalizedBasis(k, tuple(free)))
    return out


def _moore_differentials(s: TruncatedSimplicialModule, bases: Sequence[NormalizedBasis]) -> list[ExactMatrix]:
    diffs = []
    for n in range(1, len(bases)):
        d0 = s.faces[n][0].submatrix(bases[n - 1].free, range(s.dims[n]))
        diffs.append(d0 @ bases[n].matrix)
    return diffs


def normalize(s: TruncatedSimplicialModule, upto: int) -> tuple[BoundedComplex, list[NormalizedBasis]]:
    """Moore complex in degrees 0..upto, with the kernel bases used."""
    if upto < 0 or upto > s.top_degree - 1:
        raise ValueError(f"normalize upto {upto} needs truncation degree >= {upto + 1}")
    bases = moore_bases(s, upto)
    diffs = _moore_differentials(s, bases)
    return BoundedComplex(s.field, tuple(b.matrix.cols for b in bases), tuple(diffs)), bases


def normalize_binary(top: TruncatedSimplicialModule, bottom: TruncatedSimplicialModule,
                     upto: int) -> tuple[BinaryComplexPair, list[NormalizedBasis]]:
    """Normalise two simplicial modules sharing d_1, d_2, ... into one binary complex."""
    if top.dims != bottom.dims:
        raise CubeError("binary normalisation needs equal simplicial dimensions")
    if upto < 0 or upto > top.top_degree - 1:
        raise ValueError(f"normalize upto {upto} needs truncation degree >= {upto + 1}")
    for n in range(1, upto + 1):
        if top.faces[n][1:] != bottom.faces[n][1:]:
            raise CubeError(f"faces d_1.. differ at level {n}; no common normalised object")
    bases = moore_bases(top, upto)
    ranks = tuple(b.matrix.cols for b in bases)
    return BinaryComplexPair(top.field, ranks, _moore_differentials(top, bases),
                             _moore_differentials(bottom, bases)), bases


def _split(c: BinaryComplexPair) -> tuple[BoundedComplex, BoundedComplex]:
    return BoundedComplex(c.field, c.ranks, c.top), BoundedComplex(c.field, c.ranks, c.bottom)


def exterior_power_binary(c: BinaryComplexPair, r: int) -> BinaryComplexPair:
    """N Lambda^r Gamma applied to a binary complex, one differential at a time.

    For a complex supported on [0, d] the result lives on [0, r d]; the
    simplicial side is truncated at r d + 1.
    """
    top, bottom = _split(c)
    D = r * c.length + 1
    st = apply_functor_degreewise(gamma(top, D), r)
    sb = apply_functor_degreewise(gamma(bottom, D), r)
    out, _ = normalize_binary(st, sb, D - 1)
    return out


def simplicial_tensor(c: BinaryComplexPair, d: BinaryComplexPair, upto: int | None = None) -> BinaryComplexPair:
    """N(Gamma c (x) Gamma d), levelwise for each of the two differentials."""
    if c.field != d.field:
        raise FieldError("simplicial tensor over different fields")
    support = c.length + d.length
    if upto is None:
        upto = support
    if upto < support:
        raise ValueError(f"upto={upto} cannot capture the support [0, {support}]")
    D = upto + 1
    (ct, cb), (dt, db) = _split(c), _split(d)
    st = tensor_levelwise(gamma(ct, D), gamma(dt, D))
    sb = tensor_levelwise(gamma(cb, D), gamma(db, D))
    out, _ = normalize_binary(st, sb, upto)
    return out


def dold_kan_unit(c: BoundedComplex, D: int | None = None) -> tuple[BoundedComplex, list[ExactMatrix]]:
    """N Gamma(c) together with the comparison isomorphisms c_n -> N_n."""
    D = c.length + 1 if D is None else D
    nc, bases = normalize(gamma(c, D), c.length)
    phis = []
    for n in range(c.length + 1):
        inc = gamma_summand_inclusion(c, n)
        phis.append(inc.submatrix(bases[n].free, range(inc.cols)))
    return nc, phis


def verify_dold_kan_unit(c: BoundedComplex) -> bool:
    nc, phis = dold_kan_unit(c)
    if nc.ranks != c.ranks:
        return False
    if any(p.det() == 0 for p in phis):
        return False
    return all(nc.diff[k] @ phis[k + 1] == phis[k] @ c.diff[k] for k in range(c.length))


@dataclass(frozen=True)
class KoszulDoubleComplex:
    """Two-row double complex of cross-effects for a map a: P -> Q.

    Column i (1-based) holds cr_i Lambda^r(P, ..., P) on top, in total degree
    i, and cr_i Lambda^r(Q, P, ..., P) below it, in total degree i - 1.
    Horizontal differentials are not constructed.
    """

    r: int
    top_ranks: tuple[int, ...]
    bottom_ranks: tuple[int, ...]
    vertical: tuple[ExactMatrix, ...]

    def total_ranks(self) -> tuple[int, ...]:
        out = []
        for k in range(self.r + 1):
            t = self.top_ranks[k - 1] if 1 <= k <= self.r else 0
            b = self.bottom_ranks[k] if k < self.r else 0
            out.append(t + b)
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * x for k, x in enumerate(self.total_ranks()))


def koszul_double_complex(r: int, a: ExactMatrix) -> KoszulDoubleComplex:
    q, p = a.shape
    ident = ExactMatrix.identity(a.field, p)
    tops, bots, verts = [], [], []
    for i in range(1, r + 1):
        tops.append(cross_effect_ranks(r, i, (p,) * i)[1])
        bots.append(cross_effect_ranks(r, i, (q,) + (p,) * (i - 1))[1])
        verts.append(cross_effect_map(r, i, (a,) + (ident,) * (i - 1)))
    return KoszulDoubleComplex(r, tuple(tops), tuple(bots), tuple(verts))


def two_term(field: FieldSpec, a: ExactMatrix, b: ExactMatrix | None = None) -> BinaryComplexPair:
    """The binary complex P -(a, b)-> Q on degrees [0, 1]; ``b`` defaults to the identity."""
    if b is None:
        b = ExactMatrix.identity(field, a.rows)
    return BinaryComplexPair(field, (a.rows, a.cols), (a,), (b,))

