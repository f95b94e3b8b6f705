"""Cross-effects of the exterior power functor on free modules.

The i-th cross-effect of Lambda^r is taken to be the direct sum, over
compositions (j_1, ..., j_i) of r into positive parts, of
Lambda^{j_1} P_1 (x) ... (x) Lambda^{j_i} P_i.  Blocks are laid out in
reverse lexicographic order of the compositions, so that for example
cr_2 Lambda^3 (P_1, P_2) = Lambda^2 P_1 (x) P_2 (+) P_1 (x) Lambda^2 P_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, prod
from typing import Sequence

from .linalg import (
    DimensionError,
    ExactMatrix,
    FieldError,
    block_diag,
    compound,
    det,
    kron,
    kron_all,
)
from .symfunc import partitions_of, schur_in_e


@lru_cache(maxsize=None)
def compositions(r: int, i: int) -> tuple[tuple[int, ...], ...]:
    """Compositions of r into exactly i positive parts, reverse lexicographic."""
    if i < 1 or r < i:
        return ()
    out = []
    # cut points of r into i parts, ordered so the first part is largest first
    for cuts in combinations(range(1, r), i - 1):
        bounds = (0,) + cuts + (r,)
        out.append(tuple(bounds[k + 1] - bounds[k] for k in range(i)))
    return tuple(sorted(out, reverse=True))


@dataclass(frozen=True)
class CrossEffectLayout:
    r: int
    i: int
    ranks: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def block_slice(self, k: int) -> range:
        return range(self.offsets[k], self.offsets[k] + self.sizes[k])


def cross_effect_ranks(r: int, i: int, ranks: Sequence[int]) -> tuple[CrossEffectLayout, int]:
    if r < 1 or i < 1:
        raise ValueError("cross effects need r >= 1 and i >= 1")
    ranks = tuple(ranks)
    if len(ranks) != i:
        raise ValueError(f"expected {i} ranks, got {len(ranks)}")
    blocks = compositions(r, i)
    sizes = tuple(prod(comb(p, j) for p, j in zip(ranks, js)) for js in blocks)
    offsets, acc = [], 0
    for s in sizes:
        offsets.append(acc)
        acc += s
    layout = CrossEffectLayout(r, i, ranks, blocks, sizes, tuple(offsets))
    return layout, layout.total


def cross_effect_map(r: int, i: int, maps: Sequence[ExactMatrix]) -> ExactMatrix:
    """cr_i Lambda^r (M_1, ..., M_i) as a block diagonal matrix.

    Maps may be rectangular (a morphism P_k -> Q_k); the block for the
    composition (j_1, ..., j_i) is kron(Lambda^{j_1} M_1, ..., Lambda^{j_i} M_i).
    """
    if len(maps) != i:
        raise ValueError(f"expected {i} maps, got {len(maps)}")
    if r < 1 or i < 1:
        raise ValueError("cross effects need r >= 1 and i >= 1")
    field = maps[0].field
    if any(m.field != field for m in maps):
        raise FieldError("cross effect of maps over different fields")
    cache: dict[tuple[int, int], ExactMatrix] = {}

    def lam(k: int, j: int) -> ExactMatrix:
        if (k, j) not in cache:
            cache[(k, j)] = compound(maps[k], j)
        return cache[(k, j)]

    blocks = [kron_all(field, [lam(k, j) for k, j in enumerate(js)]) for js in compositions(r, i)]
    return block_diag(field, blocks)


def char_e(a: ExactMatrix, k: int):
    """trace Lambda^k(a): the sum of principal k x k minors."""
    if not a.is_square:
        raise DimensionError("char_e needs a square matrix")
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return a.field.one
    acc = a.field.zero
    for s in combinations(range(a.rows), k):
        acc = acc + det(a.submatrix(s, s))
    return acc


def character_values(a: ExactMatrix, r: int, alphabet: str) -> dict:
    return {(alphabet, k): char_e(a, k) for k in range(1, r + 1)}


def cauchy_sides(a: ExactMatrix, b: ExactMatrix, r: int):
    """Both sides of the character-level Cauchy identity for Lambda^r(a (x) b)."""
    if a.field != b.field:
        raise FieldError("cauchy check over different fields")
    lhs = char_e(kron(a, b), r)
    vals = character_values(a, r, "X")
    vals.update(character_values(b, r, "Y"))
    rhs = a.field.zero
    for mu in partitions_of(r):
        sx = schur_in_e(mu, "X").evaluate(vals, a.field.zero)
        sy = schur_in_e(mu.conjugate(), "Y").evaluate(vals, a.field.zero)
        rhs = rhs + sx * sy
    return lhs, rhs


def verify_cauchy_character(a: ExactMatrix, b: ExactMatrix, r: int) -> bool:
    if not (a.is_square and b.is_square):
        raise DimensionError("cauchy check needs square matrices")
    if r > 4:
        raise ValueError("the character suite is bounded to r <= 4")
    lhs, rhs = cauchy_sides(a, b, r)
    return lhs == rhs
