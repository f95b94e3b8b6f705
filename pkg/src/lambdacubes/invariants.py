"""Computable invariants of K-class representatives over a field F.

* :func:`torsion` sends an acyclic binary complex to F^x (top torsion over
  bottom torsion), which realises K_1(F) = F^x and kills diagonal complexes.
* :func:`symbol` sends a diagonalisable cube to the n-fold tensor power of
  F^x.  It sees multilinearity only; it does not factor through Steinberg
  relations, so symbol equality is never evidence against a K_n identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .bincx import BinaryComplexPair, Cube, CubeError, FormalSum, is_acyclic
from .linalg import ExactMatrix, FieldSpec, det, hstack, pivot_columns

DEFAULT_FACTOR_BOUND = 10 ** 6
MINUS_ONE = -1


class FactorizationError(ValueError):
    pass


@lru_cache(maxsize=4096)
def factor_int(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of n >= 1 by trial division up to ``bound``."""
    if n < 1:
        raise ValueError("factor_int needs a positive integer")
    out = []
    f = 2
    while f * f <= n:
        if f > bound:
            raise FactorizationError(f"cofactor {n} has no factor below {bound}")
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    order = p - 1
    qs = [q for q, _ in factor_int(order)]
    for g in range(2, p):
        if all(pow(g, order // q, p) != 1 for q in qs):
            return g
    raise AssertionError("no primitive root found")


@lru_cache(maxsize=None)
def _dlog_table(p: int) -> dict[int, int]:
    g = primitive_root(p)
    table, x = {}, 1
    for e in range(p - 1):
        table.setdefault(x, e)
        x = x * g % p
    return table


@dataclass(frozen=True)
class UnitRepr:
    """Coordinates of a unit in a basis of F^x.

    For Q: ``negative`` plus prime exponents.  For F_p: a single exponent of
    the least primitive root, reduced mod p - 1.
    """

    field: FieldSpec
    negative: bool = False
    exponents: tuple[tuple[int, int], ...] = ()
    dlog: int = 0

    def labels(self) -> dict[int, int]:
        """Basis label -> coefficient; label -1 is the torsion unit of Q."""
        if self.field.is_rational:
            out = {MINUS_ONE: 1} if self.negative else {}
            out.update(dict(self.exponents))
            return out
        if self.dlog == 0:
            return {}
        return {primitive_root(self.field.p): self.dlog}


def unit_repr(x, field: FieldSpec, bound: int = DEFAULT_FACTOR_BOUND) -> UnitRepr:
    x = field.coerce(x)
    if x == 0:
        raise ValueError("zero is not a unit")
    if field.is_rational:
        num, den = int(x.numerator), int(x.denominator)
        exps: dict[int, int] = {}
        for q, e in factor_int(abs(num), bound):
            exps[q] = exps.get(q, 0) + e
        for q, e in factor_int(den, bound):
            exps[q] = exps.get(q, 0) - e
        return UnitRepr(field, num < 0, tuple(sorted((q, e) for q, e in exps.items() if e)))
    return UnitRepr(field, dlog=_dlog_table(field.p)[x.v])


# ---------------------------------------------------------------------------
# torsion


def complex_torsion(field: FieldSpec, ranks: Sequence[int], diffs: Sequence[ExactMatrix],
                    orders: Sequence[Sequence[int]] | None = None):
    """Torsion of a based exact complex.

    ``diffs[k]`` maps degree k+1 to degree k.  In each degree k the columns
    S_k of the outgoing differential that are picked greedily (in
    ``orders[k]`` order) lift a basis of its image, and the torsion is the
    product over k of det[d(S_{k+1}) | e(S_k)] ** (-1) ** k.  The two-term
    complex F -a-> F has torsion a.
    """
    top = len(ranks) - 1
    chosen: list[list[int]] = []
    for k in range(top + 1):
        if k == 0:
            chosen.append([])
            continue
        d = diffs[k - 1]
        order = orders[k] if orders is not None else None
        chosen.append(pivot_columns(d, order))
    chosen.append([])
    tau = field.one
    for k in range(top + 1):
        n = ranks[k]
        cols = []
        if k < top:
            d = diffs[k]
            cols.append(d.submatrix(range(d.rows), chosen[k + 1]))
        e = ExactMatrix.identity(field, n)
        cols.append(e.submatrix(range(n), chosen[k]))
        m = hstack(*cols) if cols else ExactMatrix.zeros(field, 0, 0)
        if m.shape != (n, n):
            raise CubeError(f"complex is not exact in degree {k}")
        dk = det(m)
        if dk == 0:
            raise CubeError(f"complex is not exact in degree {k}")
        tau = tau * dk if k % 2 == 0 else tau / dk
    return tau


def torsion(c: BinaryComplexPair, orders: Sequence[Sequence[int]] | None = None):
    """Class of an acyclic binary complex in K_1(F) = F^x."""
    if not is_acyclic(c):
        raise CubeError("torsion needs an acyclic binary complex")
    if c.length == 0:
        return c.field.one
    return complex_torsion(c.field, c.ranks, c.top, orders) / complex_torsion(c.field, c.ranks, c.bottom, orders)


# ---------------------------------------------------------------------------
# symbols


class SymbolElement:
    """Element of the n-fold tensor power of F^x in multilinear normal form.

    Terms map n-tuples of basis labels to integers.  Over Q, coefficients of
    tuples containing the label -1 live in Z/2; over F_p everything lives in
    Z/(p-1).
    """

    __slots__ = ("n", "field", "_terms")

    def __init__(self, n: int, field: FieldSpec | None, terms: Mapping[tuple, int] | None = None):
        self.n = n
        self.field = field
        clean = {}
        for t, k in (terms or {}).items():
            if len(t) != n:
                raise ValueError(f"tuple {t} does not have arity {n}")
            k = _reduce(field, t, k)
            if k:
                clean[t] = k
        self._terms = clean

    @property
    def terms(self) -> dict[tuple, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, SymbolElement):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _combine(self, other: SymbolElement, sign: int) -> SymbolElement:
        if self.is_zero():
            return other if sign > 0 else -other
        if other.is_zero():
            return self
        if self.n != other.n:
            raise ValueError("symbols of different arity")
        fld = self.field or other.field
        out = dict(self._terms)
        for t, k in other._terms.items():
            out[t] = out.get(t, 0) + sign * k
        return SymbolElement(self.n, fld, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return SymbolElement(self.n, self.field, {t: -k for t, k in self._terms.items()})

    def __rmul__(self, m: int):
        if not isinstance(m, int):
            return NotImplemented
        return SymbolElement(self.n, self.field, {t: m * k for t, k in self._terms.items()})

    __mul__ = __rmul__

    def __repr__(self):
        if not self._terms:
            return "Symbol(0)"
        body = " + ".join(f"{k}*{t}" for t, k in sorted(self._terms.items()))
        return f"Symbol[{self.n}]({body})"


def _reduce(field: FieldSpec | None, labels: tuple, k: int) -> int:
    if field is None:
        return k
    if field.is_rational:
        return k % 2 if MINUS_ONE in labels else k
    return k % (field.p - 1)


def symbol_of_units(units: Sequence, field: FieldSpec) -> SymbolElement:
    """Multilinear expansion of the pure tensor u_1 (x) ... (x) u_n."""
    reps = [unit_repr(u, field).labels() for u in units]
    terms: dict[tuple, int] = {}
    for choice in product(*(list(r.items()) for r in reps)):
        t = tuple(lbl for lbl, _ in choice)
        k = 1
        for _, e in choice:
            k *= e
        terms[t] = terms.get(t, 0) + k
    return SymbolElement(len(units), field, terms)


def symbol(c: Cube) -> SymbolElement:
    """Sum over joint eigenvectors of the symbols of the eigenvalue tuples."""
    if c.eigen is None:
        raise CubeError("symbol needs eigen-data")
    total = SymbolElement(c.n, c.field)
    for k in range(c.rank):
        total = total + symbol_of_units([d[k] for d in c.eigen.diagonals], c.field)
    return total


def symbol_of_sum(s: FormalSum, n: int | None = None) -> SymbolElement:
    total = SymbolElement(n if n is not None else 0, None)
    for cube, k in s.items():
        if cube.eigen is None:
            raise CubeError("every term needs eigen-data for a symbol")
        total = total + k * symbol(cube)
    return total


def det_invariant(s: FormalSum):
    """Product of det(A)^coeff over the terms of a sum of 1-cubes."""
    out = None
    for cube, k in s.items():
        if cube.n != 1:
            raise CubeError("det_invariant is defined on 1-cubes")
        d = det(cube.autos[0]) ** k
        out = d if out is None else out * d
    return out


def symbol_to_unit(s: SymbolElement, field: FieldSpec):
    """Multiply out a 1-symbol back into a unit of F."""
    if s.n not in (0, 1) and not s.is_zero():
        raise ValueError("only 1-symbols collapse to units")
    out = field.one
    for (lbl,), k in s.terms.items():
        out = out * field.coerce(lbl) ** k
    return out
