"""Partitions and integer polynomials in lambda-class variables.

Variables are ``("X", k)`` and ``("Y", k)`` for k >= 1, read as the classes
lambda^k of two elements; equivalently the elementary symmetric functions of
two alphabets.  Schur polynomials are written in these variables through the
dual Jacobi-Trudi determinant, which is what makes the Cauchy sum
``sum_mu s_mu(X) s_mu~(Y)`` the universal product polynomial P_r.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

Var = tuple[str, int]
Monomial = tuple[tuple[Var, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _var_name(v: Var) -> str:
    return f"{v[0]}{v[1]}"


class SymPoly:
    """Sparse polynomial with integer coefficients.

    Instances are immutable; equality is structural because zero
    coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c != 0}
        self._hash = None

    @classmethod
    def var(cls, alphabet: str, k: int) -> SymPoly:
        return cls({(((alphabet, k), 1),): 1})

    @classmethod
    def const(cls, c: int) -> SymPoly:
        return cls({(): c})

    @classmethod
    def e(cls, alphabet: str, k: int) -> SymPoly:
        """The elementary class e_k with e_0 = 1 and e_k = 0 for k < 0."""
        if k < 0:
            return cls()
        if k == 0:
            return cls.const(1)
        return cls.var(alphabet, k)

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = SymPoly.const(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = SymPoly.const(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return SymPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = SymPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return SymPoly({m: c * other for m, c in self._terms.items()})
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return SymPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        out = SymPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def variables(self) -> list[Var]:
        return sorted({v for m in self._terms for v, _ in m})

    def subs(self, mapping: Mapping[Var, SymPoly | int]) -> SymPoly:
        """Substitute polynomials (or integers) for variables."""
        out = SymPoly()
        cache: dict[tuple[Var, int], SymPoly] = {}
        for m, c in self._terms.items():
            t = SymPoly.const(c)
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        val = mapping[v]
                        val = SymPoly.const(val) if isinstance(val, int) else val
                        cache[key] = val ** e
                    t = t * cache[key]
                else:
                    t = t * SymPoly({((v, e),): 1})
            out = out + t
        return out

    def specialize_zero(self, keep: Iterable[Var]) -> SymPoly:
        """Set every variable outside ``keep`` to zero."""
        keep = set(keep)
        return SymPoly({m: c for m, c in self._terms.items() if all(v in keep for v, _ in m)})

    def rename(self, src: str, dst: str) -> SymPoly:
        out = {}
        for m, c in self._terms.items():
            nm = tuple(sorted(((dst if v[0] == src else v[0], v[1]), e) for v, e in m))
            out[nm] = c
        return SymPoly(out)

    def evaluate(self, values: Mapping[Var, object], zero=0):
        """Evaluate at field scalars; unspecified variables are an error."""
        acc = zero
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                t = t * values[v] ** e
            acc = acc + t
        return acc

    def weighted_degrees(self) -> set[tuple[int, int]]:
        """Set of (X-weight, Y-weight) over all terms, X_k and Y_k weighing k."""
        out = set()
        for m in self._terms:
            wx = sum(v[1] * e for v, e in m if v[0] == "X")
            wy = sum(v[1] * e for v, e in m if v[0] == "Y")
            out.add((wx, wy))
        return out

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in graded-lex order: higher total degree first, then lex with X1 > X2 > ... > Y1 > ..."""
        vs = self.variables()
        idx = {v: i for i, v in enumerate(vs)}

        def key(item):
            m = item[0]
            dense = [0] * len(vs)
            for v, e in m:
                dense[idx[v]] = e
            return (-sum(dense), [-x for x in dense])

        return sorted(self._terms.items(), key=key)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(_var_name(v) + (f"^{e}" if e > 1 else "") for v, e in m)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"SymPoly({self})"


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(self.parts)
        object.__setattr__(self, "parts", ps)
        if any(p <= 0 for p in ps):
            raise ValueError(f"partition parts must be positive: {ps}")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {ps}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions_of(r: int) -> list[Partition]:
    """All partitions of r in reverse lexicographic order, (r) first."""
    if r < 1:
        raise ValueError("r must be >= 1")

    def gen(n, cap):
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return [Partition(p) for p in gen(r, r)]


def conjugate(mu: Partition) -> Partition:
    return mu.conjugate()


def _poly_det(matrix: list[list[SymPoly]]) -> SymPoly:
    n = len(matrix)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> SymPoly:
        if row == n:
            return SymPoly.const(1)
        total = SymPoly()
        for pos, c in enumerate(sorted(cols)):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols - {c})
            term = entry * sub
            total = total - term if pos % 2 else total + term
        return total

    return minor(0, frozenset(range(n)))


@lru_cache(maxsize=None)
def schur_in_e(mu: Partition, alphabet: str = "X", bound: int | None = None) -> SymPoly:
    """s_mu as det(e_{mu~_i - i + j}) in the elementary classes of ``alphabet``.

    ``bound`` is the number of declared variables; a partition of larger
    weight is rejected because its determinant would need e_k with k > bound.
    """
    if bound is not None and mu.weight > bound:
        raise ValueError(f"partition {mu} has weight {mu.weight} > variable bound {bound}")
    conj = mu.conjugate().parts
    n = len(conj)
    mat = [[SymPoly.e(alphabet, conj[i] - i + j) for j in range(n)] for i in range(n)]
    return _poly_det(mat)


@lru_cache(maxsize=None)
def newton_poly(r: int, alphabet: str = "X") -> SymPoly:
    """Power sum p_r in elementary classes, via Newton's recurrence."""
    if r < 1:
        raise ValueError("r must be >= 1")
    out = SymPoly.e(alphabet, r) * ((-1) ** (r - 1) * r)
    for k in range(1, r):
        out = out + SymPoly.e(alphabet, k) * newton_poly(r - k, alphabet) * ((-1) ** (k - 1))
    return out


@lru_cache(maxsize=None)
def product_poly(r: int) -> SymPoly:
    """P_r(X, Y) = sum over |mu| = r of s_mu(X) * s_mu~(Y)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    out = SymPoly()
    for mu in partitions_of(r):
        out = out + schur_in_e(mu, "X") * schur_in_e(mu.conjugate(), "Y")
    return out


def top_specialization(poly: SymPoly, r: int) -> SymPoly:
    """Set X_k = Y_k = 0 for all k < r."""
    return poly.specialize_zero([("X", r), ("Y", r)])


def verify_newton_multiplicativity(r: int) -> bool:
    """Check N_r(X) * N_r(Y) == N_r(P_1, ..., P_r) exactly."""
    if r > 6:
        raise ValueError("symbolic suites are bounded to r <= 6")
    lhs = newton_poly(r, "X") * newton_poly(r, "Y")
    rhs = newton_poly(r, "X").subs({("X", k): product_poly(k) for k in range(1, r + 1)})
    return lhs == rhs
