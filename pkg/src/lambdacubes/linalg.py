"""Exact matrices over the rationals and prime fields.

Rationals are ``gmpy2.mpq``; elements of F_p are :class:`ModP`.  Matrices
are immutable and carry their field, so every operation can refuse to mix
fields.  Basis conventions are fixed here once for the whole package:

* ``kron(a, b)`` indexes the basis pair ``(i, j)`` as ``i * b.cols + j``
  (columns) and ``i * b.rows + j`` (rows);
* ``compound(a, r)`` indexes rows and columns by lexicographically ordered
  r-subsets, exactly as :func:`itertools.combinations` yields them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from gmpy2 import mpq

MAX_PRIME = 10_000


class FieldError(ValueError):
    """Raised when operands live over different fields or a scalar does not parse."""


class DimensionError(ValueError):
    """Raised on incompatible matrix shapes."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class ModP:
    """An element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, ModP):
            if o.p != self.p:
                raise FieldError(f"cannot combine F_{self.p} and F_{o.p}")
            return o.v
        if isinstance(o, int):
            return o
        return None

    def __add__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return ModP(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return ModP(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return ModP(w - self.v, self.p)

    def __mul__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return ModP(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(w * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError("division by zero in F_%d" % self.p)
            return ModP(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return ModP(pow(self.v, e, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, ModP):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not is_prime(self.p):
                raise FieldError(f"{self.p} is not prime")
            if self.p > MAX_PRIME:
                raise FieldError(f"prime {self.p} exceeds the supported bound {MAX_PRIME}")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Accepts ``"Q"`` or ``"F<p>"`` (also ``"F_p"`` / ``"GF<p>"``)."""
        t = text.strip().upper().replace("_", "")
        if t in ("Q", "QQ"):
            return cls(None)
        for prefix in ("GF", "F"):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return cls(int(t[len(prefix):]))
        raise FieldError(f"unrecognised field {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def zero(self):
        return mpq(0) if self.p is None else ModP(0, self.p)

    @property
    def one(self):
        return mpq(1) if self.p is None else ModP(1, self.p)

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        """Convert an int, string (``"3/4"``), Fraction, mpq or ModP into this field."""
        if isinstance(x, bool):
            raise FieldError("booleans are not scalars")
        if self.p is None:
            if isinstance(x, ModP):
                raise FieldError("cannot coerce an F_p element into Q")
            if isinstance(x, str):
                try:
                    return mpq(x.strip())
                except ValueError as exc:
                    raise FieldError(f"cannot parse {x!r} as a rational") from exc
            if isinstance(x, float):
                raise FieldError("floating point scalars are not accepted")
            return mpq(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise FieldError(f"cannot coerce F_{x.p} element into F_{self.p}")
            return x
        if isinstance(x, int):
            return ModP(x, self.p)
        if isinstance(x, str):
            try:
                q = Fraction(x.strip())
            except ValueError as exc:
                raise FieldError(f"cannot parse {x!r} as a scalar") from exc
            return self._from_fraction(q.numerator, q.denominator)
        if isinstance(x, (Fraction, type(mpq(0)))):
            return self._from_fraction(int(x.numerator), int(x.denominator))
        raise FieldError(f"cannot coerce {x!r} into {self.name}")

    def _from_fraction(self, num: int, den: int):
        if den % self.p == 0:
            raise FieldError(f"denominator {den} vanishes in F_{self.p}")
        return ModP(num * pow(den, -1, self.p), self.p)

    def contains(self, x) -> bool:
        if self.p is None:
            return isinstance(x, type(mpq(0)))
        return isinstance(x, ModP) and x.p == self.p

    def format(self, x) -> str:
        return str(x)

    def sort_key(self, x):
        return x if self.p is None else x.v


QQ = FieldSpec(None)


def _check_same_field(*ms: ExactMatrix) -> FieldSpec:
    f = ms[0].field
    for m in ms[1:]:
        if m.field != f:
            raise FieldError(f"field mismatch: {f.name} vs {m.field.name}")
    return f


@dataclass(frozen=True)
class ExactMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimension")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError(f"entries do not form a {self.rows}x{self.cols} array")

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> ExactMatrix:
        data = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_flat(cls, field: FieldSpec, rows: int, cols: int, flat: Sequence) -> ExactMatrix:
        if len(flat) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(flat)}")
        vals = [field.coerce(x) for x in flat]
        return cls(field, rows, cols, tuple(tuple(vals[i * cols:(i + 1) * cols]) for i in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> ExactMatrix:
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> ExactMatrix:
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def diag(cls, field: FieldSpec, values: Sequence) -> ExactMatrix:
        vals = [field.coerce(v) for v in values]
        n = len(vals)
        z = field.zero
        return cls(field, n, n, tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def _from_sparse(cls, field: FieldSpec, rows: int, cols: int, data: dict) -> ExactMatrix:
        z = field.zero
        out = [[z] * cols for _ in range(rows)]
        for (i, j), v in data.items():
            out[i][j] = v
        return cls(field, rows, cols, tuple(tuple(r) for r in out))

    # basic access -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def flat(self) -> list:
        return [x for r in self.entries for x in r]

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    @property
    def T(self) -> ExactMatrix:
        return ExactMatrix(self.field, self.cols, self.rows,
                           tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(self.field, len(rows), len(cols),
                           tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def is_identity(self) -> bool:
        return self.is_square and self == ExactMatrix.identity(self.field, self.rows)

    def is_diagonal(self) -> bool:
        return self.is_square and all(
            x == 0 for i, r in enumerate(self.entries) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> tuple:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def trace(self):
        if not self.is_square:
            raise DimensionError("trace of a non-square matrix")
        t = self.field.zero
        for i in range(self.rows):
            t = t + self.entries[i][i]
        return t

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"ExactMatrix[{self.field.name} {self.rows}x{self.cols}]({body})"

    # arithmetic ---------------------------------------------------------

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        return matmul(self, other)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        _check_same_field(self, other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix(self.field, self.rows, self.cols,
                           tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix(self.field, self.rows, self.cols, tuple(tuple(-x for x in r) for r in self.entries))

    def scale(self, c) -> ExactMatrix:
        c = self.field.coerce(c)
        return ExactMatrix(self.field, self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.entries))

    def __pow__(self, e: int) -> ExactMatrix:
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        base = self if e >= 0 else self.inverse()
        out = ExactMatrix.identity(self.field, self.rows)
        for _ in range(abs(e)):
            out = out @ base
        return out

    def det(self):
        return det(self)

    def rank(self) -> int:
        return len(row_reduce(self)[1])

    def inverse(self) -> ExactMatrix:
        return inverse(self)

    def kernel(self) -> ExactMatrix:
        return kernel_basis(self)[0]


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    f = _check_same_field(a, b)
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    z = f.zero
    bt = b.entries
    out = []
    for r in a.entries:
        acc = [z] * b.cols
        for k, x in enumerate(r):
            if x == 0:
                continue
            brow = bt[k]
            for j in range(b.cols):
                y = brow[j]
                if y != 0:
                    acc[j] = acc[j] + x * y
        out.append(tuple(acc))
    return ExactMatrix(f, a.rows, b.cols, tuple(out))


def det(a: ExactMatrix):
    """Determinant by Gaussian elimination with first-nonzero pivoting."""
    if not a.is_square:
        raise DimensionError(f"determinant of a non-square {a.shape} matrix")
    n = a.rows
    m = [list(r) for r in a.entries]
    d = a.field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return a.field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        pr = m[c]
        pv = pr[c]
        d = d * pv
        inv = 1 / pv
        for i in range(c + 1, n):
            f = m[i][c]
            if f == 0:
                continue
            f = f * inv
            ri = m[i]
            for j in range(c + 1, n):
                if pr[j] != 0:
                    ri[j] = ri[j] - f * pr[j]
    return d


def _sub_scaled(r: dict, f, s: dict) -> None:
    """In place ``r -= f * s`` for sparse rows."""
    for k, v in s.items():
        nv = r.get(k)
        nv = -(f * v) if nv is None else nv - f * v
        if nv == 0:
            r.pop(k, None)
        else:
            r[k] = nv


def row_reduce(a: ExactMatrix) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form as sparse rows.

    Returns ``(rows, pivots)`` where ``rows[k]`` is a dict column -> value with
    a 1 in column ``pivots[k]`` and zeros in every other pivot column.  The
    result is the unique RREF, so it does not depend on the input row order.
    """
    pivrows: dict[int, dict] = {}
    for r in a.entries:
        row = {j: x for j, x in enumerate(r) if x != 0}
        return_row = _reduce_row(row, pivrows)
        if return_row:
            _insert_pivot(return_row, pivrows)
    pivots = sorted(pivrows)
    return [pivrows[c] for c in pivots], pivots


def _reduce_row(row: dict, pivrows: dict) -> dict:
    for c in sorted(set(row).intersection(pivrows)):
        f = row.get(c)
        if f is not None:
            _sub_scaled(row, f, pivrows[c])
    return row


def _insert_pivot(row: dict, pivrows: dict) -> None:
    c0 = min(row)
    inv = 1 / row[c0]
    row = {k: v * inv for k, v in row.items()}
    for pr in pivrows.values():
        f = pr.get(c0)
        if f is not None:
            _sub_scaled(pr, f, row)
    pivrows[c0] = row


def stacked_row_reduce(field: FieldSpec, blocks: Iterable[ExactMatrix], cols: int) -> tuple[list[dict], list[int]]:
    """RREF of the vertical stack of ``blocks`` without materialising it."""
    pivrows: dict[int, dict] = {}
    for b in blocks:
        if b.field != field:
            raise FieldError("field mismatch in stacked reduction")
        if b.cols != cols:
            raise DimensionError("stacked blocks must share a column count")
        for r in b.entries:
            row = {j: x for j, x in enumerate(r) if x != 0}
            row = _reduce_row(row, pivrows)
            if row:
                _insert_pivot(row, pivrows)
    pivots = sorted(pivrows)
    return [pivrows[c] for c in pivots], pivots


def _kernel_from_rref(field: FieldSpec, rows: list[dict], pivots: list[int], cols: int) -> tuple[ExactMatrix, list[int]]:
    pivset = set(pivots)
    free = [j for j in range(cols) if j not in pivset]
    where = {f: k for k, f in enumerate(free)}
    data = {}
    one = field.one
    for f in free:
        data[(f, where[f])] = one
    for pc, r in zip(pivots, rows):
        for j, v in r.items():
            if j in where:
                data[(pc, where[j])] = -v
    return ExactMatrix._from_sparse(field, cols, len(free), data), free


def kernel_basis(a: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Echelon basis of the null space.

    Returns ``(K, free)``: the columns of K span ker(a), and ``K`` restricted
    to the rows ``free`` is the identity, so the coordinates of any kernel
    vector ``v`` in this basis are simply ``v[free]``.
    """
    rows, pivots = row_reduce(a)
    return _kernel_from_rref(a.field, rows, pivots, a.cols)


def stacked_kernel_basis(field: FieldSpec, blocks: Sequence[ExactMatrix], cols: int) -> tuple[ExactMatrix, list[int]]:
    """Kernel basis of the intersection of the kernels of ``blocks``."""
    rows, pivots = stacked_row_reduce(field, blocks, cols)
    return _kernel_from_rref(field, rows, pivots, cols)


def pivot_columns(a: ExactMatrix, order: Sequence[int] | None = None) -> list[int]:
    """Greedy choice of columns spanning the column space.

    Columns are considered in ``order`` (default left to right); a column is
    kept when it is independent of those kept before it.
    """
    order = list(range(a.cols)) if order is None else list(order)
    pivrows: dict[int, dict] = {}
    kept = []
    at = a.T
    for j in order:
        row = {i: x for i, x in enumerate(at.entries[j]) if x != 0}
        row = _reduce_row(row, pivrows)
        if row:
            _insert_pivot(row, pivrows)
            kept.append(j)
    return kept


def inverse(a: ExactMatrix) -> ExactMatrix:
    if not a.is_square:
        raise DimensionError("inverse of a non-square matrix")
    n = a.rows
    aug = hstack(a, ExactMatrix.identity(a.field, n))
    rows, pivots = row_reduce(aug)
    # pivots are sorted and distinct, so a full left block means pivots[:n] == range(n)
    if n and (len(pivots) < n or pivots[n - 1] != n - 1):
        raise ZeroDivisionError("matrix is singular")
    z = a.field.zero
    return ExactMatrix(a.field, n, n, tuple(tuple(rows[i].get(n + j, z) for j in range(n)) for i in range(n)))


def hstack(*ms: ExactMatrix) -> ExactMatrix:
    f = _check_same_field(*ms)
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise DimensionError("hstack needs equal row counts")
    return ExactMatrix(f, rows, sum(m.cols for m in ms),
                       tuple(tuple(x for m in ms for x in m.entries[i]) for i in range(rows)))


def vstack(*ms: ExactMatrix) -> ExactMatrix:
    f = _check_same_field(*ms)
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise DimensionError("vstack needs equal column counts")
    return ExactMatrix(f, sum(m.rows for m in ms), cols, tuple(r for m in ms for r in m.entries))


def block_diag(field: FieldSpec, mats: Sequence[ExactMatrix]) -> ExactMatrix:
    """Direct sum of (possibly rectangular or empty) matrices."""
    for m in mats:
        if m.field != field:
            raise FieldError("field mismatch in block_diag")
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    data = {}
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.entries):
            for j, x in enumerate(row):
                if x != 0:
                    data[(r0 + i, c0 + j)] = x
        r0 += m.rows
        c0 += m.cols
    return ExactMatrix._from_sparse(field, rows, cols, data)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    f = _check_same_field(a, b)
    rb, cb = b.rows, b.cols
    data = {}
    for i, ra in enumerate(a.entries):
        for j, x in enumerate(ra):
            if x == 0:
                continue
            for k, rbk in enumerate(b.entries):
                for l, y in enumerate(rbk):
                    if y != 0:
                        data[(i * rb + k, j * cb + l)] = x * y
    return ExactMatrix._from_sparse(f, a.rows * rb, a.cols * cb, data)


def kron_all(field: FieldSpec, mats: Sequence[ExactMatrix]) -> ExactMatrix:
    out = ExactMatrix.identity(field, 1)
    for m in mats:
        out = kron(out, m)
    return out


@lru_cache(maxsize=None)
def subset_index(n: int, r: int) -> dict:
    """Position of each r-subset of range(n) in lexicographic order."""
    return {s: k for k, s in enumerate(combinations(range(n), r))}


def compound(a: ExactMatrix, r: int) -> ExactMatrix:
    """The r-th compound matrix (matrix of Lambda^r a).

    Minors are built level by level by Laplace expansion along the first row
    of each row subset, propagating only nonzero minors; this keeps the face
    maps of simplicial objects (which are nearly permutation matrices) cheap.
    """
    if r < 1:
        raise ValueError("compound requires r >= 1")
    m, n = a.rows, a.cols
    f = a.field
    if r > m or r > n:
        return ExactMatrix.zeros(f, comb(m, r), comb(n, r))
    nz = [[(j, x) for j, x in enumerate(row) if x != 0] for row in a.entries]
    level = {}
    for i in range(m):
        for j, x in nz[i]:
            level[((i,), (j,))] = x
    for k in range(2, r + 1):
        nxt: dict = {}
        for (rs, cs), val in level.items():
            # k-subsets with head row h < rs[0] expand to this tail minor
            for h in range(rs[0]):
                for j, x in nz[h]:
                    if j in cs:
                        continue
                    pos = 0
                    while pos < len(cs) and cs[pos] < j:
                        pos += 1
                    key = ((h,) + rs, cs[:pos] + (j,) + cs[pos:])
                    term = x * val
                    if pos % 2:
                        term = -term
                    prev = nxt.get(key)
                    nxt[key] = term if prev is None else prev + term
        level = {key: v for key, v in nxt.items() if v != 0}
    ri, ci = subset_index(m, r), subset_index(n, r)
    data = {(ri[rs], ci[cs]): v for (rs, cs), v in level.items()}
    return ExactMatrix._from_sparse(f, comb(m, r), comb(n, r), data)


def exterior_power(a: ExactMatrix, r: int) -> ExactMatrix:
    """Lambda^r on maps, with Lambda^0 taken as the 1x1 identity."""
    if r == 0:
        return ExactMatrix.identity(a.field, 1)
    return compound(a, r)


def is_invertible(a: ExactMatrix) -> bool:
    return a.is_square and det(a) != 0


def commute_check(ms: Sequence[ExactMatrix]) -> bool:
    """True iff all matrices are invertible, of one size, and pairwise commute."""
    if not ms:
        return True
    f = ms[0].field
    n = ms[0].rows
    for m in ms:
        if m.field != f or not m.is_square or m.rows != n:
            return False
        if det(m) == 0:
            return False
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            if ms[i] @ ms[j] != ms[j] @ ms[i]:
                return False
    return True
