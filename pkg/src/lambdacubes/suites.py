"""Seeded verification suites.

Every suite returns a :class:`SuiteReport` of labelled boolean checks.  The
CLI prints them as ``PASS``/``FAIL`` lines followed by
``RESULT ok=<k> fail=<m>``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .bincx import (
    Cube,
    cube_to_bincx,
    cube_to_complex,
    external_product,
    is_acyclic,
    normalize_cube,
    verify_certificate,
)
from .invariants import symbol, symbol_of_sum, torsion
from .kops import (
    adams,
    alternating_rank,
    external_product_sum,
    general_lambda_agrees,
    hiller_dropped,
    hiller_lambda,
    lambda_cube,
    lambda_general_cube,
)
from .linalg import QQ, ExactMatrix, FieldSpec
from .multilinear import verify_cauchy_character
from .sampling import (
    random_diagonal_cube,
    random_general_cube,
    random_invertible,
    random_matrix,
    random_unit,
)
from .simplicial import (
    BoundedComplex,
    exterior_power_binary,
    koszul_double_complex,
    simplicial_tensor,
    two_term,
    verify_dold_kan_unit,
)
from .symfunc import SymPoly, newton_poly, product_poly, top_specialization, verify_newton_multiplicativity

DEFAULT_SEED = 42
F7 = FieldSpec(7)


@dataclass
class SuiteConfig:
    seed: int = DEFAULT_SEED
    instances: int | None = None  # None means the suite's own default
    fields: tuple[FieldSpec, ...] = (QQ, F7)

    def count(self, default: int) -> int:
        return default if self.instances is None else self.instances


@dataclass
class SuiteReport:
    name: str
    items: list[tuple[str, bool]] = field(default_factory=list)

    def add(self, label: str, ok: bool) -> None:
        self.items.append((label, bool(ok)))

    @property
    def ok(self) -> int:
        return sum(1 for _, v in self.items if v)

    @property
    def fail(self) -> int:
        return len(self.items) - self.ok

    @property
    def passed(self) -> bool:
        return self.fail == 0 and bool(self.items)

    def lines(self) -> list[str]:
        out = [f"{'PASS' if v else 'FAIL'} {self.name}: {label}" for label, v in self.items]
        out.append(f"RESULT ok={self.ok} fail={self.fail}")
        return out


def _guard(report: SuiteReport, label: str, check: Callable[[], bool]) -> None:
    """Record a check; an exception inside it counts as a failure."""
    try:
        ok = check()
    except (ArithmeticError, ValueError) as exc:
        report.add(f"{label} raised {type(exc).__name__}: {exc}", False)
        return
    report.add(label, ok)


# ---------------------------------------------------------------------------


def suite_poly(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("poly")
    for r in range(1, 7):
        sign = (-1) ** (r - 1) * r
        xr, yr = SymPoly.var("X", r), SymPoly.var("Y", r)
        rep.add(f"r={r} P_r(0..X_r, 0..Y_r) = {sign}*X{r}*Y{r}",
                top_specialization(product_poly(r), r) == sign * xr * yr)
        rep.add(f"r={r} N_r(0..X_r) = {sign}*X{r}",
                newton_poly(r).specialize_zero([("X", r)]) == sign * xr)
    for r in range(1, 6):
        rep.add(f"r={r} N_r(P) = N_r(X) N_r(Y)", verify_newton_multiplicativity(r))
    return rep


def suite_cauchy(cfg: SuiteConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    rep = SuiteReport("cauchy")
    for k in range(cfg.count(100)):
        f = cfg.fields[k % len(cfg.fields)]
        p, q, r = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 4)
        a, b = random_invertible(rng, f, p), random_invertible(rng, f, q)
        _guard(rep, f"#{k} {f.name} sizes ({p},{q}) r={r}", lambda: verify_cauchy_character(a, b, r))
    return rep


def suite_torsion(cfg: SuiteConfig) -> SuiteReport:
    """n = 1: torsion of N Lambda^r Gamma [F^p; A] against the formula's det product."""
    rng = random.Random(cfg.seed)
    rep = SuiteReport("torsion")
    for k in range(cfg.count(25)):
        f = cfg.fields[k % len(cfg.fields)]
        p, r = rng.randint(1, 3), rng.randint(1, 3)
        c = Cube(f, p, (random_invertible(rng, f, p),))

        def check(c=c, r=r):
            lhs = torsion(exterior_power_binary(cube_to_complex(c), r))
            return lhs == lambda_cube(c, r).det_product()

        _guard(rep, f"#{k} {f.name} p={p} r={r}", check)
    return rep


def suite_hiller(cfg: SuiteConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    rep = SuiteReport("hiller")
    for f in cfg.fields:
        for p in range(1, 4):
            for r in range(1, 5):
                a = random_invertible(rng, f, p)
                c = Cube(f, p, (a,))
                _guard(rep, f"{f.name} p={p} r={r} reduced sum = cross-effect sum",
                       lambda: hiller_lambda(p, a, r, reduced=True) == lambda_cube(c, r).split_terms())
                _guard(rep, f"{f.name} p={p} r={r} dropped a=0 terms have torsion 1",
                       lambda: all(torsion(cube_to_complex(t.cube)) == f.one for t in hiller_dropped(p, a, r)))
    return rep


def suite_rank1(cfg: SuiteConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    rep = SuiteReport("rank1")
    for r in range(1, 5):
        for n in range(1, 4):
            c = random_diagonal_cube(rng, QQ, n, 1, conjugate=False)
            units = [d[0] for d in c.eigen.diagonals]
            s = symbol(c)
            rep.add(f"r={r} n={n} units={[str(u) for u in units]} lambda",
                    symbol_of_sum(lambda_cube(c, r).terms) == ((-1) ** (r - 1) * r ** (n - 1)) * s)
            rep.add(f"r={r} n={n} units={[str(u) for u in units]} adams",
                    symbol_of_sum(adams(c, r)) == (r ** n) * s)
    return rep


def suite_products(cfg: SuiteConfig) -> SuiteReport:
    """Rank-1 external products of K_1 classes, at the symbol level."""
    rng = random.Random(cfg.seed)
    rep = SuiteReport("products")
    for k in range(cfg.count(20)):
        a = random_diagonal_cube(rng, QQ, 1, 1, conjugate=False)
        b = random_diagonal_cube(rng, QQ, 1, 1, conjugate=False)
        tag = f"#{k} a={a.eigen.diagonals[0][0]} b={b.eigen.diagonals[0][0]}"
        for r in range(1, 5):
            lhs = symbol_of_sum(lambda_cube(external_product(a, b), r).terms)
            cup = external_product_sum(lambda_cube(a, r).terms, lambda_cube(b, r).terms)
            rep.add(f"{tag} r={r} lambda", lhs == ((-1) ** (r - 1) * r) * symbol_of_sum(cup))
            psi_lhs = symbol_of_sum(adams(external_product(a, b), r))
            psi_rhs = symbol_of_sum(external_product_sum(adams(a, r), adams(b, r)))
            rep.add(f"{tag} r={r} adams", psi_lhs == psi_rhs)
    return rep


def suite_symmetry(cfg: SuiteConfig) -> SuiteReport:
    """Moving the (A, 1, ..., 1) slot to the other direction leaves the symbol unchanged."""
    rng = random.Random(cfg.seed)
    rep = SuiteReport("symmetry")
    for k in range(cfg.count(20)):
        f = cfg.fields[k % len(cfg.fields)]
        p, r = rng.randint(1, 2), rng.randint(1, 3)
        c = random_diagonal_cube(rng, f, 2, p)
        s0 = symbol_of_sum(lambda_cube(c, r, distinguished=0).terms)
        s1 = symbol_of_sum(lambda_cube(c, r, distinguished=1).terms)
        rep.add(f"#{k} {f.name} p={p} r={r}", s0 == s1)
    return rep


def suite_tensor(cfg: SuiteConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    rep = SuiteReport("tensor")
    for k in range(cfg.count(10)):
        a, b = random_unit(rng, QQ), random_unit(rng, QQ)
        ca = two_term(QQ, ExactMatrix.diag(QQ, [a]))
        cb = two_term(QQ, ExactMatrix.diag(QQ, [b]))
        out = simplicial_tensor(ca, cb)
        rep.add(f"#{k} a={a} b={b} ranks (1,3,2)", out.ranks == (1, 3, 2))
        rep.add(f"#{k} a={a} b={b} acyclic", is_acyclic(out))
        _guard(rep, f"#{k} a={a} b={b} torsion 1", lambda: torsion(out) == QQ.one)
    return rep


def suite_doldkan(cfg: SuiteConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    rep = SuiteReport("doldkan")
    for k in range(cfg.count(10)):
        f = cfg.fields[k % len(cfg.fields)]
        # a random length-2 complex: d0 d1 = 0 by taking d1 to span part of ker d0
        r0, r1 = rng.randint(1, 2), rng.randint(2, 3)
        d0 = random_matrix(rng, f, r0, r1)
        kernel = d0.kernel()
        r2 = kernel.cols
        diffs = (d0, kernel) if r2 else (d0,)
        ranks = (r0, r1, r2) if r2 else (r0, r1)
        c = BoundedComplex(f, ranks, diffs)
        _guard(rep, f"#{k} {f.name} ranks {ranks} N Gamma = id", lambda: verify_dold_kan_unit(c))
    for f in cfg.fields:
        a = random_invertible(rng, f, 2)
        b = random_invertible(rng, f, 2)
        bc = two_term(f, a, b)
        ext = exterior_power_binary(bc, 2)
        totals = koszul_double_complex(2, a).total_ranks()
        rep.add(f"{f.name} N Lambda^2 Gamma ranks {ext.ranks} = (1, 5, 4)", ext.ranks == (1, 5, 4))
        rep.add(f"{f.name} ranks match Koszul totalisation {totals}", ext.ranks == totals)
        rep.add(f"{f.name} both differentials acyclic", is_acyclic(ext))
    return rep


def suite_normalize(cfg: SuiteConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    rep = SuiteReport("normalize")
    for k in range(cfg.count(50)):
        f = cfg.fields[k % len(cfg.fields)]
        n, p = rng.randint(1, 3), rng.randint(1, 3)
        r = rng.randint(1, 3) if p * n <= 4 else rng.randint(1, 2)
        g = random_general_cube(rng, f, n, p)
        tag = f"#{k} {f.name} n={n} p={p}"

        def cert_ok(g=g):
            c, cert = normalize_cube(g)
            return verify_certificate(g, c, cert)

        _guard(rep, f"{tag} certificate", cert_ok)
        _guard(rep, f"{tag} r={r} lambda_general_cube agrees", lambda g=g, r=r: general_lambda_agrees(g, r))
        c = random_diagonal_cube(rng, f, n, p)
        _guard(rep, f"{tag} r={r} exact on cube_to_bincx",
               lambda c=c, r=r: lambda_general_cube(cube_to_bincx(c), r) == lambda_cube(c, r).terms)
    return rep


def suite_ranks(cfg: SuiteConfig) -> SuiteReport:
    """Alternating rank of the cross-effect terms against its closed form."""
    rep = SuiteReport("ranks")
    for p in range(1, 7):
        for r in range(1, 5):
            want = (-1) ** (r - 1) * comb(p + r - 1, r)
            rep.add(f"p={p} r={r} alternating rank = {want}", alternating_rank(p, r) == want)
    return rep


SUITES: dict[str, Callable[[SuiteConfig], SuiteReport]] = {
    "poly": suite_poly,
    "cauchy": suite_cauchy,
    "torsion": suite_torsion,
    "hiller": suite_hiller,
    "rank1": suite_rank1,
    "products": suite_products,
    "symmetry": suite_symmetry,
    "tensor": suite_tensor,
    "doldkan": suite_doldkan,
    "normalize": suite_normalize,
    "ranks": suite_ranks,
}


def run_suite(name: str, cfg: SuiteConfig | None = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](cfg or SuiteConfig())
