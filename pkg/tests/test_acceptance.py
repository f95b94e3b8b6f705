"""The ten acceptance criteria, one PASS/FAIL line each.

Run as a script (``python tests/test_acceptance.py``) or under pytest, where
the lines are repeated in the terminal summary.
"""

import random
import sys
import time
from itertools import product

import pytest


from lambdacubes.bincx import Cube, cube_to_bincx, is_acyclic, normalize_cube, verify_certificate
from lambdacubes.invariants import symbol, symbol_of_sum
from lambdacubes.kops import adams, general_lambda_agrees, lambda_cube, lambda_general_cube
from lambdacubes.linalg import QQ, FieldSpec
from lambdacubes.sampling import Q_UNITS, random_diagonal_cube, random_general_cube, random_invertible
from lambdacubes.simplicial import exterior_power_binary, koszul_double_complex, two_term
from lambdacubes.suites import DEFAULT_SEED, SuiteConfig, run_suite

F7 = FieldSpec(7)
TIME_LIMIT = 60.0
RESULTS: dict[int, str] = {}


def suite_ok(name, expected_items, **kw):
    rep = run_suite(name, SuiteConfig(seed=DEFAULT_SEED, **kw))
    ok = rep.passed and len(rep.items) == expected_items
    return ok, f"{name} suite ok={rep.ok} fail={rep.fail} items={len(rep.items)}/{expected_items}"


def c1_polynomials():
    return suite_ok("poly", 6 * 2 + 5)


def c2_cauchy():
    return suite_ok("cauchy", 100, instances=100)


def c3_torsion_n1():
    return suite_ok("torsion", 25, instances=25)


def c4_hiller():
    # both fields, rank <= 3, r <= 4; two checks per case
    return suite_ok("hiller", 2 * 3 * 4 * 2)


def c5_rank_one():
    # every unit tuple from the pool, not a sample
    bad = 0
    count = 0
    for n in range(1, 4):
        for units in product(Q_UNITS, repeat=n):
            c = Cube.from_eigen(QQ, [[u] for u in units])
            s = symbol(c)
            for r in range(1, 5):
                count += 1
                bad += symbol_of_sum(lambda_cube(c, r).terms) != ((-1) ** (r - 1) * r ** (n - 1)) * s
                bad += symbol_of_sum(adams(c, r)) != (r ** n) * s
    return bad == 0, f"{count} (tuple, r) cases, {bad} mismatches"


def c6_products():
    return suite_ok("products", 20 * 4 * 2, instances=20)


def c7_symmetry():
    return suite_ok("symmetry", 20, instances=20)


def c8_simplicial_tensor():
    return suite_ok("tensor", 10 * 3, instances=10)


def c9_dold_kan():
    ok, detail = suite_ok("doldkan", 10 + 3 * 2, instances=10)
    rng = random.Random(DEFAULT_SEED)
    for f in (QQ, F7):
        a, b = random_invertible(rng, f, 2), random_invertible(rng, f, 2)
        ext = exterior_power_binary(two_term(f, a, b), 2)
        ok &= ext.ranks == (1, 5, 4) == koszul_double_complex(2, a).total_ranks()
        ok &= is_acyclic(ext)
    return ok, detail + "; direct (1,5,4) check over Q and F7"


def c10_normalization():
    rng = random.Random(DEFAULT_SEED)
    bad = 0
    for k in range(50):
        f = (QQ, F7)[k % 2]
        n, p = rng.randint(1, 3), rng.randint(1, 3)
        r = rng.randint(1, 3) if n * p <= 4 else rng.randint(1, 2)
        g = random_general_cube(rng, f, n, p)
        c, cert = normalize_cube(g)
        bad += not verify_certificate(g, c, cert)
        bad += not general_lambda_agrees(g, r)
        d = random_diagonal_cube(rng, f, n, p)
        bad += lambda_general_cube(cube_to_bincx(d), r) != lambda_cube(d, r).terms
    return bad == 0, f"50 general cubes over Q and F7, {bad} failures"


CRITERIA = [
    (1, "polynomial identities", c1_polynomials),
    (2, "Cauchy character", c2_cauchy),
    (3, "torsion at n=1", c3_torsion_n1),
    (4, "Hiller agreement", c4_hiller),
    (5, "rank-1 and Adams eigenvalues", c5_rank_one),
    (6, "products at K_1 x K_1", c6_products),
    (7, "direction symmetry", c7_symmetry),
    (8, "simplicial tensor vanishing", c8_simplicial_tensor),
    (9, "Dold-Kan structure", c9_dold_kan),
    (10, "normalization of general cubes", c10_normalization),
]


def evaluate(num, title, fn):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported on its line
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    ok = ok and dt < TIME_LIMIT
    line = f"{'PASS' if ok else 'FAIL'} criterion {num} ({title}): {detail} [{dt:.2f}s]"
    RESULTS[num] = line
    return ok, line


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion{n}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn):
    ok, line = evaluate(num, title, fn)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
