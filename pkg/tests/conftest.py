import os
import sys
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lambdacubes.linalg import QQ, ExactMatrix, FieldSpec, det

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

F7 = FieldSpec(7)
F5 = FieldSpec(5)
FIELDS = [QQ, F7]


def mat(rows, field=QQ):
    return ExactMatrix.from_rows(field, rows)


@st.composite
def matrices(draw, field=QQ, rows=None, cols=None, max_size=3, bound=4):
    r = rows if rows is not None else draw(st.integers(1, max_size))
    c = cols if cols is not None else draw(st.integers(1, max_size))
    if field.is_rational:
        ent = st.integers(-bound, bound)
    else:
        ent = st.integers(0, field.p - 1)
    vals = draw(st.lists(st.lists(ent, min_size=c, max_size=c), min_size=r, max_size=r))
    return ExactMatrix.from_rows(field, vals, c)


@st.composite
def invertible(draw, field=QQ, size=None, max_size=3):
    n = size if size is not None else draw(st.integers(1, max_size))
    m = draw(matrices(field, n, n))
    if det(m) == 0:
        # unipotent perturbation keeps the draw cheap and still invertible
        rng = random.Random(draw(st.integers(0, 10 ** 6)))
        vals = [[(1 if i == j else 0) + (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)]
        m = ExactMatrix.from_rows(field, vals)
    return m


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.RESULTS[num])
