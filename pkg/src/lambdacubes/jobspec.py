"""JSON job descriptions for the command line front end.

Schema (all scalars may be strings such as ``"3/4"`` or integers)::

    {
      "field": "Q" | "F<p>",
      "command": "lambda" | "adams" | "hiller" | "external" | "symbols"
                 | "torsion" | "verify" | "poly" | "dk",
      "r": 2,
      "cube": <cube> | "<object name>",
      "operands": [<cube> | "<name>", <cube> | "<name>"],
      "complex": <complex> | "<object name>",
      "objects": {"<name>": <cube> | <complex>},
      "suite": "cauchy", "seed": 42, "instances": 10,
      "reduced": false, "distinguished": 0
    }

A ``<cube>`` is ``{"rank": p, "autos": [M_1, ..., M_n]}`` where each matrix
is a list of rows or a flat row-major list of p*p entries, optionally with
``"eigen": {"diagonals": [[...], ...], "basis": M}``.  ``autos`` may be
omitted when eigen-data is given.  A ``<complex>`` is
``{"ranks": [r_0, ..., r_d], "top": [M, ...], "bottom": [M, ...]}`` with
``top[k]`` mapping degree k+1 to degree k; ``bottom`` defaults to ``top``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Any

from .bincx import BinaryComplexPair, Cube, CubeError, EigenData
from .linalg import QQ, DimensionError, ExactMatrix, FieldError, FieldSpec

COMMANDS = ("lambda", "adams", "hiller", "external", "symbols", "torsion", "verify", "poly", "dk")


class JobSpecError(ValueError):
    """The job text is malformed or violates a schema invariant."""


class JobParseError(JobSpecError):
    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


@dataclass
class JobSpec:
    field: FieldSpec = QQ
    command: str | None = None
    r: int | None = None
    cube: Cube | None = None
    operands: tuple[Cube, ...] = ()
    complex: BinaryComplexPair | None = None
    objects: dict[str, Cube | BinaryComplexPair] = dc_field(default_factory=dict)
    suite: str | None = None
    seed: int | None = None
    instances: int | None = None
    reduced: bool = False
    distinguished: int = 0


# ---------------------------------------------------------------------------
# matrices and objects


def parse_matrix(fld: FieldSpec, raw: Any, rows: int | None = None, cols: int | None = None) -> ExactMatrix:
    if not isinstance(raw, list):
        raise JobSpecError(f"matrix must be a list, got {type(raw).__name__}")
    try:
        if raw and all(isinstance(x, list) for x in raw):
            width = len(raw[0])
            if any(len(x) != width for x in raw):
                raise JobSpecError("matrix rows have different lengths")
            m = ExactMatrix.from_rows(fld, [[_scalar(fld, x) for x in row] for row in raw], width)
        else:
            if rows is None or cols is None:
                raise JobSpecError("a flat matrix needs a known shape")
            if len(raw) != rows * cols:
                raise JobSpecError(f"flat matrix has {len(raw)} entries, expected {rows * cols}")
            m = ExactMatrix.from_flat(fld, rows, cols, [_scalar(fld, x) for x in raw])
    except FieldError as exc:
        raise JobSpecError(str(exc)) from exc
    if rows is not None and cols is not None and m.shape != (rows, cols):
        raise JobSpecError(f"matrix has shape {m.shape}, expected {(rows, cols)}")
    return m


def _scalar(fld: FieldSpec, x: Any):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise JobSpecError(f"scalar {x!r} must be an integer or a string like \"3/4\"")
    try:
        return fld.coerce(x)
    except (FieldError, ZeroDivisionError) as exc:
        raise JobSpecError(f"scalar {x!r}: {exc}") from exc


def _int(raw: dict, key: str, default: int | None = None) -> int | None:
    v = raw.get(key, default)
    if v is not None and (isinstance(v, bool) or not isinstance(v, int)):
        raise JobSpecError(f"{key!r} must be an integer")
    return v


def parse_cube(fld: FieldSpec, raw: Any) -> Cube:
    if not isinstance(raw, dict):
        raise JobSpecError("a cube must be an object with 'rank' and 'autos'")
    p = _int(raw, "rank")
    if p is None or p < 0:
        raise JobSpecError("cube needs a non-negative integer 'rank'")
    eig = raw.get("eigen")
    try:
        if "autos" not in raw:
            if eig is None:
                raise JobSpecError("cube needs 'autos' or 'eigen'")
            diags = [[_scalar(fld, x) for x in d] for d in eig.get("diagonals", [])]
            basis = parse_matrix(fld, eig["basis"], p, p) if "basis" in eig else None
            c = Cube.from_eigen(fld, diags, basis)
            if c.rank != p:
                raise JobSpecError(f"eigen-data has rank {c.rank}, declared {p}")
            return c
        autos = raw["autos"]
        if not isinstance(autos, list):
            raise JobSpecError("'autos' must be a list of matrices")
        mats = tuple(parse_matrix(fld, a, p, p) for a in autos)
        eigen = None
        if eig is not None:
            diags = tuple(tuple(_scalar(fld, x) for x in d) for d in eig.get("diagonals", []))
            basis = parse_matrix(fld, eig["basis"], p, p) if "basis" in eig else ExactMatrix.identity(fld, p)
            eigen = EigenData(basis, diags)
        return Cube(fld, p, mats, eigen)
    except (CubeError, DimensionError, FieldError) as exc:
        raise JobSpecError(f"invalid cube: {exc}") from exc


def parse_complex(fld: FieldSpec, raw: Any) -> BinaryComplexPair:
    if not isinstance(raw, dict) or "ranks" not in raw or "top" not in raw:
        raise JobSpecError("a complex must be an object with 'ranks' and 'top'")
    ranks = raw["ranks"]
    if not isinstance(ranks, list) or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in ranks):
        raise JobSpecError("'ranks' must be a list of non-negative integers")
    if not ranks:
        raise JobSpecError("'ranks' must be non-empty")

    def diffs(key):
        ms = raw[key]
        if not isinstance(ms, list) or len(ms) != len(ranks) - 1:
            raise JobSpecError(f"'{key}' needs {len(ranks) - 1} matrices")
        return tuple(parse_matrix(fld, m, ranks[k], ranks[k + 1]) for k, m in enumerate(ms))

    top = diffs("top")
    bottom = diffs("bottom") if "bottom" in raw else top
    try:
        return BinaryComplexPair(fld, tuple(ranks), top, bottom)
    except (CubeError, DimensionError) as exc:
        raise JobSpecError(f"invalid complex: {exc}") from exc


def _is_complex(raw: Any) -> bool:
    return isinstance(raw, dict) and "ranks" in raw


# ---------------------------------------------------------------------------


def parse_jobspec(text: str) -> JobSpec:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(raw, dict):
        raise JobSpecError("the job must be a JSON object")
    known = {"field", "command", "r", "cube", "operands", "complex", "objects", "suite",
             "seed", "instances", "reduced", "distinguished"}
    extra = set(raw) - known
    if extra:
        raise JobSpecError(f"unknown keys: {', '.join(sorted(extra))}")
    try:
        fld = FieldSpec.parse(raw.get("field", "Q"))
    except (FieldError, AttributeError) as exc:
        raise JobSpecError(f"invalid field: {exc}") from exc
    command = raw.get("command")
    if command is not None and command not in COMMANDS:
        raise JobSpecError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")

    objects: dict[str, Cube | BinaryComplexPair] = {}
    for name, obj in (raw.get("objects") or {}).items():
        objects[name] = parse_complex(fld, obj) if _is_complex(obj) else parse_cube(fld, obj)

    def resolve(ref, want):
        if isinstance(ref, str):
            if ref not in objects:
                raise JobSpecError(f"object {ref!r} is not defined")
            obj = objects[ref]
        elif want is Cube:
            obj = parse_cube(fld, ref)
        else:
            obj = parse_complex(fld, ref)
        if not isinstance(obj, want):
            raise JobSpecError(f"object {ref!r} is not a {want.__name__}")
        return obj

    job = JobSpec(field=fld, command=command, objects=objects)
    if "cube" in raw:
        job.cube = resolve(raw["cube"], Cube)
    if "operands" in raw:
        if not isinstance(raw["operands"], list):
            raise JobSpecError("'operands' must be a list")
        job.operands = tuple(resolve(x, Cube) for x in raw["operands"])
    if "complex" in raw:
        job.complex = resolve(raw["complex"], BinaryComplexPair)
    job.r = _int(raw, "r")
    if job.r is not None and job.r < 1:
        raise JobSpecError("'r' must be at least 1")
    job.seed = _int(raw, "seed")
    job.instances = _int(raw, "instances")
    job.distinguished = _int(raw, "distinguished", 0)
    job.suite = raw.get("suite")
    reduced = raw.get("reduced", False)
    if not isinstance(reduced, bool):
        raise JobSpecError("'reduced' must be a boolean")
    job.reduced = reduced
    return job


# ---------------------------------------------------------------------------
# serialisation


def matrix_to_json(m: ExactMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.entries]


def cube_to_json(c: Cube) -> dict:
    out: dict[str, Any] = {"rank": c.rank, "autos": [matrix_to_json(a) for a in c.autos]}
    if c.eigen is not None:
        out["eigen"] = {
            "diagonals": [[str(x) for x in d] for d in c.eigen.diagonals],
            "basis": matrix_to_json(c.eigen.basis),
        }
    return out


def complex_to_json(c: BinaryComplexPair) -> dict:
    return {
        "ranks": list(c.ranks),
        "top": [matrix_to_json(m) for m in c.top],
        "bottom": [matrix_to_json(m) for m in c.bottom],
    }
