"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 operational error (a computation rejected its input).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .bincx import BinaryComplexPair, Cube, CubeError, FormalSum, cube_to_complex, is_acyclic
from .invariants import FactorizationError, SymbolElement, symbol, symbol_of_sum, torsion
from .jobspec import COMMANDS, JobSpec, JobSpecError, complex_to_json, cube_to_json, parse_jobspec
from .kops import adams, external_product_sum, hiller_lambda, lambda_cube
from .linalg import DimensionError, ExactMatrix, FieldError
from .simplicial import BoundedComplex, exterior_power_binary, koszul_double_complex, verify_dold_kan_unit
from .suites import DEFAULT_SEED, SUITES, SuiteConfig, run_suite
from .symfunc import newton_poly, product_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_OPERATIONAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# text formatting


def format_matrix(m: ExactMatrix) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in m.entries) + "]"


def format_cube(c: Cube) -> str:
    autos = ", ".join(f"A{k + 1}={format_matrix(a)}" for k, a in enumerate(c.autos))
    return f"[{c.field.name}^{c.rank}; {autos}]"


def format_sum(s: FormalSum) -> list[str]:
    if s.is_zero():
        return ["0"]
    return [f"{k:+d} {format_cube(c)}" for c, k in s.items()]


def format_symbol(s: SymbolElement) -> str:
    if s.is_zero():
        return "0"
    out = ""
    for t, k in sorted(s.terms.items()):
        body = "<" + ",".join(map(str, t)) + ">"
        if abs(k) != 1:
            body = f"{abs(k)}*{body}"
        if not out:
            out = ("-" if k < 0 else "") + body
        else:
            out += (" - " if k < 0 else " + ") + body
    return out


def sum_to_json(s: FormalSum) -> list[dict]:
    return [{"coeff": k, "cube": cube_to_json(c)} for c, k in s.items()]


def symbol_to_json(s: SymbolElement) -> list[dict]:
    return [{"labels": list(t), "coeff": k} for t, k in sorted(s.terms.items())]


# ---------------------------------------------------------------------------
# commands; each returns (text lines, json payload, exit code)


def _need_cube(job: JobSpec) -> Cube:
    if job.cube is None:
        raise UsageError(f"command {job.command!r} needs a 'cube'")
    return job.cube


def _need_r(job: JobSpec) -> int:
    if job.r is None:
        raise UsageError(f"command {job.command!r} needs 'r'")
    return job.r


def _sum_result(head: str, job: JobSpec, s: FormalSum):
    return [head] + format_sum(s), {"r": job.r, "terms": sum_to_json(s)}, EXIT_OK


def cmd_lambda(job: JobSpec):
    c, r = _need_cube(job), _need_r(job)
    out = lambda_cube(c, r, distinguished=job.distinguished)
    return _sum_result(f"lambda^{r} {format_cube(c)} =", job, out.terms)


def cmd_adams(job: JobSpec):
    c, r = _need_cube(job), _need_r(job)
    return _sum_result(f"psi^{r} {format_cube(c)} =", job, adams(c, r))


def cmd_hiller(job: JobSpec):
    c, r = _need_cube(job), _need_r(job)
    if c.n != 1:
        raise UsageError("hiller needs a 1-cube")
    s = hiller_lambda(c.rank, c.autos[0], r, reduced=job.reduced)
    tag = " (reduced)" if job.reduced else ""
    return _sum_result(f"hiller lambda^{r}{tag} {format_cube(c)} =", job, s)


def cmd_external(job: JobSpec):
    ops = job.operands or ((job.cube,) if job.cube is not None else ())
    if len(ops) < 2:
        raise UsageError("external needs two 'operands'")
    acc = FormalSum.of(ops[0])
    for c in ops[1:]:
        acc = external_product_sum(acc, FormalSum.of(c))
    if job.r is not None:
        cube = acc.items()[0][0]
        s = lambda_cube(cube, job.r).terms
        return _sum_result(f"lambda^{job.r} of the external product =", job, s)
    return ["external product ="] + format_sum(acc), {"terms": sum_to_json(acc)}, EXIT_OK


def cmd_symbols(job: JobSpec):
    c = _need_cube(job)
    if c.eigen is None:
        raise UsageError("symbols need a cube with eigen-data")
    rows = [("symbol", symbol(c))]
    if job.r is not None:
        rows.append((f"symbol lambda^{job.r}", symbol_of_sum(lambda_cube(c, job.r).terms)))
        rows.append((f"symbol psi^{job.r}", symbol_of_sum(adams(c, job.r))))
    text = [f"{name} = {format_symbol(s)}" for name, s in rows]
    return text, {"symbols": {name: symbol_to_json(s) for name, s in rows}}, EXIT_OK


def _complex_of(job: JobSpec) -> BinaryComplexPair:
    if job.complex is not None:
        return job.complex
    if job.cube is not None:
        return cube_to_complex(job.cube)
    raise UsageError(f"command {job.command!r} needs a 'complex' or a 1-cube")


def cmd_torsion(job: JobSpec):
    c = _complex_of(job)
    if job.r is not None:
        c = exterior_power_binary(c, job.r)
    t = torsion(c)
    head = f"torsion N Lambda^{job.r} Gamma" if job.r is not None else "torsion"
    return [f"ranks = {list(c.ranks)}", f"{head} = {t}"], {"ranks": list(c.ranks), "torsion": str(t)}, EXIT_OK


def cmd_dk(job: JobSpec):
    c = _complex_of(job)
    r = job.r or 1
    top = BoundedComplex(c.field, c.ranks, c.top)
    bottom = BoundedComplex(c.field, c.ranks, c.bottom)
    unit = verify_dold_kan_unit(top) and verify_dold_kan_unit(bottom)
    ext = exterior_power_binary(c, r)
    payload: dict[str, Any] = {
        "r": r,
        "unit": unit,
        "ranks": list(ext.ranks),
        "acyclic": is_acyclic(ext),
        "complex": complex_to_json(ext),
    }
    text = [
        f"N Gamma = id on both differentials: {unit}",
        f"N Lambda^{r} Gamma ranks = {list(ext.ranks)}",
        f"acyclic: {payload['acyclic']}",
    ]
    if c.length == 1:
        totals = koszul_double_complex(r, c.top[0]).total_ranks()
        payload["koszul_ranks"] = list(totals)
        text.append(f"Koszul totalisation ranks = {list(totals)}")
    return text, payload, EXIT_OK


def cmd_poly(job: JobSpec):
    r = _need_r(job)
    p, nr = product_poly(r), newton_poly(r)
    return [f"P_{r} = {p}", f"N_{r} = {nr}"], {"r": r, "P": str(p), "N": str(nr)}, EXIT_OK


def cmd_verify(job: JobSpec):
    name = job.suite
    if name is None:
        raise UsageError(f"verify needs --suite (one of {', '.join(SUITES)})")
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = SuiteConfig(seed=DEFAULT_SEED if job.seed is None else job.seed, instances=job.instances)
    rep = run_suite(name, cfg)
    payload = {
        "suite": name,
        "seed": cfg.seed,
        "ok": rep.ok,
        "fail": rep.fail,
        "items": [{"label": label, "pass": v} for label, v in rep.items],
    }
    return rep.lines(), payload, EXIT_OK if rep.passed else EXIT_FAIL


DISPATCH = {
    "lambda": cmd_lambda,
    "adams": cmd_adams,
    "hiller": cmd_hiller,
    "external": cmd_external,
    "symbols": cmd_symbols,
    "torsion": cmd_torsion,
    "verify": cmd_verify,
    "poly": cmd_poly,
    "dk": cmd_dk,
}


def run(job: JobSpec, fmt: str = "text") -> tuple[str, int]:
    """Execute a job; returns the report text and the exit code."""
    if job.command is None:
        raise UsageError("no command given")
    lines, payload, code = DISPATCH[job.command](job)
    if fmt == "json":
        body = {"command": job.command, "field": job.field.name, **payload}
        return json.dumps(body, indent=2, sort_keys=True) + "\n", code
    return "\n".join(lines) + "\n", code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lambdacubes", description="Exterior power operations on cubes.")
    ap.add_argument("--input", help="JSON job file, or - for stdin")
    ap.add_argument("--command", choices=COMMANDS)
    ap.add_argument("--r", type=int)
    ap.add_argument("--seed", type=int, help=f"seed for randomised suites (default {DEFAULT_SEED})")
    ap.add_argument("--suite", choices=sorted(SUITES))
    ap.add_argument("--instances", type=int, help="override a suite's instance count")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input:
            text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
            job = parse_jobspec(text)
        else:
            job = JobSpec()
        for key in ("command", "r", "seed", "suite", "instances"):
            val = getattr(args, key)
            if val is not None:
                setattr(job, key, val)
        if job.r is not None and job.r < 1:
            raise UsageError("--r must be at least 1")
        out, code = run(job, args.format)
    except (JobSpecError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CubeError, DimensionError, FieldError, FactorizationError, ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OPERATIONAL
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
