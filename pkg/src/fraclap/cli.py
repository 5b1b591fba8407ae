"""Command-line front end.

Every subcommand emits a table as CSV (``#``-prefixed metadata lines, then a
header row) or JSON (``{"command", "meta", "columns", "rows"}``, see
``schemas/output.schema.json``).  Floats are written with 17 significant
digits so identical input gives byte-identical output.

Exit codes: 0 ok, 2 usage/validation error, 3 numerical non-convergence,
4 verification failure.

Output goes to stdout unless ``--output`` is given.  If ``FRACLAP_OUTPUT_DIR``
is set, relative ``--output`` paths are resolved against it and a missing
``--output`` writes ``<dir>/<command>.<format>``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .chain import (
    DEFAULT_TOL,
    ChainSpec,
    characteristic_matrix,
    dispersion,
    laplacian_matrix,
)
from .diffusion import EvolutionSpec, evolve_spectral
from .elements import as_order, asymptotic_element, element_row, infinite_element
from .errors import ConvergenceError
from .kernels import PERIODIC_METHODS, evaluate
from .quadrature import QuadratureSpec, element_by_quadrature, nd_element_by_quadrature

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VERIFY = 0, 2, 3, 4
OUTPUT_DIR_ENV = "FRACLAP_OUTPUT_DIR"


@dataclass
class Table:
    command: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return "%.17g" % (v + 0.0)
    return str(v)


def _json_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return "null" if not math.isfinite(v) else "%.17g" % (v + 0.0)
    if v is None:
        return "null"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return json.dumps(str(v))


def to_csv(table: Table) -> str:
    lines = [f"# command: {table.command}"]
    lines += [f"# {k}: {_fmt(v)}" for k, v in table.meta.items()]
    lines.append(",".join(table.columns))
    lines += [",".join(_fmt(v) for v in row) for row in table.rows]
    return "\n".join(lines) + "\n"


def to_json(table: Table) -> str:
    meta = ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in table.meta.items())
    rows = ",\n    ".join(_json_value(r) for r in table.rows)
    return (
        "{\n"
        f'  "command": {json.dumps(table.command)},\n'
        f'  "meta": {{{meta}}},\n'
        f'  "columns": {_json_value(table.columns)},\n'
        f'  "rows": [\n    {rows}\n  ]\n'
        "}\n"
    )


def _chain(args) -> ChainSpec:
    return ChainSpec.create(args.alpha, args.N, h=args.h, mu=args.mu, omega2=args.omega2)


def cmd_elements(args) -> Table:
    o = as_order(args.alpha)
    if args.pmax < 0:
        raise ValueError("--pmax must be >= 0")
    rec = element_row(o, args.pmax)
    q = QuadratureSpec(abs_tol=args.quad_tol)
    t = Table("elements", ["p", "closed_form", "recursion", "quadrature", "asymptotic"],
              meta={"alpha": o.alpha, "pmax": args.pmax, "quad_tol": args.quad_tol})
    for p in range(args.pmax + 1):
        asym = math.nan if p == 0 else asymptotic_element(o, p)
        quad = element_by_quadrature(o.alpha, p, q) if not args.no_quadrature else math.nan
        t.rows.append([p, infinite_element(o, p), float(rec[p]), quad, asym])
    return t


def cmd_matrix(args) -> Table:
    spec = _chain(args)
    build = laplacian_matrix if args.laplacian else characteristic_matrix
    kind = "laplacian" if args.laplacian else "characteristic"
    meta = {"alpha": spec.alpha, "N": spec.N, "method": args.method, "tol": args.tol,
            "kind": kind, "h": spec.h, "mu": spec.mu, "omega2": spec.omega2}
    if args.method == "both":
        a = build(spec, "periodized", args.tol).first_row
        b = build(spec, "spectral", args.tol).first_row
        disc = np.abs(a - b)
        meta["max_discrepancy"] = float(disc.max())
        t = Table("matrix", ["k", "periodized", "spectral", "discrepancy"], meta=meta)
        t.rows = [[k, a[k], b[k], disc[k]] for k in range(spec.N)]
        return t
    mat = build(spec, args.method, args.tol)
    if args.full:
        dense = mat.dense()
        t = Table("matrix", ["row"] + [f"c{j}" for j in range(spec.N)], meta=meta)
        t.rows = [[i] + list(dense[i]) for i in range(spec.N)]
        return t
    t = Table("matrix", ["k", "value"], meta=meta)
    t.rows = [[k, v] for k, v in enumerate(mat.first_row)]
    return t


def cmd_spectrum(args) -> Table:
    spec = _chain(args)
    t = Table("spectrum", ["l", "kappa", "lambda", "omega2"],
              meta={"alpha": spec.alpha, "N": spec.N, "omega2_factor": spec.omega2})
    for l in range(spec.N):
        d = dispersion(spec, l)
        t.rows.append([l, d.kappa, d.lam, d.omega2_val])
    return t


def cmd_kernel(args) -> Table:
    o = as_order(args.alpha)
    periodic = args.periodic or args.L is not None
    L = args.L if args.L is not None else 1.0
    t = Table("kernel", ["x", "value"], meta={
        "alpha": o.alpha, "L": L if periodic else math.inf,
        "method": args.method if periodic else ("regularized" if args.epsilon else "infinite"),
        "epsilon": args.epsilon or 0.0,
    })
    for x in args.x:
        ev = evaluate(o, x, L if periodic else None, args.method, args.epsilon)
        t.rows.append([x, ev.value])
    return t


def _initial_field(kind: str, N: int, seed: int) -> np.ndarray:
    if kind == "spike":
        u = np.zeros(N)
        u[0] = 1.0
        return u
    if kind == "cos":
        return 1.0 + np.cos(2 * np.pi * np.arange(N) / N)
    if kind == "random":
        return np.random.default_rng(seed).random(N)
    raise ValueError(f"unknown initial field {kind!r}")


def cmd_diffuse(args) -> Table:
    spec = _chain(args)
    u0 = _initial_field(args.init, spec.N, args.seed)
    times = sorted(set(args.t))
    t = Table("diffuse", ["p", "u0"] + [f"t={_fmt(x)}" for x in times],
              meta={"alpha": spec.alpha, "N": spec.N, "c": args.c, "init": args.init,
                    "omega2": spec.omega2, "seed": args.seed})
    cols = [evolve_spectral(u0, EvolutionSpec(spec, x, args.c)) for x in times]
    t.rows = [[p, u0[p]] + [c[p] for c in cols] for p in range(spec.N)]
    return t


def cmd_nd_element(args) -> Table:
    p = tuple(args.p)
    val = nd_element_by_quadrature(args.alpha, p, q=QuadratureSpec(abs_tol=args.quad_tol))
    t = Table("nd-element", ["n"] + [f"p{j + 1}" for j in range(len(p))] + ["value"],
              meta={"alpha": float(args.alpha), "quad_tol": args.quad_tol})
    t.rows = [[len(p), *p, val]]
    return t


def cmd_verify(args) -> tuple[Table, bool]:
    from .verify import run_checks

    results = run_checks(quick=args.quick)
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    t = Table("verify", ["check", "passed", "measured", "limit"],
              meta={"quick": bool(args.quick), "all_passed": ok})
    t.rows = [[r.name.replace(",", ";"), r.passed, r.measured, r.threshold] for r in results]
    return t, ok


def _positive_float(s: str) -> float:
    v = float(s)
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be a finite positive number, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fraclap", description="Discrete fractional Laplacian on cyclic chains.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", default=None, help="output file (default: stdout)")

    chain = argparse.ArgumentParser(add_help=False)
    chain.add_argument("--alpha", type=float, required=True)
    chain.add_argument("--N", type=int, required=True)
    chain.add_argument("--h", type=float, default=1.0)
    chain.add_argument("--mu", type=float, default=1.0)
    chain.add_argument("--omega2", type=float, default=1.0)

    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("elements", parents=[common], help="infinite-chain elements, four ways")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--pmax", type=int, default=8)
    p.add_argument("--quad-tol", type=_positive_float, default=1e-13)
    p.add_argument("--no-quadrature", action="store_true")
    p.set_defaults(func=cmd_elements)

    p = sub.add_parser("matrix", parents=[common, chain], help="finite-chain matrix first row")
    p.add_argument("--method", choices=("periodized", "spectral", "both"), default="periodized")
    p.add_argument("--laplacian", action="store_true", help="emit -mu * f_N instead of f_N")
    p.add_argument("--full", action="store_true", help="emit the full N x N matrix")
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("spectrum", parents=[common, chain], help="dispersion relation")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("kernel", parents=[common], help="continuum kernels")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--x", type=float, nargs="+", required=True)
    p.add_argument("--L", type=_positive_float, default=None)
    p.add_argument("--periodic", action="store_true")
    p.add_argument("--method", choices=PERIODIC_METHODS, default="zeta")
    p.add_argument("--epsilon", type=_positive_float, default=None)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("diffuse", parents=[common, chain], help="spectral fractional diffusion")
    p.add_argument("--t", type=float, nargs="+", required=True)
    p.add_argument("--c", type=_positive_float, default=1.0)
    p.add_argument("--init", choices=("spike", "cos", "random"), default="spike")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_diffuse)

    p = sub.add_parser("nd-element", parents=[common], help="cubic-lattice element by quadrature")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p", type=int, nargs="+", required=True)
    p.add_argument("--quad-tol", type=_positive_float, default=1e-10)
    p.set_defaults(func=cmd_nd_element)

    p = sub.add_parser("verify", parents=[common], help="run the oracle/invariant suite")
    p.add_argument("--quick", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def _resolve_output(args) -> Path | None:
    base = os.environ.get(OUTPUT_DIR_ENV)
    if args.output in (None, "-"):
        if base and args.output is None:
            return Path(base) / f"{args.command}.{args.format}"
        return None
    out = Path(args.output)
    if base and not out.is_absolute():
        out = Path(base) / out
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ok = True
    try:
        result = args.func(args)
        if isinstance(result, tuple):
            result, ok = result
    except ConvergenceError as exc:
        print(f"fraclap: numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError, IndexError) as exc:
        print(f"fraclap: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = to_json(result) if args.format == "json" else to_csv(result)
    out = _resolve_output(args)
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    return EXIT_OK if ok else EXIT_VERIFY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
