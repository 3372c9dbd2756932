"""Command-line front end: ``fracreduce {reduce,solve,verify,ml,convergence}``.

Exit codes:

* 0  success (for ``solve`` and ``verify``: the residual is within tolerance)
* 1  other numerical failure (ill-conditioned system, series did not converge)
* 2  the equation could not be parsed or bound to data, or bad arguments
* 3  the reduction to an integer-order equation failed
* 4  the equation has no solution
* 5  a candidate was computed but its residual exceeds the tolerance
* 6  the solution exists but is singular at the base point

Diagnostics go to stderr; reports and data go to stdout or ``--out``.
The environment variable ``FRACREDUCE_SEED`` is reserved for future
randomized methods and is currently ignored.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import eqparser
from .conjugate import conjugate_minimal, conjugate_naive
from .errors import (
    EquationSyntaxError,
    FracReduceError,
    MultipleUnknowns,
    NegativeOrder,
    NoSolution,
    NonConvergence,
    ReductionError,
    ResidualAboveTolerance,
    SingularSolution,
    UnboundSymbol,
    ZeroPolynomial,
)
from .exact import format_scalar
from .genpoly import format_genpoly, make_genpoly
from .operators import GridFunction
from .pipeline import (
    Equation,
    SolveConfig,
    convergence_study,
    operator_to_genpoly,
    solve,
    verify,
)
from .special import mittag_leffler

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_PARSE = 2
EXIT_REDUCTION = 3
EXIT_NO_SOLUTION = 4
EXIT_RESIDUAL = 5
EXIT_SINGULAR = 6

MIN_GRID = 16


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    grid_n: int = 1024
    tol: float = 1e-3
    method: str = "computing"
    minimal: bool = True
    output_format: str = "text"
    rhs_csv: tuple = ()
    out: Optional[str] = None

    def __post_init__(self):
        if self.grid_n < MIN_GRID:
            raise ValueError(f"--n must be at least {MIN_GRID}")
        if not self.tol > 0:
            raise ValueError("--tol must be positive")

    def solve_config(self) -> SolveConfig:
        return SolveConfig(n=self.grid_n, tol=self.tol, method=self.method, minimal=self.minimal)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------

def read_equation_text(arg: str) -> str:
    """The argument itself, a file with that name, or stdin for ``-``."""
    if arg == "-":
        return sys.stdin.read()
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _read_grid(path: str) -> GridFunction:
    try:
        with open(path, encoding="utf-8") as fh:
            return GridFunction.from_csv(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from exc
    except ValueError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc


def _bindings(ast: eqparser.EquationAst, specs: Sequence[str]) -> dict:
    """``--rhs-csv NAME=PATH`` or ``--rhs-csv PATH`` for a single data symbol."""
    symbols = sorted(ast.symbols())
    out = {}
    for spec in specs:
        name, sep, path = spec.partition("=")
        if not sep:
            if len(symbols) != 1:
                raise CliError("--rhs-csv without NAME= needs exactly one data symbol in the "
                               f"equation (found {len(symbols)})", EXIT_PARSE)
            name, path = symbols[0], spec
        out[name] = _read_grid(path)
    return out


def load_equation(text: str, rhs_csv: Sequence[str] = ()) -> Equation:
    try:
        ast = eqparser.parse(text)
        return eqparser.bind(ast, _bindings(ast, rhs_csv))
    except (EquationSyntaxError, MultipleUnknowns, NegativeOrder, UnboundSymbol) as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE) from exc
    except ValueError as exc:
        raise CliError(f"invalid equation: {exc}", EXIT_PARSE) from exc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _conjugate_dict(res) -> dict:
    return {
        "p_hat": format_genpoly(res.p_hat),
        "reduced": res.reduced.to_text("X"),
        "reduced_coeffs": [format_scalar(c) for c in res.reduced.coeffs],
        "deg_p_hat": str(res.p_hat.degree),
        "deg_reduced": res.reduced.degree,
        "integrality_defect": float(res.integrality_defect),
    }


def cmd_reduce(cfg: CliConfig, text: str) -> int:
    eq = load_equation(text, cfg.rhs_csv)
    p = operator_to_genpoly(eq.T)
    try:
        naive = conjugate_naive(p)
        minimal = conjugate_minimal(p)
    except (ReductionError, NonConvergence, ZeroPolynomial) as exc:
        raise CliError(f"reduction failed: {exc}", EXIT_REDUCTION) from exc
    chosen = minimal if cfg.minimal else naive
    data = {
        "p": format_genpoly(p),
        "q": minimal.q,
        "deg_p": str(p.degree),
        "naive": _conjugate_dict(naive),
        "minimal": _conjugate_dict(minimal),
        "t_hat": eqparser.format_operator(_operator_of(chosen.p_hat, eq), "x"),
    }
    if cfg.output_format == "json":
        _emit(json.dumps(data, sort_keys=True, indent=2) + "\n", cfg.out)
        return EXIT_OK
    lines = [f"p        = {data['p']}", f"q        = {data['q']}", f"deg p    = {data['deg_p']}"]
    for label in ("minimal", "naive"):
        d = data[label]
        lines += [f"[{label}]",
                  f"  p_hat              = {d['p_hat']}",
                  f"  p * p_hat          = {d['reduced']}",
                  f"  deg p_hat          = {d['deg_p_hat']}",
                  f"  deg p * p_hat      = {d['deg_reduced']}",
                  f"  integrality_defect = {d['integrality_defect']:.3g}"]
    lines.append(f"T_hat    = {data['t_hat']}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def _operator_of(p_hat, eq: Equation):
    from .pipeline import genpoly_to_operator
    return genpoly_to_operator(p_hat, eq.a)


def _reduced_text(coeffs) -> str:
    """Descending integer-order coefficients as a polynomial in X."""
    deg = len(coeffs) - 1
    return format_genpoly(make_genpoly([(c, deg - k) for k, c in enumerate(coeffs)]))


def _report_text(rep) -> str:
    lines = [f"method:       {rep.method}",
             f"accepted:     {'yes' if rep.accepted else 'no'}",
             f"residual_sup: {rep.residual_sup:.6e}",
             f"tol:          {rep.tol:.6e}",
             f"grid_n:       {rep.grid_n}",
             f"T_hat:        {eqparser.format_operator(rep.t_hat, 'y')}",
             f"p * p_hat:    {_reduced_text(rep.reduced_coeffs)}"]
    closed = rep.closed_form_text()
    if closed:
        lines.append(f"closed form:  {closed}")
    if rep.csv_path:
        lines.append(f"samples:      {rep.csv_path}")
    lines += [f"note:         {d}" for d in rep.diagnostics]
    return "\n".join(lines) + "\n"


def _print_report(rep, cfg: CliConfig):
    if cfg.output_format == "json":
        sys.stdout.write(rep.to_json() + "\n")
    elif cfg.output_format == "csv":
        sys.stdout.write(rep.solution.to_csv())
    else:
        sys.stdout.write(_report_text(rep))


def cmd_solve(cfg: CliConfig, text: str) -> int:
    eq = load_equation(text, cfg.rhs_csv)
    scfg = cfg.solve_config()
    if isinstance(eq.rhs, GridFunction) and eq.rhs.n != cfg.grid_n:
        _warn(f"using the grid of the bound data (n = {eq.rhs.n}); --n is ignored")
    try:
        rep = solve(eq, scfg)
        code = EXIT_OK
    except ResidualAboveTolerance as exc:
        rep = exc.report
        code = EXIT_RESIDUAL
        _warn(str(exc))
    except SingularSolution as exc:
        raise CliError(f"singular solution: {exc}", EXIT_SINGULAR) from exc
    except NoSolution as exc:
        raise CliError(f"no solution: {exc}", EXIT_NO_SOLUTION) from exc
    except (ReductionError, NonConvergence, ZeroPolynomial) as exc:
        raise CliError(f"reduction failed: {exc}", EXIT_REDUCTION) from exc
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(rep.solution.to_csv())
        rep.csv_path = cfg.out
    _print_report(rep, cfg)
    return code


def cmd_verify(cfg: CliConfig, text: str, solution_csv: str) -> int:
    eq = load_equation(text, cfg.rhs_csv)
    x = _read_grid(solution_csv)
    try:
        rep = verify(eq, x, cfg.solve_config())
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    d = rep.to_dict()
    if cfg.output_format == "json":
        _emit(json.dumps(d, sort_keys=True, indent=2) + "\n", cfg.out)
    else:
        _emit("".join(f"{k}: {v}\n" for k, v in d.items()), cfg.out)
    return EXIT_OK if rep.accepted else EXIT_RESIDUAL


def cmd_ml(cfg: CliConfig, alpha: float, beta: float, z: complex) -> int:
    value = mittag_leffler(alpha, beta, z if z.imag else z.real)
    text = repr(value) if isinstance(value, float) else repr(complex(value))
    _emit(text + "\n", cfg.out)
    return EXIT_OK


def cmd_convergence(cfg: CliConfig, text: str, n_list: Sequence[int]) -> int:
    eq = load_equation(text, cfg.rhs_csv)
    if isinstance(eq.rhs, GridFunction):
        raise CliError("a convergence study needs a closed-form right-hand side", EXIT_PARSE)
    try:
        rows = convergence_study(eq, n_list, cfg.solve_config())
    except SingularSolution as exc:
        raise CliError(f"singular solution: {exc}", EXIT_SINGULAR) from exc
    except NoSolution as exc:
        raise CliError(f"no solution: {exc}", EXIT_NO_SOLUTION) from exc
    if cfg.output_format == "json":
        body = json.dumps([{"n": r.n, "residual_sup": r.residual_sup,
                            "observed_order": r.observed_order, "saturated": r.saturated}
                           for r in rows], sort_keys=True, indent=2) + "\n"
    elif cfg.output_format == "csv":
        body = "n,residual_sup,observed_order,saturated\n" + "".join(
            f"{r.n},{r.residual_sup!r},{'' if r.observed_order is None else repr(r.observed_order)},"
            f"{int(r.saturated)}\n" for r in rows)
    else:
        body = f"{'n':>8}  {'residual_sup':>14}  {'order':>7}\n" + "".join(
            f"{r.n:>8}  {r.residual_sup:>14.6e}  "
            f"{'-' if r.observed_order is None else format(r.observed_order, '.3f'):>7}"
            f"{'  (round-off level)' if r.saturated else ''}\n" for r in rows)
    _emit(body, cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn(message: str):
    print(f"fracreduce: {message}", file=sys.stderr)


def _n_list(text: str) -> list:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracreduce",
        description="Reduce and solve linear fractional integral equations with rational orders.",
        epilog="FRACREDUCE_SEED is reserved for future use and currently ignored.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("equation", help="equation text, a file containing it, or - for stdin")
        p.add_argument("--format", choices=formats, default="text", dest="output_format")
        p.add_argument("--rhs-csv", action="append", default=[], metavar="[NAME=]PATH",
                       help="bind a data symbol of the right-hand side to CSV samples (t,re,im)")
        p.add_argument("--out", help="write the output (solve: solution samples) to this file")
        p.add_argument("--naive", action="store_true", help="use the naive conjugate")

    def numeric(p):
        p.add_argument("--n", type=int, default=1024, dest="grid_n", help="subintervals (>= 16)")
        p.add_argument("--tol", type=float, default=1e-3, help="residual tolerance")
        p.add_argument("--method", choices=("computing", "checking"), default="computing")

    p = sub.add_parser("reduce", help="print the conjugate and the reduced polynomial")
    common(p)
    p = sub.add_parser("solve", help="solve the equation and report the residual")
    common(p, ("text", "json", "csv"))
    numeric(p)
    p = sub.add_parser("verify", help="residual of a solution given as CSV samples")
    common(p)
    numeric(p)
    p.add_argument("solution", help="CSV file with header t,re,im")
    p = sub.add_parser("ml", help="evaluate the Mittag-Leffler function E_{alpha,beta}(z)")
    p.add_argument("alpha", type=float)
    p.add_argument("beta", type=float)
    p.add_argument("z", type=complex)
    p.add_argument("--out")
    p = sub.add_parser("convergence", help="residual and observed order over grid sizes")
    common(p, ("text", "json", "csv"))
    numeric(p)
    p.add_argument("--n-list", type=_n_list, default=[256, 512, 1024, 2048],
                   help="comma-separated grid sizes (default 256,512,1024,2048)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CliConfig(
            subcommand=args.subcommand,
            grid_n=getattr(args, "grid_n", 1024),
            tol=getattr(args, "tol", 1e-3),
            method=getattr(args, "method", "computing"),
            minimal=not getattr(args, "naive", False),
            output_format=getattr(args, "output_format", "text"),
            rhs_csv=tuple(getattr(args, "rhs_csv", ())),
            out=getattr(args, "out", None),
        )
        if args.subcommand == "ml":
            return cmd_ml(cfg, args.alpha, args.beta, args.z)
        text = read_equation_text(args.equation)
        if args.subcommand == "reduce":
            return cmd_reduce(cfg, text)
        if args.subcommand == "solve":
            return cmd_solve(cfg, text)
        if args.subcommand == "verify":
            return cmd_verify(cfg, text, args.solution)
        if any(n < MIN_GRID for n in args.n_list):
            raise ValueError(f"grid sizes must be at least {MIN_GRID}")
        return cmd_convergence(cfg, text, args.n_list)
    except CliError as exc:
        _warn(str(exc))
        return exc.code
    except ValueError as exc:
        _warn(str(exc))
        return EXIT_PARSE
    except FracReduceError as exc:
        _warn(f"{type(exc).__name__}: {exc}")
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
