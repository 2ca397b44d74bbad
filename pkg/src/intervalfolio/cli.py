"""Command-line interface.

Subcommands: ``estimate`` (return intervals from history), ``solve``
(one allocation), ``sweep`` (a parameter grid), ``serve`` (HTTP
service).  Results go to standard output or ``--output`` as JSON.

Exit codes: 0 success, 1 domain failures (an infeasible problem), 2
usage and input-format errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import (
    BadParameter,
    InfeasibleProblem,
    IntervalfolioError,
    ParseError,
    SchemaError,
)
from .io import (
    assemble_problem,
    estimate_document,
    parse_config,
    parse_history,
    render_document,
    solution_document,
    sweep_document,
)
from .model import solve_portfolio
from .sweep import DEFAULT_ALPHAS, DEFAULT_LAMBDAS, sweep

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

PORT_ENV_VAR = "INTERVALFOLIO_PORT"
DEFAULT_PORT = 8000


class _CliArgumentParser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors already; subclassed
    only so programmatic callers get the same behavior without the
    default SystemExit swallowing our stderr formatting."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def parse_grid(text: str, name: str) -> list[float]:
    """Grid syntax: either a comma list ``0.5,1.0`` or an inclusive
    range ``start:stop:step`` such as ``0:0.96:0.12``."""
    text = text.strip()
    if not text:
        raise BadParameter(f"{name}: empty grid")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise BadParameter(f"{name}: range syntax is start:stop:step, got {text!r}")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError:
            raise BadParameter(f"{name}: non-numeric range bound in {text!r}") from None
        if step <= 0:
            raise BadParameter(f"{name}: step must be positive, got {step:g}")
        if stop < start:
            raise BadParameter(f"{name}: stop {stop:g} is below start {start:g}")
        count = int((stop - start) / step + 1e-9) + 1
        return [round(start + i * step, 12) for i in range(count)]
    values = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            raise BadParameter(f"{name}: empty entry in {text!r}")
        try:
            values.append(float(piece))
        except ValueError:
            raise BadParameter(f"{name}: {piece!r} is not a number") from None
    return values


def _write_output(rendered: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(rendered)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(rendered)


def _load(args):
    history = parse_history(args.history)
    config = parse_config(args.config)
    return history, config


def _cmd_estimate(args) -> int:
    history, config = _load(args)
    _write_output(render_document(estimate_document(history, config)), args.output)
    return EXIT_OK


def _cmd_solve(args) -> int:
    history, config = _load(args)
    problem = assemble_problem(history, config)
    solution = solve_portfolio(problem, alpha=args.alpha, lam=getattr(args, "lambda"))
    _write_output(render_document(solution_document(solution, history.assets)), args.output)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    history, config = _load(args)
    problem = assemble_problem(history, config)
    alphas = parse_grid(args.alphas, "--alphas") if args.alphas else list(DEFAULT_ALPHAS)
    lambdas = parse_grid(args.lambdas, "--lambdas") if args.lambdas else list(DEFAULT_LAMBDAS)
    table = sweep(problem, alphas, lambdas)
    _write_output(render_document(sweep_document(table, history.assets)), args.output)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    port = args.port
    if port is None:
        raw = os.environ.get(PORT_ENV_VAR, "")
        try:
            port = int(raw) if raw else DEFAULT_PORT
        except ValueError:
            raise BadParameter(
                f"{PORT_ENV_VAR}={raw!r} is not a valid port number"
            ) from None
    app = create_app(cors_origins=args.cors_origin, static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _CliArgumentParser(
        prog="intervalfolio",
        description="Portfolio selection on interval-valued expected returns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io_flags(p, with_output=True):
        p.add_argument("--history", required=True, help="CSV return history")
        p.add_argument("--config", required=True, help="JSON problem configuration")
        if with_output:
            p.add_argument(
                "--output", default=None, help="write the document here instead of stdout"
            )

    p_est = sub.add_parser("estimate", help="estimate per-asset return intervals")
    add_io_flags(p_est)
    p_est.set_defaults(handler=_cmd_estimate)

    p_solve = sub.add_parser("solve", help="solve one (alpha, lambda) cell")
    add_io_flags(p_solve)
    p_solve.add_argument("--alpha", type=float, required=True, help="satisfaction grade")
    p_solve.add_argument("--lambda", type=float, required=True, help="pessimism weight in [0, 1]")
    p_solve.set_defaults(handler=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="solve a parameter grid")
    add_io_flags(p_sweep)
    p_sweep.add_argument(
        "--alphas", default=None, help='grid, e.g. "0.5,1.0" or "0.25:1:0.25"'
    )
    p_sweep.add_argument(
        "--lambdas", default=None, help='grid, e.g. "0:0.96:0.12" (inclusive range)'
    )
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument(
        "--port",
        type=int,
        default=None,
        help=f"listen port (default: ${PORT_ENV_VAR} or {DEFAULT_PORT})",
    )
    p_serve.add_argument(
        "--cors-origin",
        action="append",
        default=None,
        help="origin allowed for cross-origin requests; repeatable",
    )
    p_serve.add_argument(
        "--static-dir", default=None, help="serve this directory at / (for the explorer UI)"
    )
    p_serve.set_defaults(handler=_cmd_serve)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, SchemaError, BadParameter) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleProblem as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except IntervalfolioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except KeyboardInterrupt:
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
