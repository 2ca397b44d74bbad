"""HTTP service exposing problem loading, solving, and sweeping.

Problems live in a synchronized in-memory store for the lifetime of the
process; computation itself is stateless, so concurrent solves on the
same problem are independent and identical.  All payloads are JSON and
every interval is an explicit {"lower", "upper"} object, matching the
CLI documents byte for byte where they overlap.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .errors import (
    InfeasibleProblem,
    IntervalfolioError,
    ParseError,
    SchemaError,
)
from .estimation import ReturnHistory
from .io import (
    assemble_problem,
    interval_object,
    parse_config_data,
    parse_history_text,
    solution_document,
    sweep_document,
)
from .model import PortfolioProblem, solve_portfolio
from .sweep import DEFAULT_ALPHAS, DEFAULT_LAMBDAS, sweep


@dataclass(frozen=True)
class SessionProblem:
    """One loaded problem; immutable once stored."""

    id: str
    problem: PortfolioProblem
    history: ReturnHistory
    created_at: float


class ProblemStore:
    """Thread-safe id -> SessionProblem map."""

    def __init__(self):
        self._lock = threading.Lock()
        self._items: dict[str, SessionProblem] = {}

    def add(self, problem: PortfolioProblem, history: ReturnHistory) -> SessionProblem:
        with self._lock:
            while True:
                token = secrets.token_hex(8)
                if token not in self._items:
                    break
            item = SessionProblem(
                id=token, problem=problem, history=history, created_at=time.time()
            )
            self._items[token] = item
            return item

    def get(self, token: str) -> SessionProblem | None:
        with self._lock:
            return self._items.get(token)


def _bad_request(field: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=400, content={"detail": {"field": field, "message": message}}
    )


def _field_of(exc: Exception) -> str:
    if isinstance(exc, SchemaError):
        return exc.field
    if isinstance(exc, ParseError):
        return "history"
    return "body"


def create_app(cors_origins=None, static_dir=None) -> FastAPI:
    app = FastAPI(title="intervalfolio", docs_url=None, redoc_url=None)
    store = ProblemStore()
    app.state.store = store

    if cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def _on_validation_error(request: Request, exc: RequestValidationError):
        # malformed request bodies are the client's formatting problem,
        # reported like every other field error
        errors = exc.errors()
        field = ".".join(str(p) for p in errors[0]["loc"]) if errors else "body"
        message = errors[0]["msg"] if errors else "invalid request body"
        return _bad_request(field, message)

    @app.exception_handler(IntervalfolioError)
    async def _on_domain_error(request: Request, exc: IntervalfolioError):
        if isinstance(exc, InfeasibleProblem):
            return JSONResponse(
                status_code=422,
                content={"detail": {"message": str(exc), "reason": exc.reason}},
            )
        message = exc.message if isinstance(exc, SchemaError) else str(exc)
        return _bad_request(_field_of(exc), message)

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    @app.post("/api/problems")
    async def create_problem(body: dict):
        if "history" not in body:
            raise SchemaError("history", "is required")
        if not isinstance(body["history"], str):
            raise SchemaError("history", "must be CSV text")
        if "config" not in body:
            raise SchemaError("config", "is required")
        history = parse_history_text(body["history"], source="history")
        config = parse_config_data(body["config"])
        problem = assemble_problem(history, config)
        item = store.add(problem, history)
        universe = problem.universe
        return {
            "id": item.id,
            "summary": {
                "n_assets": universe.n_risky,
                "n_periods": history.n_periods,
                "assets": list(history.assets),
                "risk_free_rate": universe.risk_free_rate,
                "risk_tolerance": interval_object(problem.risk_tolerance),
                "intervals": [
                    {"asset": name, **interval_object(iv)}
                    for name, iv in zip(history.assets, universe.intervals)
                ],
            },
        }

    def _lookup(problem_id: str) -> SessionProblem:
        item = store.get(problem_id)
        if item is None:
            raise _UnknownProblem(problem_id)
        return item

    @app.exception_handler(_UnknownProblem)
    async def _on_unknown(request: Request, exc: _UnknownProblem):
        return JSONResponse(
            status_code=404, content={"detail": f"unknown problem id {exc.problem_id!r}"}
        )

    @app.post("/api/problems/{problem_id}/solve")
    async def solve_endpoint(problem_id: str, body: dict):
        item = _lookup(problem_id)
        alpha = _required_number(body, "alpha")
        lam = _required_number(body, "lambda")
        solution = solve_portfolio(item.problem, alpha=alpha, lam=lam)
        return solution_document(solution, item.history.assets)

    @app.post("/api/problems/{problem_id}/sweep")
    async def sweep_endpoint(problem_id: str, body: dict | None = None):
        item = _lookup(problem_id)
        body = body or {}
        alphas = _optional_grid(body, "alphas", DEFAULT_ALPHAS)
        lambdas = _optional_grid(body, "lambdas", DEFAULT_LAMBDAS)
        table = sweep(item.problem, alphas, lambdas)
        return sweep_document(table, item.history.assets)

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app


class _UnknownProblem(Exception):
    def __init__(self, problem_id: str):
        self.problem_id = problem_id
        super().__init__(problem_id)


def _required_number(body: dict, field: str) -> float:
    if field not in body:
        raise SchemaError(field, "is required")
    value = body[field]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(field, "must be a number")
    return float(value)


def _optional_grid(body: dict, field: str, default) -> list[float]:
    if field not in body or body[field] is None:
        return list(default)
    value = body[field]
    if not isinstance(value, list) or not value:
        raise SchemaError(field, "must be a non-empty list of numbers")
    out = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise SchemaError(field, "must contain numbers only")
        out.append(float(item))
    return out
