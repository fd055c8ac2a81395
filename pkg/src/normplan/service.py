"""HTTP facade over the scenario catalog, analysis and the solve loop.

Stateless: every request is a pure function of its body and the scenario and
policy files on disk.  Validation failures come back as 422 with one entry
per violated check; an unsatisfiable schedule is 409; solves exceeding the
request timeout are 504.
"""

from __future__ import annotations

import time
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .catalog import Catalog
from .controller import ModeChange, ModeSchedule, validate_schedule
from .domain import State
from .errors import NoPlan, NormplanError, NotCategorical, SolveTimeout

MAX_CHANGES = 2


class ChangeBody(BaseModel):
    step: Optional[int] = None
    mode: Optional[str] = None


class SolveRequest(BaseModel):
    scenario_id: str
    initial_mode: str
    changes: list[ChangeBody] = []
    horizon_override: Optional[int] = None


def _error_payload(errors: list[dict], solve_time_ms: int = 0) -> dict:
    return {"plan": None, "metrics": [], "solve_time_ms": solve_time_ms,
            "errors": errors}


def _witness_payload(states: tuple[State, ...], limit: int = 3) -> list[list[str]]:
    return [[str(l) for l in state.positives()] for state in states[:limit]]


def create_app(scenario_dir: Optional[Path] = None,
               policy_dir: Optional[Path] = None,
               solve_timeout_s: float = 30.0) -> FastAPI:
    app = FastAPI(title="normplan", version="0.1.0")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    catalog = Catalog(scenario_dir, policy_dir)

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        errors = [{"code": "invalid_request",
                   "message": f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}"}
                  for e in exc.errors()]
        return JSONResponse(status_code=422, content=_error_payload(errors))

    @app.get("/api/scenarios")
    def list_scenarios() -> list[dict]:
        return catalog.listing()

    @app.post("/api/solve")
    def solve(request: SolveRequest):
        started = time.monotonic()
        try:
            scenario = catalog.scenario(request.scenario_id)
        except KeyError:
            return JSONResponse(status_code=404, content=_error_payload(
                [{"code": "unknown_scenario",
                  "message": f"unknown scenario {request.scenario_id!r}"}]))
        if request.horizon_override is not None:
            from .catalog import with_horizon
            scenario = with_horizon(scenario, request.horizon_override)

        schedule = ModeSchedule(
            request.initial_mode,
            tuple(ModeChange(c.step, c.mode) for c in request.changes))
        modes = catalog.modes_for(scenario, catalog.entry(request.scenario_id).domain)
        issues = validate_schedule(schedule, scenario, modes,
                                   max_changes=MAX_CHANGES)
        if issues:
            return JSONResponse(status_code=422, content=_error_payload(
                [{"code": i.code, "message": i.message} for i in issues]))

        deadline = started + solve_timeout_s
        try:
            plan = catalog.solve(request.scenario_id, schedule,
                                 horizon_override=request.horizon_override,
                                 deadline=deadline)
        except SolveTimeout:
            return JSONResponse(status_code=504, content=_error_payload(
                [{"code": "solve_timeout",
                  "message": f"solve exceeded {solve_timeout_s:.0f}s"}],
                _elapsed_ms(started)))
        except NoPlan as exc:
            return JSONResponse(status_code=409, content=_error_payload(
                [{"code": "no_plan", "message": str(exc)}], _elapsed_ms(started)))
        except NotCategorical as exc:
            return JSONResponse(status_code=409, content=_error_payload(
                [{"code": "not_categorical", "message": str(exc)}],
                _elapsed_ms(started)))
        except NormplanError as exc:
            return JSONResponse(status_code=500, content=_error_payload(
                [{"code": "internal", "message": str(exc)}], _elapsed_ms(started)))

        return {"plan": plan.to_dict(),
                "metrics": [m.as_dict() for m in plan.final_metrics],
                "solve_time_ms": _elapsed_ms(started), "errors": []}

    @app.get("/api/analyze")
    def analyze_endpoint(scenario: str, modeset: str = "base"):
        try:
            catalog.scenario(scenario)
        except KeyError:
            return JSONResponse(status_code=404, content={
                "errors": [{"code": "unknown_scenario",
                            "message": f"unknown scenario {scenario!r}"}]})
        names = [part.strip() for part in modeset.split(",") if part.strip()]
        try:
            report = catalog.analyze_modeset(scenario, names)
        except KeyError as exc:
            return JSONResponse(status_code=404, content={
                "errors": [{"code": "unknown_policy", "message": str(exc)}]})
        return {
            "scenario": scenario,
            "modeset": names or ["base"],
            "consistent": report.consistent,
            "categorical": report.categorical,
            "witnesses": {kind: _witness_payload(states)
                          for kind, states in report.witnesses.items()},
        }

    return app


def _elapsed_ms(started: float) -> int:
    return int((time.monotonic() - started) * 1000)
