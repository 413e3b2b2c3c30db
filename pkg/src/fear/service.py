"""Local HTTP API for the explorer UI.

Stateless evaluation over JSON scenario documents: POST /evaluate returns a
full result document, POST /whatif sweeps all 17 candidate actions for one
agent, GET /catalog and GET /fixtures serve static content. Schema and
validation problems map to 400, an inconsistent MdR to 422 (with the
offending collision events); identical requests always produce identical
bodies.
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .engine import simulate
from .feasibility import StateEvaluator
from .grid import ScenarioValidationError, UnknownAgentError, action_catalog
from .io import (
    MalformedDocumentError,
    SchemaError,
    evaluate_scenario,
    fixture_documents,
    parse_scenario_document,
)
from .metric import (
    DEFAULT_CONFIG,
    MetricConfig,
    fear_pair,
    round_display,
    validate_mdr,
)


def _event_payload(events) -> list[dict[str, Any]]:
    return [
        {
            "participants": sorted(event.participants),
            "sub_step": event.sub_step,
            "kind": event.kind.value,
        }
        for event in events
    ]


def _bad_request(message: str, violations=()) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": message, "violations": [str(v) for v in violations]},
    )


def create_app(config: MetricConfig = DEFAULT_CONFIG) -> FastAPI:
    app = FastAPI(title="FeAR explorer API")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"https?://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return _bad_request("request body is not a JSON object")

    def parse_or_respond(document) -> tuple[Any, JSONResponse | None]:
        try:
            return parse_scenario_document(document), None
        except (MalformedDocumentError, SchemaError) as exc:
            return None, _bad_request(str(exc))
        except ScenarioValidationError as exc:
            return None, _bad_request("scenario failed validation", exc.report.violations)

    def mdr_or_respond(scenario) -> JSONResponse | None:
        check = validate_mdr(scenario)
        if not check.consistent:
            return JSONResponse(
                status_code=422,
                content={
                    "error": "joint MdR is inconsistent: simulating it collides",
                    "events": _event_payload(check.events),
                },
            )
        return None

    @app.post("/evaluate")
    async def evaluate(document: dict) -> Any:
        scenario, error = parse_or_respond(document)
        if error is not None:
            return error
        error = mdr_or_respond(scenario)
        if error is not None:
            return error
        return evaluate_scenario(scenario, config).to_dict()

    @app.post("/whatif")
    async def whatif(body: dict) -> Any:
        if not isinstance(body, dict) or "scenario" not in body or "agent" not in body:
            return _bad_request("expected a body of the form {scenario: ..., agent: id}")
        scenario, error = parse_or_respond(body["scenario"])
        if error is not None:
            return error
        error = mdr_or_respond(scenario)
        if error is not None:
            return error
        try:
            agent_id = int(body["agent"])
            scenario.agents.index_of(agent_id)
        except (TypeError, ValueError, UnknownAgentError):
            return _bad_request(f"unknown agent {body['agent']!r}")

        evaluator = StateEvaluator(scenario.grid, scenario.agents)
        others = [i for i in scenario.agent_ids if i != agent_id]
        # feasibility of a candidate ignores the agent's own current entry,
        # so one memoized sweep answers all 17 candidates
        feasible = set(evaluator.feasible_set(scenario.joint_action, agent_id))

        entries = []
        for candidate in action_catalog():
            joint = dict(scenario.joint_action)
            joint[agent_id] = candidate
            variant = scenario.with_actions(joint)
            row = {
                str(other): fear_pair(variant, agent_id, other, config, evaluator=evaluator)
                for other in others
            }
            resolution = simulate(scenario.grid, scenario.agents, joint)
            entries.append(
                {
                    "action": candidate.code,
                    "fear_row": row,
                    "fear_row_display": {
                        key: round_display(value, config.report_decimals)
                        for key, value in row.items()
                    },
                    "feasible": candidate in feasible,
                    "collisions": _event_payload(resolution.events),
                }
            )
        return {"agent": agent_id, "entries": entries}

    @app.get("/catalog")
    async def catalog() -> Any:
        return {"actions": [action.code for action in action_catalog()]}

    @app.get("/fixtures")
    async def fixtures() -> Any:
        return fixture_documents()

    return app
