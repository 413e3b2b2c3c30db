"""Scenario file format, result documents, and built-in case-study fixtures.

Scenario documents are strict JSON: unknown fields are rejected, agent ids
must be unique, and action codes must come from the 17-action catalog. The
grid is stored as its dimensions plus the *invalid* cells, since lane and
intersection maps are mostly valid. Coordinates are 0-indexed.
"""

from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import dataclass
from importlib import resources
from typing import Any, Mapping

from .engine import CollisionEvent, ConflictKind, simulate
from .feasibility import FeasibilityReport, StateEvaluator
from .grid import (
    Action,
    Agent,
    AgentSet,
    GridMap,
    Scenario,
    ScenarioValidationError,
    ValidationReport,
    Violation,
    validate_scenario,
)
from .metric import (
    DEFAULT_CONFIG,
    AggregateStats,
    FearMatrix,
    MetricConfig,
    aggregate,
    fear_matrix,
)

FORMAT_VERSION = 1


class ScenarioIOError(ValueError):
    """Base class for scenario document problems."""


class MalformedDocumentError(ScenarioIOError):
    """The bytes are not a JSON object at all."""


class SchemaError(ScenarioIOError):
    """The document is JSON but violates the scenario schema.

    ``location`` is a JSONPath-ish pointer to the offending field.
    """

    def __init__(self, message: str, location: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def _require_keys(obj: Mapping[str, Any], allowed: set[str], required: set[str], location: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(f"unknown field(s) {sorted(unknown)}", location)
    missing = required - set(obj)
    if missing:
        raise SchemaError(f"missing field(s) {sorted(missing)}", location)


def _as_int(value: Any, location: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {value!r}", location)
    return value


def _parse_cell(value: Any, location: str) -> tuple[int, int]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SchemaError(f"expected an [x, y] pair, got {value!r}", location)
    return (_as_int(value[0], location + "[0]"), _as_int(value[1], location + "[1]"))


def _parse_action_map(raw: Any, label: str, location: str) -> tuple[dict[int, Action], list[Violation]]:
    if not isinstance(raw, dict):
        raise SchemaError(f"expected an object mapping agent id to action code", location)
    parsed: dict[int, Action] = {}
    violations: list[Violation] = []
    for key, code in raw.items():
        try:
            agent_id = int(key)
        except (TypeError, ValueError):
            raise SchemaError(f"agent id key {key!r} is not an integer", f"{location}.{key}") from None
        if not isinstance(code, str):
            raise SchemaError(f"expected an action code string, got {code!r}", f"{location}.{key}")
        try:
            parsed[agent_id] = Action.parse(code)
        except ValueError:
            violations.append(
                Violation(
                    "unknown-action",
                    f"{label} for agent {agent_id} uses unknown action code {code!r}",
                    agent_id,
                )
            )
    return parsed, violations


def parse_scenario_document(data: bytes | str | Mapping[str, Any]) -> Scenario:
    """Parse and validate a scenario document.

    Raises MalformedDocumentError for non-JSON input, SchemaError (with a
    field location) for structural problems, and ScenarioValidationError
    (with the full violation report) for semantic ones such as duplicate
    origins or unknown action codes.
    """
    if isinstance(data, (bytes, str)):
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise MalformedDocumentError(f"not valid JSON: {exc}") from exc
    else:
        doc = data
    if not isinstance(doc, dict):
        raise MalformedDocumentError(f"expected a JSON object, got {type(doc).__name__}")

    _require_keys(
        doc,
        {"format_version", "grid", "agents", "actions", "mdr"},
        {"format_version", "grid", "agents", "actions", "mdr"},
        "$",
    )
    version = _as_int(doc["format_version"], "$.format_version")
    if version != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {version}", "$.format_version")

    grid_doc = doc["grid"]
    if not isinstance(grid_doc, dict):
        raise SchemaError("expected an object", "$.grid")
    _require_keys(grid_doc, {"width", "height", "invalid_cells"}, {"width", "height"}, "$.grid")
    width = _as_int(grid_doc["width"], "$.grid.width")
    height = _as_int(grid_doc["height"], "$.grid.height")
    invalid = [
        _parse_cell(cell, f"$.grid.invalid_cells[{i}]")
        for i, cell in enumerate(grid_doc.get("invalid_cells", []))
    ]
    if width < 1 or height < 1:
        raise SchemaError(f"grid must be at least 1x1, got {width}x{height}", "$.grid")
    try:
        grid = GridMap.from_invalid(width, height, invalid)
    except ValueError as exc:
        raise SchemaError(str(exc), "$.grid") from exc

    agents_doc = doc["agents"]
    if not isinstance(agents_doc, list) or not agents_doc:
        raise SchemaError("expected a non-empty list of agents", "$.agents")
    agents: list[Agent] = []
    seen_ids: set[int] = set()
    for i, entry in enumerate(agents_doc):
        location = f"$.agents[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError("expected an object", location)
        _require_keys(entry, {"id", "x", "y"}, {"id", "x", "y"}, location)
        agent_id = _as_int(entry["id"], location + ".id")
        if agent_id in seen_ids:
            raise SchemaError(f"duplicate agent id {agent_id}", location + ".id")
        seen_ids.add(agent_id)
        agents.append(Agent(agent_id, (_as_int(entry["x"], location + ".x"), _as_int(entry["y"], location + ".y"))))
    agents.sort(key=lambda a: a.id)

    actions, action_violations = _parse_action_map(doc["actions"], "action", "$.actions")
    mdr, mdr_violations = _parse_action_map(doc["mdr"], "MdR", "$.mdr")

    scenario = Scenario(grid, AgentSet(tuple(agents)), actions, mdr)
    report = validate_scenario(scenario)
    violations = tuple(action_violations + mdr_violations) + report.violations
    if violations:
        raise ScenarioValidationError(ValidationReport(violations))
    return scenario


load_scenario = parse_scenario_document


def scenario_to_document(scenario: Scenario) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "grid": {
            "width": scenario.grid.width,
            "height": scenario.grid.height,
            "invalid_cells": [list(cell) for cell in scenario.grid.invalid_cells],
        },
        "agents": [
            {"id": agent.id, "x": agent.origin[0], "y": agent.origin[1]}
            for agent in scenario.agents
        ],
        "actions": {str(agent_id): scenario.joint_action[agent_id].code for agent_id in scenario.agent_ids},
        "mdr": {str(agent_id): scenario.joint_mdr[agent_id].code for agent_id in scenario.agent_ids},
    }


def save_scenario(scenario: Scenario) -> bytes:
    return (json.dumps(scenario_to_document(scenario), indent=2) + "\n").encode("utf-8")


def _event_to_dict(event: CollisionEvent) -> dict[str, Any]:
    return {
        "participants": sorted(event.participants),
        "sub_step": event.sub_step,
        "kind": event.kind.value,
    }


def _event_from_dict(doc: Mapping[str, Any]) -> CollisionEvent:
    return CollisionEvent(
        frozenset(doc["participants"]), int(doc["sub_step"]), ConflictKind(doc["kind"])
    )


def _report_to_dict(report: FeasibilityReport) -> dict[str, Any]:
    return {"count": report.count, "feasible": list(report.codes)}


@dataclass(frozen=True)
class ResultDocument:
    """Full evaluation output for one scenario.

    Holds the FeAR matrix at full precision plus a rounded display copy,
    feasibility reports under the actual joint action and under each MdR
    baseline, the collision events of the actual joint action, and the
    off-diagonal aggregate statistics.
    """

    agent_ids: tuple[int, ...]
    fear: FearMatrix
    feasibility_actual: dict[int, FeasibilityReport]
    feasibility_actor_mdr: dict[int, dict[int, FeasibilityReport]]
    feasibility_others_mdr: dict[int, FeasibilityReport]
    collisions: tuple[CollisionEvent, ...]
    stats: AggregateStats
    display_decimals: int = 2

    def to_dict(self) -> dict[str, Any]:
        stats = self.stats
        return {
            "agent_ids": list(self.agent_ids),
            "fear": self.fear.as_lists(),
            "fear_display": self.fear.display(self.display_decimals),
            "feasibility": {
                "actual": {str(j): _report_to_dict(r) for j, r in self.feasibility_actual.items()},
                "actor_mdr": {
                    str(i): {str(j): _report_to_dict(r) for j, r in per_actor.items()}
                    for i, per_actor in self.feasibility_actor_mdr.items()
                },
                "others_mdr": {str(j): _report_to_dict(r) for j, r in self.feasibility_others_mdr.items()},
            },
            "collisions": [_event_to_dict(e) for e in self.collisions],
            "aggregate": {
                "offdiag_sum_squares": stats.offdiag_sum_squares,
                "positive_count": stats.positive_count,
                "negative_count": stats.negative_count,
                "zero_count": stats.zero_count,
                "min_entry": list(stats.min_entry) if stats.min_entry else None,
                "max_entry": list(stats.max_entry) if stats.max_entry else None,
            },
        }

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "ResultDocument":
        ids = tuple(int(i) for i in doc["agent_ids"])
        feas = doc["feasibility"]

        def report(agent_id: int, entry: Mapping[str, Any]) -> FeasibilityReport:
            return FeasibilityReport(agent_id, tuple(Action.parse(c) for c in entry["feasible"]))

        agg = doc["aggregate"]
        return cls(
            agent_ids=ids,
            fear=FearMatrix(ids, tuple(tuple(float(v) for v in row) for row in doc["fear"])),
            feasibility_actual={int(j): report(int(j), r) for j, r in feas["actual"].items()},
            feasibility_actor_mdr={
                int(i): {int(j): report(int(j), r) for j, r in per_actor.items()}
                for i, per_actor in feas["actor_mdr"].items()
            },
            feasibility_others_mdr={int(j): report(int(j), r) for j, r in feas["others_mdr"].items()},
            collisions=tuple(_event_from_dict(e) for e in doc["collisions"]),
            stats=AggregateStats(
                offdiag_sum_squares=float(agg["offdiag_sum_squares"]),
                positive_count=int(agg["positive_count"]),
                negative_count=int(agg["negative_count"]),
                zero_count=int(agg["zero_count"]),
                min_entry=tuple(agg["min_entry"]) if agg["min_entry"] else None,
                max_entry=tuple(agg["max_entry"]) if agg["max_entry"] else None,
            ),
        )


def evaluate_scenario(scenario: Scenario, config: MetricConfig = DEFAULT_CONFIG) -> ResultDocument:
    """Run the full evaluation pipeline for one scenario.

    Raises ScenarioValidationError for malformed scenarios and
    InconsistentMdrError when the joint MdR collides with itself.
    """
    ev = StateEvaluator(scenario.grid, scenario.agents)
    matrix = fear_matrix(scenario, config, evaluator=ev)
    ids = scenario.agent_ids
    joint = scenario.joint_action
    mdr = scenario.joint_mdr

    actual = {j: ev.report(joint, j) for j in ids}
    actor_mdr: dict[int, dict[int, FeasibilityReport]] = {}
    for i in ids:
        base = dict(joint)
        base[i] = mdr[i]
        actor_mdr[i] = {j: ev.report(base, j) for j in ids if j != i}
    others_mdr = {j: ev.report(mdr, j) for j in ids}

    resolution = simulate(scenario.grid, scenario.agents, joint)
    return ResultDocument(
        agent_ids=ids,
        fear=matrix,
        feasibility_actual=actual,
        feasibility_actor_mdr=actor_mdr,
        feasibility_others_mdr=others_mdr,
        collisions=resolution.events,
        stats=aggregate(matrix),
        display_decimals=config.report_decimals,
    )


def export_results(result: ResultDocument, format: str = "json") -> bytes:
    """Serialize a result document as JSON, or the display matrix as CSV.

    The CSV form is the FeAR display matrix with a header row and column of
    agent ids.
    """
    if format == "json":
        return (json.dumps(result.to_dict(), indent=2) + "\n").encode("utf-8")
    if format == "csv":
        buffer = _io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        ids = result.agent_ids
        display = result.fear.display(result.display_decimals)
        writer.writerow(["agent", *ids])
        for agent_id, row in zip(ids, display):
            writer.writerow([agent_id, *(f"{v:.{result.display_decimals}f}" for v in row)])
        return buffer.getvalue().encode("utf-8")
    raise ValueError(f"unknown export format {format!r}")


def _fixture_names() -> list[str]:
    root = resources.files("fear").joinpath("fixtures")
    return sorted(
        entry.name.removesuffix(".json")
        for entry in root.iterdir()
        if entry.name.endswith(".json")
    )


def fixture_documents() -> dict[str, dict[str, Any]]:
    """Raw JSON documents of every packaged fixture, keyed by name."""
    root = resources.files("fear").joinpath("fixtures")
    return {
        name: json.loads(root.joinpath(f"{name}.json").read_text("utf-8"))
        for name in _fixture_names()
    }


def builtin_fixtures() -> dict[str, Scenario]:
    """The packaged case-study scenarios, parsed through the normal loader.

    Covers the two-agent lane instances (case1a-c with stay MdRs, case2
    variants of the same instances under R1-R1 and R2-R2 MdRs) and the
    three-agent intersection series (case3a-e). The four-agent batch study
    has no fixed scenario; its generator parameters are the sampler defaults.
    """
    return {name: parse_scenario_document(doc) for name, doc in fixture_documents().items()}
