"""Collision engine: resolve one simultaneous step of all agents.

Semantics of a step:

* An agent with magnitude m advances one cell per sub-step for sub-steps
  1..m, then holds its cell; all agents move synchronously.
* Conflicts at a sub-step t are (a) vertex: two or more agents on one cell,
  (b) swap: two agents exchanging cells between t-1 and t, (c) boundary: an
  agent entering a cell outside the map's valid mask.
* Resolution is an iterative fixed point: find the earliest conflicting
  sub-step, freeze every participant at its position at t-1 (boundary: the
  last swept valid cell), rebuild, repeat. Every participant of a conflict
  stops and counts as collided, including a stationary or slower victim.

Because truncating at sub-step t never changes positions before t, the fixed
point is computed here as a single forward sweep that re-examines a sub-step
until it is conflict-free before advancing. A deliberately naive
re-enumeration oracle in the test suite checks the equivalence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

from .grid import (
    AgentSet,
    Cell,
    GridMap,
    JointAction,
    ScenarioValidationError,
    Trajectory,
    ValidationReport,
    Violation,
    expand_trajectory,
)


class ConflictKind(enum.Enum):
    VERTEX = "vertex"
    SWAP = "swap"
    BOUNDARY = "boundary"


_KIND_RANK = {ConflictKind.VERTEX: 0, ConflictKind.SWAP: 1, ConflictKind.BOUNDARY: 2}


@dataclass(frozen=True, slots=True)
class CollisionEvent:
    """One detected conflict; boundary events have a single participant."""

    participants: frozenset[int]
    sub_step: int
    kind: ConflictKind

    def sort_key(self) -> tuple:
        return (self.sub_step, _KIND_RANK[self.kind], tuple(sorted(self.participants)))


@dataclass(frozen=True)
class SubStepTimeline:
    """Synchronous positions of every agent at sub-steps 0..horizon."""

    agent_ids: tuple[int, ...]
    positions: tuple[tuple[Cell, ...], ...]

    @property
    def horizon(self) -> int:
        return len(self.positions) - 1

    def at(self, sub_step: int) -> tuple[Cell, ...]:
        return self.positions[sub_step]


@dataclass(frozen=True)
class ResolutionResult:
    """Outcome of one resolved step.

    Trajectories are prefixes of the intended ones; ``collided`` marks every
    agent that participates in at least one event.
    """

    trajectories: Mapping[int, Trajectory]
    final_positions: Mapping[int, Cell]
    events: tuple[CollisionEvent, ...]
    collided: Mapping[int, bool]

    def __post_init__(self) -> None:
        object.__setattr__(self, "trajectories", MappingProxyType(dict(self.trajectories)))
        object.__setattr__(self, "final_positions", MappingProxyType(dict(self.final_positions)))
        object.__setattr__(self, "collided", MappingProxyType(dict(self.collided)))

    def __reduce__(self):
        # mapping proxies do not pickle; rebuild through the constructor
        return (
            ResolutionResult,
            (dict(self.trajectories), dict(self.final_positions), self.events, dict(self.collided)),
        )

    @property
    def any_collision(self) -> bool:
        return bool(self.events)


def _check_state(grid: GridMap, agents: AgentSet, joint_action: JointAction) -> None:
    violations = []
    seen: dict[Cell, int] = {}
    for agent in agents:
        if not grid.is_valid(agent.origin):
            violations.append(
                Violation("invalid-origin", f"agent {agent.id} origin {agent.origin} is off-map", agent.id)
            )
        if agent.origin in seen:
            violations.append(
                Violation(
                    "duplicate-origin",
                    f"agents {seen[agent.origin]} and {agent.id} share origin {agent.origin}",
                    agent.id,
                )
            )
        seen.setdefault(agent.origin, agent.id)
        if agent.id not in joint_action:
            violations.append(
                Violation("missing-action", f"agent {agent.id} has no action assigned", agent.id)
            )
    if violations:
        raise ScenarioValidationError(ValidationReport(tuple(violations)))


def intended_paths(agents: AgentSet, joint_action: JointAction) -> list[tuple[Cell, ...]]:
    """Untruncated swept paths, in agent order."""
    return [expand_trajectory(agent.origin, joint_action[agent.id]).cells for agent in agents]


def build_timeline(agents: AgentSet, joint_action: JointAction) -> SubStepTimeline:
    """Timeline of intended motion: advance one cell per sub-step, then hold."""
    paths = intended_paths(agents, joint_action)
    horizon = max(len(p) for p in paths) - 1
    positions = tuple(
        tuple(p[t] if t < len(p) else p[-1] for p in paths) for t in range(horizon + 1)
    )
    return SubStepTimeline(agents.ids, positions)


def detect_conflicts(timeline: SubStepTimeline, grid: GridMap) -> tuple[CollisionEvent, ...]:
    """Every conflict in an (unresolved) timeline, earliest sub-step first.

    Boundary conflicts are reported once per agent, at the sub-step it first
    leaves the valid mask. This is the diagnostic view of the intended
    motion; :func:`simulate` performs the actual iterative resolution.
    """
    ids = timeline.agent_ids
    k = len(ids)
    events: list[CollisionEvent] = []
    off_map: set[int] = set()
    for t in range(1, timeline.horizon + 1):
        prev = timeline.positions[t - 1]
        curr = timeline.positions[t]
        occupancy: dict[Cell, list[int]] = {}
        for i in range(k):
            occupancy.setdefault(curr[i], []).append(i)
        for cell, members in occupancy.items():
            if len(members) >= 2:
                events.append(
                    CollisionEvent(frozenset(ids[i] for i in members), t, ConflictKind.VERTEX)
                )
        for i in range(k):
            for j in range(i + 1, k):
                if curr[i] == prev[j] and curr[j] == prev[i] and curr[i] != prev[i]:
                    events.append(
                        CollisionEvent(frozenset((ids[i], ids[j])), t, ConflictKind.SWAP)
                    )
        for i in range(k):
            if i not in off_map and curr[i] != prev[i] and not grid.is_valid(curr[i]):
                off_map.add(i)
                events.append(CollisionEvent(frozenset((ids[i],)), t, ConflictKind.BOUNDARY))
    return tuple(sorted(events, key=CollisionEvent.sort_key))


def _first_invalid(path: Sequence[Cell], valid: frozenset[Cell]) -> int:
    """Index of the first off-map cell in a path, or len(path) if none."""
    for t, cell in enumerate(path):
        if cell not in valid:
            return t
    return len(path)


def _resolve(
    valid: frozenset[Cell],
    paths: Sequence[Sequence[Cell]],
    first_bads: Sequence[int],
    watch: int = -1,
) -> tuple[list[int], list[tuple[int, int, frozenset[int]]], bool]:
    """Core fixed point over effective path lengths.

    Returns (effective lengths, raw events as (sub_step, kind_rank,
    participant indices), watch_collided). When ``watch`` is a valid agent
    index the sweep aborts as soon as that agent joins an event, since its
    collided flag can only ever be set, never cleared.
    """
    k = len(paths)
    eff = [len(p) for p in paths]
    events: list[tuple[int, int, frozenset[int]]] = []
    prev = [p[0] for p in paths]
    curr = list(prev)
    t = 1
    while True:
        horizon = max(eff) - 1
        if t > horizon:
            return eff, events, False
        for i in range(k):
            curr[i] = paths[i][t] if t < eff[i] else paths[i][eff[i] - 1]
        # Re-examine this sub-step until clean: freezing a participant moves
        # it back to its t-1 cell, which can itself be hit at this same t.
        while True:
            hit: set[int] = set()
            round_events: list[tuple[int, int, frozenset[int]]] = []
            occupancy: dict[Cell, list[int]] = {}
            for i in range(k):
                occupancy.setdefault(curr[i], []).append(i)
            for members in occupancy.values():
                if len(members) >= 2:
                    round_events.append((t, 0, frozenset(members)))
                    hit.update(members)
            for i in range(k):
                for j in range(i + 1, k):
                    if curr[i] == prev[j] and curr[j] == prev[i] and curr[i] != prev[i]:
                        round_events.append((t, 1, frozenset((i, j))))
                        hit.update((i, j))
            for i in range(k):
                if first_bads[i] == t and t < eff[i]:
                    round_events.append((t, 2, frozenset((i,))))
                    hit.add(i)
            if not round_events:
                break
            events.extend(round_events)
            if watch >= 0 and watch in hit:
                return eff, events, True
            for i in hit:
                if eff[i] > t:
                    eff[i] = t
                curr[i] = paths[i][eff[i] - 1] if t >= eff[i] else paths[i][t]
        prev, curr = curr, prev
        t += 1


def _canonical_events(
    raw: list[tuple[int, int, frozenset[int]]], ids: tuple[int, ...]
) -> tuple[CollisionEvent, ...]:
    """Deduplicate by (participants, kind), keep earliest, sort canonically."""
    kinds = (ConflictKind.VERTEX, ConflictKind.SWAP, ConflictKind.BOUNDARY)
    first: dict[tuple[frozenset[int], ConflictKind], CollisionEvent] = {}
    for sub_step, kind_rank, members in raw:
        participants = frozenset(ids[i] for i in members)
        kind = kinds[kind_rank]
        key = (participants, kind)
        if key not in first:
            first[key] = CollisionEvent(participants, sub_step, kind)
    return tuple(sorted(first.values(), key=CollisionEvent.sort_key))


def simulate(grid: GridMap, agents: AgentSet, joint_action: JointAction) -> ResolutionResult:
    """Resolve one simultaneous step to its conflict-free fixed point.

    Raises ScenarioValidationError for malformed state (off-map or duplicate
    origins, missing action assignments).
    """
    _check_state(grid, agents, joint_action)
    paths = intended_paths(agents, joint_action)
    first_bads = [_first_invalid(p, grid.valid) for p in paths]
    eff, raw, _ = _resolve(grid.valid, paths, first_bads)

    ids = agents.ids
    events = _canonical_events(raw, ids)
    involved = set()
    for event in events:
        involved.update(event.participants)
    trajectories = {
        ids[i]: Trajectory(tuple(paths[i][: eff[i]])) for i in range(len(ids))
    }
    return ResolutionResult(
        trajectories=trajectories,
        final_positions={ids[i]: paths[i][eff[i] - 1] for i in range(len(ids))},
        events=events,
        collided={agent_id: agent_id in involved for agent_id in ids},
    )


def simulate_scenario(scenario) -> ResolutionResult:
    """Resolve a scenario's chosen joint action."""
    return simulate(scenario.grid, scenario.agents, scenario.joint_action)
