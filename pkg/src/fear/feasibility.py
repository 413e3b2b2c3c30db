"""Feasible-action counting: which candidate moves leave an agent collision-free.

A candidate action is feasible for agent j when substituting it into the
joint action and fully re-resolving the step leaves j out of every collision
event, boundary hits included. Collisions purely among other agents do not
make j's candidate infeasible, but being the passive victim of one does.

Every candidate triggers a complete re-resolution (other agents' truncations
can differ per candidate); a per-state memo keyed on the other agents'
actions recovers the cost of repeated queries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import _first_invalid, _resolve
from .grid import (
    Action,
    AgentSet,
    Cell,
    GridMap,
    JointAction,
    action_catalog,
    expand_trajectory,
)


@dataclass(frozen=True)
class FeasibilityReport:
    """Feasible subset of the catalog for one agent under a joint action."""

    agent: int
    feasible: tuple[Action, ...]

    @property
    def count(self) -> int:
        return len(self.feasible)

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(action.code for action in self.feasible)


class StateEvaluator:
    """Feasibility queries against one fixed (map, agents) state.

    Caches the 17-candidate sweep per (other agents' actions, agent), and the
    swept path of every (origin, action) pair. Queries are pure, so a shared
    instance returns the same answers as a fresh one; an optional external
    ``path_table`` lets batch runs share path expansion across instances on
    the same map.
    """

    def __init__(
        self,
        grid: GridMap,
        agents: AgentSet,
        path_table: dict[tuple[Cell, Action], tuple[tuple[Cell, ...], int]] | None = None,
    ):
        self.grid = grid
        self.agents = agents
        self._ids = agents.ids
        self._origins = agents.origins
        self._valid = grid.valid
        self._paths = path_table if path_table is not None else {}
        self._memo: dict[tuple, tuple[Action, ...]] = {}
        self._catalog = action_catalog()

    def _path(self, origin: Cell, action: Action) -> tuple[tuple[Cell, ...], int]:
        key = (origin, action)
        entry = self._paths.get(key)
        if entry is None:
            cells = expand_trajectory(origin, action).cells
            entry = (cells, _first_invalid(cells, self._valid))
            self._paths[key] = entry
        return entry

    def index_of(self, agent_id: int) -> int:
        return self.agents.index_of(agent_id)

    def feasible_set(self, joint_action: JointAction, agent_id: int) -> tuple[Action, ...]:
        """All catalog actions feasible for the agent, in catalog order.

        The agent's own entry in ``joint_action`` is irrelevant: every
        candidate is substituted in turn.
        """
        j = self.index_of(agent_id)
        others = tuple(
            joint_action[self._ids[i]] for i in range(len(self._ids)) if i != j
        )
        key = (others, j)
        cached = self._memo.get(key)
        if cached is not None:
            return cached

        paths = []
        first_bads = []
        n = 0
        for i in range(len(self._ids)):
            if i == j:
                paths.append(())
                first_bads.append(0)
            else:
                cells, bad = self._path(self._origins[i], others[n])
                paths.append(cells)
                first_bads.append(bad)
                n += 1

        feasible = []
        for candidate in self._catalog:
            cells, bad = self._path(self._origins[j], candidate)
            paths[j] = cells
            first_bads[j] = bad
            _, _, hit = _resolve(self._valid, paths, first_bads, watch=j)
            if not hit:
                feasible.append(candidate)
        result = tuple(feasible)
        self._memo[key] = result
        return result

    def count(self, joint_action: JointAction, agent_id: int) -> int:
        return len(self.feasible_set(joint_action, agent_id))

    def report(self, joint_action: JointAction, agent_id: int) -> FeasibilityReport:
        return FeasibilityReport(agent_id, self.feasible_set(joint_action, agent_id))


def is_feasible(
    grid: GridMap,
    agents: AgentSet,
    joint_action: JointAction,
    agent_id: int,
    candidate: Action,
) -> bool:
    """Would the candidate leave the agent collision-free, others as given?"""
    j = agents.index_of(agent_id)
    valid = grid.valid
    paths = []
    first_bads = []
    for i, agent in enumerate(agents):
        action = candidate if i == j else joint_action[agent.id]
        cells = expand_trajectory(agent.origin, action).cells
        paths.append(cells)
        first_bads.append(_first_invalid(cells, valid))
    _, _, hit = _resolve(valid, paths, first_bads, watch=j)
    return not hit


def feasible_actions(
    grid: GridMap, agents: AgentSet, joint_action: JointAction, agent_id: int
) -> FeasibilityReport:
    """Report over all 17 candidates for one agent (unmemoized path)."""
    feasible = tuple(
        candidate
        for candidate in action_catalog()
        if is_feasible(grid, agents, joint_action, agent_id, candidate)
    )
    return FeasibilityReport(agent_id, feasible)


def count_feasible(
    grid: GridMap,
    agents: AgentSet,
    joint_action: JointAction,
    agent_id: int,
    evaluator: StateEvaluator | None = None,
) -> int:
    """Number of feasible moves for the agent; the metric's n(s, A, j).

    Pass a StateEvaluator for the memoized hot path; without one the count is
    computed from scratch.
    """
    if evaluator is not None:
        return evaluator.count(joint_action, agent_id)
    return feasible_actions(grid, agents, joint_action, agent_id).count
