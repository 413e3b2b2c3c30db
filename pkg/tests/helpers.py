"""Shared builders for the test suite."""

from __future__ import annotations

import random

from fear.grid import Action, AgentSet, GridMap, Scenario, action_catalog

A = Action.parse
STAY = A("S0")
LANE10 = GridMap.lane(10)
CASE1_AGENTS = AgentSet.from_origins([(2, 0), (4, 0)])


def two_agent_scenario(a1: str, a2: str, m1: str = "S0", m2: str = "S0") -> Scenario:
    """Case-study state: 10-cell lane, agents at x=2 and x=4."""
    return Scenario(
        LANE10,
        CASE1_AGENTS,
        {1: A(a1), 2: A(a2)},
        {1: A(m1), 2: A(m2)},
    )


def random_state(rng: random.Random, max_agents: int = 4, max_lane: int = 10):
    """Random (grid, agents, joint_action) over small lanes and boxes."""
    width = rng.randint(2, max_lane)
    height = rng.choice([1, 1, 1, 2, 3])
    grid = GridMap.full(width, height)
    cells = sorted(grid.valid)
    k = rng.randint(1, min(max_agents, len(cells)))
    agents = AgentSet.from_origins(rng.sample(cells, k))
    joint = {i + 1: rng.choice(action_catalog()) for i in range(k)}
    return grid, agents, joint


def random_consistent_scenario(rng: random.Random, max_agents: int = 4) -> Scenario:
    """Random scenario whose MdR is guaranteed consistent (all-stay)."""
    grid, agents, joint = random_state(rng, max_agents=max_agents)
    mdr = {agent.id: STAY for agent in agents}
    return Scenario(grid, agents, joint, mdr)
