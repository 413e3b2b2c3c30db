"""Seeded Monte-Carlo batch analysis of random lane instances.

Instances are derived from a counter-based stream: instance ``index`` under
``seed`` is generated from an RNG keyed on (seed, index) alone, so results
are identical no matter how the batch is split across workers. Agents get
distinct lane cells (ordered left to right) and actions drawn uniformly from
the action pool; the default parameters are the four-agents-on-a-lane-of-10
batch study (10,000 instances, pool S0/R1-R4, all-stay MdR).
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .engine import simulate
from .feasibility import StateEvaluator
from .grid import Action, AgentSet, GridMap, Scenario
from .metric import (
    DEFAULT_CONFIG,
    AggregateStats,
    FearMatrix,
    MetricConfig,
    aggregate,
    fear_matrix,
)

DEFAULT_ACTION_POOL = tuple(Action.parse(code) for code in ("S0", "R1", "R2", "R3", "R4"))
_STAY = Action.parse("S0")


@dataclass(frozen=True)
class SamplerParams:
    """Batch configuration; defaults reproduce the four-agent lane study."""

    lane_length: int = 10
    agent_count: int = 4
    action_pool: tuple[Action, ...] = DEFAULT_ACTION_POOL
    instance_count: int = 10_000
    seed: int = 0
    mdr: tuple[Action, ...] | None = None

    def __post_init__(self) -> None:
        if self.lane_length < 1:
            raise ValueError(f"lane_length must be >= 1, got {self.lane_length}")
        if not 1 <= self.agent_count <= self.lane_length:
            raise ValueError(
                f"agent_count must be in 1..lane_length, got {self.agent_count} on {self.lane_length}"
            )
        if not self.action_pool:
            raise ValueError("action_pool must not be empty")
        if self.instance_count < 1:
            raise ValueError(f"instance_count must be >= 1, got {self.instance_count}")
        if self.mdr is not None and len(self.mdr) != self.agent_count:
            raise ValueError(
                f"mdr must assign one action per agent, got {len(self.mdr)} for {self.agent_count}"
            )

    def joint_mdr(self) -> dict[int, Action]:
        actions = self.mdr if self.mdr is not None else (_STAY,) * self.agent_count
        return {i + 1: a for i, a in enumerate(actions)}


@dataclass(frozen=True)
class BatchRecord:
    """One evaluated instance; reproducible from (seed, index) alone."""

    index: int
    scenario: Scenario
    fear: FearMatrix
    stats: AggregateStats


def _draw(seed: int, index: int, params: SamplerParams) -> tuple[list[int], list[Action]]:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
    cells = sorted(
        int(x) for x in rng.choice(params.lane_length, size=params.agent_count, replace=False)
    )
    picks = rng.integers(0, len(params.action_pool), size=params.agent_count)
    return cells, [params.action_pool[int(p)] for p in picks]


def generate_instance(seed: int, index: int, params: SamplerParams) -> Scenario:
    """The scenario for one instance index under one seed.

    Positions are drawn without replacement and agents are numbered left to
    right; actions are drawn with replacement from the pool.
    """
    cells, actions = _draw(seed, index, params)
    grid = GridMap.lane(params.lane_length)
    agents = AgentSet.from_origins((x, 0) for x in cells)
    joint_action = {i + 1: a for i, a in enumerate(actions)}
    return Scenario(grid, agents, joint_action, params.joint_mdr())


def _evaluate_range(
    args: tuple[SamplerParams, int, int, MetricConfig]
) -> list[BatchRecord]:
    params, start, stop, config = args
    grid = GridMap.lane(params.lane_length)
    mdr = params.joint_mdr()
    path_table: dict = {}
    records = []
    for index in range(start, stop):
        cells, actions = _draw(params.seed, index, params)
        agents = AgentSet.from_origins((x, 0) for x in cells)
        scenario = Scenario(grid, agents, {i + 1: a for i, a in enumerate(actions)}, mdr)
        evaluator = StateEvaluator(grid, agents, path_table)
        matrix = fear_matrix(scenario, config, evaluator=evaluator)
        records.append(BatchRecord(index, scenario, matrix, aggregate(matrix)))
    return records


def run_batch(
    params: SamplerParams,
    config: MetricConfig = DEFAULT_CONFIG,
    workers: int | None = None,
) -> list[BatchRecord]:
    """Evaluate every instance; records come back in index order.

    ``workers`` > 1 maps index chunks over a process pool; the output is
    identical for any worker count because each record depends only on
    (seed, index).
    """
    n = params.instance_count
    if not workers or workers <= 1 or n < 32:
        return _evaluate_range((params, 0, n, config))
    chunk = max(64, -(-n // (workers * 8)))
    tasks = [(params, lo, min(lo + chunk, n), config) for lo in range(0, n, chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_evaluate_range, tasks))
    records: list[BatchRecord] = []
    for part in parts:
        records.extend(part)
    return records


@dataclass(frozen=True)
class Extremes:
    """Instances with the smallest and largest off-diagonal sum of squares."""

    minimum: BatchRecord
    maximum: BatchRecord


def extremal(records: Sequence[BatchRecord]) -> Extremes:
    """Argmin/argmax by aggregate; ties go to the lowest instance index."""
    if not records:
        raise ValueError("extremal needs at least one record")
    minimum = min(records, key=lambda r: (r.stats.offdiag_sum_squares, r.index))
    maximum = max(records, key=lambda r: (r.stats.offdiag_sum_squares, -r.index))
    return Extremes(minimum, maximum)


@dataclass(frozen=True)
class BatchSummary:
    """Distribution view of a batch run."""

    instance_count: int
    histogram_counts: tuple[int, ...]
    histogram_edges: tuple[float, ...]
    zero_aggregate_count: int
    all_negative_count: int
    all_positive_count: int
    collision_count: int
    min_aggregate: float
    max_aggregate: float

    @property
    def collision_fraction(self) -> float:
        return self.collision_count / self.instance_count

    def to_dict(self) -> dict:
        return {
            "instance_count": self.instance_count,
            "histogram": {
                "counts": list(self.histogram_counts),
                "edges": list(self.histogram_edges),
            },
            "zero_aggregate_count": self.zero_aggregate_count,
            "all_negative_count": self.all_negative_count,
            "all_positive_count": self.all_positive_count,
            "collision_count": self.collision_count,
            "collision_fraction": self.collision_fraction,
            "min_aggregate": self.min_aggregate,
            "max_aggregate": self.max_aggregate,
        }

    def to_json(self) -> bytes:
        return (json.dumps(self.to_dict(), indent=2) + "\n").encode("utf-8")


def summarize(records: Sequence[BatchRecord], bins: int = 20) -> BatchSummary:
    """Histogram of aggregates plus sign and collision statistics.

    All-negative / all-positive counts consider off-diagonal entries only;
    the collision count re-simulates each instance's chosen joint action.
    """
    if not records:
        raise ValueError("summarize needs at least one record")
    aggregates = np.array([r.stats.offdiag_sum_squares for r in records])
    top = float(aggregates.max())
    counts, edges = np.histogram(aggregates, bins=bins, range=(0.0, top if top > 0 else 1.0))

    zero = all_neg = all_pos = collisions = 0
    for record in records:
        offdiag = [v for _, _, v in record.fear.offdiagonal()]
        if record.stats.offdiag_sum_squares == 0.0:
            zero += 1
        if offdiag and all(v < 0 for v in offdiag):
            all_neg += 1
        if offdiag and all(v > 0 for v in offdiag):
            all_pos += 1
        resolution = simulate(record.scenario.grid, record.scenario.agents, record.scenario.joint_action)
        if resolution.events:
            collisions += 1
    return BatchSummary(
        instance_count=len(records),
        histogram_counts=tuple(int(c) for c in counts),
        histogram_edges=tuple(float(e) for e in edges),
        zero_aggregate_count=zero,
        all_negative_count=all_neg,
        all_positive_count=all_pos,
        collision_count=collisions,
        min_aggregate=float(aggregates.min()),
        max_aggregate=top,
    )
