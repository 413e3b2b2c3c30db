"""The FeAR metric: feasible action-space reduction as causal responsibility.

For actor i and affected agent j (i != j) the metric compares how many
feasible moves j has under the chosen joint action against how many j would
have if i had played its Move de Rigueur (MdR) instead:

    fear(i, j) = clip((n_mdr - n_act) / (n_mdr + epsilon))

where n_mdr counts j's feasible moves with i's action replaced by its MdR and
n_act counts them under the actual joint action. Positive values mean i is
assertive towards j (leaves j fewer options than the default would), negative
values mean i is courteous. The diagonal is the feasible action space
*remaining*: the fraction of the moves agent i would have had under everyone
else's MdR that survives their actual actions,

    fear(i, i) = clip(n_act / (n_all_mdr + epsilon)).

MdRs must be consistent: simulating the joint MdR must produce no collision
events. Computations refuse inconsistent MdRs rather than warn, since every
entry is anchored to that baseline.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterator

from .engine import CollisionEvent, simulate
from .feasibility import StateEvaluator
from .grid import JointAction, Scenario, require_valid


def clip(x: float) -> float:
    """Clamp a finite value into [-1, 1]."""
    if x >= 1:
        return 1.0
    if x <= -1:
        return -1.0
    return float(x)


def round_display(value: float, decimals: int = 2) -> float:
    """Round half away from zero, for display copies only.

    Full-precision values feed every comparison and aggregate; this exists so
    that e.g. -1/6 renders as -0.17.
    """
    quantum = Decimal(1).scaleb(-decimals)
    return float(Decimal(value).quantize(quantum, rounding=ROUND_HALF_UP))


DEFAULT_EPSILON = 1e-6


@dataclass(frozen=True)
class MetricConfig:
    """Numeric knobs: the epsilon regulariser and display rounding width."""

    epsilon: float = DEFAULT_EPSILON
    report_decimals: int = 2

    def __post_init__(self) -> None:
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.report_decimals < 2:
            raise ValueError(f"report_decimals must be >= 2, got {self.report_decimals}")


DEFAULT_CONFIG = MetricConfig()


class InconsistentMdrError(ValueError):
    """The joint MdR collides with itself; the baseline is unusable."""

    def __init__(self, events: tuple[CollisionEvent, ...]):
        super().__init__(
            "joint MdR is inconsistent: simulating it produces "
            + ", ".join(
                f"{event.kind.value} involving {sorted(event.participants)} at sub-step {event.sub_step}"
                for event in events
            )
        )
        self.events = events


@dataclass(frozen=True)
class MdrValidation:
    consistent: bool
    events: tuple[CollisionEvent, ...]

    def __bool__(self) -> bool:
        return self.consistent


def validate_mdr(scenario: Scenario) -> MdrValidation:
    """A joint MdR is consistent iff simulating it yields zero collisions."""
    require_valid(scenario)
    result = simulate(scenario.grid, scenario.agents, scenario.joint_mdr)
    return MdrValidation(not result.events, result.events)


@dataclass(frozen=True)
class FearMatrix:
    """k x k responsibility matrix; row = actor, column = affected agent.

    Off-diagonal entries live in [-1, 1], diagonal entries in [0, 1].
    Indexing helpers take 1-based agent ids, matching the scenario.
    """

    agent_ids: tuple[int, ...]
    values: tuple[tuple[float, ...], ...]

    @property
    def size(self) -> int:
        return len(self.agent_ids)

    def value(self, actor_id: int, affected_id: int) -> float:
        return self.values[self.agent_ids.index(actor_id)][self.agent_ids.index(affected_id)]

    def offdiagonal(self) -> Iterator[tuple[int, int, float]]:
        """Yield (actor id, affected id, value) for every i != j entry."""
        for r, actor in enumerate(self.agent_ids):
            for c, affected in enumerate(self.agent_ids):
                if r != c:
                    yield actor, affected, self.values[r][c]

    def diagonal(self) -> tuple[float, ...]:
        return tuple(self.values[i][i] for i in range(self.size))

    def as_lists(self) -> list[list[float]]:
        return [list(row) for row in self.values]

    def display(self, decimals: int = 2) -> list[list[float]]:
        return [[round_display(v, decimals) for v in row] for row in self.values]


def _resolve_evaluator(scenario: Scenario, evaluator: StateEvaluator | None) -> StateEvaluator:
    return evaluator if evaluator is not None else StateEvaluator(scenario.grid, scenario.agents)


def _require_consistent_mdr(scenario: Scenario) -> None:
    check = validate_mdr(scenario)
    if not check.consistent:
        raise InconsistentMdrError(check.events)


def _with_entry(joint: JointAction, agent_id: int, action) -> dict:
    replaced = dict(joint)
    replaced[agent_id] = action
    return replaced


def fear_pair(
    scenario: Scenario,
    actor_id: int,
    affected_id: int,
    config: MetricConfig = DEFAULT_CONFIG,
    evaluator: StateEvaluator | None = None,
) -> float:
    """One matrix entry on its own; validates the MdR on every call."""
    _require_consistent_mdr(scenario)
    ev = _resolve_evaluator(scenario, evaluator)
    ev.index_of(actor_id)
    ev.index_of(affected_id)
    return _fear_entry(scenario, actor_id, affected_id, config, ev)


def _fear_entry(
    scenario: Scenario,
    actor_id: int,
    affected_id: int,
    config: MetricConfig,
    ev: StateEvaluator,
) -> float:
    joint = scenario.joint_action
    mdr = scenario.joint_mdr
    if actor_id != affected_id:
        n_mdr = ev.count(_with_entry(joint, actor_id, mdr[actor_id]), affected_id)
        n_act = ev.count(joint, affected_id)
        return clip((n_mdr - n_act) / (n_mdr + config.epsilon))
    n_act = ev.count(joint, actor_id)
    n_all_mdr = ev.count(mdr, actor_id)  # actor's own entry is never read
    return clip(n_act / (n_all_mdr + config.epsilon))


def fear_matrix(
    scenario: Scenario,
    config: MetricConfig = DEFAULT_CONFIG,
    evaluator: StateEvaluator | None = None,
) -> FearMatrix:
    """All k^2 entries of the responsibility matrix.

    Shares one feasibility memo across entries, so the work stays bounded by
    the k^2 + k distinct (joint action restriction, agent) bases.
    """
    _require_consistent_mdr(scenario)
    ev = _resolve_evaluator(scenario, evaluator)
    ids = scenario.agent_ids
    rows = []
    for actor in ids:
        rows.append(
            tuple(_fear_entry(scenario, actor, affected, config, ev) for affected in ids)
        )
    return FearMatrix(ids, tuple(rows))


@dataclass(frozen=True)
class AggregateStats:
    """Summary of the off-diagonal entries of one matrix.

    ``offdiag_sum_squares`` is the interconnectedness aggregate used to rank
    instances; min/max entries carry their (actor, affected) ids and are None
    for single-agent matrices.
    """

    offdiag_sum_squares: float
    positive_count: int
    negative_count: int
    zero_count: int
    min_entry: tuple[int, int, float] | None
    max_entry: tuple[int, int, float] | None


def aggregate(matrix: FearMatrix) -> AggregateStats:
    """Statistics over off-diagonal entries only."""
    entries = list(matrix.offdiagonal())
    total = 0.0
    positive = negative = zero = 0
    for _, _, v in entries:
        total += v * v
        if v > 0:
            positive += 1
        elif v < 0:
            negative += 1
        else:
            zero += 1
    min_entry = min(entries, key=lambda e: e[2]) if entries else None
    max_entry = max(entries, key=lambda e: e[2]) if entries else None
    return AggregateStats(
        offdiag_sum_squares=total,
        positive_count=positive,
        negative_count=negative,
        zero_count=zero,
        min_entry=min_entry,
        max_entry=max_entry,
    )
