"""Grid-world domain types: maps, actions, agents, scenarios, trajectories.

Coordinates are 0-indexed with x growing rightward and y growing downward,
so "up" decreases y. All types are immutable after construction and safe to
share across threads; every operation in this module is a pure function.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

Cell = tuple[int, int]

MAX_MAGNITUDE = 4


class Direction(enum.Enum):
    """One of the five movement directions an action can take."""

    STAY = "S"
    RIGHT = "R"
    LEFT = "L"
    UP = "U"
    DOWN = "D"

    @property
    def step(self) -> Cell:
        return _STEPS[self]


# Screen orientation: y grows downward, so UP subtracts from y.
_STEPS: dict[Direction, Cell] = {
    Direction.STAY: (0, 0),
    Direction.RIGHT: (1, 0),
    Direction.LEFT: (-1, 0),
    Direction.UP: (0, -1),
    Direction.DOWN: (0, 1),
}


@dataclass(frozen=True, slots=True)
class Action:
    """A single-instant move: a direction and the number of cells swept.

    Stay has magnitude 0 by definition; every other direction carries a
    magnitude between 1 and 4. The canonical text encoding is the direction
    letter followed by the magnitude ("S0", "R3", "U1", ...).
    """

    direction: Direction
    magnitude: int

    def __post_init__(self) -> None:
        if self.direction is Direction.STAY:
            if self.magnitude != 0:
                raise ValueError(f"stay action must have magnitude 0, got {self.magnitude}")
        elif not 1 <= self.magnitude <= MAX_MAGNITUDE:
            raise ValueError(
                f"{self.direction.name.lower()} action magnitude must be in 1..{MAX_MAGNITUDE}, "
                f"got {self.magnitude}"
            )

    @property
    def code(self) -> str:
        return f"{self.direction.value}{self.magnitude}"

    @classmethod
    def parse(cls, code: str) -> "Action":
        """Parse a canonical action code such as "S0" or "L4".

        Raises ValueError for anything outside the 17-action catalog.
        """
        if not isinstance(code, str) or len(code) != 2:
            raise ValueError(f"unknown action code {code!r}")
        try:
            direction = Direction(code[0])
            magnitude = int(code[1])
        except (ValueError, KeyError):
            raise ValueError(f"unknown action code {code!r}") from None
        return cls(direction, magnitude)

    def __str__(self) -> str:
        return self.code


def _build_catalog() -> tuple[Action, ...]:
    actions = [Action(Direction.STAY, 0)]
    for direction in (Direction.RIGHT, Direction.LEFT, Direction.UP, Direction.DOWN):
        actions.extend(Action(direction, m) for m in range(1, MAX_MAGNITUDE + 1))
    return tuple(actions)


_CATALOG = _build_catalog()
_CATALOG_INDEX = {action: i for i, action in enumerate(_CATALOG)}


def action_catalog() -> tuple[Action, ...]:
    """The 17 actions every agent chooses from, in canonical order.

    Order is S0, R1-R4, L1-L4, U1-U4, D1-D4 and is stable across runs.
    """
    return _CATALOG


def catalog_index(action: Action) -> int:
    """Position of an action within the canonical catalog."""
    return _CATALOG_INDEX[action]


@dataclass(frozen=True, slots=True)
class Trajectory:
    """The ordered cells an agent occupies during one step, origin first."""

    cells: tuple[Cell, ...]

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def origin(self) -> Cell:
        return self.cells[0]

    @property
    def final(self) -> Cell:
        return self.cells[-1]


def expand_trajectory(origin: Cell, action: Action) -> Trajectory:
    """Intended swept path of an action, ignoring the map and other agents.

    The result has magnitude+1 cells; validity of the swept cells is the
    collision engine's concern, not this function's.
    """
    dx, dy = action.direction.step
    x, y = origin
    return Trajectory(tuple((x + dx * t, y + dy * t) for t in range(action.magnitude + 1)))


@dataclass(frozen=True)
class GridMap:
    """Rectangular lattice with a mask of cells agents may occupy.

    Borders are simply absent cells: anything outside ``valid`` counts as
    off-map, and moving there is a boundary collision.
    """

    width: int
    height: int
    valid: frozenset[Cell]

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"grid must be at least 1x1, got {self.width}x{self.height}")
        if not self.valid:
            raise ValueError("grid must have at least one valid cell")
        for x, y in self.valid:
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(f"valid cell ({x}, {y}) lies outside the {self.width}x{self.height} grid")
        if not isinstance(self.valid, frozenset):
            object.__setattr__(self, "valid", frozenset(self.valid))

    @classmethod
    def full(cls, width: int, height: int) -> "GridMap":
        return cls(width, height, frozenset((x, y) for x in range(width) for y in range(height)))

    @classmethod
    def lane(cls, length: int) -> "GridMap":
        """A horizontal single-row lane of the given length."""
        return cls.full(length, 1)

    @classmethod
    def from_invalid(cls, width: int, height: int, invalid: Iterable[Cell]) -> "GridMap":
        blocked = {(int(x), int(y)) for x, y in invalid}
        cells = frozenset(
            (x, y) for x in range(width) for y in range(height) if (x, y) not in blocked
        )
        return cls(width, height, cells)

    def is_valid(self, cell: Cell) -> bool:
        return cell in self.valid

    @property
    def invalid_cells(self) -> tuple[Cell, ...]:
        """Complement of the valid mask, sorted; the on-disk representation."""
        return tuple(
            sorted(
                (x, y)
                for x in range(self.width)
                for y in range(self.height)
                if (x, y) not in self.valid
            )
        )


@dataclass(frozen=True, slots=True)
class Agent:
    id: int
    origin: Cell


@dataclass(frozen=True)
class AgentSet:
    """Ordered agents with 1-based ids.

    Construction is deliberately lenient about cross-agent invariants
    (duplicate origins, off-map origins, gappy ids): those are reported by
    :func:`validate_scenario` so malformed inputs surface as a readable
    report instead of a constructor crash.
    """

    agents: tuple[Agent, ...]

    def __post_init__(self) -> None:
        if not self.agents:
            raise ValueError("agent set must contain at least one agent")
        if not isinstance(self.agents, tuple):
            object.__setattr__(self, "agents", tuple(self.agents))

    @classmethod
    def from_origins(cls, origins: Iterable[Cell]) -> "AgentSet":
        return cls(tuple(Agent(i + 1, (int(x), int(y))) for i, (x, y) in enumerate(origins)))

    def __len__(self) -> int:
        return len(self.agents)

    def __iter__(self):
        return iter(self.agents)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(agent.id for agent in self.agents)

    @property
    def origins(self) -> tuple[Cell, ...]:
        return tuple(agent.origin for agent in self.agents)

    def index_of(self, agent_id: int) -> int:
        for i, agent in enumerate(self.agents):
            if agent.id == agent_id:
                return i
        raise UnknownAgentError(agent_id)


class UnknownAgentError(KeyError):
    """Raised when an operation references an agent id not in the scenario."""

    def __init__(self, agent_id: int):
        super().__init__(agent_id)
        self.agent_id = agent_id

    def __str__(self) -> str:
        return f"unknown agent id {self.agent_id}"


JointAction = Mapping[int, Action]


@dataclass(frozen=True)
class Scenario:
    """One instant of interaction: map, agents, chosen moves, and default moves.

    ``joint_action`` holds each agent's chosen action; ``joint_mdr`` holds the
    prescribed defaults against which responsibility is measured.
    """

    grid: GridMap
    agents: AgentSet
    joint_action: JointAction
    joint_mdr: JointAction

    def __post_init__(self) -> None:
        object.__setattr__(self, "joint_action", MappingProxyType(dict(self.joint_action)))
        object.__setattr__(self, "joint_mdr", MappingProxyType(dict(self.joint_mdr)))

    def __reduce__(self):
        # mapping proxies do not pickle; rebuild through the constructor
        return (Scenario, (self.grid, self.agents, dict(self.joint_action), dict(self.joint_mdr)))

    @property
    def agent_ids(self) -> tuple[int, ...]:
        return self.agents.ids

    def action_of(self, agent_id: int) -> Action:
        try:
            return self.joint_action[agent_id]
        except KeyError:
            raise UnknownAgentError(agent_id) from None

    def mdr_of(self, agent_id: int) -> Action:
        try:
            return self.joint_mdr[agent_id]
        except KeyError:
            raise UnknownAgentError(agent_id) from None

    def with_actions(self, joint_action: JointAction) -> "Scenario":
        """Same state and MdR, different chosen moves."""
        return Scenario(self.grid, self.agents, joint_action, self.joint_mdr)


@dataclass(frozen=True, slots=True)
class Violation:
    """One broken scenario invariant; ``agent_id`` is set when attributable."""

    code: str
    message: str
    agent_id: int | None = None

    def __str__(self) -> str:
        return self.message


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __iter__(self):
        return iter(self.violations)

    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.violations)


class ScenarioValidationError(ValueError):
    """Raised by operations whose precondition is a well-formed scenario."""

    def __init__(self, report: ValidationReport):
        super().__init__("; ".join(str(v) for v in report.violations))
        self.report = report


def validate_scenario(scenario: Scenario) -> ValidationReport:
    """Check every cross-cutting scenario invariant and report all failures.

    An empty report means the scenario is well-formed. Violations carry a
    stable ``code`` (invalid-origin, duplicate-origin, bad-agent-ids,
    missing-action, missing-mdr, unknown-agent-assignment) for programmatic
    handling.
    """
    violations: list[Violation] = []
    agents = scenario.agents.agents

    ids = [agent.id for agent in agents]
    if ids != list(range(1, len(agents) + 1)):
        violations.append(
            Violation("bad-agent-ids", f"agent ids must be 1..{len(agents)}, got {ids}")
        )

    seen: dict[Cell, int] = {}
    for agent in agents:
        if not scenario.grid.is_valid(agent.origin):
            violations.append(
                Violation(
                    "invalid-origin",
                    f"agent {agent.id} origin {agent.origin} is not a valid cell",
                    agent.id,
                )
            )
        if agent.origin in seen:
            violations.append(
                Violation(
                    "duplicate-origin",
                    f"agents {seen[agent.origin]} and {agent.id} share origin {agent.origin}",
                    agent.id,
                )
            )
        else:
            seen[agent.origin] = agent.id

    for label, assignment, code in (
        ("action", scenario.joint_action, "missing-action"),
        ("MdR", scenario.joint_mdr, "missing-mdr"),
    ):
        for agent in agents:
            if agent.id not in assignment:
                violations.append(
                    Violation(code, f"agent {agent.id} has no {label} assigned", agent.id)
                )
        for agent_id in assignment:
            if agent_id not in ids:
                violations.append(
                    Violation(
                        "unknown-agent-assignment",
                        f"{label} assigned to unknown agent id {agent_id}",
                    )
                )

    return ValidationReport(tuple(violations))


def require_valid(scenario: Scenario) -> None:
    """Raise ScenarioValidationError unless the scenario passes validation."""
    report = validate_scenario(scenario)
    if not report.ok:
        raise ScenarioValidationError(report)
