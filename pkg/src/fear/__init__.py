"""Feasible Action-space Reduction (FeAR): causal responsibility for
simultaneous moves of agents in a grid world.

The metric compares, for every ordered pair of agents, how many collision-free
moves the affected agent has under the chosen joint action against how many it
would have if the actor had played its prescribed default move (Move de
Rigueur). See :mod:`fear.metric` for the definition and :mod:`fear.cli` for
the command-line surface.
"""

from .engine import (
    CollisionEvent,
    ConflictKind,
    ResolutionResult,
    SubStepTimeline,
    build_timeline,
    detect_conflicts,
    simulate,
)
from .feasibility import (
    FeasibilityReport,
    StateEvaluator,
    count_feasible,
    feasible_actions,
    is_feasible,
)
from .grid import (
    Action,
    Agent,
    AgentSet,
    Direction,
    GridMap,
    Scenario,
    ScenarioValidationError,
    Trajectory,
    UnknownAgentError,
    ValidationReport,
    action_catalog,
    expand_trajectory,
    validate_scenario,
)
from .io import (
    MalformedDocumentError,
    ResultDocument,
    ScenarioIOError,
    SchemaError,
    builtin_fixtures,
    evaluate_scenario,
    export_results,
    load_scenario,
    save_scenario,
)
from .metric import (
    AggregateStats,
    FearMatrix,
    InconsistentMdrError,
    MetricConfig,
    aggregate,
    clip,
    fear_matrix,
    fear_pair,
    round_display,
    validate_mdr,
)
from .sampler import (
    BatchRecord,
    Extremes,
    SamplerParams,
    extremal,
    generate_instance,
    run_batch,
    summarize,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "Agent",
    "AgentSet",
    "AggregateStats",
    "BatchRecord",
    "CollisionEvent",
    "ConflictKind",
    "Direction",
    "Extremes",
    "FearMatrix",
    "FeasibilityReport",
    "GridMap",
    "InconsistentMdrError",
    "MalformedDocumentError",
    "MetricConfig",
    "ResolutionResult",
    "ResultDocument",
    "SamplerParams",
    "Scenario",
    "ScenarioIOError",
    "ScenarioValidationError",
    "SchemaError",
    "StateEvaluator",
    "SubStepTimeline",
    "Trajectory",
    "UnknownAgentError",
    "ValidationReport",
    "action_catalog",
    "aggregate",
    "build_timeline",
    "builtin_fixtures",
    "clip",
    "count_feasible",
    "detect_conflicts",
    "evaluate_scenario",
    "expand_trajectory",
    "export_results",
    "extremal",
    "fear_matrix",
    "fear_pair",
    "feasible_actions",
    "generate_instance",
    "is_feasible",
    "load_scenario",
    "round_display",
    "run_batch",
    "save_scenario",
    "simulate",
    "summarize",
    "validate_mdr",
    "validate_scenario",
]
