"""Command-line interface: evaluate scenarios, reproduce the case studies,
run seeded batches, and serve the explorer API.

Exit codes: 0 success, 1 validation or domain errors (including golden
mismatches in ``reproduce``), 2 usage errors.
"""

from __future__ import annotations

import json
import math
import pathlib

import click

from .engine import simulate
from .grid import Action, ScenarioValidationError, UnknownAgentError
from .io import (
    ScenarioIOError,
    builtin_fixtures,
    evaluate_scenario,
    export_results,
    load_scenario,
)
from .metric import InconsistentMdrError, MetricConfig, fear_matrix
from .sampler import SamplerParams, extremal, run_batch, summarize

DOMAIN_ERRORS = (ScenarioIOError, ScenarioValidationError, InconsistentMdrError, UnknownAgentError)

CASE4_RECORDED_SEED = 0


def _load_file(path: str):
    file_path = pathlib.Path(path)
    try:
        data = file_path.read_bytes()
    except OSError as exc:
        raise click.ClickException(f"cannot read scenario file {path}: {exc.strerror}")
    try:
        return load_scenario(data)
    except DOMAIN_ERRORS as exc:
        raise click.ClickException(f"{path}: {exc}")


def _config(epsilon: float) -> MetricConfig:
    try:
        return MetricConfig(epsilon=epsilon)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _format_matrix_table(matrix, decimals: int = 2) -> str:
    """Matrix with the diagonal (action-space remaining) set off in brackets."""
    ids = matrix.agent_ids
    display = matrix.display(decimals)
    width = max(8, decimals + 6)
    lines = ["FeAR matrix (row = actor, column = affected):"]
    header = "      " + "".join(f"{i:>{width}}" for i in ids)
    lines.append(header)
    for r, actor in enumerate(ids):
        cells = []
        for c in range(len(ids)):
            text = f"{display[r][c]:+.{decimals}f}"
            cells.append(f"[{text}]".rjust(width) if r == c else text.rjust(width))
        lines.append(f"{actor:>5} " + "".join(cells))
    return "\n".join(lines)


_DISPLAY_ORDER = {
    code: rank
    for rank, code in enumerate(
        [f"L{m}" for m in (4, 3, 2, 1)]
        + ["S0"]
        + [f"R{m}" for m in (1, 2, 3, 4)]
        + [f"U{m}" for m in (1, 2, 3, 4)]
        + [f"D{m}" for m in (1, 2, 3, 4)]
    )
}


def _feasible_line(report) -> str:
    # spatial order, matching the move-strip rendering: L4..L1, S0, R1..R4
    codes = sorted(report.codes, key=_DISPLAY_ORDER.__getitem__)
    return " ".join(codes) + f" ({report.count})"


@click.group()
def main() -> None:
    """Feasible Action-space Reduction (FeAR) toolkit."""


@main.command()
@click.argument("scenario_path", type=click.Path(dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table")
@click.option(
    "--epsilon",
    type=float,
    default=1e-6,
    envvar="FEAR_EPSILON",
    show_default=True,
    help="denominator regulariser (env: FEAR_EPSILON)",
)
def evaluate(scenario_path: str, fmt: str, epsilon: float) -> None:
    """Evaluate a scenario file: FeAR matrix, feasibility, collisions."""
    scenario = _load_file(scenario_path)
    try:
        result = evaluate_scenario(scenario, _config(epsilon))
    except DOMAIN_ERRORS as exc:
        raise click.ClickException(str(exc))
    if fmt == "json":
        click.echo(export_results(result, "json").decode().rstrip("\n"))
        return
    if fmt == "csv":
        click.echo(export_results(result, "csv").decode().rstrip("\n"))
        return
    click.echo(_format_matrix_table(result.fear, result.display_decimals))
    click.echo("\nFeasible actions under the chosen joint action:")
    for agent_id, report in result.feasibility_actual.items():
        click.echo(f"  agent {agent_id}: {_feasible_line(report)}")
    if result.collisions:
        click.echo("\nCollisions:")
        for event in result.collisions:
            participants = ", ".join(str(a) for a in sorted(event.participants))
            click.echo(f"  {event.kind.value} involving {participants} at sub-step {event.sub_step}")
    else:
        click.echo("\nNo collisions.")


@main.command()
@click.argument("scenario_path", type=click.Path(dir_okay=False))
@click.option("--agent", "agent_id", type=int, required=True, help="1-based agent id")
def feasible(scenario_path: str, agent_id: int) -> None:
    """List an agent's feasible actions under the file's joint action."""
    scenario = _load_file(scenario_path)
    from .feasibility import feasible_actions

    try:
        report = feasible_actions(scenario.grid, scenario.agents, scenario.joint_action, agent_id)
    except DOMAIN_ERRORS as exc:
        raise click.ClickException(str(exc))
    click.echo(_feasible_line(report))


def _check(label: str, ok: bool, failures: list[str]) -> None:
    click.echo(f"  [{'ok' if ok else 'FAIL'}] {label}")
    if not ok:
        failures.append(label)


def _reproduce_case1(failures: list[str]) -> None:
    # golden matrices per the metric definition; tolerance 5e-3
    golden = {
        "case1a": [[1.0, -1 / 6], [-1 / 4, 1.0]],
        "case1b": [[1.0, 1 / 6], [-1 / 4, 5 / 6]],
        "case1c": [[3 / 4, 1 / 6], [1 / 4, 5 / 6]],
    }
    fixtures = builtin_fixtures()
    for name, expected in golden.items():
        matrix = fear_matrix(fixtures[name])
        click.echo(f"\n{name}:")
        click.echo(_format_matrix_table(matrix))
        ok = all(
            math.isclose(matrix.values[r][c], expected[r][c], abs_tol=5e-3)
            for r in range(2)
            for c in range(2)
        )
        _check(f"{name} matrix within 5e-3 of golden", ok, failures)


def _reproduce_case2(failures: list[str]) -> None:
    fixtures = builtin_fixtures()
    by_mdr = {
        "S0-S0": {t: fixtures[f"case1{t}"] for t in "abc"},
        "R1-R1": {t: fixtures[f"case2{t}-r1"] for t in "abc"},
        "R2-R2": {t: fixtures[f"case2{t}-r2"] for t in "abc"},
    }
    click.echo("FeAR(1,2) / FeAR(2,1) across MdRs:")
    values: dict[tuple[str, str], tuple[float, float]] = {}
    for mdr_name, instances in by_mdr.items():
        for tag, scenario in instances.items():
            matrix = fear_matrix(scenario)
            values[(mdr_name, tag)] = (matrix.value(1, 2), matrix.value(2, 1))
        row = "   ".join(
            f"{tag}: {values[(mdr_name, tag)][0]:+.2f}/{values[(mdr_name, tag)][1]:+.2f}"
            for tag in "abc"
        )
        click.echo(f"  mu={mdr_name}:  {row}")

    click.echo("")
    _check(
        "courteous L1 of agent 1: -2/5 under R1-R1, -3/4 under R2-R2",
        math.isclose(values[("R1-R1", "a")][0], -2 / 5, abs_tol=5e-3)
        and math.isclose(values[("R2-R2", "a")][0], -3 / 4, abs_tol=5e-3),
        failures,
    )
    _check(
        "assertive L1 of agent 2: +2/5 under R1-R1, +1/2 under R2-R2",
        math.isclose(values[("R1-R1", "c")][1], 2 / 5, abs_tol=5e-3)
        and math.isclose(values[("R2-R2", "c")][1], 1 / 2, abs_tol=5e-3),
        failures,
    )
    _check(
        "agent 2's L1 grows increasingly assertive from S0-S0 to R2-R2",
        values[("S0-S0", "c")][1] < values[("R1-R1", "c")][1] < values[("R2-R2", "c")][1],
        failures,
    )
    _check(
        "agent 1's R1 flips assertive -> courteous across MdRs",
        values[("S0-S0", "b")][0] > 0 and values[("R2-R2", "b")][0] < 0,
        failures,
    )
    _check(
        "agent 2's R1 flips courteous -> assertive across MdRs",
        values[("S0-S0", "b")][1] < 0 and values[("R2-R2", "b")][1] > 0,
        failures,
    )


def _describe_instance(record) -> str:
    scenario = record.scenario
    cells = ", ".join(str(agent.origin[0]) for agent in scenario.agents)
    actions = ", ".join(scenario.joint_action[i].code for i in scenario.agent_ids)
    return f"instance {record.index}: x = [{cells}], actions = [{actions}]"


def _reproduce_case4(seed: int, failures: list[str]) -> None:
    params = SamplerParams(seed=seed)
    records = run_batch(params, workers=2)
    extremes = extremal(records)
    summary = summarize(records)

    click.echo(f"batch: {params.instance_count} instances, seed {seed}")
    click.echo(f"collision fraction: {summary.collision_fraction:.3f}")
    minimum, maximum = extremes.minimum, extremes.maximum
    click.echo(f"\nargmin aggregate {minimum.stats.offdiag_sum_squares:.6f}")
    click.echo(f"  {_describe_instance(minimum)}")
    click.echo(_format_matrix_table(minimum.fear))
    click.echo(f"\nargmax aggregate {maximum.stats.offdiag_sum_squares:.6f}")
    click.echo(f"  {_describe_instance(maximum)}")
    click.echo(_format_matrix_table(maximum.fear))
    click.echo("")

    _check("argmin aggregate equals 0", minimum.stats.offdiag_sum_squares == 0.0, failures)

    from .feasibility import StateEvaluator

    scenario = minimum.scenario
    evaluator = StateEvaluator(scenario.grid, scenario.agents)
    unchanged = all(
        evaluator.count(
            {**dict(scenario.joint_action), actor: scenario.joint_mdr[actor]}, affected
        )
        == evaluator.count(scenario.joint_action, affected)
        for actor in scenario.agent_ids
        for affected in scenario.agent_ids
        if actor != affected
    )
    _check("argmin leaves every feasibility count at its MdR baseline", unchanged, failures)

    resolution = simulate(maximum.scenario.grid, maximum.scenario.agents, maximum.scenario.joint_action)
    _check("argmax instance is collision-free", not resolution.events, failures)

    k = maximum.fear.size
    vals = maximum.fear.values
    above = [vals[i][j] for i in range(k) for j in range(k) if j > i]
    below = [vals[i][j] for i in range(k) for j in range(k) if j < i]
    _check(
        "argmax signs segregate: assertive above the diagonal, courteous below",
        all(v >= 0 for v in above)
        and all(v <= 0 for v in below)
        and any(v > 0 for v in above)
        and any(v < 0 for v in below),
        failures,
    )


@main.command()
@click.argument("case", type=click.Choice(["case1", "case2", "case4"]))
@click.option("--seed", type=int, default=CASE4_RECORDED_SEED, show_default=True,
              help="batch seed (case4 only)")
def reproduce(case: str, seed: int) -> None:
    """Re-derive a case study and self-check against golden values."""
    failures: list[str] = []
    if case == "case1":
        _reproduce_case1(failures)
    elif case == "case2":
        _reproduce_case2(failures)
    else:
        _reproduce_case4(seed, failures)
    if failures:
        raise click.ClickException("golden mismatch: " + "; ".join(failures))
    click.echo("\nall golden checks passed")


def _parse_pool(codes: str) -> tuple[Action, ...]:
    try:
        return tuple(Action.parse(code.strip()) for code in codes.split(","))
    except ValueError as exc:
        raise click.UsageError(str(exc))


@main.command()
@click.option("--lane", type=int, default=10, show_default=True, help="lane length in cells")
@click.option("--agents", "agent_count", type=int, default=4, show_default=True)
@click.option("--n", "instance_count", type=int, default=10_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--pool", default="S0,R1,R2,R3,R4", show_default=True, help="comma-separated action codes")
@click.option("--mdr", default=None, help="comma-separated per-agent MdR codes (default: all S0)")
@click.option("--workers", type=int, default=2, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="write summary JSON here")
@click.option("--dump", type=click.Path(dir_okay=False), default=None,
              help="write per-instance JSON lines here")
def sample(lane, agent_count, instance_count, seed, pool, mdr, workers, out, dump) -> None:
    """Run a seeded random batch and summarize the aggregates."""
    mdr_actions = _parse_pool(mdr) if mdr else None
    try:
        params = SamplerParams(
            lane_length=lane,
            agent_count=agent_count,
            action_pool=_parse_pool(pool),
            instance_count=instance_count,
            seed=seed,
            mdr=mdr_actions,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))

    records = run_batch(params, workers=workers)
    extremes = extremal(records)
    summary = summarize(records)
    click.echo(
        f"{params.instance_count} instances (seed {seed}): "
        f"aggregate range [{summary.min_aggregate:.4f}, {summary.max_aggregate:.4f}], "
        f"{summary.zero_aggregate_count} zero, "
        f"collision fraction {summary.collision_fraction:.3f}"
    )
    click.echo(f"argmin: {_describe_instance(extremes.minimum)}")
    click.echo(f"argmax: {_describe_instance(extremes.maximum)}")

    if out:
        payload = summary.to_dict()
        payload["seed"] = seed
        payload["argmin_index"] = extremes.minimum.index
        payload["argmax_index"] = extremes.maximum.index
        pathlib.Path(out).write_bytes((json.dumps(payload, indent=2) + "\n").encode())
        click.echo(f"summary written to {out}")
    if dump:
        from .io import scenario_to_document

        with open(dump, "w", encoding="utf-8") as fh:
            for record in records:
                fh.write(
                    json.dumps(
                        {
                            "index": record.index,
                            "scenario": scenario_to_document(record.scenario),
                            "fear": record.fear.as_lists(),
                            "aggregate": record.stats.offdiag_sum_squares,
                        }
                    )
                    + "\n"
                )
        click.echo(f"per-instance dump written to {dump}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option(
    "--epsilon",
    type=float,
    default=1e-6,
    envvar="FEAR_EPSILON",
    show_default=True,
    help="denominator regulariser (env: FEAR_EPSILON)",
)
def serve(host: str, port: int, epsilon: float) -> None:
    """Serve the explorer HTTP API until interrupted."""
    import socket

    import uvicorn

    from .service import create_app

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((host, port))
    except OSError as exc:
        probe.close()
        raise click.ClickException(f"cannot bind {host}:{port}: {exc.strerror}")
    probe.close()

    app = create_app(_config(epsilon))
    click.echo(f"serving explorer API on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
