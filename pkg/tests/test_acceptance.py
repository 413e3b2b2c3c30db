"""Acceptance suite: one test per release criterion, each printing a
[PASS]/[FAIL] line (run pytest with -rA or -s to see them inline).

Tolerances are pinned here and nowhere else:
  * golden matrix values: 5e-3
  * exact-zero claims (MdR rows, independence): no tolerance
  * case-4 batch: < 60 s wall clock, bit-identical across worker counts

The case-1 instance (c) diagonal deviates from the published prose, which
swaps the two diagonal labels against its own equation and printed counts
(see test_case1_transcribed_c_diagonal_is_unsatisfiable); the values asserted
here are the ones the definition forces. The intersection fixture (case 3)
reproduces the published one-decimal values; exact reproduction at 5e-3 is
impossible for any geometry (0.3 forces counts (10, 7) whose companion 0.4
has no integer solution), so the frozen reconstruction is asserted instead.
"""

import math
import random
import time

import pytest

from fear.engine import simulate
from fear.feasibility import StateEvaluator, feasible_actions
from fear.grid import AgentSet, GridMap, Scenario, action_catalog
from fear.io import builtin_fixtures
from fear.metric import fear_matrix, fear_pair, validate_mdr
from fear.sampler import SamplerParams, extremal, run_batch, summarize

from helpers import A, LANE10, CASE1_AGENTS, random_state, two_agent_scenario
from naive_engine import naive_simulate

GOLDEN_TOL = 5e-3


def report(line: str) -> None:
    print(line)


def assert_matrix(matrix, expected, label: str) -> None:
    for r in range(len(expected)):
        for c in range(len(expected)):
            got = matrix.values[r][c]
            want = expected[r][c]
            assert math.isclose(got, want, abs_tol=GOLDEN_TOL), (
                f"{label} entry ({r + 1},{c + 1}): got {got:.6f}, want {want:.6f}"
            )


def test_case1_golden_matrices():
    """Criterion 1: case-study-1 FeAR matrices at 5e-3, in under a second."""
    golden = {
        "case1a": [[1.0, -1 / 6], [-1 / 4, 1.0]],
        "case1b": [[1.0, 1 / 6], [-1 / 4, 5 / 6]],
        "case1c": [[3 / 4, 1 / 6], [1 / 4, 5 / 6]],
    }
    fixtures = builtin_fixtures()
    start = time.perf_counter()
    matrices = {name: fear_matrix(fixtures[name]) for name in golden}
    elapsed = time.perf_counter() - start
    for name, expected in golden.items():
        assert_matrix(matrices[name], expected, name)
    assert elapsed < 1.0, f"case-1 evaluation took {elapsed:.3f}s"
    report(f"[PASS] case-1 golden matrices (5e-3), {elapsed * 1000:.0f} ms")


@pytest.mark.xfail(
    strict=True,
    reason=(
        "the published case-1(c) diagonal (5/6, 3/4) swaps the agents: the metric's "
        "own definition makes fear(2,2) depend only on agent 1's action, which is R1 "
        "in both (b) and (c), so fear(2,2) must equal 5/6 in both; the printed counts "
        "(3 of 4 for agent 1) force fear(1,1)=3/4. No definition satisfies (b) and (c) "
        "as printed simultaneously."
    ),
)
def test_case1_transcribed_c_diagonal_is_unsatisfiable():
    matrix = fear_matrix(builtin_fixtures()["case1c"])
    assert math.isclose(matrix.value(1, 1), 5 / 6, abs_tol=GOLDEN_TOL)
    assert math.isclose(matrix.value(2, 2), 3 / 4, abs_tol=GOLDEN_TOL)


def test_feasibility_golden_lists():
    """Criterion 2: all eight published feasible-move lists, exact sets."""
    cases = [
        ({1: "S0", 2: "S0"}, 2, {"L1", "S0", "R1", "R2", "R3", "R4"}),
        ({1: "S0", 2: "S0"}, 1, {"L2", "L1", "S0", "R1"}),
        ({1: "R1", 2: "S0"}, 2, {"S0", "R1", "R2", "R3", "R4"}),
        ({1: "S0", 2: "R1"}, 1, {"L2", "L1", "S0", "R1", "R2"}),
        ({1: "S0", 2: "R2"}, 1, {"L2", "L1", "S0", "R1", "R2", "R3"}),
        ({1: "R2", 2: "S0"}, 2, {"R1", "R2", "R3", "R4"}),
        ({1: "L1", 2: "S0"}, 2, {"L2", "L1", "S0", "R1", "R2", "R3", "R4"}),
        ({1: "S0", 2: "L1"}, 1, {"L2", "L1", "S0"}),
    ]
    for joint_codes, agent, expected in cases:
        joint = {i: A(code) for i, code in joint_codes.items()}
        got = set(feasible_actions(LANE10, CASE1_AGENTS, joint, agent).codes)
        assert got == expected, f"agent {agent} under {joint_codes}: {sorted(got)}"
    report("[PASS] feasibility golden lists (8/8 exact)")


def test_case2_derived_values_and_sign_flips():
    """Criterion 3: MdR sensitivity values at 5e-3 plus the published orderings."""
    l1_of_1 = {
        "S0": fear_pair(two_agent_scenario("L1", "S0", "S0", "S0"), 1, 2),
        "R1": fear_pair(two_agent_scenario("L1", "S0", "R1", "R1"), 1, 2),
        "R2": fear_pair(two_agent_scenario("L1", "S0", "R2", "R2"), 1, 2),
    }
    assert math.isclose(l1_of_1["R1"], -2 / 5, abs_tol=GOLDEN_TOL)
    assert math.isclose(l1_of_1["R2"], -3 / 4, abs_tol=GOLDEN_TOL)
    assert l1_of_1["S0"] > l1_of_1["R1"] > l1_of_1["R2"], "L1 grows more courteous"

    l1_of_2 = {
        "S0": fear_pair(two_agent_scenario("S0", "L1", "S0", "S0"), 2, 1),
        "R1": fear_pair(two_agent_scenario("S0", "L1", "R1", "R1"), 2, 1),
        "R2": fear_pair(two_agent_scenario("S0", "L1", "R2", "R2"), 2, 1),
    }
    assert math.isclose(l1_of_2["R1"], 2 / 5, abs_tol=GOLDEN_TOL)
    assert math.isclose(l1_of_2["R2"], 1 / 2, abs_tol=GOLDEN_TOL)
    assert l1_of_2["S0"] < l1_of_2["R1"] < l1_of_2["R2"], "L1 grows more assertive"

    r1_of_1 = {m: fear_pair(two_agent_scenario("R1", "R1", m, m), 1, 2) for m in ("S0", "R1", "R2")}
    assert r1_of_1["S0"] > 0 and r1_of_1["R2"] < 0 and r1_of_1["R1"] == 0.0
    r1_of_2 = {m: fear_pair(two_agent_scenario("R1", "R1", m, m), 2, 1) for m in ("S0", "R1", "R2")}
    assert r1_of_2["S0"] < 0 and r1_of_2["R2"] > 0 and r1_of_2["R1"] == 0.0
    report("[PASS] case-2 derived values and sign flips (5e-3)")


def _random_consistent_mdr(rng, grid, agents):
    for _ in range(4):
        mdr = {agent.id: rng.choice(action_catalog()) for agent in agents}
        probe = Scenario(grid, agents, mdr, mdr)
        if validate_mdr(probe).consistent:
            return mdr
    return {agent.id: A("S0") for agent in agents}


def test_mdr_zero_theorem():
    """Criterion 4: actors playing their MdR bear exactly zero responsibility."""
    rng = random.Random(0x4D5230)
    instances = 10_000
    rows_checked = 0
    for _ in range(instances):
        grid, agents, joint = random_state(rng)
        mdr = _random_consistent_mdr(rng, grid, agents)
        joint = dict(joint)
        # force at least one actor onto its default
        for agent in agents:
            if rng.random() < 0.5:
                joint[agent.id] = mdr[agent.id]
        scenario = Scenario(grid, agents, joint, mdr)
        evaluator = StateEvaluator(grid, agents)
        for actor in scenario.agent_ids:
            if joint[actor] != mdr[actor]:
                continue
            for affected in scenario.agent_ids:
                if affected == actor:
                    continue
                value = fear_pair(scenario, actor, affected, evaluator=evaluator)
                assert value == 0.0, (
                    f"fear({actor},{affected}) = {value!r} with actor on its MdR"
                )
                rows_checked += 1
    assert rows_checked > instances  # sanity: the forcing actually bites
    report(f"[PASS] MdR-zero theorem over {instances} instances ({rows_checked} pairs, exact)")


def test_bounds_and_independence_properties():
    """Criterion 5: entry ranges plus independence from the affected agent's move."""
    rng = random.Random(0xB0B5)
    instances = 10_000
    for _ in range(instances):
        grid, agents, joint = random_state(rng)
        mdr = {agent.id: A("S0") for agent in agents}
        scenario = Scenario(grid, agents, joint, mdr)
        evaluator = StateEvaluator(grid, agents)
        matrix = fear_matrix(scenario, evaluator=evaluator)
        for r in range(matrix.size):
            for c in range(matrix.size):
                value = matrix.values[r][c]
                if r == c:
                    assert 0.0 <= value <= 1.0, f"diagonal out of range: {value}"
                else:
                    assert -1.0 <= value <= 1.0, f"off-diagonal out of range: {value}"
        # fear(i,j) never depends on A_j; fear(i,i) never on A_i
        ids = scenario.agent_ids
        actor = rng.choice(ids)
        affected = rng.choice(ids)
        replaced = dict(joint)
        replaced[affected] = rng.choice(action_catalog())
        mutated = scenario.with_actions(replaced)
        assert fear_pair(mutated, actor, affected, evaluator=evaluator) == matrix.value(
            actor, affected
        ), f"entry ({actor},{affected}) moved when agent {affected}'s action changed"
    report(f"[PASS] bounds and independence over {instances} instances")


def test_collision_engine_oracle_equivalence():
    """Criterion 6: optimized engine == naive re-enumeration oracle, 1e5 instances."""
    rng = random.Random(0x0A13)
    catalog = action_catalog()
    instances = 100_000
    for _ in range(instances):
        lane = GridMap.lane(rng.randint(2, 10))
        cells = sorted(lane.valid)
        k = rng.randint(1, min(4, len(cells)))
        agents = AgentSet.from_origins(rng.sample(cells, k))
        joint = {i + 1: rng.choice(catalog) for i in range(k)}
        fast = simulate(lane, agents, joint)
        slow = naive_simulate(lane, agents, joint)
        assert fast == slow, f"divergence on lane={lane.width} {agents} {joint}"
    report(f"[PASS] oracle equivalence over {instances} instances (exact)")


def test_case4_batch_study():
    """Criterion 7: the recorded seeded batch hits its extremal structure in budget."""
    params = SamplerParams(seed=0)  # recorded seed
    start = time.perf_counter()
    records = run_batch(params, workers=2)
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"batch took {elapsed:.1f}s"
    assert len(records) == 10_000

    extremes = extremal(records)
    minimum, maximum = extremes.minimum, extremes.maximum

    assert minimum.stats.offdiag_sum_squares == 0.0
    # zero-aggregate characterization: every actor's MdR substitution leaves
    # every other agent's feasibility count unchanged
    scenario = minimum.scenario
    evaluator = StateEvaluator(scenario.grid, scenario.agents)
    for actor in scenario.agent_ids:
        base = dict(scenario.joint_action)
        base[actor] = scenario.joint_mdr[actor]
        for affected in scenario.agent_ids:
            if affected != actor:
                assert evaluator.count(base, affected) == evaluator.count(
                    scenario.joint_action, affected
                )

    resolution = simulate(maximum.scenario.grid, maximum.scenario.agents, maximum.scenario.joint_action)
    assert not resolution.events, "argmax instance must be collision-free"
    k = maximum.fear.size
    vals = maximum.fear.values
    above = [vals[i][j] for i in range(k) for j in range(k) if j > i]
    below = [vals[i][j] for i in range(k) for j in range(k) if j < i]
    # assertive entries sit above the position-ordered diagonal, courteous
    # below; interposed agents screen distant pairs to exactly zero, so the
    # sign test is segregation, not strict positivity (no instance in the
    # whole 131,250-instance space is strictly signed; the global argmax is
    # this packed chain)
    assert all(v >= 0 for v in above) and any(v > 0 for v in above)
    assert all(v <= 0 for v in below) and any(v < 0 for v in below)

    serial = run_batch(params)
    assert serial == records, "parallel run must be bit-identical to serial"

    summary = summarize(records)
    assert summary.zero_aggregate_count >= 1
    report(
        f"[PASS] case-4 batch: {elapsed:.1f}s, argmin 0 at {minimum.index}, "
        f"argmax {maximum.stats.offdiag_sum_squares:.3f} at {maximum.index}, reproducible"
    )


def test_case3_intersection_reconstruction():
    """Criterion 8 (stretch): locked intersection fixture vs published values.

    Exact 5e-3 reproduction is impossible (see module docstring), so the
    reconstruction is locked at 5e-3 against its own frozen fractions and
    checked to round to every published one-decimal value.
    """
    fixtures = builtin_fixtures()
    frozen = {
        # tag -> (fear(1,2), fear(3,2), fear(2,1), fear(2,3))
        "a": (1 / 3, 3 / 7, 0.0, 0.0),
        "b": (2 / 3, 3 / 5, 0.0, 0.0),
        "c": (2 / 3, 3 / 5, -1 / 5, 0.0),
        "d": (2 / 3, 3 / 5, -1 / 5, 1 / 5),
        "e": (4 / 9, 0.0, -1 / 5, 1 / 5),
    }
    published = {
        "a": (0.3, 0.4, 0.0, 0.0),
        "b": (0.7, 0.6, 0.0, 0.0),
        "c": (0.7, 0.6, -0.2, 0.0),
        "d": (0.7, 0.6, -0.2, 0.2),
        "e": (0.4, 0.0, -0.2, 0.2),
    }
    collisions = {"a": set(), "b": {1, 2}, "c": set(), "d": {2, 3}, "e": set()}
    for tag, expected in frozen.items():
        scenario = fixtures[f"case3{tag}"]
        matrix = fear_matrix(scenario)
        got = (
            matrix.value(1, 2),
            matrix.value(3, 2),
            matrix.value(2, 1),
            matrix.value(2, 3),
        )
        for value, want in zip(got, expected):
            assert math.isclose(value, want, abs_tol=GOLDEN_TOL), f"case3{tag}: {got}"
        for value, printed in zip(got, published[tag]):
            assert abs(value - printed) <= 0.05, (
                f"case3{tag}: {value:.3f} does not round to published {printed}"
            )
        resolution = simulate(scenario.grid, scenario.agents, scenario.joint_action)
        involved = {a for e in resolution.events for a in e.participants}
        assert involved == collisions[tag], f"case3{tag} collision pattern {involved}"
    report("[PASS] case-3 reconstruction locked (5e-3 to frozen, 1-decimal to published)")
