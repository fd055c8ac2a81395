"""Planner tests: metrics, lexicographic comparison, search, oracle parity."""

from __future__ import annotations

import time

import pytest

from normplan.domain import load_scenario, successor
from normplan.errors import MissingMetric, NoPlan, NotCategorical, SolveTimeout
from normplan.modes import (BUILTIN_MODES, NORMAL, RISKY, SAFE, MetricVector,
                            compare_lex)
from normplan.planner import Trajectory, evaluate_metrics, plan
from normplan.policy import parse_policy

from conftest import grid_doc, oracle_best_vector


@pytest.fixture(scope="module")
def s1(catalog):
    return catalog.scenario("s1")


@pytest.fixture(scope="module")
def base(catalog, s1):
    return catalog.base_policy(s1)


@pytest.fixture(scope="module")
def modes(catalog, s1):
    return catalog.modes_for(s1)


def vec(subgoal, strong, under, wait):
    return MetricVector({"subgoal_count": subgoal,
                         "percentage_strongly_compliant": strong,
                         "percentage_underspecified": under,
                         "wait_count": wait})


# --- compare_lex ------------------------------------------------------------

def test_subgoal_level_dominates_for_safe():
    assert compare_lex(vec(3, 0, 100, 0), vec(2, 0, 100, 5), SAFE) == 1


def test_normal_prefers_fewer_effective_steps():
    assert compare_lex(vec(3, 100, 0, 2), vec(3, 100, 0, 0), NORMAL) == 1


def test_equal_vectors_compare_equal():
    v = vec(1, 2, 3, 4)
    assert compare_lex(v, v, RISKY) == 0


def test_missing_metric_raises():
    partial = MetricVector({"subgoal_count": 1})
    with pytest.raises(MissingMetric):
        compare_lex(partial, partial, SAFE)


# --- evaluate_metrics ------------------------------------------------------------

def replay(scenario, action_specs):
    states = [scenario.initial]
    actions = []
    for spec in action_specs:
        action = scenario.action(spec[0], tuple(spec[1:]))
        actions.append(action)
        states.append(successor(states[-1], action, scenario))
    return Trajectory(tuple(states), tuple(actions))


TABLE2_SAFE = [
    ("move", "l4", "l1"), ("move", "l1", "l0"), ("collect", "gold"),
    ("move", "l0", "l1"), ("move", "l1", "l2"), ("move", "l2", "l5"),
    ("move", "l5", "l8"), ("move", "l8", "l7"), ("collect", "silver"),
    ("move", "l7", "l8"), ("move", "l8", "l5"), ("move", "l5", "l2"),
    ("move", "l2", "l1"), ("collect", "iron"),
]


def test_metrics_of_printed_safe_plan(s1, base, modes):
    trajectory = replay(s1, TABLE2_SAFE)
    metrics = evaluate_metrics(trajectory, 0, s1, base, modes["safe"])
    assert metrics.as_dict() == vec(3, 0, 100, 0).as_dict()


def test_metrics_of_all_wait_trajectory(s1, base, modes):
    trajectory = replay(s1, [("wait",)] * s1.horizon)
    metrics = evaluate_metrics(trajectory, 0, s1, base, modes["safe"])
    assert metrics["subgoal_count"] == 0
    assert metrics["wait_count"] == s1.horizon
    assert metrics["percentage_underspecified"] == 100


def test_every_mining_step_underspecified(s1, base, modes):
    trajectory = replay(s1, TABLE2_SAFE)
    for mode in modes.values():
        metrics = evaluate_metrics(trajectory, 0, s1, base, mode)
        assert metrics["percentage_strongly_compliant"] == 0
        assert metrics["percentage_underspecified"] == 100


def test_zero_length_segment_has_zero_percentages(s1, base, modes):
    trajectory = replay(s1, TABLE2_SAFE)
    metrics = evaluate_metrics(trajectory, s1.horizon, s1, base, modes["safe"])
    assert metrics["percentage_underspecified"] == 0
    assert metrics["percentage_strongly_compliant"] == 0
    assert metrics["wait_count"] == 0
    assert metrics["subgoal_count"] == 3


# --- plan on the packaged scenarios ------------------------------------------

def collections(trajectory):
    return [a.args[0] for a in trajectory.actions if a.name == "collect"]


def test_safe_plan_on_s1(s1, base, modes):
    result = plan(s1, base, modes["safe"])
    assert result.metrics.as_dict() == vec(3, 0, 100, 0).as_dict()
    assert collections(result.trajectory) == ["gold", "silver", "iron"]
    assert sum(1 for a in result.trajectory.actions if a.name != "wait") == 14


def test_normal_plan_on_s1(s1, base, modes):
    result = plan(s1, base, modes["normal"])
    assert result.metrics.as_dict() == vec(3, 0, 100, 2).as_dict()
    assert collections(result.trajectory) == ["gold", "silver", "iron"]
    assert sum(1 for a in result.trajectory.actions if a.name != "wait") == 12


def test_risky_plan_on_s1(s1, base, modes):
    result = plan(s1, base, modes["risky"])
    assert result.metrics.as_dict() == vec(3, 0, 100, 7).as_dict()
    assert collections(result.trajectory) == ["silver", "iron", "gold"]
    assert sum(1 for a in result.trajectory.actions if a.name != "wait") == 7


def test_plan_length_trend_on_s1(s1, base, modes):
    lengths = {}
    for name in ("safe", "normal", "risky"):
        result = plan(s1, base, modes[name])
        lengths[name] = s1.horizon - result.metrics["wait_count"]
    assert lengths["safe"] >= lengths["normal"] >= lengths["risky"]
    assert (lengths["safe"], lengths["normal"], lengths["risky"]) == (14, 12, 7)


def test_wait_tail_property(catalog):
    for sid in ("s1", "s2", "s9"):
        scenario = catalog.scenario(sid)
        base = catalog.base_policy(scenario)
        for mode in catalog.modes_for(scenario).values():
            actions = plan(scenario, base, mode).trajectory.actions
            waits = [i for i, a in enumerate(actions) if a.name == "wait"]
            assert waits == list(range(len(actions) - len(waits), len(actions)))


def test_safe_and_normal_plans_obligation_compliant(catalog):
    from normplan.planner import effective_policy
    from normplan.policy import PolicyEvaluator
    for sid in ("s1", "s9"):
        scenario = catalog.scenario(sid)
        base = catalog.base_policy(scenario)
        for name in ("safe", "normal"):
            mode = catalog.modes_for(scenario)[name]
            result = plan(scenario, base, mode)
            evaluator = PolicyEvaluator(effective_policy(base, mode))
            for i, action in enumerate(result.trajectory.actions):
                state = result.trajectory.states[i]
                assert evaluator.obligation_compliant(state, action)


def test_risky_plan_may_break_obligations(s1, base, modes):
    result = plan(s1, base, modes["risky"])
    from normplan.policy import PolicyEvaluator
    evaluator = PolicyEvaluator(base)
    compliant = [evaluator.obligation_compliant(result.trajectory.states[i], a)
                 for i, a in enumerate(result.trajectory.actions)]
    assert not all(compliant)


def test_plan_deterministic(s1, base, modes):
    first = plan(s1, base, modes["risky"])
    for _ in range(3):
        again = plan(s1, base, modes["risky"])
        assert again.trajectory == first.trajectory
        assert again.metrics == first.metrics


def test_fixed_prefix_respected(s1, base, modes):
    safe_result = plan(s1, base, modes["safe"])
    prefix = safe_result.trajectory.truncated(3)
    result = plan(s1, base, modes["risky"], safe_result.trajectory, n1=3)
    assert result.trajectory.actions[:3] == prefix.actions
    assert result.trajectory.states[:4] == prefix.states


def test_prefix_exempt_from_new_mode_constraints(s1, base, modes):
    # A risky prefix that already broke collection order still replans
    # cleanly under safe from the change step.
    risky_result = plan(s1, base, modes["risky"])
    result = plan(s1, base, modes["safe"], risky_result.trajectory, n1=3)
    assert result.trajectory.actions[:3] == risky_result.trajectory.actions[:3]


def test_n1_equal_horizon_returns_prefix(s1, base, modes):
    safe_result = plan(s1, base, modes["safe"])
    result = plan(s1, base, modes["normal"], safe_result.trajectory,
                  n1=s1.horizon)
    assert result.trajectory == safe_result.trajectory
    assert result.metrics["percentage_underspecified"] == 0
    assert result.metrics["wait_count"] == 0
    assert result.metrics["subgoal_count"] == 3


def test_no_plan_when_obligation_unsatisfiable(s1, modes):
    # The agent is obligated to collect gold immediately but stands at l4;
    # collect is not executable and everything else violates the obligation.
    policy = parse_policy("obl(collect(gold)) if -has_ore(gold)", s1)
    with pytest.raises(NoPlan):
        plan(s1, policy, modes["safe"])


def test_non_categorical_policy_rejected(s1, modes):
    policy = parse_policy(
        "d1: normally permitted(wait)\nd2: normally -permitted(wait)", s1)
    with pytest.raises(NotCategorical):
        plan(s1, policy, modes["safe"])


def test_deadline_exceeded(s1, base, modes):
    with pytest.raises(SolveTimeout):
        plan(s1, base, modes["safe"], deadline=time.monotonic() - 1)


# --- oracle parity on small grids ----------------------------------------------

@pytest.mark.parametrize("horizon", [4, 5, 6])
@pytest.mark.parametrize("mode_name", ["safe", "normal", "risky"])
@pytest.mark.parametrize("layout", [
    {"gold": "l1", "silver": "l2", "iron": "l3"},
    {"gold": "l3", "silver": "l0", "iron": "l2"},
])
def test_plan_matches_exhaustive_oracle(catalog, horizon, mode_name, layout):
    doc = grid_doc("oracle", 2, 2, risks={"l1": "medium", "l3": "high"},
                   agent="l0", ores=layout, horizon=horizon)
    scenario = load_scenario(doc)
    policy = parse_policy(
        "obl(-collect(silver)) if -has_ore(gold)\n"
        "obl(-collect(iron)) if -has_ore(silver)", scenario)
    mode = BUILTIN_MODES[mode_name]
    if mode_name in ("safe", "normal"):
        risk = "high" if mode_name == "normal" else "medium"
        extra = parse_policy(
            f"obl(-move(L1, L2)) if has_risk_level(L2, {risk})\n"
            "obl(-move(L1, L2)) if has_risk_level(L2, high)", scenario)
        mode = mode.with_extra_policies(extra)
    expected = oracle_best_vector(scenario, policy, mode)
    result = plan(scenario, policy, mode)
    assert expected is not None
    assert result.metrics.as_dict() == expected.as_dict()
