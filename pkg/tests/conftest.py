"""Shared builders: grid scenario documents and the exhaustive plan oracle."""

from __future__ import annotations

import pytest

from normplan.catalog import Catalog
from normplan.domain import Scenario, executable, successor
from normplan.modes import BehaviorMode, MetricVector, compare_lex
from normplan.planner import Trajectory, effective_policy, evaluate_metrics
from normplan.policy import Policy, PolicyEvaluator


def grid_doc(sid, rows, cols, risks, agent, ores, horizon, name=None):
    """A mining-style scenario document on a rows x cols 4-neighbor grid."""
    locs = [f"l{i}" for i in range(rows * cols)]
    coords = {f"l{r * cols + c}": [r, c] for r in range(rows) for c in range(cols)}
    connected = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                connected += [f"connected(l{i}, l{i + 1})",
                              f"connected(l{i + 1}, l{i})"]
            if r + 1 < rows:
                connected += [f"connected(l{i}, l{i + cols})",
                              f"connected(l{i + cols}, l{i})"]
    ore_names = sorted(ores)
    initial = [f"at_loc({agent})"]
    initial += [f"-at_loc({l})" for l in locs if l != agent]
    for ore in ore_names:
        initial.append(f"-has_ore({ore})")
        initial += [("" if ores[ore] == l else "-") + f"ore_loc({ore}, {l})"
                    for l in locs]
    return {
        "id": sid, "name": name or sid,
        "sorts": {"location": locs, "ore": ore_names,
                  "risk_level": ["low", "medium", "high"]},
        "statics": {
            "schemas": [
                {"name": "connected", "args": ["location", "location"]},
                {"name": "has_risk_level", "args": ["location", "risk_level"]}],
            "facts": sorted(connected) + [
                f"has_risk_level({l}, {risks.get(l, 'low')})" for l in locs]},
        "fluents": [{"name": "at_loc", "args": ["location"]},
                    {"name": "has_ore", "args": ["ore"]},
                    {"name": "ore_loc", "args": ["ore", "location"]}],
        "actions": [
            {"name": "move", "args": ["location", "location"],
             "params": ["L1", "L2"], "guard": ["connected(L1, L2)"]},
            {"name": "collect", "args": ["ore"]},
            {"name": "wait", "args": []}],
        "laws": [
            {"kind": "dynamic", "vars": {"L1": "location", "L2": "location"},
             "trigger": "move(L1, L2)", "head": "at_loc(L2)"},
            {"kind": "dynamic", "vars": {"L1": "location", "L2": "location"},
             "trigger": "move(L1, L2)", "head": "-at_loc(L1)"},
            {"kind": "dynamic", "vars": {"O": "ore"},
             "trigger": "collect(O)", "head": "has_ore(O)"},
            {"kind": "executability", "vars": {"L1": "location", "L2": "location"},
             "trigger": "move(L1, L2)", "conditions": ["-at_loc(L1)"]},
            {"kind": "executability", "vars": {"O": "ore", "L": "location"},
             "trigger": "collect(O)", "conditions": ["at_loc(L)", "-ore_loc(O, L)"]},
            {"kind": "executability", "vars": {"O": "ore"},
             "trigger": "collect(O)", "conditions": ["has_ore(O)"]}],
        "initial": initial,
        "subgoals": [f"has_ore({o})" for o in ore_names],
        "horizon": horizon,
        "display": {"rows": rows, "cols": cols, "coords": coords},
    }


def enumerate_valid_trajectories(scenario: Scenario, policy: Policy,
                                 mode: BehaviorMode, n1: int = 0):
    """Every trajectory satisfying the hard constraints: one executable
    action per step, obligation compliance when forbidden, wait tail."""
    evaluator = PolicyEvaluator(effective_policy(policy, mode))
    wait = scenario.action("wait")

    def allowed(state, action):
        if not executable(state, action, scenario):
            return False
        return (not mode.forbid_obligation_noncompliance
                or evaluator.obligation_compliant(state, action))

    def extend(states, actions, waited):
        t = len(actions)
        if t == scenario.horizon:
            yield Trajectory(tuple(states), tuple(actions))
            return
        options = [wait] if waited else scenario.ground_actions
        for action in options:
            if not allowed(states[-1], action):
                continue
            nxt = successor(states[-1], action, scenario)
            yield from extend(states + [nxt], actions + [action],
                              waited or action == wait)

    yield from extend([scenario.initial], [], False)


def oracle_best_vector(scenario: Scenario, policy: Policy, mode: BehaviorMode,
                       n1: int = 0) -> MetricVector | None:
    evaluator = PolicyEvaluator(effective_policy(policy, mode))
    best = None
    for trajectory in enumerate_valid_trajectories(scenario, policy, mode, n1):
        vector = evaluate_metrics(trajectory, n1, scenario, policy, mode,
                                  evaluator=evaluator)
        if best is None or compare_lex(vector, best, mode) > 0:
            best = vector
    return best


@pytest.fixture(scope="session")
def catalog():
    return Catalog()
