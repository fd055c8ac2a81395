"""Horizon planning under a behavior mode.

Finds the trajectory extending a fixed prefix that lexicographically
maximizes the mode's metric objective, subject to three hard constraints on
the replanned steps: exactly one executable action per step, obligation
compliance when the mode forbids violations, and the wait-tail rule (once
the agent waits it waits until the horizon).

Search is depth-first over non-wait action prefixes (the wait tail is
decided by a single "stop" choice), with (state, step) dominance memoization
and optimistic per-metric bounds.  Children are visited in the total action
order, and the incumbent is replaced only on strict improvement, so among
co-optimal trajectories the lexicographically smallest action sequence wins
and repeated solves are byte-identical.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .domain import Scenario, State, executable, successor
from .errors import (NoPlan, NotCategorical, NotCategoricalAt, SolveTimeout,
                     ValidationError)
from .modes import (PCT_STRONGLY_COMPLIANT, PCT_UNDERSPECIFIED, SUBGOAL_COUNT,
                    WAIT_COUNT, BehaviorMode, MetricVector, compare_lex)
from .policy import AuthorizationClass, Policy, PolicyEvaluator
from .terms import Action


@dataclass(frozen=True)
class Trajectory:
    """states[i+1] = successor(states[i], actions[i])."""

    states: tuple[State, ...]
    actions: tuple[Action, ...]

    def __post_init__(self):
        if len(self.states) != len(self.actions) + 1:
            raise ValidationError("trajectory needs one more state than actions")

    @property
    def horizon(self) -> int:
        return len(self.actions)

    def truncated(self, upto: int) -> "Trajectory":
        """The prefix with `upto` actions."""
        return Trajectory(self.states[:upto + 1], self.actions[:upto])

    def validate(self, scenario: Scenario) -> None:
        for i, action in enumerate(self.actions):
            if successor(self.states[i], action, scenario) != self.states[i + 1]:
                raise ValidationError(f"step {i}: {action} does not produce the "
                                      "recorded successor state")


def initial_prefix(scenario: Scenario) -> Trajectory:
    return Trajectory((scenario.initial,), ())


@dataclass(frozen=True)
class PlanResult:
    trajectory: Trajectory
    metrics: MetricVector


def _percentage(count: int, denom: int) -> int:
    return 0 if denom == 0 else (100 * count) // denom


def _make_vector(subgoals: int, strong: int, under: int, waits: int,
                 denom: int) -> MetricVector:
    return MetricVector({
        SUBGOAL_COUNT: subgoals,
        PCT_STRONGLY_COMPLIANT: _percentage(strong, denom),
        PCT_UNDERSPECIFIED: _percentage(under, denom),
        WAIT_COUNT: waits,
    })


def effective_policy(policy: Policy, mode: BehaviorMode) -> Policy:
    return policy.merged_with(*mode.extra_policies)


def evaluate_metrics(trajectory: Trajectory, n1: int, scenario: Scenario,
                     policy: Policy, mode: BehaviorMode,
                     evaluator: Optional[PolicyEvaluator] = None) -> MetricVector:
    """Metrics of the replanned segment [n1, horizon).

    subgoal_count is evaluated at the final state; percentages divide by the
    segment length (zero steps give zero percentages).
    """
    if evaluator is None:
        evaluator = PolicyEvaluator(effective_policy(policy, mode))
    horizon = trajectory.horizon
    if not 0 <= n1 <= horizon:
        raise ValidationError(f"n1 must lie in [0, {horizon}], got {n1}")
    strong = under = waits = 0
    for i in range(n1, horizon):
        state, action = trajectory.states[i], trajectory.actions[i]
        cls = evaluator.classify_authorization(state, action)
        strong += cls is AuthorizationClass.STRONGLY_COMPLIANT
        under += cls is AuthorizationClass.UNDERSPECIFIED
        waits += action.name == "wait"
    return _make_vector(scenario.subgoal_count(trajectory.states[-1]),
                        strong, under, waits, horizon - n1)


class _Search:
    def __init__(self, scenario: Scenario, mode: BehaviorMode,
                 evaluator: PolicyEvaluator, n1: int,
                 deadline: Optional[float]):
        self.scenario = scenario
        self.mode = mode
        self.evaluator = evaluator
        self.n1 = n1
        self.horizon = scenario.horizon
        self.denom = self.horizon - n1
        self.deadline = deadline
        self.wait = scenario.action("wait")
        self.track_strong = PCT_STRONGLY_COMPLIANT in mode.priority_order
        self.track_under = PCT_UNDERSPECIFIED in mode.priority_order
        self.max_gain = self._max_subgoal_gain()
        self.best_vector: Optional[MetricVector] = None
        self.best_actions: Optional[tuple[Action, ...]] = None
        self._memo: dict[tuple[State, int], list[tuple[int, ...]]] = {}
        self._choice_cache: dict[State, list[Action]] = {}
        self._class_cache: dict[tuple[State, Action], AuthorizationClass] = {}

    def _max_subgoal_gain(self) -> int:
        subgoals = set(self.scenario.subgoals)
        if not subgoals:
            return 0
        if self.scenario._static_laws:
            return len(subgoals)  # statics may cascade; keep the bound sound
        gain = 0
        per_action: dict[Action, set] = {}
        for law in self.scenario.laws:
            if law.kind == "dynamic" and law.head in subgoals:
                per_action.setdefault(law.trigger, set()).add(law.head)
        for heads in per_action.values():
            gain = max(gain, len(heads))
        return gain

    def _classify(self, state: State, action: Action) -> AuthorizationClass:
        key = (state, action)
        cls = self._class_cache.get(key)
        if cls is None:
            cls = self.evaluator.classify_authorization(state, action)
            self._class_cache[key] = cls
        return cls

    def _allowed(self, state: State, action: Action) -> bool:
        if not executable(state, action, self.scenario):
            return False
        return (not self.mode.forbid_obligation_noncompliance
                or self.evaluator.obligation_compliant(state, action))

    def _choices(self, state: State) -> list[Action]:
        """Actions available at `state`, in total order; includes wait when
        the (identity) wait tail may start here."""
        actions = self._choice_cache.get(state)
        if actions is None:
            actions = [a for a in self.scenario.ground_actions
                       if self._allowed(state, a)]
            self._choice_cache[state] = actions
        return actions

    def _finalize(self, state: State, actions: list[Action],
                  strong: int, under: int, waits: int) -> None:
        vector = _make_vector(self.scenario.subgoal_count(state), strong,
                              under, waits, self.denom)
        if (self.best_vector is None
                or compare_lex(vector, self.best_vector, self.mode) > 0):
            self.best_vector = vector
            self.best_actions = tuple(actions)

    def _dominated(self, state: State, t: int, strong: int, under: int) -> bool:
        proj = ((strong,) if self.track_strong else ()) + \
               ((under,) if self.track_under else ())
        entries = self._memo.setdefault((state, t), [])
        for stored in entries:
            if all(s >= p for s, p in zip(stored, proj)):
                return True
        entries[:] = [s for s in entries
                      if not all(p >= v for p, v in zip(proj, s))]
        entries.append(proj)
        return False

    def _bound_beats_best(self, state: State, t: int, strong: int,
                          under: int) -> bool:
        if self.best_vector is None:
            return True
        rem = self.horizon - t
        subgoal_ub = min(len(self.scenario.subgoals),
                         self.scenario.subgoal_count(state) + rem * self.max_gain)
        ub = _make_vector(subgoal_ub, strong + rem, under + rem, rem, self.denom)
        return compare_lex(ub, self.best_vector, self.mode) > 0

    def run(self, start: State) -> None:
        self._dfs(start, self.n1, 0, 0, [])

    def _dfs(self, state: State, t: int, strong: int, under: int,
             actions: list[Action]) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SolveTimeout(f"no solution within the deadline ({self.mode.name})")
        if self._dominated(state, t, strong, under):
            return
        if t == self.horizon:
            self._finalize(state, actions, strong, under, waits=0)
            return
        if not self._bound_beats_best(state, t, strong, under):
            return
        for action in self._choices(state):
            if action == self.wait:
                # Wait tail: the state never changes again, so one
                # classification covers every remaining step.
                rem = self.horizon - t
                cls = self._classify(state, self.wait)
                self._finalize(
                    state, actions + [self.wait] * rem,
                    strong + rem * (cls is AuthorizationClass.STRONGLY_COMPLIANT),
                    under + rem * (cls is AuthorizationClass.UNDERSPECIFIED),
                    waits=rem)
                continue
            cls = self._classify(state, action)
            actions.append(action)
            self._dfs(successor(state, action, self.scenario), t + 1,
                      strong + (cls is AuthorizationClass.STRONGLY_COMPLIANT),
                      under + (cls is AuthorizationClass.UNDERSPECIFIED),
                      actions)
            actions.pop()


def plan(scenario: Scenario, policy: Policy, mode: BehaviorMode,
         fixed_prefix: Optional[Trajectory] = None, n1: int = 0, *,
         deadline: Optional[float] = None) -> PlanResult:
    """The lexicographically best trajectory extending `fixed_prefix` from
    step `n1` to the scenario horizon.

    The prefix (steps < n1) is exempt from the mode's hard constraints and
    from its metrics.  Raises NoPlan when no extension satisfies the hard
    constraints, NotCategorical when the policy branches at a visited state.
    """
    if fixed_prefix is None:
        fixed_prefix = initial_prefix(scenario)
    horizon = scenario.horizon
    if not 0 <= n1 <= horizon:
        raise ValidationError(f"n1 must lie in [0, {horizon}], got {n1}")
    if fixed_prefix.horizon < n1:
        raise ValidationError(f"fixed prefix covers {fixed_prefix.horizon} steps, "
                              f"need at least {n1}")
    prefix = fixed_prefix.truncated(n1)
    prefix.validate(scenario)

    evaluator = PolicyEvaluator(effective_policy(policy, mode))
    try:
        if n1 == horizon:
            vector = _make_vector(
                scenario.subgoal_count(prefix.states[-1]), 0, 0, 0, 0)
            return PlanResult(prefix, vector)

        search = _Search(scenario, mode, evaluator, n1, deadline)
        search.run(prefix.states[-1])
    except NotCategoricalAt as exc:
        raise NotCategorical(exc.state) from exc
    if search.best_actions is None:
        raise NoPlan(f"no trajectory satisfies the {mode.name} mode's "
                     f"hard constraints from step {n1}")

    states = list(prefix.states)
    for action in search.best_actions:
        states.append(successor(states[-1], action, scenario))
    trajectory = Trajectory(tuple(states), prefix.actions + search.best_actions)
    return PlanResult(trajectory, search.best_vector)
