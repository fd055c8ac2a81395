"""The mode-change solve loop.

A schedule names an initial behavior mode and timed mode changes.  Each
change triggers a re-solve from its step: the trajectory planned so far is
frozen as learned information (holds/occurs facts), the replanning start n1
moves to the change step, and the new mode's constraints and objective apply
only from n1 on.  The agent is never told about future changes.

Per-step compliance annotations are judged under the mode in effect when the
action was taken; later mode changes are not applied retrospectively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .domain import Scenario, State
from .errors import IterationOutOfRange, NoPlan, ValidationError
from .logic import Literal, sorted_literals
from .modes import BehaviorMode, MetricVector
from .planner import (PlanResult, Trajectory, effective_policy,
                      initial_prefix, plan)
from .policy import AuthorizationClass, Policy, PolicyEvaluator
from .terms import Action


@dataclass(frozen=True)
class ModeChange:
    step: Optional[int]
    mode: Optional[str]


@dataclass(frozen=True)
class ModeSchedule:
    initial_mode: str
    changes: tuple[ModeChange, ...] = ()

    def mode_in_effect(self, step: int) -> str:
        mode = self.initial_mode
        for change in self.changes:
            if change.step is not None and change.step <= step:
                mode = change.mode
        return mode


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


def validate_schedule(schedule: ModeSchedule, scenario: Scenario,
                      modes: Mapping[str, BehaviorMode],
                      max_changes: Optional[int] = 2) -> list[ValidationIssue]:
    """All problems with a schedule, empty when it is acceptable."""
    issues: list[ValidationIssue] = []
    if schedule.initial_mode not in modes:
        issues.append(ValidationIssue(
            "unknown_mode", f"unknown behavior mode {schedule.initial_mode!r}"))
    if max_changes is not None and len(schedule.changes) > max_changes:
        issues.append(ValidationIssue(
            "too_many_changes",
            f"at most {max_changes} behavior mode changes are supported"))
    previous_step: Optional[int] = None
    for i, change in enumerate(schedule.changes):
        if change.step is None or change.mode is None:
            issues.append(ValidationIssue(
                "mode_and_step_required",
                f"change {i + 1}: behavior mode and time step both required"))
            continue
        if change.mode not in modes:
            issues.append(ValidationIssue(
                "unknown_mode", f"change {i + 1}: unknown behavior mode {change.mode!r}"))
        if not 1 <= change.step <= scenario.horizon - 1:
            issues.append(ValidationIssue(
                "step_out_of_range",
                f"change {i + 1}: step must lie in [1, {scenario.horizon - 1}]"))
        if previous_step is not None and change.step <= previous_step:
            issues.append(ValidationIssue(
                "steps_not_increasing", "change steps must be strictly increasing"))
        previous_step = change.step
    return issues


def compute_n1(schedule: ModeSchedule, iteration: int) -> int:
    """Replanning start for an iteration: 0 for the initial solve, then the
    step of each mode change."""
    if not 0 <= iteration <= len(schedule.changes):
        raise IterationOutOfRange(
            f"iteration {iteration} outside [0, {len(schedule.changes)}]")
    if iteration == 0:
        return 0
    return schedule.changes[iteration - 1].step


def _mode_for_iteration(schedule: ModeSchedule, iteration: int) -> str:
    return (schedule.initial_mode if iteration == 0
            else schedule.changes[iteration - 1].mode)


@dataclass(frozen=True)
class LearnedInfo:
    """Facts frozen from the steps before the current n1."""

    holds_facts: tuple[tuple[Literal, int], ...]
    occurs_facts: tuple[tuple[Action, int], ...]
    mode_at_step: Mapping[int, str]

    def to_prefix(self, scenario: Scenario) -> Trajectory:
        by_step: dict[int, set[Literal]] = {}
        for literal, step in self.holds_facts:
            by_step.setdefault(step, set()).add(literal)
        states = tuple(State(frozenset(by_step[i])) for i in sorted(by_step))
        actions_by_step = {step: action for action, step in self.occurs_facts}
        actions = tuple(actions_by_step[i] for i in sorted(actions_by_step))
        prefix = Trajectory(states, actions)
        prefix.validate(scenario)
        return prefix


def extract_learned_info(trajectory: Trajectory, upto: int,
                         mode_history: Mapping[int, str]) -> LearnedInfo:
    """holds facts for states 0..upto, occurs facts for actions 0..upto-1."""
    if upto > trajectory.horizon:
        raise ValidationError(f"upto {upto} exceeds trajectory length")
    holds = []
    for step in range(upto + 1):
        for literal in sorted_literals(trajectory.states[step].literals):
            holds.append((literal, step))
    occurs = [(trajectory.actions[i], i) for i in range(upto)]
    modes = {step: mode_history[step] for step in range(upto)}
    return LearnedInfo(tuple(holds), tuple(occurs), modes)


@dataclass(frozen=True)
class PlanStep:
    index: int
    action: Action
    mode: str
    authorization: AuthorizationClass
    obligation_compliant: bool


@dataclass(frozen=True)
class PlanSegment:
    mode: str
    from_step: int
    to_step: int  # exclusive


@dataclass(frozen=True)
class AnnotatedPlan:
    steps: tuple[PlanStep, ...]
    segments: tuple[PlanSegment, ...]
    final_metrics: tuple[MetricVector, ...]  # one per segment's re-solve
    trajectory: Trajectory = field(compare=False)
    iterations: tuple[PlanResult, ...] = field(compare=False, default=())

    def to_dict(self) -> dict:
        return {
            "steps": [{
                "index": s.index,
                "action": str(s.action),
                "mode": s.mode,
                "authorization": s.authorization.value,
                "obligation_compliant": s.obligation_compliant,
            } for s in self.steps],
            "segments": [{
                "mode": seg.mode,
                "from_step": seg.from_step,
                "to_step": seg.to_step,
            } for seg in self.segments],
            "metrics": [m.as_dict() for m in self.final_metrics],
        }

    def to_text(self) -> str:
        """Plan display in the separated-segment style; the trailing wait
        tail is left out, like the printed plans."""
        cutoff = len(self.steps)
        while cutoff > 0 and self.steps[cutoff - 1].action.name == "wait":
            cutoff -= 1
        lines = []
        for i, segment in enumerate(self.segments):
            title = segment.mode.capitalize()
            lines.append(f"*** {'Begin in' if i == 0 else 'Change to'} {title} Mode ***")
            for step in self.steps[segment.from_step:min(segment.to_step, cutoff)]:
                lines.append(f"{step.index}. {describe_action(step.action)}")
        return "\n".join(lines) + "\n"


def describe_action(action: Action) -> str:
    if action.name == "move" and len(action.args) == 2:
        return f"Move from {action.args[0]} to {action.args[1]}"
    if action.name == "collect" and len(action.args) == 1:
        return f"Collect {action.args[0]}"
    if action.name == "wait":
        return "Wait"
    return str(action)


def generate_plan_with_mode_changes(
        scenario: Scenario, base_policy: Policy, schedule: ModeSchedule,
        modes: Mapping[str, BehaviorMode], *,
        deadline: Optional[float] = None) -> AnnotatedPlan:
    """Runs the iterative solve loop over the schedule and assembles the
    annotated plan."""
    issues = validate_schedule(schedule, scenario, modes, max_changes=None)
    if issues:
        raise ValidationError("; ".join(issue.message for issue in issues))

    horizon = scenario.horizon
    mode_history: dict[int, str] = {}
    trajectory = initial_prefix(scenario)
    iterations: list[PlanResult] = []
    for iteration in range(len(schedule.changes) + 1):
        n1 = compute_n1(schedule, iteration)
        mode = modes[_mode_for_iteration(schedule, iteration)]
        learned = extract_learned_info(trajectory, n1, mode_history)
        prefix = learned.to_prefix(scenario)
        try:
            result = plan(scenario, base_policy, mode, prefix, n1,
                          deadline=deadline)
        except NoPlan as exc:
            raise NoPlan(f"iteration {iteration} ({mode.name} from step {n1}): "
                         f"{exc}") from exc
        trajectory = result.trajectory
        iterations.append(result)
        for step in range(n1, horizon):
            mode_history[step] = mode.name

    boundaries = [compute_n1(schedule, k)
                  for k in range(len(schedule.changes) + 1)] + [horizon]
    segments = tuple(
        PlanSegment(modes[_mode_for_iteration(schedule, k)].name,
                    boundaries[k], boundaries[k + 1])
        for k in range(len(schedule.changes) + 1))

    evaluators = {name: PolicyEvaluator(effective_policy(base_policy, m))
                  for name, m in modes.items()}
    steps = []
    for i, action in enumerate(trajectory.actions):
        mode_name = mode_history[i]
        evaluator = evaluators[mode_name]
        state = trajectory.states[i]
        steps.append(PlanStep(
            index=i, action=action, mode=mode_name,
            authorization=evaluator.classify_authorization(state, action),
            obligation_compliant=evaluator.obligation_compliant(state, action)))

    return AnnotatedPlan(steps=tuple(steps), segments=segments,
                         final_metrics=tuple(r.metrics for r in iterations),
                         trajectory=trajectory, iterations=tuple(iterations))
