"""Behavior modes and the lexicographic metric order they induce.

A mode is a priority-ordered list of metrics to maximize plus a hard flag
forbidding obligation-noncompliant actions.  The three built-in modes:

    safe:   subgoal_count, percentage_strongly_compliant,
            percentage_underspecified, wait_count        (hard flag on)
    normal: subgoal_count, wait_count,
            percentage_underspecified, percentage_strongly_compliant (on)
    risky:  subgoal_count, wait_count                    (hard flag off)

Domain-specific policies may be attached to a mode (e.g. movement
restrictions for cautious miners); they are merged with the base policy for
both hard constraints and metric classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import MissingMetric, ValidationError
from .policy import Policy

SUBGOAL_COUNT = "subgoal_count"
PCT_STRONGLY_COMPLIANT = "percentage_strongly_compliant"
PCT_UNDERSPECIFIED = "percentage_underspecified"
WAIT_COUNT = "wait_count"

METRIC_NAMES = frozenset({SUBGOAL_COUNT, PCT_STRONGLY_COMPLIANT,
                          PCT_UNDERSPECIFIED, WAIT_COUNT})


@dataclass(frozen=True)
class MetricVector:
    """Evaluated metrics of one trajectory segment; percentages are
    integers in 0..100."""

    values: Mapping[str, int]

    def __post_init__(self):
        for name, value in self.values.items():
            if name not in METRIC_NAMES:
                raise ValidationError(f"unknown metric {name!r}")
            if name.startswith("percentage") and not 0 <= value <= 100:
                raise ValidationError(f"{name} out of range: {value}")
            if value < 0:
                raise ValidationError(f"{name} negative: {value}")

    def __getitem__(self, name: str) -> int:
        try:
            return self.values[name]
        except KeyError:
            raise MissingMetric(f"metric {name!r} missing") from None

    def as_dict(self) -> dict[str, int]:
        return dict(sorted(self.values.items()))


@dataclass(frozen=True)
class BehaviorMode:
    name: str
    priority_order: tuple[str, ...]  # highest priority first
    forbid_obligation_noncompliance: bool
    extra_policies: tuple[Policy, ...] = ()

    def __post_init__(self):
        if not self.priority_order:
            raise ValidationError("priority_order must be nonempty")
        unknown = [m for m in self.priority_order if m not in METRIC_NAMES]
        if unknown:
            raise ValidationError(f"unknown metrics in priority order: {unknown}")

    def with_extra_policies(self, *policies: Policy) -> "BehaviorMode":
        return BehaviorMode(self.name, self.priority_order,
                            self.forbid_obligation_noncompliance,
                            self.extra_policies + tuple(policies))


SAFE = BehaviorMode(
    name="safe",
    priority_order=(SUBGOAL_COUNT, PCT_STRONGLY_COMPLIANT,
                    PCT_UNDERSPECIFIED, WAIT_COUNT),
    forbid_obligation_noncompliance=True)

NORMAL = BehaviorMode(
    name="normal",
    priority_order=(SUBGOAL_COUNT, WAIT_COUNT,
                    PCT_UNDERSPECIFIED, PCT_STRONGLY_COMPLIANT),
    forbid_obligation_noncompliance=True)

RISKY = BehaviorMode(
    name="risky",
    priority_order=(SUBGOAL_COUNT, WAIT_COUNT),
    forbid_obligation_noncompliance=False)

BUILTIN_MODES: dict[str, BehaviorMode] = {m.name: m for m in (SAFE, NORMAL, RISKY)}


def compare_lex(a: MetricVector, b: MetricVector, mode: BehaviorMode) -> int:
    """-1, 0 or 1: lexicographic comparison along the mode's priority order,
    maximizing every level."""
    for metric in mode.priority_order:
        av, bv = a[metric], b[metric]
        if av != bv:
            return 1 if av > bv else -1
    return 0
