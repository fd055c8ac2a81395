"""Scenario and policy catalogs.

Scenario files live under <scenario_dir>/<domain>/<id>.json and policies
under <policy_dir>/<domain>/.  `<domain>/base.aopl` always applies;
`<domain>/<mode>.aopl`, when present, is attached to that behavior mode as
an extra policy.  The packaged mining catalog is the default for both
directories.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path
from typing import Optional

from .controller import AnnotatedPlan, ModeSchedule, generate_plan_with_mode_changes
from .domain import Scenario, load_scenario_file, reachable_states
from .errors import NormplanError, ValidationError
from .modes import BUILTIN_MODES, BehaviorMode
from .policy import AnalysisReport, Policy, analyze, load_policy_file

log = logging.getLogger(__name__)

RISK_PREDICATE = "has_risk_level"
RISK_COLORS = {"low": "green", "medium": "yellow", "high": "red"}


def default_scenario_dir() -> Path:
    return Path(files("normplan") / "scenarios")


def default_policy_dir() -> Path:
    return Path(files("normplan") / "policies")


def _natural_key(text: str):
    return [int(part) if part.isdigit() else part
            for part in re.split(r"(\d+)", text)]


@dataclass(frozen=True)
class ScenarioEntry:
    id: str
    domain: str
    path: Path


class Catalog:
    """Loads and caches scenarios, their base policies and behavior modes."""

    def __init__(self, scenario_dir: Optional[Path] = None,
                 policy_dir: Optional[Path] = None):
        self.scenario_dir = Path(scenario_dir) if scenario_dir else default_scenario_dir()
        self.policy_dir = Path(policy_dir) if policy_dir else default_policy_dir()
        self._scenarios: dict[str, Scenario] = {}
        self._entries: Optional[dict[str, ScenarioEntry]] = None

    def entries(self) -> list[ScenarioEntry]:
        if self._entries is None:
            found: dict[str, ScenarioEntry] = {}
            if self.scenario_dir.is_dir():
                for path in sorted(self.scenario_dir.glob("*/*.json")):
                    entry = ScenarioEntry(path.stem, path.parent.name, path)
                    found[entry.id] = entry
            self._entries = found
        return sorted(self._entries.values(), key=lambda e: _natural_key(e.id))

    def scenario_ids(self) -> list[str]:
        return [entry.id for entry in self.entries()]

    def entry(self, scenario_id: str) -> ScenarioEntry:
        self.entries()
        if scenario_id not in self._entries:
            raise KeyError(f"unknown scenario {scenario_id!r}")
        return self._entries[scenario_id]

    def scenario(self, scenario_id: str) -> Scenario:
        if scenario_id not in self._scenarios:
            self._scenarios[scenario_id] = load_scenario_file(
                self.entry(scenario_id).path)
        return self._scenarios[scenario_id]

    def listing(self) -> list[dict]:
        """Catalog rows for the scenario picker; corrupt files are skipped
        with a warning."""
        rows = []
        for entry in self.entries():
            try:
                scenario = self.scenario(entry.id)
            except NormplanError as exc:
                log.warning("skipping scenario %s: %s", entry.path, exc)
                continue
            rows.append({"id": scenario.id, "name": scenario.name,
                         "horizon": scenario.horizon,
                         "display": grid_metadata(scenario)})
        return rows

    # --- policies and modes ------------------------------------------------

    def base_policy(self, scenario: Scenario, domain: Optional[str] = None) -> Policy:
        domain = domain or self._domain_of(scenario)
        path = self.policy_dir / domain / "base.aopl"
        if not path.is_file():
            raise ValidationError(f"no base policy at {path}")
        return load_policy_file(path, scenario)

    def modes_for(self, scenario: Scenario,
                  domain: Optional[str] = None) -> dict[str, BehaviorMode]:
        domain = domain or self._domain_of(scenario)
        modes = {}
        for name, mode in BUILTIN_MODES.items():
            extra_path = self.policy_dir / domain / f"{name}.aopl"
            if extra_path.is_file():
                mode = mode.with_extra_policies(
                    load_policy_file(extra_path, scenario))
            modes[name] = mode
        return modes

    def named_policy(self, name: str, scenario: Scenario,
                     domain: Optional[str] = None) -> Policy:
        """Resolves a policy reference: 'base' or a mode name within the
        scenario's domain, or a relative path like 'demo/inconsistent'."""
        domain = domain or self._domain_of(scenario)
        for candidate in (self.policy_dir / domain / f"{name}.aopl",
                          self.policy_dir / f"{name}.aopl",
                          Path(name)):
            if candidate.is_file():
                return load_policy_file(candidate, scenario)
        raise KeyError(f"unknown policy {name!r}")

    def _domain_of(self, scenario: Scenario) -> str:
        self.entries()
        entry = self._entries.get(scenario.id)
        return entry.domain if entry else "mining"

    # --- high-level operations ----------------------------------------------

    def solve(self, scenario_id: str, schedule: ModeSchedule, *,
              horizon_override: Optional[int] = None,
              deadline: Optional[float] = None) -> AnnotatedPlan:
        scenario = self.scenario(scenario_id)
        if horizon_override is not None:
            scenario = with_horizon(scenario, horizon_override)
        policy = self.base_policy(scenario, self.entry(scenario_id).domain)
        modes = self.modes_for(scenario, self.entry(scenario_id).domain)
        return generate_plan_with_mode_changes(scenario, policy, schedule,
                                               modes, deadline=deadline)

    def analyze_modeset(self, scenario_id: str,
                        modeset: list[str]) -> AnalysisReport:
        """Def.-1 style analysis of the union of the named policies over the
        scenario's reachable states."""
        scenario = self.scenario(scenario_id)
        domain = self.entry(scenario_id).domain
        policies = [self.named_policy(name, scenario, domain) for name in modeset]
        if not policies:
            policies = [self.base_policy(scenario, domain)]
        merged = policies[0].merged_with(*policies[1:])
        return analyze(merged, sorted(reachable_states(scenario),
                                      key=lambda s: tuple(l.sort_key()
                                                          for l in s.positives())))


def with_horizon(scenario: Scenario, horizon: int) -> Scenario:
    """A copy of the scenario with a different horizon."""
    return Scenario(id=scenario.id, name=scenario.name,
                    signature=scenario.signature, laws=scenario.laws,
                    initial=scenario.initial,
                    statics_facts=scenario.statics_facts,
                    subgoals=scenario.subgoals, horizon=horizon,
                    display=scenario.display)


def grid_metadata(scenario: Scenario) -> Optional[dict]:
    """Display payload for grid scenarios: cell coordinates, risk colors and
    the agent/ore markers from the initial state."""
    display = scenario.display
    if not display or "coords" not in display:
        return None
    risks = {}
    for atom in scenario.statics_facts:
        if atom.predicate == RISK_PREDICATE and len(atom.args) == 2:
            risks[atom.args[0]] = atom.args[1]
    cells = []
    for loc, (row, col) in sorted(display["coords"].items(),
                                  key=lambda kv: _natural_key(kv[0])):
        risk = risks.get(loc, "low")
        cells.append({"id": loc, "row": row, "col": col, "risk": risk,
                      "color": RISK_COLORS.get(risk, "green")})
    agent = None
    ores = {}
    for literal in scenario.initial.positives():
        if literal.atom.predicate == "at_loc":
            agent = literal.atom.args[0]
        elif literal.atom.predicate == "ore_loc":
            ores[literal.atom.args[0]] = literal.atom.args[1]
    return {"rows": display["rows"], "cols": display["cols"], "cells": cells,
            "agent": agent, "ores": dict(sorted(ores.items()))}
