"""Command line: solve schedules, analyze policies, list scenarios, serve.

Examples:

    normplan scenarios list
    normplan solve --scenario s1 --mode safe --change 3:normal --change 7:risky
    normplan analyze --scenario s1 --policy base --policy safe
    normplan serve --port 8000
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from .catalog import Catalog, with_horizon
from .controller import (ModeChange, ModeSchedule,
                         generate_plan_with_mode_changes, validate_schedule)
from .domain import load_scenario_file
from .errors import NoPlan, NormplanError
from .policy import analyze as analyze_policy
from .domain import reachable_states

scenario_dir_option = click.option(
    "--scenario-dir", type=click.Path(path_type=Path), default=None,
    envvar="NORMPLAN_SCENARIO_DIR", help="Directory of scenario files.")
policy_dir_option = click.option(
    "--policy-dir", type=click.Path(path_type=Path), default=None,
    envvar="NORMPLAN_POLICY_DIR", help="Directory of policy files.")


@click.group()
def main() -> None:
    """Norm-aware planning with switchable behavior modes."""


@main.group()
def scenarios() -> None:
    """Scenario catalog commands."""


@scenarios.command("list")
@scenario_dir_option
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def scenarios_list(scenario_dir: Path | None, as_json: bool) -> None:
    """List the available scenarios."""
    rows = Catalog(scenario_dir).listing()
    if as_json:
        click.echo(json.dumps(rows, indent=2, sort_keys=True))
        return
    for row in rows:
        click.echo(f"{row['id']:>4}  horizon {row['horizon']:>2}  {row['name']}")


def _parse_change(text: str) -> ModeChange:
    step_text, _, mode = text.partition(":")
    try:
        return ModeChange(int(step_text), mode or None)
    except ValueError:
        raise click.BadParameter(f"expected STEP:MODE, got {text!r}") from None


def _resolve(catalog: Catalog, scenario_ref: str):
    path = Path(scenario_ref)
    if path.suffix == ".json" and path.is_file():
        scenario = load_scenario_file(path)
        return scenario, path.parent.name
    scenario = catalog.scenario(scenario_ref)
    return scenario, catalog.entry(scenario_ref).domain


@main.command()
@click.option("--scenario", "scenario_ref", required=True,
              help="Scenario id (e.g. s1) or path to a scenario file.")
@click.option("--mode", "initial_mode", required=True,
              help="Initial behavior mode.")
@click.option("--change", "changes", multiple=True, metavar="STEP:MODE",
              help="Behavior mode change; repeatable.")
@click.option("--horizon", type=int, default=None,
              help="Override the scenario horizon.")
@click.option("--json/--text", "as_json", default=False,
              help="Output format (default text).")
@scenario_dir_option
@policy_dir_option
def solve(scenario_ref: str, initial_mode: str, changes: tuple[str, ...],
          horizon: int | None, as_json: bool, scenario_dir: Path | None,
          policy_dir: Path | None) -> None:
    """Plan under a behavior mode schedule and print the trajectory."""
    catalog = Catalog(scenario_dir, policy_dir)
    try:
        scenario, domain = _resolve(catalog, scenario_ref)
        if horizon is not None:
            scenario = with_horizon(scenario, horizon)
        schedule = ModeSchedule(initial_mode,
                                tuple(_parse_change(c) for c in changes))
        modes = catalog.modes_for(scenario, domain)
        issues = validate_schedule(schedule, scenario, modes)
        if issues:
            for issue in issues:
                click.echo(f"error: {issue.message}", err=True)
            raise SystemExit(2)
        policy = catalog.base_policy(scenario, domain)
        started = time.monotonic()
        plan = generate_plan_with_mode_changes(scenario, policy, schedule, modes)
        elapsed_ms = int((time.monotonic() - started) * 1000)
    except NoPlan as exc:
        click.echo(f"no plan: {exc}", err=True)
        raise SystemExit(3) from exc
    except (NormplanError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(2) from exc
    if as_json:
        payload = plan.to_dict()
        payload["solve_time_ms"] = elapsed_ms
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(plan.to_text(), nl=False)


@main.command()
@click.option("--scenario", "scenario_ref", required=True,
              help="Scenario id or path to a scenario file.")
@click.option("--policy", "policy_names", multiple=True, default=("base",),
              show_default=True,
              help="Policy names/paths to merge; repeatable.")
@scenario_dir_option
@policy_dir_option
def analyze(scenario_ref: str, policy_names: tuple[str, ...],
            scenario_dir: Path | None, policy_dir: Path | None) -> None:
    """Consistency/categoricity report over the reachable states."""
    catalog = Catalog(scenario_dir, policy_dir)
    try:
        scenario, domain = _resolve(catalog, scenario_ref)
        policies = [catalog.named_policy(name, scenario, domain)
                    for name in policy_names]
        merged = policies[0].merged_with(*policies[1:])
        report = analyze_policy(merged, reachable_states(scenario))
    except (NormplanError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(2) from exc
    click.echo(f"scenario:    {scenario.id}")
    click.echo(f"policies:    {', '.join(policy_names)}")
    click.echo(f"consistent:  {report.consistent}")
    click.echo(f"categorical: {report.categorical}")
    for kind, states in report.witnesses.items():
        click.echo(f"{kind} at {len(states)} state(s); first witness:")
        for literal in states[0].positives():
            click.echo(f"  {literal}")
    if not report.consistent or not report.categorical:
        raise SystemExit(1)


@main.command()
@click.option("--port", type=int, default=8000, envvar="NORMPLAN_PORT",
              show_default=True)
@click.option("--host", default="127.0.0.1", envvar="NORMPLAN_HOST",
              show_default=True)
@click.option("--timeout", "solve_timeout", type=float, default=30.0,
              envvar="NORMPLAN_TIMEOUT", show_default=True,
              help="Per-solve timeout in seconds.")
@scenario_dir_option
@policy_dir_option
def serve(port: int, host: str, solve_timeout: float,
          scenario_dir: Path | None, policy_dir: Path | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app
    app = create_app(scenario_dir, policy_dir, solve_timeout_s=solve_timeout)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
