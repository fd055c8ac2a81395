"""HTTP service tests via the in-process test client."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from normplan.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_scenario_catalog_lists_ten(client):
    rows = client.get("/api/scenarios").json()
    assert [row["id"] for row in rows] == [f"s{i}" for i in range(1, 11)]
    s1 = rows[0]
    assert s1["display"]["rows"] == 3
    assert s1["display"]["agent"] == "l4"
    assert s1["display"]["ores"] == {"gold": "l0", "iron": "l1", "silver": "l7"}
    colors = {cell["id"]: cell["color"] for cell in s1["display"]["cells"]}
    assert colors["l4"] == "red" and colors["l3"] == "yellow"
    assert colors["l0"] == "green"


def test_solve_table1_schedule(client):
    response = client.post("/api/solve", json={
        "scenario_id": "s1", "initial_mode": "safe",
        "changes": [{"step": 3, "mode": "normal"},
                    {"step": 7, "mode": "risky"}]})
    assert response.status_code == 200
    body = response.json()
    assert body["errors"] == []
    nonwait = [s for s in body["plan"]["steps"] if s["action"] != "wait"]
    assert len(nonwait) == 10
    assert [seg["mode"] for seg in body["plan"]["segments"]] \
        == ["safe", "normal", "risky"]
    assert body["solve_time_ms"] >= 0


def test_solve_risky_seven_actions(client):
    response = client.post("/api/solve", json={
        "scenario_id": "s1", "initial_mode": "risky", "changes": []})
    assert response.status_code == 200
    nonwait = [s for s in response.json()["plan"]["steps"]
               if s["action"] != "wait"]
    assert len(nonwait) == 7


def test_missing_mode_in_change_is_422(client):
    response = client.post("/api/solve", json={
        "scenario_id": "s1", "initial_mode": "safe",
        "changes": [{"step": 3}]})
    assert response.status_code == 422
    body = response.json()
    assert body["plan"] is None
    assert [e["code"] for e in body["errors"]] == ["mode_and_step_required"]


def test_all_violations_enumerated(client):
    response = client.post("/api/solve", json={
        "scenario_id": "s1", "initial_mode": "bold",
        "changes": [{"step": 99, "mode": "stealth"}, {"step": 2}]})
    assert response.status_code == 422
    codes = [e["code"] for e in response.json()["errors"]]
    assert "unknown_mode" in codes
    assert "step_out_of_range" in codes
    assert "mode_and_step_required" in codes
    assert len(codes) >= 3


def test_three_changes_rejected(client):
    response = client.post("/api/solve", json={
        "scenario_id": "s1", "initial_mode": "safe",
        "changes": [{"step": 2, "mode": "normal"},
                    {"step": 4, "mode": "risky"},
                    {"step": 6, "mode": "safe"}]})
    assert response.status_code == 422
    assert [e["code"] for e in response.json()["errors"]] == ["too_many_changes"]


def test_unknown_scenario_404(client):
    response = client.post("/api/solve", json={
        "scenario_id": "s99", "initial_mode": "safe", "changes": []})
    assert response.status_code == 404


def test_malformed_body_is_422_with_errors(client):
    response = client.post("/api/solve", json={"initial_mode": "safe"})
    assert response.status_code == 422
    body = response.json()
    assert body["errors"][0]["code"] == "invalid_request"
    assert "scenario_id" in body["errors"][0]["message"]


def test_solve_is_idempotent(client):
    request = {"scenario_id": "s2", "initial_mode": "normal", "changes": []}
    first = client.post("/api/solve", json=request).json()["plan"]
    second = client.post("/api/solve", json=request).json()["plan"]
    assert first == second


def test_analyze_base_plus_safe(client):
    response = client.get("/api/analyze",
                          params={"scenario": "s1", "modeset": "base,safe"})
    assert response.status_code == 200
    body = response.json()
    assert body["consistent"] and body["categorical"]
    assert body["witnesses"] == {}


def test_analyze_unknown_scenario_404(client):
    assert client.get("/api/analyze", params={"scenario": "nope"}).status_code == 404


def test_analyze_inconsistent_demo_policy(client):
    response = client.get("/api/analyze", params={
        "scenario": "s1", "modeset": "demo/inconsistent"})
    assert response.status_code == 200
    body = response.json()
    assert body["consistent"] is False
    witnesses = body["witnesses"]["inconsistent"]
    assert witnesses
    assert any(lit.startswith("at_loc(") for lit in witnesses[0])


def test_horizon_override(client):
    response = client.post("/api/solve", json={
        "scenario_id": "s1", "initial_mode": "risky", "changes": [],
        "horizon_override": 7})
    assert response.status_code == 200
    assert len(response.json()["plan"]["steps"]) == 7


def test_step_out_of_range_with_horizon_override(client):
    response = client.post("/api/solve", json={
        "scenario_id": "s1", "initial_mode": "safe",
        "changes": [{"step": 3, "mode": "normal"}], "horizon_override": 1})
    assert response.status_code == 422
    assert [e["code"] for e in response.json()["errors"]] == ["step_out_of_range"]


def test_no_plan_is_409(tmp_path):
    # A policy demanding an action the agent cannot execute leaves nothing
    # compliant, waiting included.
    import json as jsonlib

    from conftest import grid_doc
    scenario_dir = tmp_path / "scenarios" / "demo"
    policy_dir = tmp_path / "policies" / "demo"
    scenario_dir.mkdir(parents=True)
    policy_dir.mkdir(parents=True)
    doc = grid_doc("x1", 2, 2, risks={}, agent="l0",
                   ores={"gold": "l3", "silver": "l1", "iron": "l2"}, horizon=4)
    (scenario_dir / "x1.json").write_text(jsonlib.dumps(doc), encoding="utf-8")
    (policy_dir / "base.aopl").write_text(
        "obl(collect(gold)) if -has_ore(gold)\n", encoding="utf-8")
    app = create_app(tmp_path / "scenarios", tmp_path / "policies")
    with TestClient(app) as custom:
        response = custom.post("/api/solve", json={
            "scenario_id": "x1", "initial_mode": "safe", "changes": []})
    assert response.status_code == 409
    assert response.json()["errors"][0]["code"] == "no_plan"


def test_empty_scenario_dir_lists_nothing(tmp_path):
    app = create_app(tmp_path / "scenarios", tmp_path / "policies")
    with TestClient(app) as custom:
        assert custom.get("/api/scenarios").json() == []


def test_corrupt_scenario_file_is_skipped_with_warning(tmp_path, caplog):
    import json as jsonlib
    import logging

    from conftest import grid_doc
    scenario_dir = tmp_path / "scenarios" / "mining"
    scenario_dir.mkdir(parents=True)
    good = grid_doc("g1", 2, 2, risks={}, agent="l0",
                    ores={"gold": "l1", "silver": "l2", "iron": "l3"}, horizon=4)
    (scenario_dir / "g1.json").write_text(jsonlib.dumps(good), encoding="utf-8")
    (scenario_dir / "broken.json").write_text("{ not json", encoding="utf-8")
    app = create_app(tmp_path / "scenarios", tmp_path / "policies")
    with TestClient(app) as custom, caplog.at_level(logging.WARNING):
        rows = custom.get("/api/scenarios").json()
    assert [r["id"] for r in rows] == ["g1"]
    assert any("broken.json" in record.message or "broken.json" in str(record.args)
               for record in caplog.records)


def test_solve_timeout_is_504():
    app = create_app(solve_timeout_s=0.0)
    with TestClient(app) as custom:
        response = custom.post("/api/solve", json={
            "scenario_id": "s1", "initial_mode": "safe", "changes": []})
    assert response.status_code == 504
    assert response.json()["errors"][0]["code"] == "solve_timeout"
