import math

import pytest
from fastapi.testclient import TestClient

from fear.io import scenario_to_document
from fear.service import create_app

from helpers import two_agent_scenario


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def case1a_doc():
    return scenario_to_document(two_agent_scenario("L1", "R1"))


class TestEvaluate:
    def test_case1a_numbers(self, client):
        response = client.post("/evaluate", json=case1a_doc())
        assert response.status_code == 200
        body = response.json()
        assert math.isclose(body["fear"][0][1], -1 / 6, abs_tol=1e-5)
        assert body["fear_display"][0][1] == -0.17
        assert body["collisions"] == []

    def test_duplicate_positions_rejected(self, client):
        doc = case1a_doc()
        doc["agents"][1]["x"] = doc["agents"][0]["x"]
        response = client.post("/evaluate", json=doc)
        assert response.status_code == 400
        assert any("share origin" in v for v in response.json()["violations"])

    def test_schema_violation_rejected(self, client):
        doc = case1a_doc()
        doc["surprise"] = True
        response = client.post("/evaluate", json=doc)
        assert response.status_code == 400

    def test_malformed_body_rejected(self, client):
        response = client.post(
            "/evaluate", content=b"[not json", headers={"content-type": "application/json"}
        )
        assert response.status_code == 400

    def test_inconsistent_mdr_is_422_with_events(self, client):
        doc = scenario_to_document(two_agent_scenario("S0", "S0"))
        doc["agents"] = [{"id": 1, "x": 3, "y": 0}, {"id": 2, "x": 4, "y": 0}]
        doc["mdr"] = {"1": "R1", "2": "L1"}
        response = client.post("/evaluate", json=doc)
        assert response.status_code == 422
        events = response.json()["events"]
        assert events and events[0]["kind"] == "swap"

    def test_stateless_identical_requests_identical_bodies(self, client):
        first = client.post("/evaluate", json=case1a_doc())
        second = client.post("/evaluate", json=case1a_doc())
        assert first.content == second.content

    def test_parity_with_cli_export(self, client):
        from fear.io import evaluate_scenario, export_results
        import json

        response = client.post("/evaluate", json=case1a_doc())
        direct = json.loads(export_results(evaluate_scenario(two_agent_scenario("L1", "R1")), "json"))
        assert response.json() == direct


class TestWhatIf:
    def test_sweep_has_17_entries_and_matches_plain_evaluation(self, client):
        response = client.post("/whatif", json={"scenario": case1a_doc(), "agent": 1})
        assert response.status_code == 200
        body = response.json()
        assert body["agent"] == 1
        assert len(body["entries"]) == 17
        current = next(e for e in body["entries"] if e["action"] == "L1")
        evaluation = client.post("/evaluate", json=case1a_doc()).json()
        assert current["fear_row"]["2"] == evaluation["fear"][0][1]
        assert current["collisions"] == evaluation["collisions"]

    def test_l1_more_courteous_than_r1(self, client):
        body = client.post("/whatif", json={"scenario": case1a_doc(), "agent": 1}).json()
        rows = {e["action"]: e["fear_row"]["2"] for e in body["entries"]}
        assert rows["L1"] < rows["R1"]
        assert math.isclose(rows["R1"], 1 / 6, abs_tol=1e-5)
        assert math.isclose(rows["L1"], -1 / 6, abs_tol=1e-5)

    def test_infeasible_candidates_are_flagged_but_previewed(self, client):
        body = client.post("/whatif", json={"scenario": case1a_doc(), "agent": 1}).json()
        by_action = {e["action"]: e for e in body["entries"]}
        assert not by_action["L3"]["feasible"]  # would leave the lane
        assert by_action["L3"]["fear_row"]  # preview still computed
        assert by_action["R1"]["feasible"]

    def test_wall_adjacent_agent_reports_right_moves_infeasible(self, client):
        doc = case1a_doc()
        doc["agents"] = [{"id": 1, "x": 2, "y": 0}, {"id": 2, "x": 9, "y": 0}]
        body = client.post("/whatif", json={"scenario": doc, "agent": 2}).json()
        by_action = {e["action"]: e for e in body["entries"]}
        for code in ("R1", "R2", "R3", "R4"):
            assert not by_action[code]["feasible"]
            assert by_action[code]["collisions"][0]["kind"] == "boundary"

    def test_unknown_agent_rejected(self, client):
        response = client.post("/whatif", json={"scenario": case1a_doc(), "agent": 9})
        assert response.status_code == 400

    def test_missing_keys_rejected(self, client):
        response = client.post("/whatif", json={"scenario": case1a_doc()})
        assert response.status_code == 400


class TestStaticRoutes:
    def test_catalog_has_17_codes(self, client):
        response = client.get("/catalog")
        assert response.status_code == 200
        actions = response.json()["actions"]
        assert len(actions) == 17
        assert actions[:3] == ["S0", "R1", "R2"]

    def test_fixtures_include_case_studies(self, client):
        body = client.get("/fixtures").json()
        assert {"case1a", "case1b", "case1c"} <= set(body)
        assert {f"case3{t}" for t in "abcde"} <= set(body)
        # fixture documents are loadable scenario documents
        response = client.post("/evaluate", json=body["case1a"])
        assert response.status_code == 200

    def test_unknown_route_is_404(self, client):
        assert client.get("/nope").status_code == 404

    def test_cors_allows_localhost_ui(self, client):
        response = client.options(
            "/evaluate",
            headers={
                "Origin": "http://localhost:5173",
                "Access-Control-Request-Method": "POST",
            },
        )
        assert response.headers.get("access-control-allow-origin") == "http://localhost:5173"
