"""HTTP facade: endpoint contracts, error mapping, statelessness."""

import pytest
from fastapi.testclient import TestClient

from driftnet.bundled import default_bundle
from driftnet.maturity import Assessment
from driftnet.server import create_app
from driftnet.simulation import model_roles, what_if


@pytest.fixture(scope="module")
def client(built_network):
    framework, _, drifts = default_bundle()
    app = create_app(
        built_network,
        framework,
        drifts=drifts,
        provenance={"alpha": 1.0, "granularity": "event"},
    )
    with TestClient(app) as c:
        yield c


class TestModelEndpoint:
    def test_descriptor_shape(self, client, built_network):
        doc = client.get("/model").json()
        assert doc["bands"] == ["P_1", "P_1_10", "P_10_100", "P_100"]
        assert doc["domains"] == ["Social", "Contract", "Interface", "Results"]
        assert len(doc["cells"]) == 9
        assert doc["levels"] == 5
        assert len(doc["drift_factors"]) == 14
        assert doc["provenance"]["alpha"] == 1.0
        assert "schemas" in doc

    def test_questions_cover_exactly_the_network_nodes(self, client, built_network):
        doc = client.get("/model").json()
        roles = model_roles(built_network)
        assert set(doc["questions"]) == set(roles.maturity)
        assert all(text for text in doc["questions"].values())

    def test_drift_catalogue_carries_cells_and_labels(self, client):
        doc = client.get("/model").json()
        entry = next(d for d in doc["drift_factors"] if d["id"] == "1.2")
        assert entry["cell"] == "MR"
        assert entry["domain"] == "Contract"
        assert entry["label"]


class TestWhatIfEndpoint:
    def test_valid_assessment_normalizes(self, client):
        response = client.post("/whatif", json={"answers": {"MR.Contract.LV1": "Yes"}})
        assert response.status_code == 200
        body = response.json()
        assert sum(body["overcost"].values()) == pytest.approx(1.0, abs=1e-9)
        assert body["evidence"] == {"MR.Contract.LV1": "Yes"}

    def test_matches_library_call_exactly(self, client, built_network):
        body = client.post("/whatif", json={"answers": {"PA.Results.LV3": "No"}}).json()
        direct = what_if(built_network, Assessment({("PA", "Results", 3): "No"})).as_dict()
        assert body == direct

    def test_unknown_question_is_400(self, client):
        response = client.post("/whatif", json={"answers": {"ZZ.Nowhere.LV1": "Yes"}})
        assert response.status_code == 400
        assert "unknown question" in response.json()["error"]

    def test_grid_question_outside_the_model_is_also_unknown(self, client):
        # VF.Results exists on the grid but no drift of the bundled
        # catalogue references it, so the descriptor does not list it
        response = client.post("/whatif", json={"answers": {"VF.Results.LV1": "Yes"}})
        assert response.status_code == 400
        assert "unknown question" in response.json()["error"]

    def test_malformed_key_is_400(self, client):
        response = client.post("/whatif", json={"answers": {"weird": "Yes"}})
        assert response.status_code == 400
        assert "error" in response.json()

    def test_bad_answer_value_is_400(self, client):
        response = client.post("/whatif", json={"answers": {"MR.Contract.LV1": "Maybe"}})
        assert response.status_code == 400

    def test_all_yes_zeroes_drift_risks(self, client, built_network):
        roles = model_roles(built_network)
        answers = {node: "Yes" for node in roles.maturity}
        body = client.post("/whatif", json={"answers": answers}).json()
        assert all(v == 0.0 for v in body["drift_risks"].values())

    def test_stateless_identical_requests_identical_bodies(self, client):
        payload = {"answers": {"MR.Contract.LV2": "No", "PA.Results.LV1": "Yes"}}
        first = client.post("/whatif", json=payload)
        second = client.post("/whatif", json=payload)
        assert first.content == second.content


class TestSweepEndpoint:
    def test_six_rows_levels_0_to_5(self, client):
        body = client.get("/sweep").json()
        assert body["mode"] == "cumulative"
        assert [row["level"] for row in body["rows"]] == [0, 1, 2, 3, 4, 5]
        for row in body["rows"]:
            assert sum(row["overcost"].values()) == pytest.approx(1.0, abs=1e-9)

    def test_exclusive_mode(self, client):
        body = client.get("/sweep", params={"mode": "exclusive"}).json()
        assert body["mode"] == "exclusive"
        assert len(body["rows"]) == 6

    def test_bad_mode_is_400(self, client):
        response = client.get("/sweep", params={"mode": "sideways"})
        assert response.status_code == 400


class TestRankEndpoint:
    def test_ranked_actions_sorted(self, client):
        body = client.post("/rank", json={"answers": {}}).json()
        actions = body["actions"]
        assert len(actions) == 65
        deltas = [a["delta"] for a in actions]
        assert deltas == sorted(deltas, reverse=True)

    def test_all_yes_empty(self, client, built_network):
        roles = model_roles(built_network)
        answers = {node: "Yes" for node in roles.maturity}
        body = client.post("/rank", json={"answers": answers}).json()
        assert body["actions"] == []


def test_unknown_route_is_404(client):
    assert client.get("/nope").status_code == 404
