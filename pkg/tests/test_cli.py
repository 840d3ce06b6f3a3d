"""End-to-end CLI behavior: happy paths, exit codes, determinism."""

import json

import pytest

from driftnet.cli import main
from driftnet.jsonio import load_network


@pytest.fixture()
def workspace(tmp_path):
    paths = {
        "events": tmp_path / "events.csv",
        "model": tmp_path / "model.json",
        "network": tmp_path / "network.json",
        "assessment": tmp_path / "assessment.json",
        "out": tmp_path / "out",
    }
    return paths


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _pipeline(capsys, ws):
    code, _, _ = _run(capsys, "gen", "--out", ws["events"], "--seed", "42")
    assert code == 0
    code, _, _ = _run(capsys, "learn", "--events", ws["events"], "--out", ws["model"])
    assert code == 0
    code, _, _ = _run(capsys, "build", "--model", ws["model"], "--out", ws["network"])
    assert code == 0


class TestPipeline:
    def test_gen_learn_build_validate(self, capsys, workspace):
        _pipeline(capsys, workspace)
        code, out, _ = _run(capsys, "validate", "--network", workspace["network"])
        assert code == 0
        assert "valid network" in out

    def test_learn_reports_band_prior_and_14_conditionals(self, capsys, workspace):
        _pipeline(capsys, workspace)
        model = json.loads(workspace["model"].read_text())
        assert set(model["prior"]) == {"P_1", "P_1_10", "P_10_100", "P_100"}
        assert len(model["conditionals"]) == 14
        assert model["alpha"] == 1.0

    def test_infer_all_yes_zeroes_drift_risks(self, capsys, workspace):
        _pipeline(capsys, workspace)
        net = load_network(workspace["network"])
        from driftnet.simulation import model_roles

        roles = model_roles(net)
        answers = {node: "Yes" for node in roles.maturity}
        workspace["assessment"].write_text(json.dumps({"answers": answers}))
        out_path = workspace["out"].with_suffix(".json")
        code, _, _ = _run(
            capsys, "infer", "--network", workspace["network"],
            "--assessment", workspace["assessment"], "--out", out_path,
        )
        assert code == 0
        result = json.loads(out_path.read_text())
        assert all(risk == 0.0 for risk in result["drift_risks"].values())
        assert sum(result["overcost"].values()) == pytest.approx(1.0, abs=1e-9)

    def test_sweep_writes_csv_and_renders_table(self, capsys, workspace):
        _pipeline(capsys, workspace)
        csv_path = workspace["out"].with_suffix(".csv")
        code, out, _ = _run(capsys, "sweep", "--network", workspace["network"], "--out", csv_path)
        assert code == 0
        assert out.startswith("level")
        lines = csv_path.read_text().strip().split("\n")
        assert lines[0] == "level,p_1,p_1_10,p_10_100,p_100"
        assert len(lines) == 7

    def test_rank_on_partial_assessment(self, capsys, workspace):
        _pipeline(capsys, workspace)
        workspace["assessment"].write_text(json.dumps({"answers": {"MR.Contract.LV1": "Yes"}}))
        out_path = workspace["out"].with_suffix(".json")
        code, _, _ = _run(
            capsys, "rank", "--network", workspace["network"],
            "--assessment", workspace["assessment"], "--out", out_path,
        )
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert len(doc["actions"]) == 64  # 65 questions, one already Yes
        deltas = [a["delta"] for a in doc["actions"]]
        assert deltas == sorted(deltas, reverse=True)

    def test_export_xmlbif_round_trips(self, capsys, workspace):
        _pipeline(capsys, workspace)
        xml_path = workspace["out"].with_suffix(".xmlbif")
        code, _, _ = _run(capsys, "export-xmlbif", "--network", workspace["network"], "--out", xml_path)
        assert code == 0
        from driftnet.xmlbif import load_xmlbif

        again = load_xmlbif(xml_path)
        assert again.variable_ids() == load_network(workspace["network"]).variable_ids()


class TestDeterminism:
    def test_gen_twice_is_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        _run(capsys, "gen", "--out", a, "--seed", "7", "--n-events", "100")
        _run(capsys, "gen", "--out", b, "--seed", "7", "--n-events", "100")
        assert a.read_bytes() == b.read_bytes()

    def test_full_pipeline_outputs_are_byte_identical(self, capsys, tmp_path):
        outputs = []
        for tag in ("first", "second"):
            d = tmp_path / tag
            d.mkdir()
            ws = {k: d / n for k, n in [
                ("events", "events.csv"), ("model", "model.json"), ("network", "network.json"),
            ]}
            _run(capsys, "gen", "--out", ws["events"], "--seed", "42")
            _run(capsys, "learn", "--events", ws["events"], "--out", ws["model"])
            _run(capsys, "build", "--model", ws["model"], "--out", ws["network"])
            outputs.append([p.read_bytes() for p in ws.values()])
        assert outputs[0] == outputs[1]


class TestExitCodes:
    def test_missing_file_is_2(self, capsys, tmp_path):
        code, _, err = _run(capsys, "validate", "--network", tmp_path / "nope.json")
        assert code == 2
        assert "error:" in err

    def test_malformed_json_is_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, _ = _run(capsys, "validate", "--network", bad)
        assert code == 2

    def test_unnormalizable_rows_rejected_at_load(self, capsys, tmp_path):
        path = tmp_path / "invalid.json"
        path.write_text(json.dumps({
            "variables": [{"id": "X", "states": ["T", "F"]}],
            "cpts": [{"child": "X", "parents": [], "rows": [[0.7, 0.7]]}],
        }))
        code, _, err = _run(capsys, "validate", "--network", path)
        assert code == 2  # 0.4 off unity is beyond the renormalize band

    def test_row_within_renormalize_band_still_validates(self, capsys, tmp_path):
        path = tmp_path / "nearly.json"
        path.write_text(json.dumps({
            "variables": [{"id": "X", "states": ["T", "F"]}],
            "cpts": [{"child": "X", "parents": [], "rows": [[0.5, 0.5 + 2e-7]]}],
        }))
        code, out, _ = _run(capsys, "validate", "--network", path)
        assert code == 0

    def test_structurally_invalid_network_is_1(self, capsys, tmp_path):
        path = tmp_path / "cycle.json"
        path.write_text(json.dumps({
            "variables": [
                {"id": "X", "states": ["T", "F"]},
                {"id": "Y", "states": ["T", "F"]},
            ],
            "cpts": [
                {"child": "X", "parents": ["Y"], "rows": [[0.5, 0.5], [0.5, 0.5]]},
                {"child": "Y", "parents": ["X"], "rows": [[0.5, 0.5], [0.5, 0.5]]},
            ],
        }))
        code, _, err = _run(capsys, "validate", "--network", path)
        assert code == 1
        assert "cycle" in err

    def test_unknown_question_in_assessment_is_1(self, capsys, workspace):
        _pipeline(capsys, workspace)
        workspace["assessment"].write_text(json.dumps({"answers": {"VF.Results.LV1": "Yes"}}))
        code, _, err = _run(
            capsys, "infer", "--network", workspace["network"],
            "--assessment", workspace["assessment"],
        )
        assert code == 1
        assert "unknown question" in err
