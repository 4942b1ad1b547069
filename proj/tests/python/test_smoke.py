import json
import pathlib

import pytest

import agtrack

SCENARIOS = pathlib.Path(__file__).resolve().parents[2] / "scenarios"


def scenario_text(name):
    return (SCENARIOS / name).read_text()


def test_version():
    assert agtrack.__version__ == "0.1.0"


def test_validate_reference():
    info = agtrack.validate_scenario(scenario_text("reference.json"))
    assert info["name"] == "reference"
    assert set(info["configs"]) == {"full_qoe", "full_cacat", "uav_only"}
    assert info["seeds"] == [0, 1, 2]


def test_validate_rejects_bad_schema():
    doc = json.loads(scenario_text("reference.json"))
    del doc["links"]["camera_lan"]
    with pytest.raises(agtrack.ScenarioError, match="links.camera_lan"):
        agtrack.validate_scenario(json.dumps(doc))


def test_override_applies():
    info = agtrack.validate_scenario(
        scenario_text("reference.json"), sets=["episode.duration=5"]
    )
    assert info["duration"] == 5


def test_run_episode_metrics():
    m = agtrack.run_episode(scenario_text("pursuit.json"), "default", seed=0)
    assert m["tracked_fraction"] == 1.0
    assert m["loss_events"] == 0
    assert m["flight_seconds"] <= 90.0


def test_run_episode_deterministic():
    text = scenario_text("reference.json")
    a = agtrack.run_episode(text, "full_qoe", seed=1)
    b = agtrack.run_episode(text, "full_qoe", seed=1)
    assert a == b


def test_run_experiment_shape():
    text = scenario_text("reference.json")
    result = agtrack.run_experiment(text, jobs=2)
    assert result["scenario"] == "reference"
    names = {c["name"] for c in result["configs"]}
    assert names == {"full_qoe", "full_cacat", "uav_only"}
    for c in result["configs"]:
        assert [e["seed"] for e in c["episodes"]] == [0, 1, 2]
        assert c["summary"]["tracked_fraction"]["count"] == 3


def test_experiment_csv_header():
    csv = agtrack.experiment_csv(scenario_text("pursuit.json"))
    header = csv.splitlines()[0]
    assert header.startswith("scenario,config,seed,stat,")
    assert "tracked_fraction" in header


def test_oracles():
    for check in ("mra", "asrt", "qoe", "cacat"):
        report = agtrack.oracle(check, trials=10, seed=3)
        assert report["ok"], report


def test_digest_stable():
    assert agtrack.config_digest("abc") == agtrack.config_digest("abc")
    assert agtrack.config_digest("abc") != agtrack.config_digest("abd")
