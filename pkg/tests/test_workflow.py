"""
Tests for the stage pipeline
"""

import json

import pytest

from gaugeflow.config.experiment import StageName, validate_experiment
from gaugeflow.services.fixtures import experiment_preset
from gaugeflow.utils.errors import ConfigError, StageError
from gaugeflow.utils.logger import list_run_logs
from gaugeflow.workflow.pipeline import REPORT_FILE, StagePipeline, pipeline, run
from gaugeflow.workflow.workflow_types import StageStatus


@pytest.fixture
def minimal_config():
    return validate_experiment(experiment_preset("minimal"))


class TestPlanning:
    """Stage ordering against the data each stage needs"""

    def test_every_stage_is_defined(self):
        assert set(pipeline.stages) == set(StageName)
        assert pipeline.stages[StageName.COMPLEX].index == 0

    def test_missing_inputs_are_reported(self):
        config = validate_experiment(
            {
                "complex": {"fixture": "full_triangle"},
                "stages": ["complex", "optimize"],
                "seed": 1,
            }
        )
        problems = StagePipeline().plan_problems(config)
        assert [path for path, _ in problems] == ["$.stages[1]"]

    def test_valid_plan(self):
        config = validate_experiment(experiment_preset("u1_two_chart"))
        assert pipeline.plan_problems(config) == []

    def test_execute_refuses_bad_plan(self, tmp_path):
        config = validate_experiment(
            {"complex": {"fixture": "full_triangle"}, "stages": ["complex", "curvature"]}
        )
        with pytest.raises(ConfigError):
            pipeline.execute(config, str(tmp_path))
        assert not (tmp_path / REPORT_FILE).exists()


class TestExecution:
    """Running configs end to end"""

    def test_minimal_run(self, minimal_config, tmp_path):
        report = run(minimal_config, str(tmp_path))
        assert report.succeeded
        assert [r.name for r in report.stages] == [StageName.COMPLEX, StageName.HOMOLOGY]
        assert report.homology == [
            {"k": 0, "rank": 1, "torsion": []},
            {"k": 1, "rank": 1, "torsion": []},
        ]
        for name in ("complex.json", "homology.json", REPORT_FILE):
            assert (tmp_path / name).is_file()
        saved = json.loads((tmp_path / REPORT_FILE).read_text())
        assert saved["succeeded"] is True
        assert saved["stages"][1]["outputs"] == ["homology.json"]

    def test_complex_summary(self, minimal_config, tmp_path):
        report = run(minimal_config, str(tmp_path))
        summary = report.record(StageName.COMPLEX).summary
        assert summary["vertices"] == 3
        assert summary["euler_characteristic"] == 0

    def test_z2_triangle_preset(self, tmp_path):
        report = run(validate_experiment(experiment_preset("z2_triangle")), str(tmp_path))
        assert report.succeeded
        assert report.ising["frustrated_plaquettes"] == 1
        assert report.ising["ground_energy"] == pytest.approx(-1.0)
        assert report.ising["ground_count"] == 6
        assert report.final_objective is not None
        assert (tmp_path / "curvature.csv").is_file()

    def test_seeded_runs_reproduce_results(self, tmp_path):
        config = validate_experiment(experiment_preset("u1_two_chart"))
        first = run(config, str(tmp_path / "a"))
        second = run(config, str(tmp_path / "b"))
        assert first.succeeded and second.succeeded
        assert first.run_id != second.run_id
        for name in ("bundle.json", "connection_optimized.json", "network_links.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_failing_stage_stops_the_run(self, tmp_path):
        config = validate_experiment(
            {
                "complex": {"fixture": "full_triangle"},
                "holonomy": {"vertex": 99},
                "stages": ["complex", "bundle", "connection", "holonomy", "curvature"],
                "seed": 2,
            }
        )
        with pytest.raises(StageError):
            run(config, str(tmp_path))
        saved = json.loads((tmp_path / REPORT_FILE).read_text())
        assert saved["succeeded"] is False
        assert [s["status"] for s in saved["stages"]] == ["completed"] * 3 + ["failed"]
        assert saved["stages"][-1]["error"]

    def test_report_records_status(self, minimal_config, tmp_path):
        report = run(minimal_config, str(tmp_path))
        assert report.record(StageName.HOMOLOGY).status is StageStatus.COMPLETED
        assert report.record(StageName.ISING) is None

    def test_run_log_is_written(self, minimal_config, tmp_path):
        report = run(minimal_config, str(tmp_path))
        logs = list_run_logs()
        assert report.run_id[:8] in logs
        assert "EXPERIMENT RUN ENDED" in logs[report.run_id[:8]].read_text()
