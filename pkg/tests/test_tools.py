"""
Tests for the command tools behind the CLI
"""

import json

import pytest

from gaugeflow.tools import (
    TOOLS,
    bundle_assign_tool,
    bundle_classes_tool,
    complex_build_tool,
    conn_holonomy_tool,
    conn_optimize_tool,
    curvature_map_tool,
    evolve_tool,
    homology_tool,
    ising_run_tool,
    net_generate_tool,
    stats_cumulants_tool,
)

TWO_CHART_U1 = {"complex": {"fixture": "two_chart"}, "group": {"kind": "u1"}}


class TestRegistry:
    def test_tool_names(self):
        assert set(TOOLS) == {
            "complex-build",
            "homology",
            "bundle-assign",
            "bundle-classes",
            "conn-optimize",
            "conn-holonomy",
            "curvature-map",
            "net-generate",
            "ising-run",
            "stats-cumulants",
            "evolve",
        }
        for name, tool in TOOLS.items():
            assert tool.name == name


class TestTopologyTools:
    """complex-build and homology"""

    def test_build_from_fixture(self):
        response = complex_build_tool({"fixture": "hollow_triangle", "seed": 0})
        assert response["success"]
        assert response["source"] == "topology"
        assert response["data"]["vertex_count"] == 3
        assert len(response["data"]["maximal_simplices"]) == 3

    def test_build_writes_file(self, tmp_path):
        response = complex_build_tool({"complex": {"fixture": "full_triangle"}}, str(tmp_path))
        saved = json.loads((tmp_path / "complex.json").read_text())
        assert saved == response["data"]

    def test_unknown_fixture_is_a_validation_failure(self):
        response = complex_build_tool({"fixture": "klein_bottle"})
        assert not response["success"]
        assert response["source"] == "validation"

    def test_malformed_complex_file_is_a_runtime_failure(self, tmp_path):
        path = tmp_path / "complex.json"
        path.write_text("{broken")
        response = complex_build_tool({"path": str(path)})
        assert not response["success"]
        assert response["source"] == "error"

    def test_torsion_of_projective_plane(self, projective_plane):
        response = homology_tool({"complex": projective_plane.to_dict(), "k": 1})
        assert response["data"] == {"k": 1, "rank": 0, "torsion": [2]}

    def test_every_degree(self, sphere):
        response = homology_tool({**sphere.to_dict(), "seed": 0})
        assert [d["rank"] for d in response["data"]] == [1, 0, 1]

    def test_negative_degree(self, sphere):
        response = homology_tool({"complex": sphere.to_dict(), "k": -1})
        assert response["source"] == "validation"


class TestBundleTools:
    def test_assign_and_classify(self):
        assigned = bundle_assign_tool(
            {**TWO_CHART_U1, "bundle": {"mode": "random", "density": 1.0}, "seed": 3}
        )
        assert assigned["success"]
        structure = assigned["data"]
        assert len(structure["slots"]) == 1

        classes = bundle_classes_tool({**TWO_CHART_U1, "structure": structure})
        assert classes["success"]
        assert "1" in classes["data"]["classes"]
        assert classes["data"]["strictly_trivial"] is False

    def test_trivial_bundle_classes(self):
        response = bundle_classes_tool(TWO_CHART_U1)
        assert response["data"]["strictly_trivial"] is True

    def test_missing_complex(self):
        response = bundle_assign_tool({"group": {"kind": "u1"}})
        assert not response["success"]
        assert "complex" in response["error"]

    def test_bad_section_value(self):
        response = bundle_assign_tool({**TWO_CHART_U1, "bundle": {"density": 3.0}})
        assert response["source"] == "validation"


class TestConnectionTools:
    def test_identity_connection_is_flat(self):
        response = curvature_map_tool(TWO_CHART_U1)
        assert response["success"]
        assert response["data"]["flat_trace"] == pytest.approx(2.0)
        rows = response["data"]["rows"]
        assert rows
        for row in rows:
            assert row["scalar_curvature"] == pytest.approx(2.0)

    def test_holonomy_of_identity_connection(self):
        response = conn_holonomy_tool(
            {"complex": {"fixture": "hollow_triangle"}, "group": {"kind": "u1"}}
        )
        data = response["data"]
        assert data["vertex"] == 0
        assert data["cycles"] == 1
        assert data["trivial"] is True

    def test_optimize_writes_results(self, tmp_path):
        request = {
            **TWO_CHART_U1,
            "connection": {"init": "random", "scale": 0.5},
            "optimizer": {"max_iterations": 5},
            "seed": 1,
        }
        response = conn_optimize_tool(request, str(tmp_path))
        assert response["success"]
        data = response["data"]
        assert data["functional"] == "static"
        assert {"objective", "iterations", "converged", "trace", "connection"} <= set(data)
        assert (tmp_path / "connection_optimized.json").is_file()
        assert (tmp_path / "optimizer_trace.jsonl").is_file()

    def test_optimize_is_seed_deterministic(self):
        request = {**TWO_CHART_U1, "connection": {"init": "random"}, "seed": 8}
        first = conn_optimize_tool(request)["data"]
        second = conn_optimize_tool(request)["data"]
        assert first["connection"] == second["connection"]


class TestModelTools:
    def test_ising_with_explicit_couplings(self):
        response = ising_run_tool(
            {
                "complex": {"fixture": "full_triangle"},
                "couplings": [[0, 1, 1], [1, 2, 1], [0, 2, -1]],
            }
        )
        data = response["data"]
        assert data["frustrated_plaquettes"] == 1
        assert data["ground_energy"] == pytest.approx(-1.0)
        assert data["ground_count"] == 6

    def test_ising_ferromagnet_anneals(self):
        response = ising_run_tool(
            {
                "complex": {"fixture": "full_triangle"},
                "ising": {"mode": "ferromagnetic", "anneal": True},
                "seed": 0,
            }
        )
        data = response["data"]
        assert data["frustrated_plaquettes"] == 0
        assert data["ground_energy"] == pytest.approx(-3.0)
        assert data["ground_count"] == 2
        assert set(data["annealed_spins"]) == {"0", "1", "2"}

    def test_ising_bad_coupling_entry(self):
        response = ising_run_tool(
            {"complex": {"fixture": "full_triangle"}, "couplings": [[0, 1]]}
        )
        assert response["source"] == "validation"

    def test_network_generation(self, tmp_path):
        request = {
            "complex": {"fixture": "hollow_triangle"},
            "group": {"kind": "u1"},
            "network": {"max_edges": 2},
            "seed": 4,
        }
        response = net_generate_tool(request, str(tmp_path))
        assert response["success"]
        assert response["data"]["statistics"]["nodes"] == 3
        assert (tmp_path / "network_links.csv").is_file()
        assert (tmp_path / "network.json").is_file()

    def test_evolution_trajectory(self):
        request = {
            **TWO_CHART_U1,
            "evolution": {"steps": 2, "perturbation": 0.05},
            "optimizer": {"max_iterations": 3},
            "seed": 6,
        }
        response = evolve_tool(request)
        assert response["success"]
        assert [row["step"] for row in response["data"]["trajectory"]] == [0, 1, 2]


class TestStatsTool:
    def test_cumulants_from_rows(self):
        response = stats_cumulants_tool({"data": [[1.0, 2.0], [3.0, 4.0]], "max_order": 2})
        values = response["data"]["cumulants"]["values"]
        assert values["1,1"] == pytest.approx(1.0)
        assert values["1,0"] == pytest.approx(2.0)

    def test_degrees_table(self):
        response = stats_cumulants_tool(
            {"data": [[0.0], [1.0]], "lie_family": "su", "rank": 3}
        )
        assert response["data"]["degrees"]["degrees"] == [2, 3]

    def test_needs_samples(self):
        response = stats_cumulants_tool({"max_order": 2})
        assert not response["success"]
        assert response["source"] == "validation"
