import csv
import json

import pytest

from cliquecomm import baselines, caa, metrics
from cliquecomm.cli import main
from cliquecomm.graph import (
    load_cover,
    load_edge_list,
    planted_partition,
    save_cover,
    save_edge_list,
)


@pytest.fixture
def small_graph_file(tmp_path):
    g = planted_partition(3, 15, 0.7, 0.03, 4)
    f = tmp_path / "graph.tsv"
    save_edge_list(g, f)
    return f


def run(args):
    return main([str(a) for a in args])


class TestMutualize:
    def test_valid_input(self, tmp_path):
        src = tmp_path / "directed.tsv"
        src.write_text("a\tb\nb\ta\na\tc\n")
        assert run(["mutualize", src, "--output-dir", tmp_path]) == 0
        out = tmp_path / "mutual_edges.tsv"
        assert out.read_text() == "a\tb\n"
        manifest = json.loads((tmp_path / "manifest_mutualize.json").read_text())
        assert manifest["nodes"] == 2 and manifest["edges"] == 1

    def test_missing_input_exit_2(self, tmp_path, capsys):
        assert run(["mutualize", tmp_path / "nope.tsv", "--output-dir", tmp_path]) == 2
        assert "nope.tsv" in capsys.readouterr().err

    def test_malformed_input_exit_2(self, tmp_path):
        src = tmp_path / "bad.tsv"
        src.write_text("justonefield\n")
        assert run(["mutualize", src, "--output-dir", tmp_path]) == 2


class TestGenerate:
    def test_writes_edge_list(self, tmp_path):
        assert run([
            "generate", "--blocks", 2, "--block-size", 5,
            "--p-in", 1.0, "--p-out", 0.0,
            "--seed", 3, "--output-dir", tmp_path,
        ]) == 0
        g = load_edge_list(tmp_path / "planted_edges.tsv")
        assert g.n == 10 and g.m == 20

    def test_bad_probability_exit_1(self, tmp_path):
        assert run([
            "generate", "--blocks", 2, "--block-size", 5,
            "--p-in", 0.1, "--p-out", 0.9, "--output-dir", tmp_path,
        ]) == 1


class TestDetectors:
    def test_caa_matches_library(self, small_graph_file, tmp_path):
        assert run([
            "caa", small_graph_file,
            "--growing-threshold", 0.7, "--overlapping-threshold", 0,
            "--output-dir", tmp_path,
        ]) == 0
        g = load_edge_list(small_graph_file)
        expected = caa.run_caa(g, caa.CaaParams())
        assert load_cover(g, tmp_path / "caa_cover.txt") == expected

    def test_cpm_two_triangles(self, tmp_path):
        src = tmp_path / "g.tsv"
        src.write_text("a\tb\na\tc\nb\tc\nb\td\nc\td\n")
        assert run(["cpm", src, "--k", 3, "--output-dir", tmp_path]) == 0
        assert (tmp_path / "cpm_cover.txt").read_text() == "a b c d\n"

    def test_lp_matches_library(self, small_graph_file, tmp_path):
        assert run(["lp", small_graph_file, "--seed", 5, "--output-dir", tmp_path]) == 0
        g = load_edge_list(small_graph_file)
        expected = baselines.label_propagation(g, baselines.LpParams(rng_seed=5))
        assert load_cover(g, tmp_path / "lp_cover.txt") == expected

    def test_repeat_runs_byte_identical(self, small_graph_file, tmp_path):
        outputs = []
        for name in ("r1", "r2"):
            outdir = tmp_path / name
            assert run(["caa", small_graph_file, "--seed", 0, "--output-dir", outdir]) == 0
            outputs.append((outdir / "caa_cover.txt").read_bytes())
        assert outputs[0] == outputs[1]

    def test_threads_byte_identical(self, small_graph_file, tmp_path):
        outputs = []
        for threads in (1, 8):
            outdir = tmp_path / f"t{threads}"
            assert run([
                "caa", small_graph_file, "--threads", threads, "--output-dir", outdir,
            ]) == 0
            outputs.append((outdir / "caa_cover.txt").read_bytes())
        assert outputs[0] == outputs[1]

    def test_resource_cap_exit_3(self, small_graph_file, tmp_path):
        assert run([
            "caa", small_graph_file, "--max-cliques", 1, "--output-dir", tmp_path,
        ]) == 3

    def test_timeout_exit_3(self, tmp_path):
        g = planted_partition(8, 40, 0.5, 0.02, 1)
        f = tmp_path / "big.tsv"
        save_edge_list(g, f)
        assert run([
            "caa", f, "--timeout-secs", 0.0, "--output-dir", tmp_path,
        ]) == 3


class TestMetricsCommand:
    def test_reports_match_library(self, small_graph_file, tmp_path):
        g = load_edge_list(small_graph_file)
        cover = caa.run_caa(g, caa.CaaParams())
        cover_file = tmp_path / "mycover.txt"
        save_cover(g, cover, cover_file)
        assert run([
            "metrics", small_graph_file, cover_file, "--output-dir", tmp_path,
        ]) == 0
        report = json.loads((tmp_path / "metrics.json").read_text())
        expected = metrics.evaluate(g, cover).to_dict()
        assert report["mycover"] == json.loads(json.dumps(expected))

    def test_two_covers_two_label_groups(self, small_graph_file, tmp_path):
        g = load_edge_list(small_graph_file)
        for name, cover in (
            ("caa", caa.run_caa(g)),
            ("lp", baselines.label_propagation(g)),
        ):
            save_cover(g, cover, tmp_path / f"{name}.txt")
        assert run([
            "metrics", small_graph_file, tmp_path / "caa.txt", tmp_path / "lp.txt",
            "--output-dir", tmp_path,
        ]) == 0
        with open(tmp_path / "metrics.csv") as fh:
            rows = list(csv.DictReader(fh))
        labels = {r["algorithm_label"] for r in rows}
        assert labels == {"caa", "lp"}
        assert {r["band"] for r in rows} == {"1-3", "4-9", "10-150", "151+"}

    def test_custom_bands(self, small_graph_file, tmp_path):
        g = load_edge_list(small_graph_file)
        save_cover(g, caa.run_caa(g), tmp_path / "c.txt")
        assert run([
            "metrics", small_graph_file, tmp_path / "c.txt", "--bands", "1-4,5+",
            "--output-dir", tmp_path,
        ]) == 0
        with open(tmp_path / "metrics.csv") as fh:
            assert {r["band"] for r in csv.DictReader(fh)} == {"1-4", "5+"}

    def test_unknown_cover_id_exit_2(self, small_graph_file, tmp_path):
        bad = tmp_path / "bad_cover.txt"
        bad.write_text("nosuchnode\n")
        assert run([
            "metrics", small_graph_file, bad, "--output-dir", tmp_path,
        ]) == 2

    def test_usage_error_exit_1(self, capsys):
        assert run(["metrics"]) == 1


class TestSweep:
    def test_growing_sweep_shape(self, small_graph_file, tmp_path):
        assert run([
            "sweep", small_graph_file, "--sweep", "growing",
            "--grid", "0.5,0.7,0.9", "--output-dir", tmp_path,
        ]) == 0
        with open(tmp_path / "sweep_growing.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 3 * 4  # three grid values, four bands
        assert {r["growing_threshold"] for r in rows} == {"0.5", "0.7", "0.9"}

    def test_overlapping_sweep_monotone(self, small_graph_file, tmp_path):
        grid = ",".join(str(i / 10) for i in range(11))
        assert run([
            "sweep", small_graph_file, "--sweep", "overlapping",
            "--grid", grid, "--min-clique-size", 4, "--output-dir", tmp_path,
        ]) == 0
        with open(tmp_path / "sweep_overlapping.csv") as fh:
            counts = [int(r["kept_cliques"]) for r in csv.DictReader(fh)]
        assert len(counts) == 11
        assert counts == sorted(counts)

    def test_single_point_grid(self, small_graph_file, tmp_path):
        assert run([
            "sweep", small_graph_file, "--sweep", "growing", "--grid", "0.7",
            "--output-dir", tmp_path,
        ]) == 0
        with open(tmp_path / "sweep_growing.csv") as fh:
            assert len(list(csv.DictReader(fh))) == 4


class TestHashtagReport:
    def test_end_to_end(self, tmp_path, data_dir):
        edges = [("u1", "u2"), ("u1", "u3"), ("u2", "u3")]
        graph_file = tmp_path / "g.tsv"
        graph_file.write_text("".join(f"{a}\t{b}\n" for a, b in edges))
        cover_file = tmp_path / "cover.txt"
        cover_file.write_text("u1 u2 u3\n")
        assert run([
            "hashtag-report", graph_file, cover_file,
            data_dir / "user_tags_sample.tsv",
            "--size-lo", 1, "--size-hi", 150, "--output-dir", tmp_path,
        ]) == 0
        report = json.loads((tmp_path / "hashtag_report.json").read_text())
        assert len(report) == 1
        assert report[0]["size"] == 3
        assert report[0]["members_missing_data"] == 1  # u3 has no tags
        assert report[0]["top_tags"][0] == ["gopdebate", 166]
        digest = (tmp_path / "hashtag_report.txt").read_text()
        assert "#gopdebate 166" in digest


class TestManifests:
    def test_every_run_writes_one(self, small_graph_file, tmp_path):
        assert run(["lp", small_graph_file, "--output-dir", tmp_path]) == 0
        manifest = json.loads((tmp_path / "manifest_lp.json").read_text())
        assert manifest["subcommand"] == "lp"
        assert str(small_graph_file) in manifest["inputs"]
        assert manifest["outputs"] == [str(tmp_path / "lp_cover.txt")]
        assert "duration_secs" in manifest
        assert manifest["params"]["seed"] == 0
