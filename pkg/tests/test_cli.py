import json

from faultfuse.cli import main
from faultfuse.corpus import load_dataset

SMALL = ["--pop", "8", "--iterations", "4", "--epochs", "20"]


def synth(tmp_path, name="d", template="median3", seed="7", extra=()):
    out = tmp_path / name
    code = main(["synth", "--template", template, "--tests", "60",
                 "--seed", seed, "--out", str(out), *extra])
    assert code == 0
    return out


class TestSynth:
    def test_directory_passes_validation(self, tmp_path):
        ds = load_dataset(synth(tmp_path))
        assert ds.n_statements == 14

    def test_same_flags_identical_directories(self, tmp_path):
        a = synth(tmp_path, "a")
        b = synth(tmp_path, "b")
        for name in ("statements.tsv", "coverage.csv", "outcomes.csv", "mutants.csv", "faults.txt"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_fault_designator(self, tmp_path):
        out = synth(tmp_path, "s7", extra=("--fault", "S7"))
        assert (out / "faults.txt").read_text().strip() == "7"

    def test_infeasible_rule_exit_code(self, tmp_path):
        code = main(["synth", "--template", "median3", "--tests", "60", "--seed", "1",
                     "--fault", "S7", "--rule", "relational-op-flip",
                     "--out", str(tmp_path / "bad")])
        assert code == 5
        assert not (tmp_path / "bad").exists()


class TestRun:
    def test_bogus_optimizer_no_partial_outputs(self, tmp_path):
        ds = synth(tmp_path)
        out = tmp_path / "out"
        code = main(["run", "--dataset", str(ds), "--optimizer", "bogus",
                     "--seed", "7", "--out", str(out)])
        assert code == 2
        assert not out.exists()

    def test_repeat_runs_byte_identical(self, tmp_path):
        ds = synth(tmp_path)
        args = ["run", "--dataset", str(ds), "--optimizer", "mopso", "--model", "rnn",
                "--seed", "7", *SMALL]
        assert main(args + ["--out", str(tmp_path / "r1")]) == 0
        assert main(args + ["--out", str(tmp_path / "r2")]) == 0
        assert (tmp_path / "r1" / "report.json").read_bytes() == \
            (tmp_path / "r2" / "report.json").read_bytes()

    def test_report_tsv_has_baseline_rows(self, tmp_path):
        ds = synth(tmp_path)
        out = tmp_path / "out"
        assert main(["run", "--dataset", str(ds), "--model", "mlp", "--seed", "3",
                     *SMALL, "--out", str(out)]) == 0
        rows = (out / "report.tsv").read_text().splitlines()
        models = [r.split("\t")[0] for r in rows[1:]]
        assert models == ["mlp", "tarantula", "dstar"]

    def test_expected_artifacts_written(self, tmp_path):
        ds = synth(tmp_path)
        out = tmp_path / "out"
        assert main(["run", "--dataset", str(ds), "--seed", "3", *SMALL,
                     "--out", str(out)]) == 0
        expected = {
            "resolved-config.json", "features.csv", "pareto.json", "evals.json",
            "fused.json", "model.json", "loss.csv", "scores.csv",
            "report.json", "report.tsv",
        }
        assert {p.name for p in out.iterdir()} == expected

    def test_empty_fault_file_surfaces_no_faults(self, tmp_path):
        ds = synth(tmp_path)
        (ds / "faults.txt").write_text("")
        code = main(["run", "--dataset", str(ds), "--seed", "3", *SMALL,
                     "--out", str(tmp_path / "out")])
        assert code == 4
        assert not (tmp_path / "out").exists()

    def test_seed_env_override(self, tmp_path, monkeypatch):
        ds = synth(tmp_path)
        monkeypatch.setenv("FAULTFUSE_SEED", "99")
        out = tmp_path / "out"
        assert main(["run", "--dataset", str(ds), "--seed", "3", *SMALL,
                     "--out", str(out)]) == 0
        config = json.loads((out / "resolved-config.json").read_text())
        assert config["seed"] == 99

    def test_cross_dataset_mode(self, tmp_path):
        train = synth(tmp_path, "train", seed="2")
        test_a = synth(tmp_path, "ta", template="triangle", seed="3")
        test_b = synth(tmp_path, "tb", template="max_array", seed="4")
        out = tmp_path / "out"
        assert main(["run", "--train-on", str(train),
                     "--test-on", f"{test_a},{test_b}",
                     "--seed", "2", *SMALL, "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        datasets = {r["metadata"]["dataset"] for r in report}
        assert datasets == {str(test_a), str(test_b)}


class TestStages:
    def test_stagewise_chain_matches_monolithic_run(self, tmp_path):
        ds = synth(tmp_path)
        work = tmp_path / "stages"
        assert main(["extract", "--dataset", str(ds), "--seed", "7",
                     "--out", str(work)]) == 0
        assert main(["select", "--dataset", str(ds), "--optimizer", "mopso",
                     "--pop", "8", "--iterations", "4", "--seed", "7",
                     "--out", str(work)]) == 0
        assert main(["fuse", "--features", str(work / "features.csv"),
                     "--pareto", str(work / "pareto.json"), "--seed", "7",
                     "--out", str(work)]) == 0
        assert main(["train", "--dataset", str(ds),
                     "--features", str(work / "features.csv"),
                     "--fused", str(work / "fused.json"), "--model", "rnn",
                     "--epochs", "20", "--seed", "7", "--out", str(work)]) == 0
        assert main(["rank", "--features", str(work / "features.csv"),
                     "--fused", str(work / "fused.json"),
                     "--model-file", str(work / "model.json"), "--model", "rnn",
                     "--seed", "7", "--out", str(work)]) == 0
        assert main(["evaluate", "--dataset", str(ds),
                     "--scores", str(work / "scores.csv"), "--name", "rnn",
                     "--seed", "7", "--out", str(work)]) == 0

        mono = tmp_path / "mono"
        assert main(["run", "--dataset", str(ds), "--optimizer", "mopso",
                     "--model", "rnn", "--pop", "8", "--iterations", "4",
                     "--epochs", "20", "--seed", "7", "--out", str(mono)]) == 0
        staged = json.loads((work / "report.json").read_text())
        monolithic = json.loads((mono / "report.json").read_text())
        assert staged[0]["scores"] == monolithic[0]["scores"]
        assert staged[0]["ranks"] == monolithic[0]["ranks"]


class TestMatrix:
    def test_sweep_writes_cells_and_summary(self, tmp_path):
        a = synth(tmp_path, "a", seed="2")
        b = synth(tmp_path, "b", template="triangle", seed="3")
        # budget ratios follow the published defaults (NSGA-II runs twice the
        # generations), scaled down for test speed
        config = {
            "nsga2": {"population_size": 8, "generations": 6},
            "mopso": {"population_size": 8, "iterations": 3},
            "mode": {"population_size": 8, "iterations": 3},
            "train": {"epochs": 20},
        }
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps(config))
        out = tmp_path / "matrix"
        assert main(["matrix", "--datasets", f"{a},{b}",
                     "--optimizers", "nsga2,mopso,mode", "--models", "mlp,rnn",
                     "--config", str(config_path),
                     "--seed", "2", "--out", str(out)]) == 0
        rows = (out / "summary.tsv").read_text().splitlines()
        assert len(rows) == 1 + 2 * 3 * 2
        evals = {}
        for row in rows[1:]:
            cells = row.split("\t")
            evals[cells[1]] = int(cells[-1])
        assert evals["mopso"] < evals["mode"] < evals["nsga2"]
        cell_dirs = [p for p in out.iterdir() if p.is_dir()]
        assert len(cell_dirs) == 12
