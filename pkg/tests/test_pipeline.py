import json

import numpy as np
import pytest

from faultfuse.errors import ConfigError
from faultfuse.features import FeatureMatrix
from faultfuse.fusion import FusedFeatureSet
from faultfuse.neural import MlpConfig, build_mlp_inputs, build_sequences
from faultfuse.corpus import SyntheticSpec, generate_synthetic, save_dataset
from faultfuse.pipeline import RunConfig, run_pipeline
from faultfuse.selection import MopsoConfig


def small_config(dataset, out, **kw):
    return RunConfig(
        dataset=str(dataset), out=str(out),
        mopso=MopsoConfig(population_size=8, iterations=4), **kw,
    )


@pytest.fixture()
def toy_matrix():
    values = np.array(
        [
            [0.0, 0.2, 0.4, 1.0, 0.6, 0.0],
            [1.0, 0.8, 0.2, 0.0, 0.4, 1.0],
            [0.5, 0.5, 0.6, 0.5, 1.0, 0.5],
        ]
    )
    names = ("s1", "s2", "m1", "m2", "m3", "t1")
    families = ("sbfl", "sbfl", "mbfl", "mbfl", "mbfl", "tbfl")
    return FeatureMatrix(values, names, families)


class TestModelInputs:
    def test_mlp_default_width_is_three(self):
        assert MlpConfig().n_inputs == 3

    def test_family_aggregates_are_weighted_means(self, toy_matrix):
        fused = FusedFeatureSet(((0, 1.5), (1, 0.5), (2, 1.0), (5, 1.0)))
        inputs = build_mlp_inputs(toy_matrix, fused)
        assert inputs.shape == (3, 3)
        row = toy_matrix.values[0]
        # fusion-weighted mean of the family's columns: sum(w * v) / sum(w)
        sbfl = (1.5 * row[0] + 0.5 * row[1]) / 2.0
        assert inputs[0, 0] == pytest.approx(sbfl)
        assert inputs[0, 1] == pytest.approx(row[2])
        assert inputs[0, 2] == pytest.approx(row[5])

    def test_concat_mode_keeps_every_fused_column(self, toy_matrix):
        fused = FusedFeatureSet(((0, 1.5), (2, 1.0), (5, 0.5)))
        inputs = build_mlp_inputs(toy_matrix, fused, concat=True)
        assert inputs.shape == (3, 3)
        assert inputs[1, 0] == pytest.approx(1.5 * toy_matrix.values[1, 0])

    def test_sequences_pad_with_family_mean(self, toy_matrix):
        fused = FusedFeatureSet(((2, 1.0), (3, 1.0), (4, 1.0), (0, 1.0)))
        seqs = build_sequences(toy_matrix, fused)
        assert seqs.shape == (3, 3, 3)  # widest family (mbfl) has 3 entries
        # sbfl step: one real value then mean padding
        assert seqs[0, 0, 0] == pytest.approx(toy_matrix.values[0, 0])
        assert seqs[0, 0, 1] == pytest.approx(toy_matrix.values[0, 0])
        # tbfl has no fused entries: all-zero step
        assert np.all(seqs[:, 2, :] == 0.0)
        # mbfl step keeps column order m1, m2, m3
        assert seqs[2, 1].tolist() == toy_matrix.values[2, 2:5].tolist()

    def test_empty_family_mean_inputs_are_zero(self, toy_matrix):
        fused = FusedFeatureSet(((2, 1.0),))
        inputs = build_mlp_inputs(toy_matrix, fused)
        assert np.all(inputs[:, 0] == 0.0) and np.all(inputs[:, 2] == 0.0)


class TestRunPipeline:
    def test_refuses_non_empty_output_dir(self, tmp_path):
        ds = save_dataset(
            generate_synthetic(SyntheticSpec(template="median3", n_tests=60, seed=7)),
            tmp_path / "d",
        )
        out = tmp_path / "out"
        out.mkdir()
        (out / "junk.txt").write_text("x")
        with pytest.raises(ConfigError):
            run_pipeline(small_config(ds, out))

    def test_wall_clock_mode_reports_timing(self, tmp_path):
        ds = save_dataset(
            generate_synthetic(SyntheticSpec(template="median3", n_tests=60, seed=7)),
            tmp_path / "d",
        )
        out = run_pipeline(small_config(ds, tmp_path / "out", wall_clock=True))
        evals = json.loads((out / "evals.json").read_text())
        assert evals["wall_clock_s"] > 0
        assert evals["total_seconds"] == pytest.approx(
            evals["avg_instance_seconds"] * evals["n_instances"]
        )

    def test_deterministic_seed_resolution(self, tmp_path, monkeypatch):
        monkeypatch.setenv("FAULTFUSE_SEED", "123")
        config = RunConfig(dataset="x", out="y")
        from faultfuse.pipeline import resolve_seed

        assert resolve_seed(config).seed == 123

    def test_config_round_trips_through_dict(self):
        config = RunConfig(dataset="a", out="b", optimizer="mode", keep=4)
        clone = RunConfig.from_dict(config.to_dict())
        assert clone == config

    def test_unknown_model_rejected(self):
        with pytest.raises(ConfigError):
            RunConfig(dataset="a", out="b", model="transformer")
