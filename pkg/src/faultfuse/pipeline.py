"""End-to-end run orchestration: extract, select, fuse, train, rank, evaluate.

Stages communicate only through the documented file artifacts so each one is
independently re-runnable. A run stages its outputs in a scratch directory
and moves it into place on success, so a failed run leaves nothing behind.
"""

from __future__ import annotations

import json
import os
import shutil
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import fusion, metrics
from .corpus import load_dataset, split_folds
from .errors import ConfigError, NoFaultsError
from .features import FeatureMatrix, assemble_features, save_features
from .neural import (
    GruConfig,
    MlpConfig,
    MlpModel,
    RnnModel,
    TrainConfig,
    build_mlp_inputs,
    build_sequences,
    save_loss_curve,
    save_model,
)
from .selection import (
    OPTIMIZERS,
    ModeConfig,
    MopsoConfig,
    Nsga2Config,
    OptimizerResult,
    SurrogateConfig,
    WrapperFitness,
)

SEED_ENV = "FAULTFUSE_SEED"


@dataclass
class RunConfig:
    dataset: str = ""
    out: str = ""
    optimizer: str = "mopso"
    model: str = "rnn"
    seed: int = 7
    folds: int = 10
    keep: int | None = None          # None = ceil(columns / 3)
    wall_clock: bool = False
    mlp_concat: bool = False
    train_on: str = ""
    test_on: tuple[str, ...] = ()
    nsga2: Nsga2Config = field(default_factory=Nsga2Config)
    mopso: MopsoConfig = field(default_factory=MopsoConfig)
    mode: ModeConfig = field(default_factory=ModeConfig)
    surrogate: SurrogateConfig = field(default_factory=SurrogateConfig)
    train: TrainConfig = field(default_factory=TrainConfig)

    def __post_init__(self):
        if self.optimizer not in OPTIMIZERS:
            raise ConfigError(f"unknown optimizer {self.optimizer!r}")
        if self.model not in ("mlp", "rnn"):
            raise ConfigError(f"unknown model {self.model!r}")

    def optimizer_config(self):
        return getattr(self, self.optimizer)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        data = dict(data)
        for key, sub in (("nsga2", Nsga2Config), ("mopso", MopsoConfig),
                         ("mode", ModeConfig), ("surrogate", SurrogateConfig),
                         ("train", TrainConfig)):
            if key in data and isinstance(data[key], dict):
                data[key] = sub(**data[key])
        if "test_on" in data:
            data["test_on"] = tuple(data["test_on"])
        return cls(**data)


def resolve_seed(config: RunConfig) -> RunConfig:
    env = os.environ.get(SEED_ENV)
    if env:
        return replace(config, seed=int(env))
    return config


def model_l2(config: RunConfig) -> float:
    # L2 regularization applies to the recurrent model only
    return 1e-4 if config.model == "rnn" else 0.0


def select_features(matrix: FeatureMatrix, labels: np.ndarray,
                    config: RunConfig) -> tuple[OptimizerResult, WrapperFitness]:
    surrogate = replace(config.surrogate, folds=min(config.folds, matrix.values.shape[0]))
    fitness = WrapperFitness(matrix.values, labels, config.seed, surrogate)
    optimizer_fn, _ = OPTIMIZERS[config.optimizer]
    result = optimizer_fn(fitness, matrix.n_columns, config.optimizer_config(),
                          config.seed, config.wall_clock)
    return result, fitness


def build_inputs(matrix: FeatureMatrix, fused: fusion.FusedFeatureSet, config: RunConfig):
    if config.model == "mlp":
        return build_mlp_inputs(matrix, fused, concat=config.mlp_concat)
    return build_sequences(matrix, fused)


def make_model(config: RunConfig, inputs: np.ndarray):
    if config.model == "mlp":
        return MlpModel(MlpConfig(n_inputs=inputs.shape[1]))
    return RnnModel(GruConfig(input_size=inputs.shape[2]))


def cv_accuracies(inputs: np.ndarray, labels: np.ndarray, config: RunConfig) -> list[float]:
    """Per-fold classifier accuracy of the configured model; folds whose
    training split is single-class are skipped."""
    k = min(config.folds, labels.shape[0])
    train_cfg = replace(config.train, l2=model_l2(config), seed=config.seed)
    accs = []
    for train_idx, test_idx in split_folds(labels, k, config.seed):
        y_train = labels[train_idx]
        if not ((y_train == 1).any() and (y_train == 0).any()):
            continue
        model = make_model(config, inputs)
        model.train(inputs[train_idx], y_train, train_cfg)
        pred = (model.score(inputs[test_idx]) >= 0.5).astype(np.float64)
        accs.append(float((pred == labels[test_idx]).mean()))
    return accs


def save_pareto(result: OptimizerResult, path: Path) -> None:
    crowd = result.archive.crowding()
    rows = []
    for member, c in zip(result.archive.members, crowd):
        rows.append(
            {
                "bits": "".join(str(int(b)) for b in member.bits),
                "objectives": [float(v) for v in member.objectives],
                "crowding": None if np.isinf(c) else float(c),
            }
        )
    path.write_text(json.dumps(rows, indent=1) + "\n", encoding="utf-8", newline="\n")


def save_evals(result: OptimizerResult, path: Path, n_instances: int) -> None:
    payload = {
        "optimizer": result.optimizer,
        "evaluation_count": result.evaluation_count,
        "generations": result.generations,
    }
    if result.wall_clock_s is not None:
        payload["wall_clock_s"] = result.wall_clock_s
        payload.update(
            metrics.time_accounting(
                result.optimizer, result.evaluation_count, result.generations,
                n_instances, result.wall_clock_s / max(n_instances, 1),
            )
        )
    path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8", newline="\n")


def save_scores(scores: np.ndarray, ranks: np.ndarray, path: Path) -> None:
    lines = ["statement_id,score,rank"]
    for i, (s, r) in enumerate(zip(scores, ranks)):
        lines.append(f"{i},{repr(float(s))},{repr(float(r))}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def run_pipeline(config: RunConfig) -> Path:
    """Execute the full pipeline; returns the output directory."""
    config = resolve_seed(config)
    out = Path(config.out)
    if out.exists() and any(out.iterdir()):
        raise ConfigError(f"output directory {out} is not empty")
    staging = out.parent / (out.name + ".partial")
    if staging.exists():
        shutil.rmtree(staging)
    staging.mkdir(parents=True)
    try:
        _run_into(config, staging)
        if out.exists():
            for item in staging.iterdir():
                shutil.move(str(item), out / item.name)
            staging.rmdir()
        else:
            staging.replace(out)
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    return out


def _run_into(config: RunConfig, outdir: Path) -> list[metrics.RankingReport]:
    (outdir / "resolved-config.json").write_text(
        json.dumps(config.to_dict(), indent=1) + "\n", encoding="utf-8", newline="\n"
    )
    train_path = config.train_on or config.dataset
    ds = load_dataset(train_path)
    if not ds.faults:
        raise NoFaultsError(f"dataset {train_path} has no labeled faults")
    matrix = assemble_features(ds)
    save_features(matrix, outdir / "features.csv")
    labels = ds.labels

    result, _ = select_features(matrix, labels, config)
    save_pareto(result, outdir / "pareto.json")
    save_evals(result, outdir / "evals.json", n_instances=matrix.values.shape[0])

    fused = fusion.fuse(result.archive, config.keep)
    fusion.save_fused(fused, matrix, outdir / "fused.json")

    inputs = build_inputs(matrix, fused, config)
    accs = cv_accuracies(inputs, labels, config)
    clf_acc, stability = metrics.accuracy_stability(accs) if accs else (None, None)

    train_cfg = replace(config.train, l2=model_l2(config), seed=config.seed)
    model = make_model(config, inputs).train(inputs, labels, train_cfg)
    save_model(model, outdir / "model.json")
    save_loss_curve(model.curve, outdir / "loss.csv")

    reports = []
    targets = list(config.test_on) if config.train_on else [config.dataset]
    for target in targets:
        target_ds = ds if target == train_path else load_dataset(target)
        target_matrix = matrix if target == train_path else assemble_features(target_ds)
        target_inputs = build_inputs(target_matrix, fused, config)
        scores = model.score(target_inputs)
        ranks = metrics.rank_statements(scores)
        if len(targets) == 1:
            save_scores(scores, ranks, outdir / "scores.csv")
        meta = {"dataset": target, "optimizer": config.optimizer, "seed": config.seed,
                "evaluation_count": result.evaluation_count}
        reports.append(
            metrics.build_report(config.model, scores, target_ds, meta, clf_acc, stability)
        )
        for name, rep in metrics.baseline_rankers(target_ds).items():
            rep.metadata = {"dataset": target}
            reports.append(rep)

    metrics.save_report_json(reports, outdir / "report.json")
    metrics.save_report_tsv(reports, outdir / "report.tsv")
    return reports
