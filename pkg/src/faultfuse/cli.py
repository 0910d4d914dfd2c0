"""Command-line interface.

Subcommands: synth, extract, select, fuse, train, rank, evaluate, run, matrix.
Every artifact is reproducible from the resolved config and seed; the
FAULTFUSE_SEED environment variable overrides the seed everywhere.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import fusion, metrics
from .corpus import SyntheticSpec, generate_synthetic, load_dataset, save_dataset
from .errors import (
    ConfigError,
    FaultfuseError,
    InfeasibleSpecError,
    MissingFileError,
    NoFaultsError,
)
from .features import assemble_features, load_features, save_features
from .neural import load_model, save_loss_curve, save_model
from .pipeline import RunConfig, save_evals, save_pareto, save_scores, build_inputs
from .pipeline import make_model, model_l2, resolve_seed, run_pipeline, select_features

EXIT_CODES = (
    (ConfigError, 2),
    (MissingFileError, 3),
    (NoFaultsError, 4),
    (InfeasibleSpecError, 5),
)


def _fault_id(text: str) -> int:
    return int(text[1:]) if text and text[0] in "sS" else int(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--out", required=True)


def _config_from_args(args) -> RunConfig:
    base: dict = {}
    if getattr(args, "config", None):
        base = json.loads(Path(args.config).read_text(encoding="utf-8"))
    config = RunConfig.from_dict(base) if base else RunConfig()
    overrides = {}
    for name in ("dataset", "optimizer", "model", "seed", "folds", "keep", "out",
                 "wall_clock", "mlp_concat", "train_on"):
        value = getattr(args, name, None)
        if value not in (None, "", False):
            overrides[name] = value
    if getattr(args, "test_on", None):
        overrides["test_on"] = tuple(args.test_on.split(","))
    config = replace(config, **overrides)
    if getattr(args, "pop", None):
        for cfg_name in ("nsga2", "mopso", "mode"):
            config = replace(config, **{cfg_name: replace(getattr(config, cfg_name),
                                                          population_size=args.pop)})
    if getattr(args, "iterations", None):
        config = replace(
            config,
            nsga2=replace(config.nsga2, generations=args.iterations),
            mopso=replace(config.mopso, iterations=args.iterations),
            mode=replace(config.mode, iterations=args.iterations),
        )
    if getattr(args, "epochs", None):
        config = replace(config, train=replace(config.train, epochs=args.epochs))
    if getattr(args, "sgd", False):
        config = replace(config, train=replace(config.train, optimizer="sgd"))
    return resolve_seed(config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="faultfuse")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic fault dataset directory")
    p.add_argument("--template", required=True)
    p.add_argument("--tests", type=int, default=100)
    p.add_argument("--statements", type=int, default=0)
    p.add_argument("--fault", default="")
    p.add_argument("--rule", default="default")
    _add_common(p)

    p = sub.add_parser("extract", help="extract the feature matrix from a dataset")
    p.add_argument("--dataset", required=True)
    _add_common(p)

    p = sub.add_parser("select", help="run multi-objective feature selection")
    p.add_argument("--dataset", required=True)
    p.add_argument("--optimizer", default="mopso")
    p.add_argument("--folds", type=int)
    p.add_argument("--pop", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--wall-clock", dest="wall_clock", action="store_true")
    p.add_argument("--config")
    _add_common(p)

    p = sub.add_parser("fuse", help="fuse a pareto archive into weighted features")
    p.add_argument("--features", required=True)
    p.add_argument("--pareto", required=True)
    p.add_argument("--keep", type=int)
    _add_common(p)

    p = sub.add_parser("train", help="train a ranker on fused features")
    p.add_argument("--dataset", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--fused", required=True)
    p.add_argument("--model", default="rnn")
    p.add_argument("--epochs", type=int)
    p.add_argument("--sgd", action="store_true")
    p.add_argument("--mlp-concat", dest="mlp_concat", action="store_true")
    p.add_argument("--config")
    _add_common(p)

    p = sub.add_parser("rank", help="score statements with a trained model")
    p.add_argument("--features", required=True)
    p.add_argument("--fused", required=True)
    p.add_argument("--model-file", required=True)
    p.add_argument("--model", default="rnn")
    p.add_argument("--mlp-concat", dest="mlp_concat", action="store_true")
    _add_common(p)

    p = sub.add_parser("evaluate", help="evaluate scores against ground truth")
    p.add_argument("--dataset", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--name", default="model")
    _add_common(p)

    p = sub.add_parser("run", help="full pipeline: extract, select, fuse, train, evaluate")
    p.add_argument("--dataset")
    p.add_argument("--optimizer")
    p.add_argument("--model")
    p.add_argument("--folds", type=int)
    p.add_argument("--keep", type=int)
    p.add_argument("--pop", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--sgd", action="store_true")
    p.add_argument("--mlp-concat", dest="mlp_concat", action="store_true")
    p.add_argument("--wall-clock", dest="wall_clock", action="store_true")
    p.add_argument("--train-on", dest="train_on")
    p.add_argument("--test-on", dest="test_on")
    p.add_argument("--config")
    _add_common(p)

    p = sub.add_parser("matrix", help="cartesian sweep over datasets, optimizers, models")
    p.add_argument("--datasets", required=True, help="comma-separated dataset directories")
    p.add_argument("--optimizers", default="nsga2,mopso,mode")
    p.add_argument("--models", default="mlp,rnn")
    p.add_argument("--pop", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--config")
    _add_common(p)
    return parser


def _cmd_synth(args) -> None:
    spec = SyntheticSpec(
        template=args.template,
        n_tests=args.tests,
        seed=args.seed,
        n_statements=args.statements,
        fault_statement=_fault_id(args.fault) if args.fault else -1,
        fault_rule=args.rule,
    )
    save_dataset(generate_synthetic(spec), args.out)


def _cmd_extract(args) -> None:
    matrix = assemble_features(load_dataset(args.dataset))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_features(matrix, out / "features.csv")


def _cmd_select(args) -> None:
    config = _config_from_args(args)
    ds = load_dataset(config.dataset)
    matrix = assemble_features(ds)
    result, _ = select_features(matrix, ds.labels, config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_pareto(result, out / "pareto.json")
    save_evals(result, out / "evals.json", matrix.values.shape[0])


def _cmd_fuse(args) -> None:
    matrix = load_features(args.features)
    rows = json.loads(Path(args.pareto).read_text(encoding="utf-8"))
    from .selection import Chromosome, ParetoArchive

    archive = ParetoArchive(capacity=max(len(rows), 1))
    for row in rows:
        bits = np.array([int(c) for c in row["bits"]], dtype=np.uint8)
        archive.members.append(Chromosome(bits, np.array(row["objectives"])))
    fused = fusion.fuse(archive, args.keep)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fusion.save_fused(fused, matrix, out / "fused.json")


def _cmd_train(args) -> None:
    config = _config_from_args(args)
    ds = load_dataset(config.dataset)
    matrix = load_features(args.features)
    fused = fusion.load_fused(args.fused, matrix)
    inputs = build_inputs(matrix, fused, config)
    train_cfg = replace(config.train, l2=model_l2(config), seed=config.seed)
    model = make_model(config, inputs).train(inputs, ds.labels, train_cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_model(model, out / "model.json")
    save_loss_curve(model.curve, out / "loss.csv")


def _cmd_rank(args) -> None:
    config = _config_from_args(args)
    matrix = load_features(args.features)
    fused = fusion.load_fused(args.fused, matrix)
    inputs = build_inputs(matrix, fused, config)
    model = load_model(args.model_file)
    scores = model.score(inputs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_scores(scores, metrics.rank_statements(scores), out / "scores.csv")


def _cmd_evaluate(args) -> None:
    ds = load_dataset(args.dataset)
    lines = Path(args.scores).read_text(encoding="utf-8").splitlines()[1:]
    scores = np.array([float(line.split(",")[1]) for line in lines])
    reports = [metrics.build_report(args.name, scores, ds, {"dataset": args.dataset})]
    for name, rep in metrics.baseline_rankers(ds).items():
        rep.metadata = {"dataset": args.dataset}
        reports.append(rep)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    metrics.save_report_json(reports, out / "report.json")
    metrics.save_report_tsv(reports, out / "report.tsv")


def _cmd_run(args) -> None:
    config = _config_from_args(args)
    if not config.dataset and not config.train_on:
        raise ConfigError("run needs --dataset (or --train-on/--test-on)")
    run_pipeline(config)


def _cmd_matrix(args) -> None:
    datasets = args.datasets.split(",")
    optimizers = args.optimizers.split(",")
    models = args.models.split(",")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = ["dataset\toptimizer\tmodel\ttop1\ttop3\ttop5\tmar\tmfr\tauc\tevaluations"]
    for dataset in datasets:
        for optimizer in optimizers:
            for model in models:
                cell = out / f"{Path(dataset).name}__{optimizer}__{model}"
                cell_args = argparse.Namespace(**vars(args))
                cell_args.dataset = dataset
                cell_args.optimizer = optimizer
                cell_args.model = model
                cell_args.out = str(cell)
                cell_args.config = getattr(args, "config", None)
                config = _config_from_args(cell_args)
                run_pipeline(config)
                report = json.loads((cell / "report.json").read_text(encoding="utf-8"))
                main_row = next(r for r in report if r["model"] == model)
                evals = main_row["metadata"]["evaluation_count"]
                rows.append(
                    f"{dataset}\t{optimizer}\t{model}\t{main_row['top1']}\t{main_row['top3']}"
                    f"\t{main_row['top5']}\t{main_row['average_rank']}\t{main_row['first_rank']}"
                    f"\t{main_row['auc']}\t{evals}"
                )
    (out / "summary.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8", newline="\n")


_COMMANDS = {
    "synth": _cmd_synth,
    "extract": _cmd_extract,
    "select": _cmd_select,
    "fuse": _cmd_fuse,
    "train": _cmd_train,
    "rank": _cmd_rank,
    "evaluate": _cmd_evaluate,
    "run": _cmd_run,
    "matrix": _cmd_matrix,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except FaultfuseError as exc:
        print(f"faultfuse {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        for klass, code in EXIT_CODES:
            if isinstance(exc, klass):
                return code
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
