"""Training loop, Adam/plain-gradient-descent updates, and model checkpoints."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from ..errors import DegenerateLabelsError, UntrainedModelError
from . import gru, mlp


@dataclass
class TrainConfig:
    epochs: int = 100
    record_every: int = 10
    learning_rate: float = 0.001
    optimizer: str = "adam"  # adam | sgd
    l2: float = 0.0
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    seed: int = 0


class _Adam:
    def __init__(self, params: dict, cfg: TrainConfig):
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}
        self.t = 0
        self.cfg = cfg

    def step(self, params: dict, grads: dict) -> None:
        cfg = self.cfg
        self.t += 1
        for k in params:
            self.m[k] = cfg.adam_beta1 * self.m[k] + (1 - cfg.adam_beta1) * grads[k]
            self.v[k] = cfg.adam_beta2 * self.v[k] + (1 - cfg.adam_beta2) * grads[k] ** 2
            m_hat = self.m[k] / (1 - cfg.adam_beta1**self.t)
            v_hat = self.v[k] / (1 - cfg.adam_beta2**self.t)
            params[k] = params[k] - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.adam_eps)


def _check_labels(y: np.ndarray) -> None:
    if not ((y == 1).any() and (y == 0).any()):
        raise DegenerateLabelsError("training needs at least one positive and one negative label")


def _fit(params: dict, loss_and_grads, cfg: TrainConfig) -> list[tuple[int, float]]:
    adam = _Adam(params, cfg) if cfg.optimizer == "adam" else None
    curve = []
    for epoch in range(1, cfg.epochs + 1):
        loss, grads = loss_and_grads(params)
        if adam is not None:
            adam.step(params, grads)
        else:
            for k in params:
                params[k] = params[k] - cfg.learning_rate * grads[k]
        if epoch % cfg.record_every == 0 or epoch == cfg.epochs:
            curve.append((epoch, float(loss)))
    return curve


class MlpModel:
    """Perceptron ranker; family-aggregate inputs by default."""

    kind = "mlp"

    def __init__(self, config: mlp.MlpConfig | None = None,
                 params: dict | None = None, epoch: int = 0, seed: int = 0):
        self.config = config or mlp.MlpConfig()
        self.params = params
        self.epoch = epoch
        self.seed = seed
        self.curve: list[tuple[int, float]] = []

    def train(self, x: np.ndarray, y: np.ndarray, cfg: TrainConfig) -> "MlpModel":
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        _check_labels(y)
        rng = np.random.Generator(np.random.PCG64(cfg.seed))
        self.params = mlp.init_params(self.config, rng)
        self.seed = cfg.seed
        self.curve = _fit(
            self.params, lambda p: mlp.loss_and_grads(p, x, y, cfg.l2), cfg
        )
        self.epoch = cfg.epochs
        return self

    def score(self, x: np.ndarray) -> np.ndarray:
        if self.params is None:
            raise UntrainedModelError("model has no parameters; train or load first")
        probs, _ = mlp.forward_batch(self.params, np.asarray(x, dtype=np.float64))
        return probs


class RnnModel:
    """Stacked-GRU ranker over per-family feature sequences."""

    kind = "rnn"

    def __init__(self, config: gru.GruConfig | None = None,
                 params: dict | None = None, epoch: int = 0, seed: int = 0):
        self.config = config
        self.params = params
        self.epoch = epoch
        self.seed = seed
        self.curve: list[tuple[int, float]] = []

    def train(self, seqs: np.ndarray, y: np.ndarray, cfg: TrainConfig) -> "RnnModel":
        seqs = np.asarray(seqs, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        _check_labels(y)
        if self.config is None:
            self.config = gru.GruConfig(input_size=seqs.shape[2])
        rng = np.random.Generator(np.random.PCG64(cfg.seed))
        self.params = gru.init_params(self.config, rng)
        self.seed = cfg.seed
        self.curve = _fit(
            self.params, lambda p: gru.loss_and_grads(p, self.config, seqs, y, cfg.l2), cfg
        )
        self.epoch = cfg.epochs
        return self

    def score(self, seqs: np.ndarray) -> np.ndarray:
        if self.params is None:
            raise UntrainedModelError("model has no parameters; train or load first")
        probs, _, _ = gru.forward_batch(
            self.params, self.config, np.asarray(seqs, dtype=np.float64)
        )
        return probs


def save_model(model, path) -> Path:
    payload = {
        "type": model.kind,
        "config": asdict(model.config),
        "tensors": {k: v.tolist() for k, v in model.params.items()},
        "seed": model.seed,
        "epoch": model.epoch,
    }
    out = Path(path)
    out.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8", newline="\n")
    return out


def load_model(path):
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    tensors = {k: np.asarray(v, dtype=np.float64) for k, v in payload["tensors"].items()}
    if payload["type"] == "mlp":
        model = MlpModel(mlp.MlpConfig(**payload["config"]), tensors,
                         payload["epoch"], payload["seed"])
    elif payload["type"] == "rnn":
        model = RnnModel(gru.GruConfig(**payload["config"]), tensors,
                         payload["epoch"], payload["seed"])
    else:
        raise ValueError(f"unknown model type {payload['type']!r}")
    return model


def save_loss_curve(curve, path) -> Path:
    out = Path(path)
    lines = ["epoch,loss"] + [f"{epoch},{repr(loss)}" for epoch, loss in curve]
    out.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return out
