"""Single-hidden-layer perceptron suspiciousness model with manual gradients.

Forward pass: h = sigmoid(W1 x + b1), y = sigmoid(w2 . h + b2). The three
inputs are the per-family aggregates of the fused feature set (one hidden
layer of 128 units by default).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import LabelOutOfRangeError, NonFiniteInputError, ShapeMismatchError

EPS = 1e-7


@dataclass
class MlpConfig:
    n_inputs: int = 3
    n_hidden: int = 128


def sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x, dtype=np.float64)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def init_params(config: MlpConfig, rng) -> dict[str, np.ndarray]:
    def glorot(shape, fan_in, fan_out):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        return rng.uniform(-bound, bound, size=shape)

    return {
        "w1": glorot((config.n_hidden, config.n_inputs), config.n_inputs, config.n_hidden),
        "b1": np.zeros(config.n_hidden),
        "w2": glorot((config.n_hidden,), config.n_hidden, 1),
        "b2": np.zeros(()),
    }


def forward_batch(params: dict, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    hidden = sigmoid(x @ params["w1"].T + params["b1"])
    probs = sigmoid(hidden @ params["w2"] + params["b2"])
    return probs, hidden


def mlp_forward(params: dict, x) -> tuple[float, np.ndarray]:
    """Score one statement; returns (suspiciousness, hidden activations)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (params["w1"].shape[1],):
        raise ShapeMismatchError(f"expected input of shape ({params['w1'].shape[1]},)")
    if not np.isfinite(x).all():
        raise NonFiniteInputError("input vector holds non-finite values")
    probs, hidden = forward_batch(params, x[None, :])
    return float(probs[0]), hidden[0]


def bce_loss(predictions, labels, l2: float = 0.0, params: dict | None = None) -> float:
    """Binary cross-entropy, optionally with an L2 penalty over all parameters."""
    p = np.clip(np.asarray(predictions, dtype=np.float64), EPS, 1.0 - EPS)
    y = np.asarray(labels, dtype=np.float64)
    if not np.isin(y, (0.0, 1.0)).all():
        raise LabelOutOfRangeError("labels must be 0 or 1")
    loss = -float(np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))
    if l2 and params is not None:
        loss += l2 * sum(float(np.sum(t**2)) for t in params.values())
    return loss


def loss_and_grads(params: dict, x: np.ndarray, y: np.ndarray, l2: float = 0.0):
    probs, hidden = forward_batch(params, x)
    loss = bce_loss(probs, y, l2, params)
    n = x.shape[0]
    dlogit = (probs - y) / n
    grads = {
        "w2": hidden.T @ dlogit,
        "b2": np.asarray(dlogit.sum()),
    }
    dhidden = np.outer(dlogit, params["w2"])
    dz1 = dhidden * hidden * (1.0 - hidden)
    grads["w1"] = dz1.T @ x
    grads["b1"] = dz1.sum(axis=0)
    if l2:
        for k in grads:
            grads[k] = grads[k] + 2.0 * l2 * params[k]
    return loss, grads
