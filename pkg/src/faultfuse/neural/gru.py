"""Stacked gated recurrent unit scorer with hand-derived backpropagation.

Gates follow the mixed parameterization of the model description: the update
gate reads the concatenated [h_prev, x], while the reset gate and candidate
state use separate input/hidden matrices. Two layers of 64 hidden units by
default; a sigmoid affine readout of the final hidden state produces the
suspiciousness probability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeMismatchError
from .mlp import bce_loss, sigmoid


@dataclass
class GruConfig:
    input_size: int
    hidden_size: int = 64
    layers: int = 2

    def layer_input(self, layer: int) -> int:
        return self.input_size if layer == 0 else self.hidden_size


def init_params(config: GruConfig, rng) -> dict[str, np.ndarray]:
    def glorot(shape):
        fan_out, fan_in = shape
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        return rng.uniform(-bound, bound, size=shape)

    params: dict[str, np.ndarray] = {}
    h = config.hidden_size
    for layer in range(config.layers):
        i = config.layer_input(layer)
        pre = f"l{layer}_"
        params[pre + "w_z"] = glorot((h, h + i))
        params[pre + "b_z"] = np.zeros(h)
        params[pre + "w_r"] = glorot((h, i))
        params[pre + "u_r"] = glorot((h, h))
        params[pre + "b_r"] = np.zeros(h)
        params[pre + "w_h"] = glorot((h, i))
        params[pre + "u_h"] = glorot((h, h))
        params[pre + "b_h"] = np.zeros(h)
    params["w_out"] = glorot((1, h))[0]
    params["b_out"] = np.zeros(())
    return params


def _layer(params: dict, layer: int) -> dict[str, np.ndarray]:
    pre = f"l{layer}_"
    return {k[len(pre):]: v for k, v in params.items() if k.startswith(pre)}


def cell_batch(lp: dict, x: np.ndarray, h_prev: np.ndarray):
    """One GRU step over a batch; returns (h, cache for backprop)."""
    concat = np.concatenate([h_prev, x], axis=1)
    z = sigmoid(concat @ lp["w_z"].T + lp["b_z"])
    r = sigmoid(x @ lp["w_r"].T + h_prev @ lp["u_r"].T + lp["b_r"])
    rh = r * h_prev
    hc = np.tanh(x @ lp["w_h"].T + rh @ lp["u_h"].T + lp["b_h"])
    h = (1.0 - z) * h_prev + z * hc
    return h, (x, h_prev, concat, z, r, rh, hc)


def gru_cell(lp: dict, x, h_prev) -> np.ndarray:
    """Single-sample GRU step."""
    x = np.asarray(x, dtype=np.float64)
    h_prev = np.asarray(h_prev, dtype=np.float64)
    hidden = lp["u_r"].shape[0]
    if x.shape != (lp["w_r"].shape[1],) or h_prev.shape != (hidden,):
        raise ShapeMismatchError("gru_cell input shapes do not match the layer parameters")
    h, _ = cell_batch(lp, x[None, :], h_prev[None, :])
    return h[0]


def cell_backward(lp: dict, cache, dh: np.ndarray, grads: dict, prefix: str):
    """Accumulate parameter gradients; returns (dx, dh_prev)."""
    x, h_prev, concat, z, r, rh, hc = cache
    dz = dh * (hc - h_prev)
    dhc = dh * z
    dh_prev = dh * (1.0 - z)

    dhc_pre = dhc * (1.0 - hc**2)
    grads[prefix + "w_h"] += dhc_pre.T @ x
    grads[prefix + "u_h"] += dhc_pre.T @ rh
    grads[prefix + "b_h"] += dhc_pre.sum(axis=0)
    drh = dhc_pre @ lp["u_h"]
    dr = drh * h_prev
    dh_prev = dh_prev + drh * r
    dx = dhc_pre @ lp["w_h"]

    dr_pre = dr * r * (1.0 - r)
    grads[prefix + "w_r"] += dr_pre.T @ x
    grads[prefix + "u_r"] += dr_pre.T @ h_prev
    grads[prefix + "b_r"] += dr_pre.sum(axis=0)
    dx = dx + dr_pre @ lp["w_r"]
    dh_prev = dh_prev + dr_pre @ lp["u_r"]

    dz_pre = dz * z * (1.0 - z)
    grads[prefix + "w_z"] += dz_pre.T @ concat
    grads[prefix + "b_z"] += dz_pre.sum(axis=0)
    dconcat = dz_pre @ lp["w_z"]
    hidden = h_prev.shape[1]
    dh_prev = dh_prev + dconcat[:, :hidden]
    dx = dx + dconcat[:, hidden:]
    return dx, dh_prev


def forward_batch(params: dict, config: GruConfig, seqs: np.ndarray):
    """Run all layers over (batch, steps, features); returns (probs, caches, h_final)."""
    if seqs.ndim != 3 or seqs.shape[2] != config.input_size:
        raise ShapeMismatchError(
            f"expected sequences of shape (batch, steps, {config.input_size})"
        )
    batch, steps, _ = seqs.shape
    layer_input = seqs
    caches: list[list] = []
    for layer in range(config.layers):
        lp = _layer(params, layer)
        h = np.zeros((batch, config.hidden_size))
        layer_caches = []
        outputs = np.empty((batch, steps, config.hidden_size))
        for t in range(steps):
            h, cache = cell_batch(lp, layer_input[:, t, :], h)
            layer_caches.append(cache)
            outputs[:, t, :] = h
        caches.append(layer_caches)
        layer_input = outputs
    h_final = layer_input[:, -1, :]
    probs = sigmoid(h_final @ params["w_out"] + params["b_out"])
    return probs, caches, h_final


def rnn_forward(params: dict, config: GruConfig, seq: np.ndarray) -> float:
    """Score one statement sequence of shape (steps, features)."""
    probs, _, _ = forward_batch(params, config, np.asarray(seq, dtype=np.float64)[None])
    return float(probs[0])


def loss_and_grads(params: dict, config: GruConfig, seqs: np.ndarray, y: np.ndarray,
                   l2: float = 0.0):
    probs, caches, h_final = forward_batch(params, config, seqs)
    loss = bce_loss(probs, y, l2, params)
    batch, steps, _ = seqs.shape
    grads = {k: np.zeros_like(v) for k, v in params.items()}

    dlogit = (probs - y) / batch
    grads["w_out"] += h_final.T @ dlogit
    grads["b_out"] += dlogit.sum()

    # external gradient flowing into each layer's hidden outputs per step
    dh_ext = [np.zeros((batch, config.hidden_size)) for _ in range(steps)]
    dh_ext[-1] = np.outer(dlogit, params["w_out"])
    for layer in range(config.layers - 1, -1, -1):
        lp = _layer(params, layer)
        prefix = f"l{layer}_"
        dx_list = [None] * steps
        dh_next = np.zeros((batch, config.hidden_size))
        for t in range(steps - 1, -1, -1):
            dh = dh_ext[t] + dh_next
            dx_list[t], dh_next = cell_backward(lp, caches[layer][t], dh, grads, prefix)
        dh_ext = dx_list  # layer below receives gradient through its outputs

    if l2:
        for k in grads:
            grads[k] = grads[k] + 2.0 * l2 * params[k]
    return loss, grads
