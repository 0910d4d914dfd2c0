from .gru import GruConfig, gru_cell, rnn_forward
from .inputs import build_mlp_inputs, build_sequences
from .mlp import MlpConfig, bce_loss, mlp_forward
from .training import (
    MlpModel,
    RnnModel,
    TrainConfig,
    load_model,
    save_loss_curve,
    save_model,
)

__all__ = [
    "GruConfig",
    "MlpConfig",
    "MlpModel",
    "RnnModel",
    "TrainConfig",
    "bce_loss",
    "build_mlp_inputs",
    "build_sequences",
    "gru_cell",
    "load_model",
    "mlp_forward",
    "rnn_forward",
    "save_loss_curve",
    "save_model",
]
