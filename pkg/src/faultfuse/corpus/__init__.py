from .model import FaultDataset, MutantRecord, StatementRecord
from .io import load_dataset, save_dataset
from .folds import split_folds
from .synth import SyntheticSpec, TEMPLATES, generate_synthetic, generate_test_inputs

__all__ = [
    "FaultDataset",
    "MutantRecord",
    "StatementRecord",
    "SyntheticSpec",
    "TEMPLATES",
    "generate_synthetic",
    "generate_test_inputs",
    "load_dataset",
    "save_dataset",
    "split_folds",
]
