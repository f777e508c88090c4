"""Sequence VAE with property-prediction heads."""

from pagforge.genmodel.train import (
    TrainingConfig,
    TrainResult,
    load_checkpoint,
    prepare_batches,
    save_checkpoint,
    train,
)
from pagforge.genmodel.vae import Batch, LossParts, SequenceVae, VaeConfig

__all__ = [
    "Batch",
    "LossParts",
    "SequenceVae",
    "TrainingConfig",
    "TrainResult",
    "VaeConfig",
    "load_checkpoint",
    "prepare_batches",
    "save_checkpoint",
    "train",
]
