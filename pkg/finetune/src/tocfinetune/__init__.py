"""Fine-tuning companion for the tocseg segmentation toolkit.

Consumes and produces tocseg token-label window files; trains a pretrained
bidirectional encoder as a three-label token classifier (titles, subtitles,
outside) and emits word-level predictions for downstream span scoring.
"""

from .encoding import EncodedWindow, encode_window, prepare_dataset
from .predicting import predict
from .tiny import build_tiny_checkpoint
from .training import DEFAULT_CHECKPOINT, TrainConfig, TrainResult, train
from .windows import (
    ID2LABEL,
    LABEL2ID,
    LABELS,
    Window,
    WordToken,
    read_window_file,
    window_text,
    write_window_file,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CHECKPOINT",
    "EncodedWindow",
    "ID2LABEL",
    "LABEL2ID",
    "LABELS",
    "TrainConfig",
    "TrainResult",
    "Window",
    "WordToken",
    "build_tiny_checkpoint",
    "encode_window",
    "predict",
    "prepare_dataset",
    "read_window_file",
    "train",
    "window_text",
    "write_window_file",
]
