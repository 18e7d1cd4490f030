"""Fine-tune a pretrained bidirectional encoder on the three-label task.

Defaults mirror the target recipe: the clinical BERT checkpoint, 20 epochs,
batch size 16. The smoke path swaps in a tiny locally-built checkpoint and a
handful of windows; everything else is identical.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field, asdict
from pathlib import Path

import torch
import yaml
from torch.optim import AdamW
from transformers import AutoModelForTokenClassification, AutoTokenizer

from .encoding import EncodedWindow, prepare_dataset
from .windows import ID2LABEL, LABEL2ID

logger = logging.getLogger(__name__)

DEFAULT_CHECKPOINT = "emilyalsentzer/Bio_ClinicalBERT"


@dataclass
class TrainConfig:
    checkpoint: str = DEFAULT_CHECKPOINT
    epochs: int = 20
    batch_size: int = 16
    window_file: str = ""
    output_dir: str = ""
    seed: int = 0
    learning_rate: float = 5e-5
    max_length: int = 512

    @classmethod
    def from_yaml(cls, path) -> "TrainConfig":
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        unknown = set(data) - {f.name for f in cls.__dataclass_fields__.values()}
        if unknown:
            raise ValueError(f"{path}: unknown config keys: {sorted(unknown)}")
        return cls(**data)


@dataclass
class TrainResult:
    output_dir: str
    epoch_losses: list[float] = field(default_factory=list)

    @property
    def initial_loss(self) -> float:
        return self.epoch_losses[0]

    @property
    def final_loss(self) -> float:
        return self.epoch_losses[-1]


def _pad_batch(samples: list[EncodedWindow], pad_id: int):
    width = max(len(s.input_ids) for s in samples)
    ids, mask, labels = [], [], []
    for s in samples:
        short = width - len(s.input_ids)
        ids.append(s.input_ids + [pad_id] * short)
        mask.append(s.attention_mask + [0] * short)
        labels.append(s.labels + [-100] * short)
    return (
        torch.tensor(ids, dtype=torch.long),
        torch.tensor(mask, dtype=torch.long),
        torch.tensor(labels, dtype=torch.long),
    )


def train(config: TrainConfig) -> TrainResult:
    """Run the fine-tuning loop; returns per-epoch mean losses.

    Deterministic given the seed up to backend nondeterminism. Raises on an
    empty dataset or an unavailable checkpoint.
    """
    if not config.window_file:
        raise ValueError("config.window_file is required")
    if not config.output_dir:
        raise ValueError("config.output_dir is required")

    torch.manual_seed(config.seed)
    random.seed(config.seed)

    tokenizer = AutoTokenizer.from_pretrained(config.checkpoint)
    model = AutoModelForTokenClassification.from_pretrained(
        config.checkpoint, num_labels=len(LABEL2ID), id2label=ID2LABEL, label2id=LABEL2ID
    )
    samples = prepare_dataset(config.window_file, tokenizer, config.max_length)
    samples = [s for s in samples if s.input_ids]
    if not samples:
        raise ValueError(f"{config.window_file}: no training windows")

    optimizer = AdamW(model.parameters(), lr=config.learning_rate)
    order = list(range(len(samples)))
    shuffler = random.Random(config.seed)
    pad_id = tokenizer.pad_token_id or 0

    model.train()
    epoch_losses = []
    for epoch in range(config.epochs):
        shuffler.shuffle(order)
        total = 0.0
        steps = 0
        for off in range(0, len(order), config.batch_size):
            batch = [samples[i] for i in order[off : off + config.batch_size]]
            ids, mask, labels = _pad_batch(batch, pad_id)
            loss = model(input_ids=ids, attention_mask=mask, labels=labels).loss
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total += float(loss.detach())
            steps += 1
        epoch_losses.append(total / steps)
        logger.info("epoch %d/%d: mean loss %.4f", epoch + 1, config.epochs, epoch_losses[-1])

    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out)
    tokenizer.save_pretrained(out)
    log = {"config": asdict(config), "epoch_losses": epoch_losses}
    (out / "training_log.json").write_text(json.dumps(log, indent=2) + "\n", encoding="utf-8")
    return TrainResult(str(out), epoch_losses)
