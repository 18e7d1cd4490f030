"""Run a trained checkpoint over windows and emit word-level predictions.

Subword predictions are reduced to one label per word token by taking the
first subword's label. Words that fell past the truncation limit get O. The
output is a window file the segmentation toolkit converts to spans and
scores.
"""

from __future__ import annotations

import logging

import torch
from transformers import AutoModelForTokenClassification, AutoTokenizer

from .encoding import prepare_dataset
from .training import _pad_batch
from .windows import ID2LABEL, Window, WordToken, read_window_file, write_window_file

logger = logging.getLogger(__name__)


def predict(
    checkpoint,
    windows_or_path,
    out_path=None,
    batch_size: int = 16,
    max_length: int = 512,
) -> list[Window]:
    tokenizer = AutoTokenizer.from_pretrained(checkpoint)
    model = AutoModelForTokenClassification.from_pretrained(checkpoint)
    samples = prepare_dataset(windows_or_path, tokenizer, max_length)
    pad_id = tokenizer.pad_token_id or 0

    model.eval()
    predicted: list[Window] = []
    unreachable = 0
    with torch.no_grad():
        for off in range(0, len(samples), batch_size):
            batch = samples[off : off + batch_size]
            if not batch:
                continue
            ids, mask, _ = _pad_batch(batch, pad_id)
            logits = model(input_ids=ids, attention_mask=mask).logits
            best = logits.argmax(dim=-1)
            for row, sample in enumerate(batch):
                first_subword: dict[int, int] = {}
                for pos, wi in enumerate(sample.word_for_subword):
                    if wi is not None and wi not in first_subword:
                        first_subword[wi] = pos
                tokens = []
                for wi, t in enumerate(sample.window.tokens):
                    pos = first_subword.get(wi)
                    if pos is None:
                        unreachable += 1
                        label = "O"
                    else:
                        label = ID2LABEL[int(best[row, pos])]
                    tokens.append(WordToken(t.text, t.start, t.end, label))
                predicted.append(Window(sample.window.doc_id, sample.window.index, tuple(tokens)))
    if unreachable:
        logger.warning("%d word tokens had no subword (truncation); labeled O", unreachable)
    if out_path is not None:
        write_window_file(predicted, out_path)
    return predicted
