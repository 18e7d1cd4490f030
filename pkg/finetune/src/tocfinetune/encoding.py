"""Turn windows into model features, projecting word labels onto subwords.

Each subword takes the label of the word token containing its start offset
(the same containment rule the segmentation toolkit applies); special tokens
get -100 so they drop out of the loss. Windows whose subword expansion
exceeds the model limit are truncated with a logged warning.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from bisect import bisect_right

from .windows import LABEL2ID, Window, read_window_file, window_text

logger = logging.getLogger(__name__)

MAX_SUBWORDS = 512


@dataclass
class EncodedWindow:
    window: Window
    input_ids: list[int]
    attention_mask: list[int]
    labels: list[int]                 # -100 outside the loss
    word_for_subword: list[int | None]
    truncated: bool


def encode_window(window: Window, tokenizer, max_length: int = MAX_SUBWORDS) -> EncodedWindow:
    text, ranges = window_text(window)
    enc = tokenizer(
        text,
        return_offsets_mapping=True,
        return_special_tokens_mask=True,
        truncation=True,
        max_length=max_length,
    )
    ends = [r[1] for r in ranges]
    labels = []
    word_for_subword = []
    for (s, e), special in zip(enc["offset_mapping"], enc["special_tokens_mask"]):
        if special:
            labels.append(-100)
            word_for_subword.append(None)
            continue
        hits = _intersecting(ranges, ends, s, e)
        if len(hits) > 1:
            token = window.tokens[hits[0]]
            raise ValueError(
                f"window {window.doc_id}/{window.index}: subword [{s}:{e}) "
                f"straddles word token {token.text!r}"
            )
        wi = hits[0] if hits else None
        if wi is not None and ranges[wi][0] <= s < ranges[wi][1]:
            labels.append(LABEL2ID[window.tokens[wi].label])
            word_for_subword.append(wi)
        else:
            labels.append(LABEL2ID["O"])
            word_for_subword.append(None)
    truncated = len(tokenizer(text)["input_ids"]) > max_length
    return EncodedWindow(
        window,
        enc["input_ids"],
        enc["attention_mask"],
        labels,
        word_for_subword,
        truncated,
    )


def _intersecting(ranges, ends, s, e):
    # word ranges are sorted and disjoint, so intersections are contiguous
    i = bisect_right(ends, s)
    hits = []
    while i < len(ranges) and ranges[i][0] < e:
        hits.append(i)
        i += 1
    return hits


def prepare_dataset(windows_or_path, tokenizer, max_length: int = MAX_SUBWORDS) -> list[EncodedWindow]:
    """One training sample per window, in file order."""
    windows = (
        read_window_file(windows_or_path)
        if isinstance(windows_or_path, (str, bytes)) or hasattr(windows_or_path, "__fspath__")
        else list(windows_or_path)
    )
    samples = [encode_window(w, tokenizer, max_length) for w in windows]
    truncated = sum(s.truncated for s in samples)
    if truncated:
        logger.warning(
            "%d of %d windows exceeded %d subwords and were truncated",
            truncated, len(samples), max_length,
        )
    return samples
