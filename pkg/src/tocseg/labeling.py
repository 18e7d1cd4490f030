"""Span annotations <-> IOB token labels, label projection, training windows.

The window file written here is the contract consumed by the fine-tuning
component: tab-separated ``token<TAB>start<TAB>end<TAB>label`` lines, one
``# doc: <doc_id> window: <index>`` header per window, blank line between
windows, UTF-8.
"""

from __future__ import annotations

import math
import re
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path

from .docmodel import LABEL_FOR_LEVEL, LEVEL_FOR_LABEL, Label, Span, Token

WINDOW_SIZE = 384
WORDS_PER_SUBWORD = 0.75


class AlignmentError(ValueError):
    """A span or subword does not line up with token boundaries."""


@dataclass(frozen=True)
class LabeledToken:
    token: Token
    label: Label


@dataclass(frozen=True)
class SubwordToken:
    text: str
    start: int
    end: int
    is_continuation: bool = False


@dataclass(frozen=True)
class Window:
    doc_id: str
    index: int
    tokens: tuple[LabeledToken, ...]


def spans_to_iob(tokens: list[Token], spans: list[Span]) -> list[Label]:
    """Label each token by the span that fully contains it, O elsewhere.

    A token that crosses a span boundary is an alignment error: the span was
    not produced on token boundaries.
    """
    ordered = sorted(spans, key=lambda s: (s.start, s.end))
    labels = []
    i = 0
    for tok in tokens:
        while i < len(ordered) and ordered[i].end <= tok.start:
            i += 1
        if i < len(ordered) and tok.end > ordered[i].start and tok.start < ordered[i].end:
            s = ordered[i]
            if not (s.start <= tok.start and tok.end <= s.end):
                raise AlignmentError(
                    f"token {tok.text!r} [{tok.start}:{tok.end}) straddles span "
                    f"[{s.start}:{s.end}) {s.level.value}"
                )
            labels.append(LABEL_FOR_LEVEL[s.level])
        else:
            labels.append(Label.O)
    return labels


def iob_to_spans(tokens: list[Token], labels: list[Label]) -> list[Span]:
    """Merge maximal runs of equally-labeled consecutive tokens into spans.

    Consecutive means adjacent in the token sequence; for a full
    pretokenization only whitespace can separate such tokens, so runs never
    jump across punctuation. A label change always breaks the run.
    """
    if len(tokens) != len(labels):
        raise ValueError(f"{len(tokens)} tokens but {len(labels)} labels")
    spans = []
    run_start = None
    run_label = Label.O
    for i, (tok, label) in enumerate(zip(tokens, labels)):
        if label is not run_label:
            if run_label is not Label.O:
                spans.append(
                    Span(tokens[run_start].start, tokens[i - 1].end, LEVEL_FOR_LABEL[run_label])
                )
            run_start = i if label is not Label.O else None
            run_label = label
    if run_label is not Label.O:
        spans.append(Span(tokens[run_start].start, tokens[-1].end, LEVEL_FOR_LABEL[run_label]))
    return spans


def project_labels(
    word_labeled: list[LabeledToken], subwords: list[SubwordToken]
) -> list[Label]:
    """Project word-token labels onto subword tokens.

    A subword takes the label of the word containing its start offset;
    subwords starting outside every word get O. A subword overlapping two
    words is an alignment error.
    """
    ends = [lt.token.end for lt in word_labeled]
    labels = []
    for sw in subwords:
        # words intersecting [sw.start, sw.end) form a contiguous block
        i = bisect_right(ends, sw.start)
        hits = []
        while i < len(word_labeled) and word_labeled[i].token.start < sw.end:
            hits.append(word_labeled[i])
            i += 1
        if len(hits) > 1:
            raise AlignmentError(
                f"subword {sw.text!r} [{sw.start}:{sw.end}) overlaps "
                f"{hits[0].token.text!r} and {hits[1].token.text!r}"
            )
        if hits and hits[0].token.start <= sw.start < hits[0].token.end:
            labels.append(hits[0].label)
        else:
            labels.append(Label.O)
    return labels


def make_windows(
    doc_id: str, tokens: list[LabeledToken], window_size: int = WINDOW_SIZE
) -> list[Window]:
    """Chunk a labeled token sequence into fixed-size windows; last may be short."""
    if window_size < 1:
        raise ValueError(f"window_size must be >= 1, got {window_size}")
    return [
        Window(doc_id, i, tuple(tokens[off : off + window_size]))
        for i, off in enumerate(range(0, len(tokens), window_size))
    ]


def subword_budget(word_count: int, words_per_token: float = WORDS_PER_SUBWORD) -> int:
    """Estimated subword-token demand for a word count (1 token = 0.75 words)."""
    if words_per_token <= 0:
        raise ValueError(f"words_per_token must be positive, got {words_per_token}")
    if word_count < 0:
        raise ValueError(f"word_count must be >= 0, got {word_count}")
    return math.ceil(word_count / words_per_token)


_HEADER_RE = re.compile(r"^# doc: (?P<doc_id>.+) window: (?P<index>\d+)$")


def write_window_file(windows: list[Window], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for i, w in enumerate(windows):
            if i:
                f.write("\n")
            f.write(f"# doc: {w.doc_id} window: {w.index}\n")
            for lt in w.tokens:
                t = lt.token
                f.write(f"{t.text}\t{t.start}\t{t.end}\t{lt.label.value}\n")


def read_window_file(path) -> list[Window]:
    windows = []
    doc_id = None
    index = None
    tokens: list[LabeledToken] = []

    def flush():
        if doc_id is not None:
            windows.append(Window(doc_id, index, tuple(tokens)))

    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            m = _HEADER_RE.match(line)
            if m:
                flush()
                doc_id = m.group("doc_id")
                index = int(m.group("index"))
                tokens = []
                continue
            parts = line.split("\t")
            if doc_id is None or len(parts) != 4:
                raise ValueError(f"{path}: line {lineno}: malformed window file line: {line!r}")
            text, start, end, label = parts
            try:
                tokens.append(
                    LabeledToken(Token(text, int(start), int(end)), Label(label))
                )
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from exc
    flush()
    return windows
