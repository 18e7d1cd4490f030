"""The token-label window file contract.

One header line per window (``# doc: <doc_id> window: <index>``), then one
token per line as ``text<TAB>start<TAB>end<TAB>label``, blank line between
windows. Offsets are character offsets into the source document; labels are
``O``, ``I-title`` or ``I-Stitle``. This module is the only coupling to the
segmentation toolkit: the two packages exchange these files, nothing else.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

LABELS = ("O", "I-title", "I-Stitle")
LABEL2ID = {label: i for i, label in enumerate(LABELS)}
ID2LABEL = dict(enumerate(LABELS))

_HEADER_RE = re.compile(r"^# doc: (?P<doc_id>.+) window: (?P<index>\d+)$")


@dataclass(frozen=True)
class WordToken:
    text: str
    start: int
    end: int
    label: str


@dataclass(frozen=True)
class Window:
    doc_id: str
    index: int
    tokens: tuple[WordToken, ...]


def read_window_file(path) -> list[Window]:
    windows = []
    doc_id = None
    index = None
    tokens: list[WordToken] = []

    def flush():
        if doc_id is not None:
            windows.append(Window(doc_id, index, tuple(tokens)))

    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
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
        if label not in LABEL2ID:
            raise ValueError(f"{path}: line {lineno}: unknown label {label!r}")
        tokens.append(WordToken(text, int(start), int(end), label))
    flush()
    return windows


def write_window_file(windows, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for i, w in enumerate(windows):
            if i:
                f.write("\n")
            f.write(f"# doc: {w.doc_id} window: {w.index}\n")
            for t in w.tokens:
                f.write(f"{t.text}\t{t.start}\t{t.end}\t{t.label}\n")


def window_text(window: Window) -> tuple[str, list[tuple[int, int]]]:
    """Reconstruct the window's text and window-local word ranges.

    Offsets are rebased so the first token starts at 0; gaps between tokens
    become spaces (the source separation was whitespace by construction).
    """
    if not window.tokens:
        return "", []
    origin = window.tokens[0].start
    pieces = []
    ranges = []
    pos = 0
    for t in window.tokens:
        local_start = t.start - origin
        if local_start < pos:
            raise ValueError(
                f"window {window.doc_id}/{window.index}: token {t.text!r} "
                f"overlaps its predecessor"
            )
        pieces.append(" " * (local_start - pos))
        pieces.append(t.text)
        pos = local_start + len(t.text)
        ranges.append((local_start, pos))
    return "".join(pieces), ranges
