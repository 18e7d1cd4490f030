"""Core document, span, token and label types shared by the whole toolkit.

Offsets are character offsets into the document text, end-exclusive, so that
``doc.text[span.start:span.end]`` always yields the annotated slice exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class Level(Enum):
    """Heading level of a span: first-level title or second-level subtitle."""

    TITLE = "title"
    SUBTITLE = "subtitle"


class Label(Enum):
    """Per-token tag. Only inside/outside tags are used, no B- prefix."""

    O = "O"
    I_TITLE = "I-title"
    I_STITLE = "I-Stitle"


LABEL_FOR_LEVEL = {Level.TITLE: Label.I_TITLE, Level.SUBTITLE: Label.I_STITLE}
LEVEL_FOR_LABEL = {Label.I_TITLE: Level.TITLE, Label.I_STITLE: Level.SUBTITLE}


@dataclass(frozen=True)
class Document:
    """A unit of processing: an identified text with stable character offsets."""

    doc_id: str
    text: str

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")


@dataclass(frozen=True)
class Span:
    """Half-open character range [start, end) tagged with a heading level."""

    start: int
    end: int
    level: Level


@dataclass(frozen=True)
class Token:
    """A word token: its surface text plus [start, end) offsets into the document."""

    text: str
    start: int
    end: int


# Maximal alphanumeric runs become one token; any other non-whitespace
# character stands alone. Underscore is not treated as alphanumeric.
_TOKEN_RE = re.compile(r"[^\W_]+|\S")


def pretokenize(doc: Document) -> list[Token]:
    """Split a document into word tokens.

    Whitespace never produces tokens, so concatenating the token texts
    reproduces the document text with whitespace removed.
    """
    return [Token(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(doc.text)]


def normalize_title(raw: str) -> str:
    """Canonical form of a heading: lowercased, whitespace collapsed, trailing colons stripped."""
    s = " ".join(raw.lower().split())
    while s.endswith(":"):
        s = s[:-1].rstrip()
    return s


@dataclass(frozen=True)
class SpanViolation:
    kind: str  # "bounds" | "overlap" | "zero_length"
    span: Span
    message: str


def validate_annotation(doc: Document, spans: list[Span]) -> list[SpanViolation]:
    """Check span invariants against a document.

    Returns one violation per problem (out-of-bounds, zero-length, pairwise
    overlap); an empty list means the annotation set is valid.
    """
    violations = []
    n = len(doc.text)
    for s in spans:
        if s.start >= s.end:
            violations.append(
                SpanViolation("zero_length", s, f"span [{s.start}:{s.end}) is empty or inverted")
            )
        if s.start < 0 or s.end > n:
            violations.append(
                SpanViolation("bounds", s, f"span [{s.start}:{s.end}) outside document of length {n}")
            )
    ordered = sorted(spans, key=lambda s: (s.start, s.end))
    for a, b in zip(ordered, ordered[1:]):
        if b.start < a.end:
            violations.append(
                SpanViolation(
                    "overlap",
                    b,
                    f"span [{b.start}:{b.end}) overlaps [{a.start}:{a.end})",
                )
            )
    return violations
