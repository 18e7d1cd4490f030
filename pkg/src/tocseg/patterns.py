"""Rule-based heading detection.

Headings are matched by pattern specs of the form prefix + content + colon
terminator. A heading alone on its line (colon then newline) is a title; a
heading whose line continues after the colon is a subtitle. Candidate matches
from all specs are merged deterministically and filtered through a denylist
of known false positives.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

import yaml

from .docmodel import Document, Level, Span, normalize_title


class PatternError(ValueError):
    """Raised when a pattern set cannot be compiled; names the offending spec."""


class PrefixClass(Enum):
    LINE_START = "line_start"
    BLANK_LINE = "blank_line"
    DOC_START = "doc_start"


class TerminatorClass(Enum):
    COLON_NEWLINE = "colon_newline"
    COLON_INLINE = "colon_inline"


@dataclass(frozen=True)
class ContentClass:
    """A named rule for what may stand between the prefix and the colon.

    ``regex`` must not match colons or newlines; ``max_words`` and
    ``require_letter`` are checked on the matched text afterwards.
    """

    name: str
    regex: str
    max_words: int | None = 10
    require_letter: bool = True


# Allowed heading characters: letters, digits, space, hyphen, slash,
# parentheses, apostrophe, period, comma. 1-60 characters, first character
# alphanumeric, no trailing space.
_DEFAULT_CONTENT = r"[0-9A-Za-z](?:[0-9A-Za-z \-/()'.,]{0,58}[0-9A-Za-z\-/()'.,])?"
_ALLCAPS_CONTENT = r"[0-9A-Z](?:[0-9A-Z \-/()'.,]{0,58}[0-9A-Z\-/()'.,])?"
_NUMBERED_CONTENT = r"\d{1,2}\. ?" + _DEFAULT_CONTENT

BUILTIN_CONTENT_CLASSES = {
    "default": ContentClass("default", _DEFAULT_CONTENT),
    "allcaps": ContentClass("allcaps", _ALLCAPS_CONTENT),
    "numbered": ContentClass("numbered", _NUMBERED_CONTENT, max_words=11),
}


@dataclass(frozen=True)
class PatternSpec:
    id: str
    prefix_class: PrefixClass
    content_rule: str
    terminator_class: TerminatorClass
    level: Level


@dataclass(frozen=True)
class PatternSet:
    """An ordered list of specs (earlier wins ties) plus a denylist."""

    specs: tuple[PatternSpec, ...]
    denylist: frozenset[str] = frozenset()
    content_classes: dict[str, ContentClass] = field(default_factory=dict)

    def with_denylist(self, denylist) -> "PatternSet":
        return replace(self, denylist=frozenset(denylist))


@dataclass(frozen=True)
class Detection:
    """One detected heading: the content span, without anchors or colon."""

    span: Span
    pattern_id: str
    matched_text: str


@dataclass(frozen=True)
class MatchTrace:
    """The three sub-regions behind one detection, for debugging."""

    pattern_id: str
    prefix: tuple[int, int]
    content: tuple[int, int]
    terminator: tuple[int, int]
    content_text: str


_PREFIX_RE = {
    PrefixClass.LINE_START: r"(?<=\n)",
    PrefixClass.BLANK_LINE: r"(?<=\n\n)",
    PrefixClass.DOC_START: r"\A",
}

_TERMINATOR_RE = {
    TerminatorClass.COLON_NEWLINE: r":(?=\n|\Z)",
    TerminatorClass.COLON_INLINE: r":(?=[^\S\n]*\S)",
}


def default_pattern_set(denylist=frozenset()) -> PatternSet:
    """The stock twelve-spec set.

    Three spec families share a colon-newline terminator and title level
    (plain, numbered "N." headings, all-caps headings); the fourth matches
    inline headings ("Neck: supple") as subtitles. Each family comes in
    line-start, blank-line and doc-start variants.
    """
    specs = []
    variants = [
        ("linestart", PrefixClass.LINE_START),
        ("blankline", PrefixClass.BLANK_LINE),
        ("docstart", PrefixClass.DOC_START),
    ]
    families = [
        ("P1", "default", TerminatorClass.COLON_NEWLINE, Level.TITLE),
        ("P2", "numbered", TerminatorClass.COLON_NEWLINE, Level.TITLE),
        ("P3", "allcaps", TerminatorClass.COLON_NEWLINE, Level.TITLE),
        ("P4", "default", TerminatorClass.COLON_INLINE, Level.SUBTITLE),
    ]
    for fam, content, term, level in families:
        for suffix, prefix in variants:
            specs.append(PatternSpec(f"{fam}-{suffix}", prefix, content, term, level))
    return PatternSet(tuple(specs), frozenset(denylist))


class Engine:
    """Immutable compiled matcher set; safe to share across workers."""

    def __init__(self, matchers, denylist):
        self._matchers = tuple(matchers)  # (spec, compiled regex, content class)
        self.denylist = frozenset(denylist)

    @property
    def specs(self) -> tuple[PatternSpec, ...]:
        return tuple(spec for spec, _, _ in self._matchers)

    def detect(self, doc: Document, apply_denylist: bool = True) -> list[Detection]:
        """All headings in the document, sorted by start, pairwise disjoint.

        Overlapping candidates are resolved by earliest start, then longest
        match, then spec order. With ``apply_denylist`` false the raw matches
        are returned, which is what frequency curation wants to see.
        """
        text = doc.text
        candidates = []
        for rank, (spec, regex, content) in enumerate(self._matchers):
            for m in regex.finditer(text):
                matched = m.group("content")
                if not _content_ok(matched, content):
                    continue
                start, end = m.start("content"), m.end("content")
                candidates.append((start, -(end - start), rank, spec, matched))
        candidates.sort(key=lambda c: c[:3])

        detections = []
        last_end = -1
        for start, neg_len, rank, spec, matched in candidates:
            end = start - neg_len
            if start < last_end:
                continue
            detections.append(Detection(Span(start, end, spec.level), spec.id, matched))
            last_end = end
        if apply_denylist:
            detections = [
                d for d in detections if normalize_title(d.matched_text) not in self.denylist
            ]
        return detections

    def explain(self, doc: Document, offset: int) -> MatchTrace | None:
        """Trace the detection covering ``offset``, or None if there is none."""
        if offset < 0 or offset > len(doc.text):
            raise ValueError(f"offset {offset} outside document of length {len(doc.text)}")
        for d in self.detect(doc):
            if not (d.span.start <= offset < d.span.end):
                continue
            spec = next(s for s in self.specs if s.id == d.pattern_id)
            if spec.prefix_class is PrefixClass.BLANK_LINE:
                prefix = (d.span.start - 2, d.span.start)
            elif spec.prefix_class is PrefixClass.LINE_START:
                prefix = (d.span.start - 1, d.span.start)
            else:
                prefix = (0, 0)
            term_end = d.span.end + 1
            if (
                spec.terminator_class is TerminatorClass.COLON_NEWLINE
                and doc.text[term_end : term_end + 1] == "\n"
            ):
                term_end += 1
            return MatchTrace(
                d.pattern_id, prefix, (d.span.start, d.span.end), (d.span.end, term_end), d.matched_text
            )
        return None


def _content_ok(matched: str, content: ContentClass) -> bool:
    if content.max_words is not None and len(matched.split()) > content.max_words:
        return False
    if content.require_letter and not any(c.isalpha() for c in matched):
        return False
    return True


def compile(pattern_set: PatternSet) -> Engine:  # mirrors re.compile
    """Compile a pattern set into an engine, failing with the offending spec id."""
    classes = dict(BUILTIN_CONTENT_CLASSES)
    classes.update(pattern_set.content_classes)
    seen = set()
    matchers = []
    for spec in pattern_set.specs:
        if spec.id in seen:
            raise PatternError(f"spec {spec.id!r}: duplicate id")
        seen.add(spec.id)
        content = classes.get(spec.content_rule)
        if content is None:
            raise PatternError(f"spec {spec.id!r}: unknown content class {spec.content_rule!r}")
        source = (
            _PREFIX_RE[spec.prefix_class]
            + f"(?P<content>{content.regex})"
            + _TERMINATOR_RE[spec.terminator_class]
        )
        try:
            regex = re.compile(source)
        except re.error as exc:
            raise PatternError(f"spec {spec.id!r}: bad content regex: {exc}") from exc
        matchers.append((spec, regex, content))
    return Engine(matchers, pattern_set.denylist)


def load_denylist(path) -> frozenset[str]:
    """Read a denylist file: one title per line, '#' comments, blanks ignored."""
    entries = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.rstrip()
        if not line or line.lstrip().startswith("#"):
            continue
        entries.add(normalize_title(line))
    return frozenset(entries)


def write_denylist(entries, path) -> None:
    Path(path).write_text(
        "".join(f"{e}\n" for e in sorted(entries)), encoding="utf-8"
    )


def load_pattern_config(path, denylist_path=None) -> PatternSet:
    """Load a pattern set from a YAML config.

    Schema::

        content_classes:          # optional; extends/overrides the builtins
          myclass:
            regex: "..."
            max_words: 10         # optional
            require_letter: true  # optional
        specs:
          - id: P1-linestart
            prefix: line_start | blank_line | doc_start
            content: default | allcaps | numbered | <custom name>
            terminator: colon_newline | colon_inline
            level: title | subtitle
    """
    data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    classes = {}
    for name, cc in (data.get("content_classes") or {}).items():
        if not isinstance(cc, dict) or "regex" not in cc:
            raise PatternError(f"content class {name!r}: needs a 'regex' key")
        classes[name] = ContentClass(
            name,
            cc["regex"],
            max_words=cc.get("max_words", 10),
            require_letter=cc.get("require_letter", True),
        )
    specs = []
    for entry in data.get("specs") or []:
        try:
            specs.append(
                PatternSpec(
                    entry["id"],
                    PrefixClass(entry["prefix"]),
                    entry["content"],
                    TerminatorClass(entry["terminator"]),
                    Level(entry["level"]),
                )
            )
        except (KeyError, ValueError) as exc:
            raise PatternError(f"spec {entry.get('id', '?')!r}: {exc}") from exc
    denylist = load_denylist(denylist_path) if denylist_path else frozenset()
    return PatternSet(tuple(specs), denylist, classes)
