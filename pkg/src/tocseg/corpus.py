"""Corpus ingestion, annotation I/O, frequency/statistics analysis, and a
seeded synthetic-corpus generator.

The real discharge-summary corpus is credential-gated, so fixtures and demos
run on generated documents: pattern-conforming headings drawn from a fixed
clinical lexicon, interleaved with body text that contains no colons at all.
The generator returns exact gold spans, and can plant known false-positive
lines (medication-list noise) for denylist curation workflows.
"""

from __future__ import annotations

import json
import logging
import random
import statistics
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .docmodel import Document, Level, Span, normalize_title, pretokenize
from .patterns import Engine

logger = logging.getLogger(__name__)


class CorpusError(ValueError):
    """Malformed corpus input; the message carries the offending location."""


class CorpusFormat(Enum):
    TEXT_DIR = "textdir"
    JSON_LINES = "jsonl"


class Corpus:
    """Streamable ordered collection of documents; re-iterable."""

    def __init__(self, factory):
        self._factory = factory

    def __iter__(self):
        return self._factory()

    @classmethod
    def from_documents(cls, docs) -> "Corpus":
        docs = tuple(docs)
        seen = set()
        for d in docs:
            if d.doc_id in seen:
                raise CorpusError(f"duplicate doc_id {d.doc_id!r}")
            seen.add(d.doc_id)
        return cls(lambda: iter(docs))


def ingest(path, fmt: CorpusFormat) -> Corpus:
    """Open a corpus for streaming. CRLF line endings are normalized to LF."""
    path = Path(path)
    if fmt is CorpusFormat.TEXT_DIR:
        if not path.is_dir():
            raise CorpusError(f"{path}: not a readable directory")
        if not any(path.glob("*.txt")):
            logger.warning("%s: no *.txt files found, corpus is empty", path)

        def iter_dir():
            for f in sorted(path.glob("*.txt")):
                yield Document(f.stem, f.read_text(encoding="utf-8").replace("\r\n", "\n"))

        return Corpus(iter_dir)

    if not path.is_file():
        raise CorpusError(f"{path}: not a readable file")

    def iter_jsonl():
        seen = set()
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    doc_id, text = record["doc_id"], record["text"]
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise CorpusError(f"{path}: line {lineno}: malformed record: {exc}") from exc
                if doc_id in seen:
                    raise CorpusError(f"{path}: line {lineno}: duplicate doc_id {doc_id!r}")
                seen.add(doc_id)
                yield Document(doc_id, text.replace("\r\n", "\n"))

    return Corpus(iter_jsonl)


def write_corpus(corpus, path, fmt: CorpusFormat) -> None:
    path = Path(path)
    if fmt is CorpusFormat.TEXT_DIR:
        path.mkdir(parents=True, exist_ok=True)
        for doc in corpus:
            (path / f"{doc.doc_id}.txt").write_text(doc.text, encoding="utf-8")
    else:
        with open(path, "w", encoding="utf-8") as f:
            for doc in corpus:
                f.write(json.dumps({"doc_id": doc.doc_id, "text": doc.text}, ensure_ascii=False) + "\n")


def read_annotations(path) -> dict[str, list[Span]]:
    """Annotation file: one JSON record per line, doc_id plus span list."""
    annotations: dict[str, list[Span]] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                spans = [
                    Span(s["start"], s["end"], Level(s["level"])) for s in record["spans"]
                ]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise CorpusError(f"{path}: line {lineno}: malformed record: {exc}") from exc
            doc_id = record["doc_id"]
            if doc_id in annotations:
                raise CorpusError(f"{path}: line {lineno}: duplicate doc_id {doc_id!r}")
            annotations[doc_id] = spans
    return annotations


def write_annotations(annotations: dict[str, list[Span]], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for doc_id, spans in annotations.items():
            record = {
                "doc_id": doc_id,
                "spans": [
                    {"start": s.start, "end": s.end, "level": s.level.value} for s in spans
                ],
            }
            f.write(json.dumps(record, ensure_ascii=False) + "\n")


@dataclass(frozen=True)
class FrequencyTable:
    rows: tuple[tuple[str, int], ...]  # (normalized title, count), descending count

    @property
    def total(self) -> int:
        return sum(count for _, count in self.rows)


def title_frequencies(corpus, engine: Engine) -> FrequencyTable:
    """Detection counts per normalized title, before denylist filtering, so
    false positives surface for curation."""
    counts: dict[str, int] = {}
    for doc in corpus:
        for d in engine.detect(doc, apply_denylist=False):
            key = normalize_title(d.matched_text)
            counts[key] = counts.get(key, 0) + 1
    rows = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return FrequencyTable(tuple(rows))


@dataclass(frozen=True)
class CorpusStats:
    document_count: int
    mean_tokens: float
    median_tokens: float
    mean_headings: float
    unique_titles: int
    total_headings: int


def corpus_stats(corpus, engine: Engine) -> CorpusStats:
    lengths = []
    heading_counts = []
    titles = set()
    total = 0
    for doc in corpus:
        lengths.append(len(pretokenize(doc)))
        detections = engine.detect(doc)
        heading_counts.append(len(detections))
        total += len(detections)
        titles.update(normalize_title(d.matched_text) for d in detections)
    if not lengths:
        return CorpusStats(0, 0.0, 0.0, 0.0, 0, 0)
    return CorpusStats(
        len(lengths),
        statistics.mean(lengths),
        statistics.median(lengths),
        statistics.mean(heading_counts),
        len(titles),
        total,
    )


TITLE_LEXICON = (
    "Chief Complaint",
    "History of Present Illness",
    "Past Medical History",
    "Family History",
    "Social History",
    "Physical Exam",
    "Admission Labs",
    "Pertinent Results",
    "Brief Hospital Course",
    "Medications on Admission",
    "Discharge Medications",
    "Discharge Diagnosis",
    "Discharge Condition",
    "Discharge Disposition",
    "Followup Instructions",
    "Allergies",
    "Review of Systems",
    "Assessment and Plan",
    "Major Surgical or Invasive Procedure",
    "Hospital Course",
)

SUBTITLE_LEXICON = (
    "HEENT",
    "Neck",
    "Lungs",
    "Extremities",
    "Heart",
    "Abdomen",
    "Skin",
    "Neuro",
    "Vitals",
    "General",
    "Chest",
    "Cardiac",
    "Pulses",
    "Psych",
)

# Body vocabulary deliberately free of colons so generated body text can
# never satisfy a heading pattern.
_BODY_WORDS = (
    "the patient was admitted with stable mild chronic acute improved daily "
    "oral dose left right lower upper pain fever denies reports tolerated "
    "well without complication continued started monitor followup status "
    "normal unremarkable alert oriented breathing comfortably ambulating "
    "diet advanced medication adjusted symptoms resolved discharged home "
    "condition good plan outpatient clinic course remained afebrile vitals "
    "reviewed labs trended overnight"
).split()

NOISE_STRINGS = (
    "Refills",
    "Sig",
    "Disp",
    "Tablet(s) refills",
)

# Curated false positives, ready to pass to an Engine. The starred variant
# never matches the default content charset but stays listed because it is
# the canonical medication-list artifact.
DEFAULT_DENYLIST = frozenset(
    {normalize_title(s) for s in NOISE_STRINGS} | {"tablet(s)*refills"}
)


@dataclass(frozen=True)
class NoiseProfile:
    """False-positive lines to inject: each matches a heading pattern but is
    not a heading, mimicking medication-list noise."""

    strings: tuple[str, ...] = NOISE_STRINGS
    per_doc: tuple[int, int] = (2, 4)


def generate_synthetic(
    seed: int,
    doc_count: int,
    headings_per_doc: int,
    noise_profile: NoiseProfile | None = None,
    lines_per_section: tuple[int, int] = (1, 3),
    words_per_line: tuple[int, int] = (5, 12),
) -> tuple[Corpus, dict[str, list[Span]]]:
    """Deterministic synthetic corpus with exact gold spans.

    Titles are planted alone on their line ("Heading:"), subtitles inline
    ("Neck: supple ..."); body lines carry no colons. With a noise profile,
    denylisted false-positive lines are planted in the text but kept out of
    the gold annotation.
    """
    rng = random.Random(seed)
    docs = []
    gold: dict[str, list[Span]] = {}
    for n in range(doc_count):
        doc_id = f"synthetic-{n:04d}"
        parts: list[str] = []
        pos = 0
        spans: list[Span] = []

        def emit(text: str) -> None:
            nonlocal pos
            parts.append(text)
            pos += len(text)

        def body(lines: int) -> None:
            for _ in range(lines):
                k = rng.randint(*words_per_line)
                emit(" ".join(rng.choice(_BODY_WORDS) for _ in range(k)) + ".\n")

        def noise_line() -> None:
            name = rng.choice(noise_profile.strings)
            tail = " ".join(rng.choice(_BODY_WORDS) for _ in range(rng.randint(1, 4)))
            emit(f"{name}: {tail}\n")

        noise_slots: set[int] = set()
        if noise_profile is not None and headings_per_doc > 0:
            k = min(rng.randint(*noise_profile.per_doc), headings_per_doc)
            noise_slots = set(rng.sample(range(headings_per_doc), k))

        if rng.random() < 0.5:
            body(rng.randint(1, 2))
        for h in range(headings_per_doc):
            if h in noise_slots:
                noise_line()
            if rng.random() < 0.25 and pos > 0:
                emit("\n")  # blank line before the heading
            if rng.random() < 0.6:
                heading = rng.choice(TITLE_LEXICON)
                spans.append(Span(pos, pos + len(heading), Level.TITLE))
                emit(f"{heading}:\n")
                body(rng.randint(*lines_per_section))
            else:
                heading = rng.choice(SUBTITLE_LEXICON)
                tail = " ".join(rng.choice(_BODY_WORDS) for _ in range(rng.randint(1, 5)))
                spans.append(Span(pos, pos + len(heading), Level.SUBTITLE))
                emit(f"{heading}: {tail}\n")
        docs.append(Document(doc_id, "".join(parts)))
        gold[doc_id] = spans
    return Corpus.from_documents(docs), gold


def merge_denylist(existing, additions_path) -> frozenset[str]:
    """Union an existing denylist with entries from a file, all normalized."""
    merged = set(existing)
    for lineno, raw in enumerate(
        Path(additions_path).read_text(encoding="utf-8").splitlines(), 1
    ):
        line = raw.rstrip()
        if not line or line.lstrip().startswith("#"):
            continue
        entry = normalize_title(line)
        if not entry:
            raise CorpusError(f"{additions_path}: line {lineno}: empty after normalization")
        merged.add(entry)
    return frozenset(merged)
