"""Span-level precision/recall/F1 in linear and hierarchical modes.

A prediction is a true positive when a gold span has the same boundaries
(and, in hierarchical mode, the same level). Counts are kept per class and
overall; micro aggregation pools counts before taking ratios, macro averages
the per-class ratios. All 0/0 ratios are defined as 0.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass
from enum import Enum

from .docmodel import Level, Span


class Mode(Enum):
    LINEAR = "linear"
    HIERARCHICAL = "hierarchical"


class Aggregation(Enum):
    MICRO = "micro"
    MACRO = "macro"


@dataclass(frozen=True)
class ClassCounts:
    true_positives: int = 0
    false_positives: int = 0
    false_negatives: int = 0

    def __add__(self, other: "ClassCounts") -> "ClassCounts":
        return ClassCounts(
            self.true_positives + other.true_positives,
            self.false_positives + other.false_positives,
            self.false_negatives + other.false_negatives,
        )


@dataclass(frozen=True)
class MatchCounts:
    mode: Mode
    title: ClassCounts
    subtitle: ClassCounts

    @property
    def overall(self) -> ClassCounts:
        return self.title + self.subtitle

    def __add__(self, other: "MatchCounts") -> "MatchCounts":
        if self.mode is not other.mode:
            raise ValueError("cannot pool counts across modes")
        return MatchCounts(self.mode, self.title + other.title, self.subtitle + other.subtitle)


@dataclass(frozen=True)
class ClassReport:
    precision: float
    recall: float
    f1: float
    counts: ClassCounts


@dataclass(frozen=True)
class MetricsReport:
    mode: Mode
    aggregation: Aggregation
    precision: float
    recall: float
    f1: float
    per_class: dict[str, ClassReport]
    counts: MatchCounts


def _check_disjoint(spans: list[Span], which: str) -> None:
    ordered = sorted(spans, key=lambda s: (s.start, s.end))
    for a, b in zip(ordered, ordered[1:]):
        if b.start < a.end:
            raise ValueError(
                f"{which} spans overlap: [{a.start}:{a.end}) and [{b.start}:{b.end})"
            )


def match_spans(
    gold: list[Span], pred: list[Span], mode: Mode, slack: int = 0
) -> MatchCounts:
    """Count TP/FP/FN between two internally-disjoint span lists.

    Matched pairs are attributed to the gold span's class, unmatched
    predictions to the predicted class. ``slack`` loosens both boundaries by
    up to that many characters (0 = exact, the default).
    """
    _check_disjoint(gold, "gold")
    _check_disjoint(pred, "pred")

    gold_sorted = sorted(gold, key=lambda s: (s.start, s.end))
    pred_sorted = sorted(pred, key=lambda s: (s.start, s.end))
    matched_gold = [False] * len(gold_sorted)
    tp = {Level.TITLE: 0, Level.SUBTITLE: 0}
    fp = {Level.TITLE: 0, Level.SUBTITLE: 0}
    for p in pred_sorted:
        hit = None
        for gi, g in enumerate(gold_sorted):
            if matched_gold[gi]:
                continue
            if abs(g.start - p.start) > slack or abs(g.end - p.end) > slack:
                continue
            if mode is Mode.HIERARCHICAL and g.level is not p.level:
                continue
            hit = gi
            break
        if hit is None:
            fp[p.level] += 1
        else:
            matched_gold[hit] = True
            tp[gold_sorted[hit].level] += 1
    fn = {Level.TITLE: 0, Level.SUBTITLE: 0}
    for gi, g in enumerate(gold_sorted):
        if not matched_gold[gi]:
            fn[g.level] += 1
    return MatchCounts(
        mode,
        ClassCounts(tp[Level.TITLE], fp[Level.TITLE], fn[Level.TITLE]),
        ClassCounts(tp[Level.SUBTITLE], fp[Level.SUBTITLE], fn[Level.SUBTITLE]),
    )


def _ratios(c: ClassCounts) -> tuple[float, float, float]:
    p = c.true_positives / (c.true_positives + c.false_positives) if c.true_positives + c.false_positives else 0.0
    r = c.true_positives / (c.true_positives + c.false_negatives) if c.true_positives + c.false_negatives else 0.0
    f1 = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f1


def compute_metrics(counts: MatchCounts, aggregation: Aggregation = Aggregation.MICRO) -> MetricsReport:
    per_class = {}
    for name, c in (("title", counts.title), ("subtitle", counts.subtitle)):
        p, r, f1 = _ratios(c)
        per_class[name] = ClassReport(p, r, f1, c)
    if aggregation is Aggregation.MICRO:
        p, r, f1 = _ratios(counts.overall)
    else:
        reports = list(per_class.values())
        p = statistics.mean(cr.precision for cr in reports)
        r = statistics.mean(cr.recall for cr in reports)
        f1 = statistics.mean(cr.f1 for cr in reports)
    return MetricsReport(counts.mode, aggregation, p, r, f1, per_class, counts)


def evaluate_corpus(
    gold: dict[str, list[Span]],
    pred: dict[str, list[Span]],
    mode: Mode,
    aggregation: Aggregation = Aggregation.MICRO,
    slack: int = 0,
) -> MetricsReport:
    """Pool per-document match counts over a corpus, then compute ratios.

    Gold documents without predictions count all their spans as misses;
    predictions for unknown documents are an error.
    """
    unknown = sorted(set(pred) - set(gold))
    if unknown:
        raise ValueError(f"predictions for unknown doc_id(s): {', '.join(unknown)}")
    zero = ClassCounts()
    total = MatchCounts(mode, zero, zero)
    for doc_id, gold_spans in gold.items():
        total = total + match_spans(gold_spans, pred.get(doc_id, []), mode, slack)
    return compute_metrics(total, aggregation)


@dataclass(frozen=True)
class TimingReport:
    document_count: int
    mean_ms: float
    median_ms: float


def time_segmenter(segmenter, corpus, warmup_passes: int = 1) -> TimingReport:
    """Per-document wall-time stats for a segmenter callable, warm-up discarded."""
    docs = list(corpus)
    if not docs:
        raise ValueError("cannot time a segmenter on an empty corpus")
    for _ in range(warmup_passes):
        for doc in docs:
            segmenter(doc)
    times = []
    for doc in docs:
        t0 = time.perf_counter()
        segmenter(doc)
        times.append((time.perf_counter() - t0) * 1000.0)
    return TimingReport(len(docs), statistics.mean(times), statistics.median(times))


def report_to_dict(report: MetricsReport) -> dict:
    def counts_dict(c: ClassCounts) -> dict:
        return {
            "true_positives": c.true_positives,
            "false_positives": c.false_positives,
            "false_negatives": c.false_negatives,
        }

    return {
        "mode": report.mode.value,
        "aggregation": report.aggregation.value,
        "precision": report.precision,
        "recall": report.recall,
        "f1": report.f1,
        "per_class": {
            name: {
                "precision": cr.precision,
                "recall": cr.recall,
                "f1": cr.f1,
                "counts": counts_dict(cr.counts),
            }
            for name, cr in report.per_class.items()
        },
        "counts": {
            "title": counts_dict(report.counts.title),
            "subtitle": counts_dict(report.counts.subtitle),
            "overall": counts_dict(report.counts.overall),
        },
    }


def render_report(report: MetricsReport) -> str:
    rows = [
        ("class", "precision", "recall", "f1", "TP", "FP", "FN"),
    ]
    for name, cr in report.per_class.items():
        c = cr.counts
        rows.append(
            (name, f"{cr.precision:.3f}", f"{cr.recall:.3f}", f"{cr.f1:.3f}",
             str(c.true_positives), str(c.false_positives), str(c.false_negatives))
        )
    o = report.counts.overall
    rows.append(
        ("overall", f"{report.precision:.3f}", f"{report.recall:.3f}", f"{report.f1:.3f}",
         str(o.true_positives), str(o.false_positives), str(o.false_negatives))
    )
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = [f"mode: {report.mode.value}  aggregation: {report.aggregation.value}"]
    for r in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def write_report(report: MetricsReport, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report_to_dict(report), f, indent=2)
        f.write("\n")
