"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they
print (or ``-rA`` to see captured output afterwards).
"""

import contextlib
import random
import statistics
import time

from oracles import brute_force_match, is_subsequence, random_labeled_fixture, random_span_list
from tocseg.corpus import DEFAULT_DENYLIST, NoiseProfile, generate_synthetic
from tocseg.docmodel import Level, normalize_title, pretokenize
from tocseg.labeling import (
    LabeledToken,
    iob_to_spans,
    make_windows,
    spans_to_iob,
    subword_budget,
)
from tocseg.metrics import Mode, compute_metrics, evaluate_corpus, match_spans
from tocseg.patterns import compile as compile_patterns
from tocseg.patterns import default_pattern_set
from tocseg.toctree import build_toc, clean_document


@contextlib.contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL")
        raise
    print(f"ACCEPTANCE {name}: PASS")


def test_generator_round_trip():
    """100 seeded noise-free documents: exact scores of 1.0 in both modes, <1s."""
    with criterion("generator-round-trip"):
        t0 = time.perf_counter()
        docs, gold = generate_synthetic(seed=2024, doc_count=100, headings_per_doc=8)
        engine = compile_patterns(default_pattern_set())
        pred = {d.doc_id: [x.span for x in engine.detect(d)] for d in docs}
        for mode in (Mode.LINEAR, Mode.HIERARCHICAL):
            report = evaluate_corpus(gold, pred, mode)
            assert report.precision == 1.0
            assert report.recall == 1.0
            assert report.f1 == 1.0
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_denylist_efficacy():
    """Noise-planted corpora score perfect precision only through the denylist."""
    with criterion("denylist-efficacy"):
        docs, gold = generate_synthetic(
            seed=2025, doc_count=40, headings_per_doc=6, noise_profile=NoiseProfile()
        )
        docs = list(docs)
        filtering = compile_patterns(default_pattern_set(DEFAULT_DENYLIST))
        raw = compile_patterns(default_pattern_set())
        pred_filtered = {d.doc_id: [x.span for x in filtering.detect(d)] for d in docs}
        pred_raw = {d.doc_id: [x.span for x in raw.detect(d)] for d in docs}
        assert evaluate_corpus(gold, pred_filtered, Mode.HIERARCHICAL).precision == 1.0
        assert evaluate_corpus(gold, pred_raw, Mode.HIERARCHICAL).precision < 1.0


def test_metric_oracle_equivalence():
    """1000 random instances: match_spans equals the all-pairs brute-force matcher."""
    with criterion("metric-oracle-equivalence"):
        rng = random.Random(31337)
        discrepancies = 0
        for _ in range(1000):
            gold, pred = random_span_list(rng), random_span_list(rng)
            for mode in Mode:
                got = match_spans(gold, pred, mode)
                _, per_class = brute_force_match(gold, pred, mode)
                for level, cc in (("title", got.title), ("subtitle", got.subtitle)):
                    want = per_class[Level(level)]
                    if (cc.true_positives, cc.false_positives, cc.false_negatives) != (
                        want["tp"],
                        want["fp"],
                        want["fn"],
                    ):
                        discrepancies += 1
        assert discrepancies == 0


def test_mode_ordering():
    """Linear matching dominates hierarchical: TP-set superset, P/R/F1 >=."""
    with criterion("mode-ordering"):
        rng = random.Random(7331)
        for _ in range(1000):
            gold, pred = random_span_list(rng), random_span_list(rng)
            lin_pairs, _ = brute_force_match(gold, pred, Mode.LINEAR)
            hier_pairs, _ = brute_force_match(gold, pred, Mode.HIERARCHICAL)
            assert {g for g, _ in hier_pairs} <= {g for g, _ in lin_pairs}
            lin = compute_metrics(match_spans(gold, pred, Mode.LINEAR))
            hier = compute_metrics(match_spans(gold, pred, Mode.HIERARCHICAL))
            assert lin.precision >= hier.precision
            assert lin.recall >= hier.recall
            assert lin.f1 >= hier.f1


def test_iob_round_trip():
    """1000 precondition-satisfying fixtures survive spans->labels->spans."""
    with criterion("iob-round-trip"):
        rng = random.Random(4242)
        for _ in range(1000):
            tokens, spans = random_labeled_fixture(rng)
            assert iob_to_spans(tokens, spans_to_iob(tokens, spans)) == spans


def test_windowing():
    """Windows partition the tokens at exactly 384, and 384 words need 512 subwords."""
    with criterion("windowing"):
        assert subword_budget(384) == 512
        rng = random.Random(555)
        for _ in range(100):
            tokens, spans = random_labeled_fixture(rng, max_tokens=2000)
            labels = spans_to_iob(tokens, spans)
            labeled = [LabeledToken(t, l) for t, l in zip(tokens, labels)]
            windows = make_windows("doc", labeled)
            assert sum(len(w.tokens) for w in windows) == len(labeled)
            assert [lt for w in windows for lt in w.tokens] == labeled
            assert all(len(w.tokens) == 384 for w in windows[:-1])
            assert [lt.label for w in windows for lt in w.tokens] == labels


def test_cleaning_invariant():
    """Removal shrinks length by exactly the removed extents, rest verbatim."""
    with criterion("cleaning-invariant"):
        rng = random.Random(99)
        docs, gold = generate_synthetic(seed=2026, doc_count=30, headings_per_doc=8)
        for doc in docs:
            tree = build_toc(doc, gold[doc.doc_id])
            nodes = [n for n in tree.walk() if n.heading is not None]
            removal = {
                normalize_title(n.heading_text)
                for n in rng.sample(nodes, rng.randint(0, min(4, len(nodes))))
            }
            out = clean_document(doc, tree, removal)
            intervals = sorted(
                (n.heading.start, n.section_end)
                for n in nodes
                if normalize_title(n.heading_text) in removal
            )
            merged = []
            for start, end in intervals:
                if merged and start <= merged[-1][1]:
                    merged[-1] = (merged[-1][0], max(merged[-1][1], end))
                else:
                    merged.append((start, end))
            removed = sum(end - start for start, end in merged)
            assert len(out.text) == len(doc.text) - removed
            assert is_subsequence(out.text, doc.text)


def test_latency():
    """Median detection time over 50 three-page documents stays under 100 ms."""
    with criterion("latency"):
        docs, _ = generate_synthetic(
            seed=2027,
            doc_count=50,
            headings_per_doc=49,
            lines_per_section=(3, 5),
            words_per_line=(10, 18),
        )
        docs = list(docs)
        mean_tokens = statistics.mean(len(pretokenize(d)) for d in docs)
        assert 1500 <= mean_tokens <= 2500, f"fixture drifted: {mean_tokens:.0f} tokens/doc"
        engine = compile_patterns(default_pattern_set())
        for d in docs:  # warm-up pass, discarded
            engine.detect(d)
        times = []
        for d in docs:
            t0 = time.perf_counter()
            engine.detect(d)
            times.append((time.perf_counter() - t0) * 1000.0)
        median = statistics.median(times)
        print(f"[latency] median {median:.2f} ms over {len(docs)} docs "
              f"(~{mean_tokens:.0f} tokens each)")
        assert median <= 100.0
