import json
import random

import pytest

from oracles import is_subsequence, nesting_oracle, section_end_oracle
from tocseg.corpus import generate_synthetic
from tocseg.docmodel import Document, Level, Span, normalize_title
from tocseg.toctree import (
    build_toc,
    clean_document,
    extract_sections,
    render_toc,
    toc_to_record,
    write_toc_export,
)

PHYSICAL_EXAM = (
    "Physical Exam:\n"
    "HEENT: NC/AT normocephalic\n"
    "Neck: supple\n"
    "Lungs: clear\n"
    "Extremities: no edema\n"
)


def spans_for(doc, engine):
    return [d.span for d in engine.detect(doc)]


@pytest.fixture
def exam_tree(engine):
    doc = Document("exam", PHYSICAL_EXAM)
    return doc, build_toc(doc, spans_for(doc, engine))


class TestBuildToc:
    def test_one_title_four_subtitles(self, exam_tree):
        _, tree = exam_tree
        assert len(tree.roots) == 1
        root = tree.roots[0]
        assert root.heading_text == "Physical Exam"
        assert [c.heading_text for c in root.children] == ["HEENT", "Neck", "Lungs", "Extremities"]

    def test_no_spans(self):
        doc = Document("d", "just body text\n")
        tree = build_toc(doc, [])
        assert tree.roots == []
        assert tree.preamble_end == len(doc.text)

    def test_subtitle_before_any_title_gets_preamble_root(self):
        doc = Document("d", "HEENT: clear\nPlan:\nrest\n")
        spans = [Span(0, 5, Level.SUBTITLE), Span(13, 17, Level.TITLE)]
        tree = build_toc(doc, spans)
        assert tree.roots[0].heading is None
        assert [c.heading_text for c in tree.roots[0].children] == ["HEENT"]
        assert tree.roots[1].heading_text == "Plan"
        # grouping agrees with the left-to-right scan oracle
        groups = nesting_oracle(spans)
        assert [g[0] for g in groups] == [r.heading for r in tree.roots]

    def test_rejects_overlapping_spans(self):
        doc = Document("d", "x" * 50)
        with pytest.raises(ValueError):
            build_toc(doc, [Span(0, 10, Level.TITLE), Span(5, 15, Level.TITLE)])

    def test_rejects_unsorted_spans(self):
        doc = Document("d", "x" * 50)
        with pytest.raises(ValueError):
            build_toc(doc, [Span(20, 30, Level.TITLE), Span(0, 10, Level.TITLE)])

    def test_in_order_traversal_matches_input(self, engine):
        docs, gold = generate_synthetic(seed=21, doc_count=15, headings_per_doc=9)
        for doc in docs:
            tree = build_toc(doc, gold[doc.doc_id])
            walked = [n.heading for n in tree.walk() if n.heading is not None]
            assert walked == gold[doc.doc_id]

    def test_section_extents_match_oracle(self):
        docs, gold = generate_synthetic(seed=22, doc_count=15, headings_per_doc=9)
        for doc in docs:
            spans = gold[doc.doc_id]
            tree = build_toc(doc, spans)
            nodes = [n for n in tree.walk() if n.heading is not None]
            for i, node in enumerate(sorted(nodes, key=lambda n: n.heading.start)):
                assert node.section_start == node.heading.end
                assert node.section_end == section_end_oracle(spans, i, len(doc.text))

    def test_tiling(self):
        docs, gold = generate_synthetic(seed=23, doc_count=15, headings_per_doc=9)
        for doc in docs:
            tree = build_toc(doc, gold[doc.doc_id])
            covered = [(0, tree.preamble_end)]
            for root in tree.roots:
                if root.heading is not None:
                    covered.append((root.heading.start, root.heading.end))
                covered.append((root.section_start, root.section_end))
            covered.sort()
            pos = 0
            for start, end in covered:
                assert start == pos
                pos = end
            assert pos == len(doc.text)


class TestExtractSections:
    def test_title_section_covers_subsections(self, exam_tree):
        doc, tree = exam_tree
        # body starts right after the heading text, colon included
        segments = extract_sections(doc, tree, "physical exam")
        assert segments == [doc.text[len("Physical Exam") :]]

    def test_no_match(self, exam_tree):
        doc, tree = exam_tree
        assert extract_sections(doc, tree, "nonexistent") == []

    def test_two_matches_in_document_order(self):
        text = "Allergies:\npenicillin\nPlan:\nrest\nAllergies:\nnone\n"
        doc = Document("d", text)
        spans = [
            Span(0, 9, Level.TITLE),
            Span(22, 26, Level.TITLE),
            Span(33, 42, Level.TITLE),
        ]
        tree = build_toc(doc, spans)
        segments = extract_sections(doc, tree, "allergies")
        assert segments == [":\npenicillin\n", ":\nnone\n"]

    def test_segments_are_verbatim_slices(self, engine):
        docs, gold = generate_synthetic(seed=31, doc_count=10, headings_per_doc=8)
        for doc in docs:
            tree = build_toc(doc, gold[doc.doc_id])
            for node in tree.walk():
                if node.heading is None:
                    continue
                query = normalize_title(node.heading_text)
                segments = extract_sections(doc, tree, query)
                assert doc.text[node.section_start : node.section_end] in segments


class TestCleanDocument:
    def test_removes_section_exactly(self, engine):
        text = "Plan:\nrest\nDischarge Medications:\naspirin 81mg\nFollowup Instructions:\nclinic\n"
        doc = Document("d", text)
        tree = build_toc(doc, spans_for(doc, engine))
        out = clean_document(doc, tree, {"discharge medications"})
        assert "Discharge Medications" not in out.text
        assert "aspirin" not in out.text
        assert "Followup Instructions:\nclinic\n" in out.text
        removed = len("Discharge Medications:\naspirin 81mg\n")
        assert len(out.text) == len(text) - removed

    def test_empty_removal_is_identity(self, exam_tree):
        doc, tree = exam_tree
        assert clean_document(doc, tree, set()) == doc

    def test_subtitle_removal_keeps_parent(self, exam_tree):
        doc, tree = exam_tree
        out = clean_document(doc, tree, {"neck"})
        # offset-arithmetic oracle: splice out [heading.start, section_end)
        node = next(n for n in tree.walk() if n.heading_text == "Neck")
        expected = doc.text[: node.heading.start] + doc.text[node.section_end :]
        assert out.text == expected
        assert "Physical Exam:" in out.text
        assert "HEENT" in out.text

    def test_length_identity_and_subsequence_randomized(self):
        rng = random.Random(77)
        docs, gold = generate_synthetic(seed=44, doc_count=15, headings_per_doc=9)
        for doc in docs:
            tree = build_toc(doc, gold[doc.doc_id])
            nodes = [n for n in tree.walk() if n.heading is not None]
            if not nodes:
                continue
            removal = {
                normalize_title(n.heading_text)
                for n in rng.sample(nodes, rng.randint(1, min(3, len(nodes))))
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
            removed_total = sum(end - start for start, end in merged)
            assert len(out.text) == len(doc.text) - removed_total
            assert is_subsequence(out.text, doc.text)


class TestExport:
    def test_render_lists_every_node(self, exam_tree):
        _, tree = exam_tree
        rendered = render_toc(tree)
        assert rendered.startswith("doc: exam\n")
        for name in ("Physical Exam", "HEENT", "Neck", "Lungs", "Extremities"):
            assert f'"{name}"' in rendered

    def test_record_schema(self, exam_tree):
        _, tree = exam_tree
        record = toc_to_record(tree)
        assert record["doc_id"] == "exam"
        assert [s["level"] for s in record["spans"]] == [
            "title", "subtitle", "subtitle", "subtitle", "subtitle",
        ]
        for s in record["spans"]:
            assert set(s) == {
                "start", "end", "level", "heading_text", "section_start", "section_end", "depth",
            }

    def test_jsonl_export(self, exam_tree, tmp_path):
        _, tree = exam_tree
        path = tmp_path / "toc.jsonl"
        write_toc_export([tree], path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 1
        assert json.loads(lines[0])["doc_id"] == "exam"
