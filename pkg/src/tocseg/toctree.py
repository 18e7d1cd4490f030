"""Two-level table-of-contents trees: building, section extraction, cleaning.

A title's section runs from the end of its heading to the start of the next
title (or document end); a subtitle's sub-section runs to the next subtitle
or title. Subtitles occurring before any title hang off a synthetic preamble
root whose ``heading`` is None.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .docmodel import Document, Level, Span, normalize_title, validate_annotation


@dataclass
class TocNode:
    heading: Span | None
    heading_text: str
    section_start: int
    section_end: int
    children: list["TocNode"] = field(default_factory=list)


@dataclass
class TocTree:
    doc_id: str
    preamble_end: int
    roots: list[TocNode]

    def walk(self):
        """All nodes in document order, synthetic preamble root included."""
        for root in self.roots:
            yield root
            yield from root.children


def build_toc(doc: Document, spans: list[Span]) -> TocTree:
    """Nest sorted heading spans into a tree with section extents."""
    violations = validate_annotation(doc, spans)
    if violations:
        raise ValueError(f"invalid spans: {violations[0].message}")
    if any(a.start > b.start for a, b in zip(spans, spans[1:])):
        raise ValueError("spans must be sorted by start offset")

    text = doc.text
    roots: list[TocNode] = []
    current: TocNode | None = None
    for s in spans:
        if s.level is Level.TITLE:
            current = TocNode(s, text[s.start : s.end], s.end, len(text))
            roots.append(current)
        else:
            if current is None:
                current = TocNode(None, "", s.start, len(text))
                roots.append(current)
            current.children.append(TocNode(s, text[s.start : s.end], s.end, len(text)))

    for root, nxt in zip(roots, roots[1:]):
        root.section_end = nxt.heading.start
    for root in roots:
        kids = root.children
        for child, nxt in zip(kids, kids[1:]):
            child.section_end = nxt.heading.start
        if kids:
            kids[-1].section_end = root.section_end

    preamble_end = spans[0].start if spans else len(text)
    return TocTree(doc.doc_id, preamble_end, roots)


def extract_sections(doc: Document, tree: TocTree, query: str) -> list[str]:
    """Body text of every node whose normalized heading equals the query."""
    return [
        doc.text[node.section_start : node.section_end]
        for node in tree.walk()
        if node.heading is not None and normalize_title(node.heading_text) == query
    ]


def clean_document(doc: Document, tree: TocTree, removal: set[str]) -> Document:
    """Drop heading plus body of every node whose normalized heading is in ``removal``."""
    intervals = [
        (node.heading.start, node.section_end)
        for node in tree.walk()
        if node.heading is not None and normalize_title(node.heading_text) in removal
    ]
    if not intervals:
        return Document(doc.doc_id, doc.text)
    intervals.sort()
    merged = [intervals[0]]
    for start, end in intervals[1:]:
        if start <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], end))
        else:
            merged.append((start, end))
    pieces = []
    pos = 0
    for start, end in merged:
        pieces.append(doc.text[pos:start])
        pos = end
    pieces.append(doc.text[pos:])
    return Document(doc.doc_id, "".join(pieces))


def render_toc(tree: TocTree) -> str:
    """Human-readable listing: one indented line per node with offsets."""
    lines = [f"doc: {tree.doc_id}", f"preamble: [0:{tree.preamble_end})"]
    for root in tree.roots:
        lines.append(_node_line(root, 0))
        for child in root.children:
            lines.append(_node_line(child, 1))
    return "\n".join(lines) + "\n"


def _node_line(node: TocNode, depth: int) -> str:
    indent = "  " * depth
    if node.heading is None:
        head = "(preamble)"
    else:
        head = f'"{node.heading_text}" heading [{node.heading.start}:{node.heading.end})'
    return f"{indent}- {head} section [{node.section_start}:{node.section_end})"


def toc_to_record(tree: TocTree) -> dict:
    """Annotation-format record extended with section extents and depth."""
    spans = []
    for root in tree.roots:
        for depth, node in [(0, root)] + [(1, c) for c in root.children]:
            if node.heading is None:
                continue
            spans.append(
                {
                    "start": node.heading.start,
                    "end": node.heading.end,
                    "level": node.heading.level.value,
                    "heading_text": node.heading_text,
                    "section_start": node.section_start,
                    "section_end": node.section_end,
                    "depth": depth,
                }
            )
    return {"doc_id": tree.doc_id, "preamble_end": tree.preamble_end, "spans": spans}


def write_toc_export(trees: list[TocTree], path) -> None:
    """One JSON record per document, mirroring the annotation file schema."""
    with open(path, "w", encoding="utf-8") as f:
        for tree in trees:
            f.write(json.dumps(toc_to_record(tree), ensure_ascii=False) + "\n")
