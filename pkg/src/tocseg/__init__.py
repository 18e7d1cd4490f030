"""tocseg: hierarchical segmentation of plain-text clinical notes.

Detect titles and subtitles with a configurable rule engine, convert between
span annotations and IOB token labels, prepare fixed-size training windows,
build table-of-contents trees for section extraction and cleaning, and score
segmenters with linear and hierarchical span metrics.
"""

from .corpus import (
    Corpus,
    CorpusFormat,
    CorpusStats,
    FrequencyTable,
    NoiseProfile,
    corpus_stats,
    generate_synthetic,
    ingest,
    merge_denylist,
    read_annotations,
    title_frequencies,
    write_annotations,
    write_corpus,
)
from .docmodel import (
    Document,
    Label,
    Level,
    Span,
    Token,
    normalize_title,
    pretokenize,
    validate_annotation,
)
from .labeling import (
    AlignmentError,
    LabeledToken,
    SubwordToken,
    Window,
    iob_to_spans,
    make_windows,
    project_labels,
    read_window_file,
    spans_to_iob,
    subword_budget,
    write_window_file,
)
from .metrics import (
    Aggregation,
    MatchCounts,
    MetricsReport,
    Mode,
    compute_metrics,
    evaluate_corpus,
    match_spans,
    time_segmenter,
)
from .patterns import (
    Detection,
    Engine,
    PatternSet,
    PatternSpec,
    default_pattern_set,
    load_denylist,
    load_pattern_config,
)
from .patterns import compile as compile_patterns
from .toctree import TocNode, TocTree, build_toc, clean_document, extract_sections

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "Aggregation",
    "Corpus",
    "CorpusFormat",
    "CorpusStats",
    "Detection",
    "Document",
    "Engine",
    "FrequencyTable",
    "Label",
    "LabeledToken",
    "Level",
    "MatchCounts",
    "MetricsReport",
    "Mode",
    "NoiseProfile",
    "PatternSet",
    "PatternSpec",
    "Span",
    "SubwordToken",
    "TocNode",
    "TocTree",
    "Token",
    "Window",
    "build_toc",
    "clean_document",
    "compile_patterns",
    "compute_metrics",
    "corpus_stats",
    "default_pattern_set",
    "evaluate_corpus",
    "extract_sections",
    "generate_synthetic",
    "ingest",
    "iob_to_spans",
    "load_denylist",
    "load_pattern_config",
    "make_windows",
    "match_spans",
    "merge_denylist",
    "normalize_title",
    "pretokenize",
    "project_labels",
    "read_annotations",
    "read_window_file",
    "spans_to_iob",
    "subword_budget",
    "time_segmenter",
    "title_frequencies",
    "validate_annotation",
    "write_annotations",
    "write_corpus",
    "write_window_file",
]
