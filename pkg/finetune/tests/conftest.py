import os

import pytest

os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")
os.environ.setdefault("TOKENIZERS_PARALLELISM", "false")

# Fixtures are produced with the segmentation toolkit itself so the window
# files exercised here are exactly what its `label` command emits.
from tocseg import LabeledToken, generate_synthetic, make_windows, pretokenize, spans_to_iob
from tocseg.labeling import write_window_file


def build_window_file(path, seed=0, doc_count=50, headings_per_doc=6, window_size=96):
    """One window per document: docs are sized to fit a single window."""
    docs, gold = generate_synthetic(
        seed=seed,
        doc_count=doc_count,
        headings_per_doc=headings_per_doc,
        lines_per_section=(1, 1),
        words_per_line=(3, 6),
    )
    windows = []
    for doc in docs:
        tokens = pretokenize(doc)
        labels = spans_to_iob(tokens, gold[doc.doc_id])
        labeled = [LabeledToken(t, l) for t, l in zip(tokens, labels)]
        windows.extend(make_windows(doc.doc_id, labeled, window_size))
    write_window_file(windows, path)
    return windows, gold


@pytest.fixture(scope="session")
def window_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("fixtures") / "train_windows.tsv"
    windows, gold = build_window_file(path)
    return path, windows, gold


@pytest.fixture(scope="session")
def tiny_checkpoint(tmp_path_factory, window_file):
    from tocfinetune.tiny import build_tiny_checkpoint
    from tocfinetune.windows import read_window_file, window_text

    path, _, _ = window_file
    texts = [window_text(w)[0] for w in read_window_file(path)]
    out = tmp_path_factory.mktemp("ckpt") / "tiny"
    return build_tiny_checkpoint(out, texts, vocab_size=600, seed=7)
