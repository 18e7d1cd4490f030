"""Command-line surface: detect, label, spanize, eval, toc, clean, stats,
freq, generate.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
Diagnostics go to stderr; outputs are written atomically (temp file, rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import corpus as corpus_mod
from . import labeling, metrics, patterns, toctree
from .docmodel import normalize_title, pretokenize
from .labeling import WINDOW_SIZE


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we want 1
        raise UsageError(message)


def _atomic_write(path, writer) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            writer(f)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_engine(args) -> patterns.Engine:
    if args.patterns:
        if not Path(args.patterns).is_file():
            raise UsageError(f"pattern config not found: {args.patterns}")
        pattern_set = patterns.load_pattern_config(args.patterns)
    else:
        pattern_set = patterns.default_pattern_set()
    if getattr(args, "denylist", None):
        if not Path(args.denylist).is_file():
            raise UsageError(f"denylist file not found: {args.denylist}")
        pattern_set = pattern_set.with_denylist(patterns.load_denylist(args.denylist))
    return patterns.compile(pattern_set)


def _open_corpus(args) -> corpus_mod.Corpus:
    try:
        return corpus_mod.ingest(args.input, corpus_mod.CorpusFormat(args.format))
    except corpus_mod.CorpusError as exc:
        raise UsageError(str(exc)) from exc


def _write_annotations(annotations, out) -> None:
    def writer(f):
        for doc_id, spans in annotations.items():
            record = {
                "doc_id": doc_id,
                "spans": [
                    {"start": s.start, "end": s.end, "level": s.level.value} for s in spans
                ],
            }
            f.write(json.dumps(record, ensure_ascii=False) + "\n")

    _atomic_write(out, writer)


def cmd_detect(args) -> int:
    engine = _load_engine(args)
    docs = _open_corpus(args)
    annotations = {}
    for doc in docs:
        annotations[doc.doc_id] = [d.span for d in engine.detect(doc)]
    _write_annotations(annotations, args.out)
    return 0


def cmd_label(args) -> int:
    docs = _open_corpus(args)
    gold = corpus_mod.read_annotations(args.gold)
    windows = []
    for doc in docs:
        tokens = pretokenize(doc)
        spans = gold.get(doc.doc_id, [])
        try:
            labels = labeling.spans_to_iob(tokens, spans)
        except labeling.AlignmentError as exc:
            raise DataError(f"{doc.doc_id}: {exc}") from exc
        labeled = [labeling.LabeledToken(t, l) for t, l in zip(tokens, labels)]
        windows.extend(labeling.make_windows(doc.doc_id, labeled, args.window_size))

    def writer(f):
        for i, w in enumerate(windows):
            if i:
                f.write("\n")
            f.write(f"# doc: {w.doc_id} window: {w.index}\n")
            for lt in w.tokens:
                t = lt.token
                f.write(f"{t.text}\t{t.start}\t{t.end}\t{lt.label.value}\n")

    _atomic_write(args.out, writer)
    return 0


def cmd_spanize(args) -> int:
    """Convert a token-label window file (e.g. model predictions) to spans."""
    windows = labeling.read_window_file(args.window_file)
    by_doc: dict[str, list] = {}
    for w in sorted(windows, key=lambda w: w.index):
        by_doc.setdefault(w.doc_id, []).extend(w.tokens)
    annotations = {}
    for doc_id, labeled in by_doc.items():
        tokens = [lt.token for lt in labeled]
        labels = [lt.label for lt in labeled]
        annotations[doc_id] = labeling.iob_to_spans(tokens, labels)
    _write_annotations(annotations, args.out)
    return 0


def cmd_eval(args) -> int:
    gold = corpus_mod.read_annotations(args.gold)
    pred = corpus_mod.read_annotations(args.pred)
    try:
        report = metrics.evaluate_corpus(
            gold,
            pred,
            metrics.Mode(args.mode),
            metrics.Aggregation(args.agg),
            slack=args.slack,
        )
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    sys.stdout.write(metrics.render_report(report))
    if args.out:
        _atomic_write(args.out, lambda f: json.dump(metrics.report_to_dict(report), f, indent=2))
    return 0


def _trees_for(args):
    docs = _open_corpus(args)
    annotations = corpus_mod.read_annotations(args.annotations)
    for doc in docs:
        spans = sorted(annotations.get(doc.doc_id, []), key=lambda s: (s.start, s.end))
        try:
            yield doc, toctree.build_toc(doc, spans)
        except ValueError as exc:
            raise DataError(f"{doc.doc_id}: {exc}") from exc


def cmd_toc(args) -> int:
    trees = []
    rendered = []
    for _, tree in _trees_for(args):
        trees.append(tree)
        rendered.append(toctree.render_toc(tree))
    text = "\n".join(rendered)
    if args.out:
        _atomic_write(args.out, lambda f: f.write(text))
    else:
        sys.stdout.write(text)
    if args.json_out:
        _atomic_write(
            args.json_out,
            lambda f: [
                f.write(json.dumps(toctree.toc_to_record(t), ensure_ascii=False) + "\n")
                for t in trees
            ],
        )
    return 0


def cmd_clean(args) -> int:
    removal = frozenset(patterns.load_denylist(args.remove)) if args.remove else frozenset()
    cleaned = []
    for doc, tree in _trees_for(args):
        cleaned.append(toctree.clean_document(doc, tree, removal))
    out_format = corpus_mod.CorpusFormat(args.out_format or args.format)
    corpus_mod.write_corpus(cleaned, args.out, out_format)
    return 0


def cmd_stats(args) -> int:
    engine = _load_engine(args)
    stats = corpus_mod.corpus_stats(_open_corpus(args), engine)
    payload = {
        "document_count": stats.document_count,
        "mean_tokens": stats.mean_tokens,
        "median_tokens": stats.median_tokens,
        "mean_headings": stats.mean_headings,
        "unique_titles": stats.unique_titles,
        "total_headings": stats.total_headings,
    }
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        _atomic_write(args.out, lambda f: f.write(text))
    else:
        sys.stdout.write(text)
    return 0


def cmd_freq(args) -> int:
    engine = _load_engine(args)
    table = corpus_mod.title_frequencies(_open_corpus(args), engine)
    rows = table.rows[: args.top] if args.top else table.rows
    text = "".join(f"{title}\t{count}\n" for title, count in rows)
    if args.out:
        _atomic_write(args.out, lambda f: f.write(text))
    else:
        sys.stdout.write(text)
    return 0


def cmd_generate(args) -> int:
    noise = corpus_mod.NoiseProfile() if args.noise else None
    docs, gold = corpus_mod.generate_synthetic(args.seed, args.docs, args.headings, noise)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fmt = corpus_mod.CorpusFormat(args.format)
    if fmt is corpus_mod.CorpusFormat.TEXT_DIR:
        corpus_mod.write_corpus(docs, out_dir / "corpus", fmt)
    else:
        corpus_mod.write_corpus(docs, out_dir / "corpus.jsonl", fmt)
    _write_annotations(gold, out_dir / "gold.jsonl")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tocseg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_corpus_args(p):
        p.add_argument("input", help="corpus path (directory of *.txt or JSONL file)")
        p.add_argument("--format", choices=["textdir", "jsonl"], default="textdir")

    def add_engine_args(p):
        p.add_argument("--patterns", help="pattern config YAML (default: builtin 12-spec set)")
        p.add_argument("--denylist", help="denylist file, one normalized title per line")

    p = sub.add_parser("detect", help="detect headings, write an annotation file")
    add_corpus_args(p)
    add_engine_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("label", help="emit token-label training windows")
    add_corpus_args(p)
    p.add_argument("--gold", required=True, help="gold annotation file")
    p.add_argument("--window-size", type=int, default=WINDOW_SIZE)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("spanize", help="convert a token-label window file to span annotations")
    p.add_argument("window_file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_spanize)

    p = sub.add_parser("eval", help="score predictions against gold annotations")
    p.add_argument("gold")
    p.add_argument("pred")
    p.add_argument("--mode", choices=["linear", "hierarchical"], default="hierarchical")
    p.add_argument("--agg", choices=["micro", "macro"], default="micro")
    p.add_argument("--slack", type=int, default=0)
    p.add_argument("--out", help="also write a JSON report here")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("toc", help="build and export tables of contents")
    add_corpus_args(p)
    p.add_argument("--annotations", required=True)
    p.add_argument("--out", help="human-readable listing (default: stdout)")
    p.add_argument("--json-out", help="machine-readable JSONL export")
    p.set_defaults(func=cmd_toc)

    p = sub.add_parser("clean", help="remove sections by normalized heading")
    add_corpus_args(p)
    p.add_argument("--annotations", required=True)
    p.add_argument("--remove", help="removal list file (denylist format)")
    p.add_argument("--out", required=True)
    p.add_argument("--out-format", choices=["textdir", "jsonl"])
    p.set_defaults(func=cmd_clean)

    p = sub.add_parser("stats", help="corpus statistics")
    add_corpus_args(p)
    add_engine_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("freq", help="title frequency table (pre-denylist)")
    add_corpus_args(p)
    add_engine_args(p)
    p.add_argument("--top", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("generate", help="write a synthetic corpus with gold annotations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--docs", type=int, default=10)
    p.add_argument("--headings", type=int, default=8)
    p.add_argument("--noise", action="store_true")
    p.add_argument("--format", choices=["textdir", "jsonl"], default="textdir")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"tocseg: {exc}", file=sys.stderr)
        return 1
    except (DataError, corpus_mod.CorpusError, patterns.PatternError) as exc:
        print(f"tocseg: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"tocseg: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"tocseg: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"tocseg: internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
