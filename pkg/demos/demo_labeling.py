"""From span annotations to IOB token labels, training windows, and back.

Run: python demos/demo_labeling.py
"""

from tocseg import (
    Document,
    LabeledToken,
    SubwordToken,
    compile_patterns,
    default_pattern_set,
    iob_to_spans,
    make_windows,
    pretokenize,
    project_labels,
    spans_to_iob,
    subword_budget,
)

doc = Document(
    "demo",
    "Past Medical History:\nHTN and CHF\nPhysical Exam:\nHEENT: NC/AT\nNeck: supple\n",
)
engine = compile_patterns(default_pattern_set())
spans = [d.span for d in engine.detect(doc)]
tokens = pretokenize(doc)
labels = spans_to_iob(tokens, spans)

print("Token labels (word tokens come from the whitespace/punctuation pretokenizer):\n")
for t, l in zip(tokens, labels):
    print(f"  {t.text!r:12s} [{t.start:2d}:{t.end:2d})  {l.value}")

recovered = iob_to_spans(tokens, labels)
print("\nMerging the label runs back into spans reproduces the annotation:")
print(" ", recovered == spans, "->", [(s.start, s.end, s.level.value) for s in recovered])

print("\nWord-piece tokenizers split words; labels project by start-offset containment:")
words = [LabeledToken(t, l) for t, l in zip(tokens, labels)]
subwords = [
    SubwordToken("Ex", 36, 38),
    SubwordToken("##am", 38, 40, is_continuation=True),
]
print("  Exam ->", [l.value for l in project_labels(words, subwords)])

print("\nTraining windows hold 384 word tokens because a transformer window of 512")
print("subwords covers about", subword_budget(384), "subword tokens at 0.75 words/token:")
labeled = [LabeledToken(t, l) for t, l in zip(tokens, labels)]
for w in make_windows("demo", labeled, window_size=8):
    body = " ".join(lt.token.text for lt in w.tokens[:5])
    print(f"  window {w.index}: {len(w.tokens)} tokens, starts {body!r}...")
