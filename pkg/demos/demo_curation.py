"""The denylist curation loop: detect, inspect frequencies, curate, filter.

Run: python demos/demo_curation.py
"""

from tocseg import (
    Mode,
    NoiseProfile,
    compile_patterns,
    default_pattern_set,
    evaluate_corpus,
    generate_synthetic,
    title_frequencies,
)
from tocseg.corpus import DEFAULT_DENYLIST

docs, gold = generate_synthetic(
    seed=4, doc_count=60, headings_per_doc=8, noise_profile=NoiseProfile()
)
docs = list(docs)
raw_engine = compile_patterns(default_pattern_set())

print("Frequency analysis runs before denylist filtering, so false positives")
print("(medication-list lines that look like headings) surface for review:\n")
table = title_frequencies(docs, raw_engine)
for title, count in table.rows[:12]:
    marker = "  <- noise" if title in DEFAULT_DENYLIST else ""
    print(f"  {count:5d}  {title}{marker}")

pred_raw = {d.doc_id: [x.span for x in raw_engine.detect(d)] for d in docs}
report = evaluate_corpus(gold, pred_raw, Mode.HIERARCHICAL)
print(f"\nWithout curation, precision suffers: P={report.precision:.3f} "
      f"R={report.recall:.3f} F1={report.f1:.3f}")

curated = compile_patterns(default_pattern_set(DEFAULT_DENYLIST))
pred_cur = {d.doc_id: [x.span for x in curated.detect(d)] for d in docs}
report = evaluate_corpus(gold, pred_cur, Mode.HIERARCHICAL)
print(f"With the curated denylist:      P={report.precision:.3f} "
      f"R={report.recall:.3f} F1={report.f1:.3f}")
