"""Build a table of contents, pull sections out by name, drop noisy ones.

Run: python demos/demo_toc_cleaning.py
"""

from tocseg import (
    Document,
    build_toc,
    clean_document,
    compile_patterns,
    default_pattern_set,
    extract_sections,
)
from tocseg.toctree import render_toc

NOTE = """\
Chief Complaint:
chest pain
Physical Exam:
HEENT: NC/AT
Neck: supple
Lungs: clear to auscultation
Discharge Medications:
1. Aspirin 81mg daily
2. Lisinopril 10mg daily
Followup Instructions:
cardiology clinic in 2 weeks
"""

doc = Document("demo-note", NOTE)
engine = compile_patterns(default_pattern_set())
tree = build_toc(doc, [d.span for d in engine.detect(doc)])

print("The two-level tree, one line per node:\n")
print(render_toc(tree))

print("Sections are addressable by normalized heading:\n")
for segment in extract_sections(doc, tree, "physical exam"):
    print(repr(segment))

print("\nMedication lists hurt language-model pretraining; removing them keeps")
print("every other byte intact:\n")
cleaned = clean_document(doc, tree, {"discharge medications"})
print(cleaned.text)
print(f"({len(doc.text)} -> {len(cleaned.text)} characters)")
