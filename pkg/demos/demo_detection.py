"""Walk through rule-based heading detection on a small discharge-note extract.

Run: python demos/demo_detection.py
"""

from tocseg import Document, compile_patterns, default_pattern_set

NOTE = """\
Admission Date: 2180-3-12
Chief Complaint:
shortness of breath
Past Medical History:
HTN, CHF, mild CKD
Physical Exam:
HEENT: NC/AT, sclera anicteric
Neck: supple, no JVD
Lungs: crackles at bases
Extremities: 1+ pitting edema
Discharge Medications:
1. Aspirin 81mg
Refills: 2
"""

engine = compile_patterns(default_pattern_set())
doc = Document("demo-note", NOTE)

print("The stock engine carries", len(engine.specs), "pattern specs:")
for spec in engine.specs:
    print(f"  {spec.id:14s} prefix={spec.prefix_class.value:10s} "
          f"content={spec.content_rule:8s} terminator={spec.terminator_class.value:13s} "
          f"-> {spec.level.value}")

print("\nDetections (note how lone 'Heading:' lines become titles while")
print("'Heading: text' lines become subtitles):\n")
for d in engine.detect(doc):
    print(f"  [{d.span.start:3d}:{d.span.end:3d}) {d.span.level.value:8s} "
          f"{d.matched_text!r}  (via {d.pattern_id})")

print("\n'Refills' up there is medication-list noise, not a heading. A denylist")
print("entry removes it without touching the patterns:\n")
curated = compile_patterns(default_pattern_set(denylist={"refills", "admission date"}))
for d in curated.detect(doc):
    print(f"  [{d.span.start:3d}:{d.span.end:3d}) {d.span.level.value:8s} {d.matched_text!r}")

offset = NOTE.index("Physical") + 2
trace = engine.explain(doc, offset)
print(f"\nWhy is there a detection at offset {offset}?")
print(f"  pattern    : {trace.pattern_id}")
print(f"  prefix     : {trace.prefix} = {NOTE[trace.prefix[0]:trace.prefix[1]]!r}")
print(f"  content    : {trace.content} = {trace.content_text!r}")
print(f"  terminator : {trace.terminator} = {NOTE[trace.terminator[0]:trace.terminator[1]]!r}")
