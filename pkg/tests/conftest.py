import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tocseg.docmodel import Document
from tocseg.patterns import compile as compile_patterns
from tocseg.patterns import default_pattern_set

EXAM_NOTE = (
    "Past Medical History:\n"
    "HTN\n"
    "\n"
    "Physical Exam:\n"
    "HEENT: NC/AT normocephalic\n"
    "Neck: supple\n"
    "Lungs: clear\n"
    "Extremities: no edema\n"
)


@pytest.fixture
def exam_note():
    """A short discharge-note extract: two titles, four inline subtitles."""
    return Document("exam-note", EXAM_NOTE)


@pytest.fixture(scope="session")
def engine():
    return compile_patterns(default_pattern_set())
