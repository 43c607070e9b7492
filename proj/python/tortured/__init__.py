"""Python access to the tortured abbreviation screening core."""
import csv
import io
import json
import os

from . import _core
from ._core import Error, funnel_row_labels, initials_multiset_match, normalize, ordered_match

__all__ = [
    "Detector",
    "Error",
    "Screener",
    "extract_candidates",
    "funnel_row_labels",
    "generate_fingerprints",
    "initials_multiset_match",
    "normalize",
    "ordered_match",
]


def extract_candidates(text, doc_id="doc"):
    return json.loads(_core.extract_candidates(text, doc_id))


def generate_fingerprints(concepts, lexicon, max_variants=8):
    """Rows of the generated fingerprint csv, as dicts."""
    data = _core.generate_fingerprints(os.fspath(concepts), os.fspath(lexicon), max_variants)
    return list(csv.DictReader(io.StringIO(data)))


class Detector:
    def __init__(self, known="", lexicon="", allowlist="", theta=0.6):
        self._d = _core.Detector(os.fspath(known), os.fspath(lexicon), os.fspath(allowlist), theta)

    def classify(self, long_form, short_form):
        return json.loads(self._d.classify(long_form, short_form))

    def detect_text(self, text, doc_id="doc"):
        return json.loads(self._d.detect_text(text, doc_id))


class Screener:
    def __init__(self, fingerprints):
        self._s = _core.Screener(os.fspath(fingerprints))

    def __len__(self):
        return len(self._s)

    def scan(self, text, doc_id="doc", flag_threshold=5):
        return json.loads(self._s.scan(text, doc_id, flag_threshold))
