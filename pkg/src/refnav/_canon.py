"""Canonical JSON serialization helpers.

All on-disk formats (thesaurus, corpus, albums, session snapshots) are
emitted through these helpers so that serialize -> parse -> serialize is
byte-identical. Callers are responsible for building dicts in the fixed,
documented key order; these helpers never reorder keys.
"""

from __future__ import annotations

import json
from typing import Any


def canon_document(obj: Any) -> str:
    """Multi-line canonical form: 2-space indent, UTF-8 text, trailing newline."""
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def canon_line(obj: Any) -> str:
    """Single-line canonical form used for JSONL records (no trailing newline)."""
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))
