"""Image corpus: ingestion, validation, and lookup of indexed image records.

Each record splits into informational metadata (never consulted by any
similarity computation) and a searchable index of weighted thesaurus terms.
Weights are integer star counts in 1..4. Ingestion is all-or-nothing: any
invalid record aborts with a report naming the record and the violation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Optional, Union

from ._canon import canon_line
from .errors import (
    DuplicateImageId,
    DuplicateTermInIndex,
    EmptyIndex,
    EngineError,
    MalformedFile,
    UnknownTerm,
    WeightOutOfRange,
)
from .thesaurus import Thesaurus

MIN_WEIGHT = 1
MAX_WEIGHT = 4

INFO_FIELDS = ("title", "creator", "location", "source", "rights", "notes")


@dataclass(frozen=True)
class InformationalData:
    title: Optional[str] = None
    creator: Optional[str] = None
    location: Optional[str] = None
    source: Optional[str] = None
    rights: Optional[str] = None
    notes: Optional[str] = None


@dataclass(frozen=True)
class IndexEntry:
    term: str
    weight: int


@dataclass(frozen=True)
class ImageRecord:
    id: str
    uri: str
    info: InformationalData
    index: tuple[IndexEntry, ...]


@dataclass(frozen=True)
class Violation:
    code: str
    record_id: str
    message: str


@dataclass(frozen=True)
class Corpus:
    records: dict[str, ImageRecord]  # insertion order = file order
    thesaurus_version: str

    def get(self, image_id: str) -> Optional[ImageRecord]:
        return self.records.get(image_id)

    def __len__(self) -> int:
        return len(self.records)

    def __contains__(self, image_id: str) -> bool:
        return image_id in self.records

    @property
    def ids(self) -> list[str]:
        return list(self.records)


def get_record(corpus: Corpus, image_id: str) -> Optional[ImageRecord]:
    return corpus.get(image_id)


def validate_record(record: ImageRecord, th: Thesaurus) -> list[Violation]:
    """Every violated invariant appears exactly once; empty list = valid."""
    violations = []
    if not record.index:
        violations.append(
            Violation("empty_index", record.id, f"record {record.id!r} has no index entries")
        )
    seen: set[str] = set()
    dup_reported: set[str] = set()
    for entry in record.index:
        if entry.term in seen and entry.term not in dup_reported:
            violations.append(
                Violation(
                    "duplicate_term_in_index",
                    record.id,
                    f"record {record.id!r} indexes term {entry.term!r} more than once",
                )
            )
            dup_reported.add(entry.term)
        seen.add(entry.term)
        if not isinstance(entry.weight, int) or isinstance(entry.weight, bool) \
                or not MIN_WEIGHT <= entry.weight <= MAX_WEIGHT:
            violations.append(
                Violation(
                    "weight_out_of_range",
                    record.id,
                    f"record {record.id!r}: term {entry.term!r} has weight "
                    f"{entry.weight!r}, allowed range is {MIN_WEIGHT}..{MAX_WEIGHT}",
                )
            )
        if th.term(entry.term) is None:
            violations.append(
                Violation(
                    "unknown_term",
                    record.id,
                    f"record {record.id!r} references unknown term {entry.term!r}",
                )
            )
    return violations


_VIOLATION_ERRORS: dict[str, type[EngineError]] = {
    "empty_index": EmptyIndex,
    "duplicate_term_in_index": DuplicateTermInIndex,
    "weight_out_of_range": WeightOutOfRange,
    "unknown_term": UnknownTerm,
    "duplicate_image_id": DuplicateImageId,
}


def _raise_report(violations: list[Violation]) -> None:
    first = violations[0]
    cls = _VIOLATION_ERRORS[first.code]
    raise cls(
        first.message,
        record=first.record_id,
        report=[{"code": v.code, "record": v.record_id, "message": v.message} for v in violations],
    )


def _parse_record(line: str, lineno: int) -> ImageRecord:
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"corpus line {lineno} is not valid JSON: {exc}", line=lineno) from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("id"), str):
        raise MalformedFile(f"corpus line {lineno} must be an object with a string 'id'", line=lineno)
    raw_index = doc.get("index")
    if not isinstance(raw_index, list):
        raise MalformedFile(f"record {doc['id']!r} needs an 'index' array", line=lineno)
    entries = []
    for raw in raw_index:
        if not isinstance(raw, dict) or "term" not in raw or "weight" not in raw:
            raise MalformedFile(
                f"record {doc['id']!r}: each index entry needs 'term' and 'weight'", line=lineno
            )
        entries.append(IndexEntry(term=str(raw["term"]), weight=raw["weight"]))
    raw_info = doc.get("info") or {}
    if not isinstance(raw_info, dict):
        raise MalformedFile(f"record {doc['id']!r}: 'info' must be an object", line=lineno)
    info = InformationalData(**{k: raw_info.get(k) for k in INFO_FIELDS})
    return ImageRecord(
        id=doc["id"], uri=str(doc.get("uri", "")), info=info, index=tuple(entries)
    )


def ingest_corpus(source: Union[str, bytes, IO], th: Thesaurus) -> Corpus:
    """Parse and validate the JSONL corpus format (one record per line).

    All-or-nothing: raises on the first violation class found, with the full
    violation report attached as error detail.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")

    records: dict[str, ImageRecord] = {}
    violations: list[Violation] = []
    for lineno, line in enumerate(source.splitlines(), start=1):
        if not line.strip():
            continue
        record = _parse_record(line, lineno)
        if record.id in records:
            violations.append(
                Violation("duplicate_image_id", record.id, f"image id {record.id!r} appears twice")
            )
            continue
        violations.extend(validate_record(record, th))
        records[record.id] = record
    if violations:
        _raise_report(violations)
    return Corpus(records=records, thesaurus_version=th.version)


def record_doc(record: ImageRecord) -> dict:
    """Record as a plain dict in canonical key order, absent info fields omitted."""
    info = {k: getattr(record.info, k) for k in INFO_FIELDS if getattr(record.info, k) is not None}
    return {
        "id": record.id,
        "uri": record.uri,
        "info": info,
        "index": [{"term": e.term, "weight": e.weight} for e in record.index],
    }


def dump_record(record: ImageRecord) -> str:
    """Canonical one-line form of a record."""
    return canon_line(record_doc(record))


def dump_corpus(corpus: Corpus) -> str:
    """Canonical JSONL serialization, record order preserved."""
    return "".join(dump_record(r) + "\n" for r in corpus.records.values())
