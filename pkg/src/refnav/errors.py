"""Engine error hierarchy with stable machine-readable codes.

Every error carries a ``code`` that is part of the service API contract:
clients match on the code, never on the message text.
"""

from __future__ import annotations

from typing import Any, Optional


class EngineError(Exception):
    """Base class for all engine errors."""

    code = "engine_error"
    http_status = 400

    def __init__(self, message: str, **detail: Any):
        super().__init__(message)
        self.message = message
        self.detail: Optional[dict] = detail or None

    def to_payload(self) -> dict:
        payload = {"code": self.code, "message": self.message}
        if self.detail:
            payload["detail"] = self.detail
        return payload


# --- file / ingestion errors -------------------------------------------------

class MalformedFile(EngineError):
    code = "malformed_file"


class CategoryCountViolation(EngineError):
    code = "category_count_violation"


class DuplicateTerm(EngineError):
    code = "duplicate_term"


class DanglingReference(EngineError):
    code = "dangling_reference"


class UnknownCategory(EngineError):
    code = "unknown_category"
    http_status = 404


class UnknownTerm(EngineError):
    code = "unknown_term"


class WeightOutOfRange(EngineError):
    code = "weight_out_of_range"


class DuplicateImageId(EngineError):
    code = "duplicate_image_id"


class DuplicateTermInIndex(EngineError):
    code = "duplicate_term_in_index"


class EmptyIndex(EngineError):
    code = "empty_index"


# --- vector / ranking errors -------------------------------------------------

class EmptyVector(EngineError):
    code = "empty_vector"
    http_status = 409


class EmptyQuery(EngineError):
    code = "empty_query"
    http_status = 409


class EmptyFeedback(EngineError):
    code = "empty_feedback"
    http_status = 409


class DegenerateQuery(EngineError):
    """Feedback was legal but cancelled the query down to the zero vector."""

    code = "degenerate_query"
    http_status = 409


# --- navigation errors -------------------------------------------------------

class UnknownImage(EngineError):
    code = "unknown_image"
    http_status = 404


class UnknownNode(EngineError):
    code = "unknown_node"
    http_status = 404


class UnknownAlbum(EngineError):
    code = "unknown_album"
    http_status = 404


class UnknownSession(EngineError):
    code = "unknown_session"
    http_status = 404


class NoGraph(EngineError):
    code = "no_graph"
    http_status = 409


class NoMosaic(EngineError):
    code = "no_mosaic"
    http_status = 409


class NoRankedList(EngineError):
    code = "no_ranked_list"
    http_status = 409


class NoSource(EngineError):
    code = "no_source"
    http_status = 409


class EmptySource(EngineError):
    code = "empty_source"
    http_status = 409


class NoFeedback(EngineError):
    code = "no_feedback"
    http_status = 409


class AlbumFullyStale(EngineError):
    code = "album_fully_stale"
    http_status = 409


class EmptyCorpus(EngineError):
    code = "empty_corpus"
    http_status = 409


class UnknownTransition(EngineError):
    code = "unknown_transition"
