"""Vector-space model: sparse term vectors, cosine similarity, relevance
ranking, and feedback-based query reformulation.

All operations are pure functions of immutable inputs. Magnitudes and scores
are 64-bit floats; vectors are component-wise non-negative, so every cosine
score lands in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .catalog import Corpus, ImageRecord
from .errors import (
    DegenerateQuery,
    EmptyFeedback,
    EmptyQuery,
    EmptyVector,
    UnknownCategory,
)
from .thesaurus import Thesaurus

DEFAULT_ALPHA = 1.0
DEFAULT_BETA = 0.75
DEFAULT_GAMMA = 0.25


@dataclass(frozen=True)
class TermVector:
    """Sparse term -> magnitude map; scope records any category restriction.

    scope None means all categories. Zero components are never stored.
    """

    components: Mapping[str, float]
    scope: Optional[frozenset[str]] = None

    def __post_init__(self):
        cleaned = {}
        for term, mag in self.components.items():
            mag = float(mag)
            if mag < 0:
                raise ValueError(f"negative magnitude {mag} for term {term!r}")
            if mag != 0.0:
                cleaned[term] = mag
        object.__setattr__(self, "components", cleaned)

    def __bool__(self) -> bool:
        return bool(self.components)

    def norm(self) -> float:
        return math.sqrt(sum(m * m for m in self.components.values()))

    def dump(self) -> str:
        """Diagnostic form: one 'term<TAB>magnitude' line, sorted by term id."""
        return "".join(
            f"{term}\t{self.components[term]!r}\n" for term in sorted(self.components)
        )


@dataclass(frozen=True)
class RankedList:
    """(image id, score) pairs, scores non-increasing, ties by ascending id."""

    entries: tuple[tuple[str, float], ...]

    @property
    def ids(self) -> list[str]:
        return [image_id for image_id, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def vectorize(
    record: ImageRecord,
    th: Thesaurus,
    restriction: Optional[Iterable[str]] = None,
    idf: Optional[Mapping[str, float]] = None,
) -> TermVector:
    """Star weights as magnitudes; entries outside the category restriction dropped.

    idf, when given, multiplies each magnitude by the term's corpus idf
    (off by default; see compute_idf).
    """
    scope = None if restriction is None else frozenset(restriction)
    if scope is not None:
        for cat in scope:
            if th.category(cat) is None:
                raise UnknownCategory(f"no category {cat!r}", category=cat)
    components = {}
    for entry in record.index:
        term = th.term(entry.term)
        if term is None:
            continue
        if scope is not None and term.category not in scope:
            continue
        mag = float(entry.weight)
        if idf is not None:
            mag *= idf.get(entry.term, 0.0)
        components[entry.term] = mag
    return TermVector(components=components, scope=scope)


def similarity(a: TermVector, b: TermVector) -> float:
    """Cosine coefficient; raises EmptyVector rather than silently scoring 0."""
    if not a or not b:
        raise EmptyVector("cannot compare an empty vector")
    dot = 0.0
    small, large = (a.components, b.components)
    if len(small) > len(large):
        small, large = large, small
    for term, mag in small.items():
        other = large.get(term)
        if other is not None:
            dot += mag * other
    if dot == 0.0:
        return 0.0
    score = dot / (a.norm() * b.norm())
    return min(score, 1.0)  # guard against rounding past 1


def rank(
    query: TermVector,
    corpus: Corpus,
    th: Thesaurus,
    restriction: Optional[Iterable[str]] = None,
    exclude: Iterable[str] = (),
    idf: Optional[Mapping[str, float]] = None,
) -> RankedList:
    """Score every visible corpus image against the query.

    Images whose vector is empty under the restriction are omitted, not
    scored 0: absence of evidence is not dissimilarity.
    """
    if not query:
        raise EmptyQuery("query vector has no components")
    excluded = set(exclude)
    scored = []
    for image_id, record in corpus.records.items():
        if image_id in excluded:
            continue
        vec = vectorize(record, th, restriction=restriction, idf=idf)
        if not vec:
            continue
        scored.append((image_id, similarity(query, vec)))
    scored.sort(key=lambda e: (-e[1], e[0]))
    return RankedList(entries=tuple(scored))


def centroid(vectors: Iterable[TermVector]) -> dict[str, float]:
    """Component-wise mean of a non-empty collection of vectors."""
    vectors = list(vectors)
    totals: dict[str, float] = {}
    for vec in vectors:
        for term, mag in vec.components.items():
            totals[term] = totals.get(term, 0.0) + mag
    n = len(vectors)
    return {term: total / n for term, total in totals.items()}


def reformulate_query(
    query: Optional[TermVector],
    positives: Iterable[TermVector],
    negatives: Iterable[TermVector],
    alpha: float = DEFAULT_ALPHA,
    beta: float = DEFAULT_BETA,
    gamma: float = DEFAULT_GAMMA,
) -> TermVector:
    """Rocchio reformulation: alpha*q + beta*centroid(pos) - gamma*centroid(neg).

    An absent query counts as the zero vector; negative resulting components
    clamp to 0. Raises EmptyFeedback when there is neither a query nor any
    positive, and DegenerateQuery when legal feedback cancels everything.
    """
    positives = list(positives)
    negatives = list(negatives)
    if (query is None or not query) and not positives:
        raise EmptyFeedback("need a query or at least one positive example")

    result: dict[str, float] = {}
    if query is not None:
        for term, mag in query.components.items():
            result[term] = alpha * mag
    if positives:
        for term, mag in centroid(positives).items():
            result[term] = result.get(term, 0.0) + beta * mag
    if negatives:
        for term, mag in centroid(negatives).items():
            result[term] = result.get(term, 0.0) - gamma * mag

    components = {term: mag for term, mag in result.items() if mag > 0.0}
    scope = query.scope if query is not None else (positives[0].scope if positives else None)
    if not components:
        raise DegenerateQuery("feedback cancelled the query down to the zero vector")
    return TermVector(components=components, scope=scope)


def compute_idf(corpus: Corpus) -> dict[str, float]:
    """Smoothed inverse document frequency: ln(1 + N/df) per indexed term."""
    df: dict[str, int] = {}
    for record in corpus.records.values():
        for term in {e.term for e in record.index}:
            df[term] = df.get(term, 0) + 1
    n = len(corpus.records)
    return {term: math.log(1.0 + n / count) for term, count in df.items()}
