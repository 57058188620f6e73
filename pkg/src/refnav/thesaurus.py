"""Controlled indexing vocabulary: exactly seven categories of weighted-index terms.

The thesaurus is immutable after load and safe for concurrent reads. Term ids
are case-sensitive opaque strings, unique across the whole thesaurus; labels
may be any UTF-8 text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Optional, Union

from ._canon import canon_document
from .errors import (
    CategoryCountViolation,
    DanglingReference,
    DuplicateTerm,
    MalformedFile,
    UnknownCategory,
)

CATEGORY_COUNT = 7


@dataclass(frozen=True)
class Term:
    id: str
    label: str
    category: str


@dataclass(frozen=True)
class Category:
    id: str
    label: str
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class Thesaurus:
    version: str
    categories: tuple[Category, ...]
    _terms_by_id: dict = field(init=False, repr=False, compare=False)
    _categories_by_id: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.categories) != CATEGORY_COUNT:
            raise CategoryCountViolation(
                f"thesaurus must have exactly {CATEGORY_COUNT} categories, got {len(self.categories)}",
                count=len(self.categories),
            )
        cats: dict[str, Category] = {}
        terms: dict[str, Term] = {}
        for cat in self.categories:
            if not cat.id:
                raise MalformedFile("category with empty id")
            if cat.id in cats:
                raise MalformedFile(f"duplicate category id {cat.id!r}", category=cat.id)
            cats[cat.id] = cat
            for term in cat.terms:
                if not term.id:
                    raise MalformedFile(f"term with empty id in category {cat.id!r}")
                if term.id in terms:
                    raise DuplicateTerm(
                        f"term id {term.id!r} appears more than once", term=term.id
                    )
                if term.category != cat.id:
                    raise DanglingReference(
                        f"term {term.id!r} names category {term.category!r} "
                        f"but is listed under {cat.id!r}",
                        term=term.id,
                    )
                terms[term.id] = term
        object.__setattr__(self, "_terms_by_id", terms)
        object.__setattr__(self, "_categories_by_id", cats)

    def term(self, term_id: str) -> Optional[Term]:
        """The term with this id, or None when absent."""
        return self._terms_by_id.get(term_id)

    def category(self, category_id: str) -> Optional[Category]:
        return self._categories_by_id.get(category_id)

    def terms_of_category(self, category_id: str) -> tuple[Term, ...]:
        """All terms owned by the category, in file order."""
        cat = self._categories_by_id.get(category_id)
        if cat is None:
            raise UnknownCategory(f"no category {category_id!r}", category=category_id)
        return cat.terms

    @property
    def term_ids(self) -> set[str]:
        return set(self._terms_by_id)

    @property
    def category_ids(self) -> list[str]:
        return [c.id for c in self.categories]


def lookup_term(th: Thesaurus, term_id: str) -> Optional[Term]:
    return th.term(term_id)


def terms_of_category(th: Thesaurus, category_id: str) -> tuple[Term, ...]:
    return th.terms_of_category(category_id)


def load_thesaurus(source: Union[str, bytes, IO]) -> Thesaurus:
    """Parse the thesaurus file format (see README) into a validated Thesaurus.

    Order-preserving: categories and terms keep their file order.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedFile(f"thesaurus file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedFile("thesaurus document must be a JSON object")
    version = doc.get("version")
    raw_cats = doc.get("categories")
    if not isinstance(version, str) or not isinstance(raw_cats, list):
        raise MalformedFile("thesaurus document needs string 'version' and array 'categories'")

    categories = []
    for raw in raw_cats:
        if not isinstance(raw, dict) or not isinstance(raw.get("id"), str):
            raise MalformedFile("each category must be an object with a string 'id'")
        raw_terms = raw.get("terms")
        if not isinstance(raw_terms, list):
            raise MalformedFile(f"category {raw['id']!r} needs a 'terms' array")
        terms = []
        for rt in raw_terms:
            if not isinstance(rt, dict) or not isinstance(rt.get("id"), str):
                raise MalformedFile(
                    f"each term in category {raw['id']!r} must be an object with a string 'id'"
                )
            terms.append(Term(id=rt["id"], label=str(rt.get("label", rt["id"])), category=raw["id"]))
        categories.append(
            Category(id=raw["id"], label=str(raw.get("label", raw["id"])), terms=tuple(terms))
        )
    return Thesaurus(version=version, categories=tuple(categories))


def dump_thesaurus(th: Thesaurus) -> str:
    """Canonical serialization; reloading the output yields an equal Thesaurus."""
    doc = {
        "version": th.version,
        "categories": [
            {
                "id": cat.id,
                "label": cat.label,
                "terms": [{"id": t.id, "label": t.label} for t in cat.terms],
            }
            for cat in th.categories
        ],
    }
    return canon_document(doc)
