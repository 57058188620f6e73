import json
import random

import pytest

from refnav.catalog import Corpus, ImageRecord, IndexEntry, InformationalData
from refnav.navigation import AlbumStore, NavigationSession, SessionConfig
from refnav.thesaurus import load_thesaurus


def make_thesaurus_doc(n_categories=7, terms_per_category=3):
    return {
        "version": "test-1",
        "categories": [
            {
                "id": f"c{i}",
                "label": f"Category {i}",
                "terms": [
                    {"id": f"c{i}.t{j}", "label": f"term {i}.{j}"}
                    for j in range(terms_per_category)
                ],
            }
            for i in range(n_categories)
        ],
    }


@pytest.fixture(scope="session")
def thesaurus():
    return load_thesaurus(json.dumps(make_thesaurus_doc()))


def make_record(image_id, entries, uri=None, **info):
    return ImageRecord(
        id=image_id,
        uri=uri or f"mem://{image_id}",
        info=InformationalData(**info),
        index=tuple(IndexEntry(term, weight) for term, weight in entries),
    )


def make_corpus(records, version="test-1"):
    return Corpus(records={r.id: r for r in records}, thesaurus_version=version)


def random_corpus(th, n, rng=None, min_terms=1, max_terms=6, prefix="img"):
    """Synthetic corpus of n images with random sparse star-weighted indexes."""
    rng = rng or random.Random(0)
    terms = sorted(th.term_ids)
    records = []
    for i in range(n):
        picked = sorted(rng.sample(terms, rng.randint(min_terms, min(max_terms, len(terms)))))
        records.append(
            make_record(f"{prefix}-{i:03d}", [(t, rng.randint(1, 4)) for t in picked])
        )
    return make_corpus(records)


def raw_vectors(corpus, restriction_terms=None):
    """Independent raw term->weight maps for the oracle side."""
    out = {}
    for image_id, record in corpus.records.items():
        vec = {}
        for entry in record.index:
            if restriction_terms is None or entry.term in restriction_terms:
                vec[entry.term] = float(entry.weight)
        out[image_id] = vec
    return out


def make_session(corpus, th, config=None, albums=None, restriction=None, session_id=None):
    return NavigationSession(
        corpus, th, albums or AlbumStore(),
        config=config or SessionConfig(),
        restriction=restriction, session_id=session_id,
    )
