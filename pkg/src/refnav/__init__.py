"""refnav: interactive reference-image retrieval and navigation engine.

Images are indexed with weighted controlled-vocabulary terms (1..4 stars),
compared through a sparse vector-space model, and explored through ranked
lists, mosaics, positive/negative/neutral judgment groups, similarity
graphs, and reusable albums.
"""

from .catalog import (
    Corpus,
    ImageRecord,
    IndexEntry,
    InformationalData,
    Violation,
    dump_corpus,
    dump_record,
    get_record,
    ingest_corpus,
    validate_record,
)
from .navigation import (
    Album,
    AlbumStore,
    GroupSet,
    Judgment,
    Mosaic,
    NavigationSession,
    SessionConfig,
    SimilarityGraph,
    build_similarity_graph,
    dump_album,
    dump_session,
    parse_album,
    restore_session,
    session_snapshot,
)
from .thesaurus import (
    Category,
    Term,
    Thesaurus,
    dump_thesaurus,
    load_thesaurus,
    lookup_term,
    terms_of_category,
)
from .vsm import (
    RankedList,
    TermVector,
    centroid,
    compute_idf,
    rank,
    reformulate_query,
    similarity,
    vectorize,
)

__version__ = "0.1.0"
