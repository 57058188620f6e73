"""Session state machine: ranked lists, mosaics, judgment groups, similarity
graphs, albums, and the eleven navigation transitions connecting them.

One session is mutated by a single writer at a time (the service layer
serializes per session id); the corpus and thesaurus are shared immutable.
Transition letters 'a'..'k' are part of the service wire contract and are
recorded in the session's transition log.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union
import uuid

from ._canon import canon_document
from .catalog import Corpus
from .errors import (
    AlbumFullyStale,
    EmptyCorpus,
    EmptySource,
    MalformedFile,
    NoFeedback,
    NoGraph,
    NoMosaic,
    NoRankedList,
    NoSource,
    UnknownAlbum,
    UnknownImage,
    UnknownNode,
)
from .thesaurus import Thesaurus
from .vsm import RankedList, TermVector, compute_idf, rank, reformulate_query, similarity, vectorize

logger = logging.getLogger(__name__)

TRANSITION_LETTERS = "abcdefghijk"


class Judgment(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass
class Mosaic:
    round: int
    tiles: list[str]
    judgments: dict[str, Judgment] = field(default_factory=dict)

    def judgment_of(self, image_id: str) -> Judgment:
        return self.judgments.get(image_id, Judgment.NEUTRAL)

    def has_non_neutral(self) -> bool:
        return any(j is not Judgment.NEUTRAL for j in self.judgments.values())


@dataclass
class GroupSet:
    positive: set[str] = field(default_factory=set)
    negative: set[str] = field(default_factory=set)
    neutral: set[str] = field(default_factory=set)

    def assign(self, image_id: str, judgment: Judgment) -> None:
        """Latest judgment wins; the three sets stay pairwise disjoint."""
        self.positive.discard(image_id)
        self.negative.discard(image_id)
        self.neutral.discard(image_id)
        getattr(self, judgment.value).add(image_id)

    def is_empty(self) -> bool:
        return not (self.positive or self.negative or self.neutral)


@dataclass
class SimilarityGraph:
    nodes: set[str] = field(default_factory=set)
    edges: dict[tuple[str, str], float] = field(default_factory=dict)  # key sorted (u, v)
    frontier: set[str] = field(default_factory=set)

    def add_edge(self, u: str, v: str, score: float) -> None:
        if u == v:
            return
        key = (u, v) if u < v else (v, u)
        self.edges[key] = score


@dataclass
class Album:
    id: str
    name: str
    annotation: str
    images: list[str]
    created_from: str  # "groups" | "ranked" | "mosaic"
    created_at: str


def dump_album(album: Album) -> str:
    """Canonical form: fixed key order, byte-reproducible for round-trips."""
    doc = {
        "id": album.id,
        "name": album.name,
        "annotation": album.annotation,
        "created_from": album.created_from,
        "created_at": album.created_at,
        "images": album.images,
    }
    return canon_document(doc)


def parse_album(text: Union[str, bytes]) -> Album:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    import json

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"album file is not valid JSON: {exc}") from exc
    try:
        return Album(
            id=doc["id"],
            name=doc["name"],
            annotation=doc["annotation"],
            images=list(doc["images"]),
            created_from=doc["created_from"],
            created_at=doc["created_at"],
        )
    except (KeyError, TypeError) as exc:
        raise MalformedFile(f"album file missing field: {exc}") from exc


class AlbumStore:
    """Global album archive; optionally persisted one file per album."""

    def __init__(self, directory: Optional[Union[str, Path]] = None):
        self._albums: dict[str, Album] = {}
        self._directory = Path(directory) if directory is not None else None
        if self._directory is not None:
            self._directory.mkdir(parents=True, exist_ok=True)
            for path in sorted(self._directory.glob("*.json")):
                album = parse_album(path.read_text(encoding="utf-8"))
                self._albums[album.id] = album

    def next_id(self) -> str:
        n = 0
        for album_id in self._albums:
            prefix, _, suffix = album_id.rpartition("-")
            if prefix == "album" and suffix.isdigit():
                n = max(n, int(suffix))
        return f"album-{n + 1:04d}"

    def save(self, album: Album) -> None:
        self._albums[album.id] = album
        if self._directory is not None:
            path = self._directory / f"{album.id}.json"
            path.write_text(dump_album(album), encoding="utf-8")

    def get(self, album_id: str) -> Album:
        album = self._albums.get(album_id)
        if album is None:
            raise UnknownAlbum(f"no album {album_id!r}", album=album_id)
        return album

    def list(self) -> list[Album]:
        return [self._albums[k] for k in sorted(self._albums)]


@dataclass
class SessionConfig:
    mosaic_size: int = 12
    graph_k: int = 8
    edge_threshold: float = 0.3
    graph_seed_count: int = 10
    alpha: float = 1.0
    beta: float = 0.75
    gamma: float = 0.25
    use_idf: bool = False


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


class NavigationSession:
    """Live navigation state a designer steers through transitions a..k."""

    def __init__(
        self,
        corpus: Corpus,
        thesaurus: Thesaurus,
        albums: AlbumStore,
        config: Optional[SessionConfig] = None,
        restriction: Optional[Iterable[str]] = None,
        session_id: Optional[str] = None,
    ):
        self.id = session_id or uuid.uuid4().hex
        self.corpus = corpus
        self.thesaurus = thesaurus
        self.albums = albums
        self.config = config or SessionConfig()
        self.restriction = frozenset(restriction) if restriction is not None else None
        self.current_query: Optional[TermVector] = None
        self.ranked: Optional[RankedList] = None
        self.mosaic: Optional[Mosaic] = None
        self.groups = GroupSet()
        self.graph: Optional[SimilarityGraph] = None
        self.judged_history: set[str] = set()
        self.transition_log: list[tuple[str, str]] = []
        self._idf = compute_idf(corpus) if self.config.use_idf else None
        self._vector_cache: dict[str, TermVector] = {}

    # --- shared helpers ------------------------------------------------------

    def _log(self, letter: str) -> None:
        self.transition_log.append((letter, _now()))

    def _record(self, image_id: str):
        record = self.corpus.get(image_id)
        if record is None:
            raise UnknownImage(f"no image {image_id!r} in corpus", image=image_id)
        return record

    def _vector(self, image_id: str) -> TermVector:
        vec = self._vector_cache.get(image_id)
        if vec is None:
            vec = vectorize(
                self._record(image_id), self.thesaurus,
                restriction=self.restriction, idf=self._idf,
            )
            self._vector_cache[image_id] = vec
        return vec

    def _rank(self, query: TermVector, exclude: Iterable[str]) -> RankedList:
        return rank(
            query, self.corpus, self.thesaurus,
            restriction=self.restriction, exclude=exclude, idf=self._idf,
        )

    def _neighbors(self, image_id: str) -> list[tuple[str, float]]:
        """Top-k corpus neighbors with score >= edge_threshold, id tie-break."""
        vec = self._vector(image_id)
        if not vec:
            return []
        scored = []
        for other in self.corpus.records:
            if other == image_id:
                continue
            ovec = self._vector(other)
            if not ovec:
                continue
            score = similarity(vec, ovec)
            if score >= self.config.edge_threshold:
                scored.append((other, score))
        scored.sort(key=lambda e: (-e[1], e[0]))
        return scored[: self.config.graph_k]

    def _fold_mosaic_into_groups(self) -> None:
        assert self.mosaic is not None
        for tile in self.mosaic.tiles:
            judgment = self.mosaic.judgment_of(tile)
            self.groups.assign(tile, judgment)
            if judgment is not Judgment.NEUTRAL:
                self.judged_history.add(tile)

    def _next_mosaic_from_ranked(self) -> None:
        assert self.ranked is not None
        tiles = [i for i in self.ranked.ids if i not in self.judged_history]
        tiles = tiles[: self.config.mosaic_size]
        next_round = self.mosaic.round + 1 if self.mosaic is not None else 1
        self.mosaic = Mosaic(round=next_round, tiles=tiles)

    def set_mosaic_judgments(self, judgments: Mapping[str, Judgment]) -> None:
        """Record the designer's choose/reject/no-opinion marks on mosaic tiles."""
        if self.mosaic is None:
            raise NoMosaic("no mosaic to judge")
        tiles = set(self.mosaic.tiles)
        for image_id, judgment in judgments.items():
            if image_id not in tiles:
                raise UnknownImage(f"{image_id!r} is not a mosaic tile", image=image_id)
            self.mosaic.judgments[image_id] = judgment

    # --- transitions a..k ----------------------------------------------------

    def rank_from_image(self, image_id: str) -> "NavigationSession":
        """(a) query image -> ranked list, the query image itself excluded."""
        self._record(image_id)
        self.current_query = self._vector(image_id)
        self.ranked = self._rank(self.current_query, exclude={image_id})
        self._log("a")
        return self

    def mosaic_from_image(self, image_id: str) -> "NavigationSession":
        """(b) query image -> mosaic; defined as (a) followed by (g)."""
        self._record(image_id)
        self.current_query = self._vector(image_id)
        self.ranked = self._rank(self.current_query, exclude={image_id})
        self._next_mosaic_from_ranked()
        self._log("b")
        return self

    def graph_from_image(self, image_id: str) -> "NavigationSession":
        """(c) query image -> similarity graph, seed expanded once."""
        self._record(image_id)
        graph = SimilarityGraph(nodes={image_id})
        for neighbor, score in self._neighbors(image_id):
            graph.nodes.add(neighbor)
            graph.add_edge(image_id, neighbor, score)
            graph.frontier.add(neighbor)
        self.graph = graph
        self._log("c")
        return self

    def expand_node(self, node: str) -> "NavigationSession":
        """(d) merge a graph node's qualifying neighbors; idempotent."""
        if self.graph is None:
            raise NoGraph("no graph to expand")
        if node not in self.graph.nodes:
            raise UnknownNode(f"{node!r} is not a graph node", node=node)
        for neighbor, score in self._neighbors(node):
            if neighbor not in self.graph.nodes:
                self.graph.nodes.add(neighbor)
                self.graph.frontier.add(neighbor)
            self.graph.add_edge(node, neighbor, score)
        self.graph.frontier.discard(node)
        self._log("d")
        return self

    def judge(self, source: str, assignment: Mapping[str, Judgment]) -> "NavigationSession":
        """(e) build judgment groups from a graph or a ranked list."""
        if source == "graph":
            if self.graph is None:
                raise NoSource("no graph to judge from")
            members = self.graph.nodes
        elif source == "ranked":
            if self.ranked is None:
                raise NoSource("no ranked list to judge from")
            members = set(self.ranked.ids)
        else:
            raise NoSource(f"unknown judgment source {source!r}")
        for image_id in assignment:
            if image_id not in members:
                raise UnknownImage(
                    f"{image_id!r} does not belong to the {source} source", image=image_id
                )
        for image_id, judgment in assignment.items():
            self.groups.assign(image_id, judgment)
            if judgment is not Judgment.NEUTRAL:
                self.judged_history.add(image_id)
        self._log("e")
        return self

    def fold_mosaic_judgments(self) -> "NavigationSession":
        """(f) move each mosaic tile's judgment into the groups."""
        if self.mosaic is None:
            raise NoMosaic("no mosaic to fold")
        self._fold_mosaic_into_groups()
        self._log("f")
        return self

    def mosaic_from_ranked(self) -> "NavigationSession":
        """(g) next-round mosaic from the ranked list, judged images skipped."""
        if self.ranked is None:
            raise NoRankedList("no ranked list to tile")
        self._next_mosaic_from_ranked()
        self._log("g")
        return self

    def graph_from(self, origin: str) -> "NavigationSession":
        """(h) seed a graph from groups (positives), ranked (top-n), or mosaic tiles."""
        if origin == "groups":
            seeds = sorted(self.groups.positive)
            if not seeds:
                raise EmptySource("positive group is empty")
        elif origin == "ranked":
            if self.ranked is None:
                raise NoSource("no ranked list")
            seeds = self.ranked.ids[: self.config.graph_seed_count]
            if not seeds:
                raise EmptySource("ranked list is empty")
        elif origin == "mosaic":
            if self.mosaic is None:
                raise NoSource("no mosaic")
            seeds = list(self.mosaic.tiles)
            if not seeds:
                raise EmptySource("mosaic has no tiles")
        else:
            raise NoSource(f"unknown graph origin {origin!r}")
        graph = SimilarityGraph(nodes=set(seeds), frontier=set(seeds))
        for i, u in enumerate(seeds):
            uvec = self._vector(u)
            if not uvec:
                continue
            for v in seeds[i + 1:]:
                if u == v:
                    continue
                vvec = self._vector(v)
                if not vvec:
                    continue
                score = similarity(uvec, vvec)
                if score >= self.config.edge_threshold:
                    graph.add_edge(u, v, score)
        self.graph = graph
        self._log("h")
        return self

    def album_from(self, origin: str, name: str, annotation: str = "") -> Album:
        """(i) archive a result set as a named, annotated album."""
        if origin == "groups":
            images = sorted(self.groups.positive)
        elif origin == "ranked":
            if self.ranked is None:
                raise NoSource("no ranked list")
            images = self.ranked.ids
        elif origin == "mosaic":
            if self.mosaic is None:
                raise NoSource("no mosaic")
            images = [t for t in self.mosaic.tiles
                      if self.mosaic.judgment_of(t) is Judgment.POSITIVE]
            if not images:
                # nothing judged positive: archive the whole mosaic
                images = list(self.mosaic.tiles)
        else:
            raise NoSource(f"unknown album origin {origin!r}")
        if not images:
            raise EmptySource(f"{origin} holds no images to archive")
        album = Album(
            id=self.albums.next_id(),
            name=name,
            annotation=annotation,
            images=images,
            created_from=origin,
            created_at=_now(),
        )
        self.albums.save(album)
        self._log("i")
        return album

    def search_from_album(self, album_id: str) -> "NavigationSession":
        """(j) seed a fresh search from an album's images (positive centroid)."""
        album = self.albums.get(album_id)
        remaining = [i for i in album.images if i in self.corpus]
        missing = [i for i in album.images if i not in self.corpus]
        if missing:
            logger.warning("album %s: dropping %d stale image(s): %s",
                           album_id, len(missing), ", ".join(missing))
        if not remaining:
            raise AlbumFullyStale(
                f"no image of album {album_id!r} remains in the corpus", album=album_id
            )
        positives = [v for v in (self._vector(i) for i in remaining) if v]
        self.current_query = reformulate_query(
            None, positives, [],
            alpha=self.config.alpha, beta=self.config.beta, gamma=self.config.gamma,
        )
        self.ranked = self._rank(self.current_query, exclude=set(album.images))
        self._log("j")
        return self

    def next_mosaic(self) -> "NavigationSession":
        """(k) fold judgments, reformulate the query, propose the next mosaic."""
        has_mosaic_feedback = self.mosaic is not None and self.mosaic.has_non_neutral()
        has_group_feedback = bool(self.groups.positive or self.groups.negative)
        if not has_mosaic_feedback and not has_group_feedback and self.current_query is None:
            raise NoFeedback("no judgments, no groups, and no current query")
        if self.mosaic is not None:
            self._fold_mosaic_into_groups()
        positives = [v for v in (self._vector(i) for i in sorted(self.groups.positive)) if v]
        negatives = [v for v in (self._vector(i) for i in sorted(self.groups.negative)) if v]
        self.current_query = reformulate_query(
            self.current_query, positives, negatives,
            alpha=self.config.alpha, beta=self.config.beta, gamma=self.config.gamma,
        )
        self.ranked = self._rank(self.current_query, exclude=self.judged_history)
        self._next_mosaic_from_ranked()
        self._log("k")
        return self


def build_similarity_graph(
    corpus: Corpus,
    th: Thesaurus,
    restriction: Optional[Iterable[str]] = None,
    edge_threshold: float = 0.3,
    k: int = 8,
    idf: Optional[Mapping[str, float]] = None,
) -> SimilarityGraph:
    """Whole-corpus graph for offline inspection.

    Nodes are all images with non-empty vectors; each node proposes its top-k
    neighbors at or above the threshold, and an edge is kept if either
    endpoint proposes it (union rule). Frontier is empty.
    """
    if len(corpus) == 0:
        raise EmptyCorpus("corpus holds no images")
    vectors = {}
    for image_id, record in corpus.records.items():
        vec = vectorize(record, th, restriction=restriction, idf=idf)
        if vec:
            vectors[image_id] = vec
    graph = SimilarityGraph(nodes=set(vectors))
    for image_id, vec in vectors.items():
        scored = []
        for other, ovec in vectors.items():
            if other == image_id:
                continue
            score = similarity(vec, ovec)
            if score >= edge_threshold:
                scored.append((other, score))
        scored.sort(key=lambda e: (-e[1], e[0]))
        for other, score in scored[:k]:
            graph.add_edge(image_id, other, score)
    return graph


# --- session snapshots -------------------------------------------------------

def session_snapshot(session: NavigationSession) -> dict:
    """Full session state in canonical field order, suitable for replay."""

    def vec(v: Optional[TermVector]):
        if v is None:
            return None
        return {term: v.components[term] for term in sorted(v.components)}

    return {
        "id": session.id,
        "restriction": sorted(session.restriction) if session.restriction is not None else None,
        "current_query": vec(session.current_query),
        "ranked": (
            [[i, s] for i, s in session.ranked.entries] if session.ranked is not None else None
        ),
        "mosaic": (
            {
                "round": session.mosaic.round,
                "tiles": list(session.mosaic.tiles),
                "judgments": {
                    t: session.mosaic.judgments[t].value
                    for t in sorted(session.mosaic.judgments)
                },
            }
            if session.mosaic is not None
            else None
        ),
        "groups": {
            "positive": sorted(session.groups.positive),
            "negative": sorted(session.groups.negative),
            "neutral": sorted(session.groups.neutral),
        },
        "graph": (
            {
                "nodes": sorted(session.graph.nodes),
                "edges": [[u, v, s] for (u, v), s in sorted(session.graph.edges.items())],
                "frontier": sorted(session.graph.frontier),
            }
            if session.graph is not None
            else None
        ),
        "judged_history": sorted(session.judged_history),
        "transition_log": [[letter, ts] for letter, ts in session.transition_log],
    }


def dump_session(session: NavigationSession) -> str:
    return canon_document(session_snapshot(session))


def restore_session(
    snapshot: Union[str, bytes, dict],
    corpus: Corpus,
    th: Thesaurus,
    albums: AlbumStore,
    config: Optional[SessionConfig] = None,
) -> NavigationSession:
    """Rebuild a session from a snapshot; inverse of dump_session."""
    if isinstance(snapshot, (str, bytes)):
        import json

        try:
            snapshot = json.loads(snapshot)
        except json.JSONDecodeError as exc:
            raise MalformedFile(f"session snapshot is not valid JSON: {exc}") from exc
    restriction = snapshot.get("restriction")
    session = NavigationSession(
        corpus, th, albums, config=config,
        restriction=restriction, session_id=snapshot["id"],
    )
    scope = session.restriction
    if snapshot.get("current_query") is not None:
        session.current_query = TermVector(dict(snapshot["current_query"]), scope=scope)
    if snapshot.get("ranked") is not None:
        session.ranked = RankedList(tuple((i, float(s)) for i, s in snapshot["ranked"]))
    if snapshot.get("mosaic") is not None:
        m = snapshot["mosaic"]
        session.mosaic = Mosaic(
            round=m["round"],
            tiles=list(m["tiles"]),
            judgments={t: Judgment(j) for t, j in m["judgments"].items()},
        )
    g = snapshot.get("groups") or {}
    session.groups = GroupSet(
        positive=set(g.get("positive", ())),
        negative=set(g.get("negative", ())),
        neutral=set(g.get("neutral", ())),
    )
    if snapshot.get("graph") is not None:
        raw = snapshot["graph"]
        graph = SimilarityGraph(nodes=set(raw["nodes"]), frontier=set(raw["frontier"]))
        for u, v, s in raw["edges"]:
            graph.add_edge(u, v, float(s))
        session.graph = graph
    session.judged_history = set(snapshot.get("judged_history", ()))
    session.transition_log = [(letter, ts) for letter, ts in snapshot.get("transition_log", ())]
    return session
