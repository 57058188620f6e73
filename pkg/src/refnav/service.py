"""HTTP/JSON process boundary: corpus/thesaurus loading, session lifecycle,
and the endpoint set the companion UI consumes.

Concurrency: requests across sessions proceed in parallel; transitions on one
session are serialized through a per-session lock; corpus and thesaurus are
shared read-only.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .catalog import Corpus, dump_corpus, ingest_corpus, record_doc
from .errors import EngineError, UnknownImage, UnknownSession, UnknownTransition
from .navigation import (
    Album,
    AlbumStore,
    Judgment,
    NavigationSession,
    SessionConfig,
    _now,
    session_snapshot,
)
from .thesaurus import Thesaurus, load_thesaurus

TRANSITION_ARGS = {
    "a": ("image",),
    "b": ("image",),
    "c": ("image",),
    "d": ("node",),
    "e": ("source", "judgments"),
    "f": (),
    "g": (),
    "h": ("origin",),
    "i": ("origin", "name"),
    "j": ("album",),
    "k": (),
}


@dataclass
class Engine:
    thesaurus: Thesaurus
    corpus: Corpus
    albums: AlbumStore
    config: SessionConfig = field(default_factory=SessionConfig)

    @property
    def corpus_checksum(self) -> str:
        return hashlib.sha256(dump_corpus(self.corpus).encode("utf-8")).hexdigest()


def load_engine(
    corpus_path: str,
    thesaurus_path: str,
    config: Optional[SessionConfig] = None,
    albums_dir: Optional[str] = None,
) -> Engine:
    thesaurus = load_thesaurus(Path(thesaurus_path).read_text(encoding="utf-8"))
    corpus = ingest_corpus(Path(corpus_path).read_text(encoding="utf-8"), thesaurus)
    return Engine(
        thesaurus=thesaurus,
        corpus=corpus,
        albums=AlbumStore(albums_dir),
        config=config or SessionConfig(),
    )


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, NavigationSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def add(self, session: NavigationSession) -> None:
        with self._guard:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()

    def get(self, session_id: str) -> tuple[NavigationSession, threading.Lock]:
        with self._guard:
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSession(f"no session {session_id!r}", session=session_id)
            return session, self._locks[session_id]


def _parse_judgments(raw: dict) -> dict[str, Judgment]:
    try:
        return {image_id: Judgment(value) for image_id, value in raw.items()}
    except ValueError as exc:
        raise UnknownTransition(f"invalid judgment value: {exc}") from exc


def _album_doc(album: Album) -> dict:
    return {
        "id": album.id,
        "name": album.name,
        "annotation": album.annotation,
        "created_from": album.created_from,
        "created_at": album.created_at,
        "images": album.images,
    }


def apply_transition(session: NavigationSession, letter: str, args: dict) -> Optional[Album]:
    """Dispatch one transition letter; returns the new album for 'i'."""
    if letter not in TRANSITION_ARGS:
        raise UnknownTransition(f"unknown transition letter {letter!r}", letter=letter)
    missing = [k for k in TRANSITION_ARGS[letter] if k not in args]
    if missing:
        raise UnknownTransition(
            f"transition {letter!r} requires arguments: {', '.join(missing)}", letter=letter
        )
    if letter == "a":
        session.rank_from_image(args["image"])
    elif letter == "b":
        session.mosaic_from_image(args["image"])
    elif letter == "c":
        session.graph_from_image(args["image"])
    elif letter == "d":
        session.expand_node(args["node"])
    elif letter == "e":
        session.judge(args["source"], _parse_judgments(args["judgments"]))
    elif letter == "f":
        if "judgments" in args:
            session.set_mosaic_judgments(_parse_judgments(args["judgments"]))
        session.fold_mosaic_judgments()
    elif letter == "g":
        session.mosaic_from_ranked()
    elif letter == "h":
        session.graph_from(args["origin"])
    elif letter == "i":
        return session.album_from(args["origin"], args["name"], args.get("annotation", ""))
    elif letter == "j":
        session.search_from_album(args["album"])
    elif letter == "k":
        if "judgments" in args:
            session.set_mosaic_judgments(_parse_judgments(args["judgments"]))
        session.next_mosaic()
    return None


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="refnav", version="0.1.0")
    store = SessionStore()
    app.state.engine = engine
    app.state.sessions = store

    @app.exception_handler(EngineError)
    async def engine_error_handler(request: Request, exc: EngineError):
        return JSONResponse(status_code=exc.http_status, content=exc.to_payload())

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "corpus_size": len(engine.corpus),
            "thesaurus_version": engine.thesaurus.version,
            "corpus_checksum": engine.corpus_checksum,
        }

    @app.get("/thesaurus")
    def thesaurus():
        return {
            "version": engine.thesaurus.version,
            "categories": [
                {
                    "id": cat.id,
                    "label": cat.label,
                    "terms": [{"id": t.id, "label": t.label} for t in cat.terms],
                }
                for cat in engine.thesaurus.categories
            ],
        }

    @app.get("/images")
    def images(offset: int = 0, limit: int = 50):
        ids = engine.corpus.ids
        window = ids[offset: offset + limit]
        return {
            "total": len(ids),
            "offset": offset,
            "limit": limit,
            "items": [record_doc(engine.corpus.records[i]) for i in window],
        }

    @app.get("/images/{image_id}")
    def image(image_id: str):
        record = engine.corpus.get(image_id)
        if record is None:
            raise UnknownImage(f"no image {image_id!r} in corpus", image=image_id)
        return record_doc(record)

    @app.post("/sessions", status_code=201)
    def create_session(body: Optional[dict] = None):
        body = body or {}
        session = NavigationSession(
            engine.corpus,
            engine.thesaurus,
            engine.albums,
            config=engine.config,
            restriction=body.get("restriction"),
        )
        store.add(session)
        return session_snapshot(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session, lock = store.get(session_id)
        with lock:
            return session_snapshot(session)

    @app.post("/sessions/{session_id}/transitions")
    def transition(session_id: str, body: dict):
        letter = body.get("letter")
        if not isinstance(letter, str):
            raise UnknownTransition("transition body needs a 'letter' field")
        args = body.get("arguments") or {}
        session, lock = store.get(session_id)
        with lock:
            album = apply_transition(session, letter, args)
            response = {"session": session_snapshot(session)}
            if album is not None:
                response["album"] = _album_doc(album)
            return response

    def _session_part(session_id: str, part: str, error: type[EngineError], message: str):
        session, lock = store.get(session_id)
        with lock:
            snapshot = session_snapshot(session)
        if snapshot[part] is None:
            raise error(message)
        return snapshot[part]

    @app.get("/sessions/{session_id}/ranked")
    def session_ranked(session_id: str):
        from .errors import NoRankedList

        return {"entries": _session_part(session_id, "ranked", NoRankedList, "no ranked list yet")}

    @app.get("/sessions/{session_id}/mosaic")
    def session_mosaic(session_id: str):
        from .errors import NoMosaic

        return _session_part(session_id, "mosaic", NoMosaic, "no mosaic yet")

    @app.get("/sessions/{session_id}/groups")
    def session_groups(session_id: str):
        session, lock = store.get(session_id)
        with lock:
            return session_snapshot(session)["groups"]

    @app.get("/sessions/{session_id}/graph")
    def session_graph(session_id: str):
        from .errors import NoGraph

        return _session_part(session_id, "graph", NoGraph, "no graph yet")

    @app.get("/albums")
    def list_albums():
        return {"albums": [_album_doc(a) for a in engine.albums.list()]}

    @app.post("/albums", status_code=201)
    def create_album(body: dict):
        from .errors import EmptySource, NoSource

        images = body.get("images") or []
        if not images:
            raise EmptySource("album needs at least one image")
        for image_id in images:
            if image_id not in engine.corpus:
                raise UnknownImage(f"no image {image_id!r} in corpus", image=image_id)
        created_from = body.get("created_from", "ranked")
        if created_from not in ("groups", "ranked", "mosaic"):
            raise NoSource(f"invalid provenance {created_from!r}")
        album = Album(
            id=engine.albums.next_id(),
            name=body.get("name", ""),
            annotation=body.get("annotation", ""),
            images=list(dict.fromkeys(images)),
            created_from=created_from,
            created_at=_now(),
        )
        engine.albums.save(album)
        return _album_doc(album)

    @app.get("/albums/{album_id}")
    def get_album(album_id: str):
        return _album_doc(engine.albums.get(album_id))

    return app
