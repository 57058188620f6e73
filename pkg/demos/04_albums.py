"""Archive search results as an annotated album, then reuse the album to
seed a fresh search in a new session.

Run from the repository root:  python3 demos/04_albums.py
"""

import tempfile
from pathlib import Path

from refnav import (
    AlbumStore,
    Judgment,
    NavigationSession,
    ingest_corpus,
    load_thesaurus,
)

ROOT = Path(__file__).resolve().parent.parent

th = load_thesaurus((ROOT / "data/thesaurus.json").read_text(encoding="utf-8"))
corpus = ingest_corpus((ROOT / "data/sample_corpus.jsonl").read_text(encoding="utf-8"), th)

albums_dir = Path(tempfile.mkdtemp(prefix="refnav-albums-"))
store = AlbumStore(albums_dir)

first = NavigationSession(corpus, th, store)
first.rank_from_image("img-010")
picks = first.ranked.ids[:3]
first.judge("ranked", dict.fromkeys(picks, Judgment.POSITIVE))
album = first.album_from("groups", "soft lateral light", "shortlist for the atrium study")
print(f"album {album.id} ({album.name!r}): {album.images}")
print(f"persisted at {albums_dir / (album.id + '.json')}")

# A later session (even another user) reuses the album as a query seed.
second = NavigationSession(corpus, th, AlbumStore(albums_dir))
second.search_from_album(album.id)
print("\nsearch seeded from the album; top 8:")
for pos, (image_id, score) in enumerate(second.ranked.entries[:8], 1):
    print(f"  {pos:2d}. {score:.4f}  {image_id}")
