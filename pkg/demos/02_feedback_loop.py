"""A relevance-feedback session: start a mosaic from a query image, choose
and reject tiles, and let the engine propose refined mosaics.

Run from the repository root:  python3 demos/02_feedback_loop.py
"""

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

session = NavigationSession(corpus, th, AlbumStore())
session.mosaic_from_image("img-001")

# The designer likes zenithal, serene ambiences; a simple stand-in policy
# chooses tiles sharing terms with the query and rejects the rest.
liked_terms = {e.term for e in corpus.get("img-001").index}

for round_no in range(3):
    mosaic = session.mosaic
    print(f"\nmosaic round {mosaic.round}: {len(mosaic.tiles)} tiles")
    marks = {}
    for tile in mosaic.tiles:
        shared = liked_terms & {e.term for e in corpus.get(tile).index}
        marks[tile] = Judgment.POSITIVE if len(shared) >= 2 else Judgment.NEGATIVE
        sign = "+" if marks[tile] is Judgment.POSITIVE else "-"
        print(f"  {sign} {tile}  (shares {len(shared)} term(s))")
    session.set_mosaic_judgments(marks)
    session.next_mosaic()

print(f"\ngroups after three rounds: "
      f"{len(session.groups.positive)} positive, "
      f"{len(session.groups.negative)} negative")
print("refined query terms:")
for term, magnitude in sorted(session.current_query.components.items(),
                              key=lambda kv: -kv[1])[:8]:
    print(f"  {magnitude:6.3f}  {th.term(term).label}")
print("transitions:", "".join(letter for letter, _ in session.transition_log))
