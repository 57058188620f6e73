"""Rank the sample corpus against a query image, then restrict the
comparison to a subset of thesaurus categories.

Run from the repository root:  python3 demos/01_search_and_rank.py
"""

from pathlib import Path

from refnav import ingest_corpus, load_thesaurus, rank, vectorize

ROOT = Path(__file__).resolve().parent.parent

th = load_thesaurus((ROOT / "data/thesaurus.json").read_text(encoding="utf-8"))
corpus = ingest_corpus((ROOT / "data/sample_corpus.jsonl").read_text(encoding="utf-8"), th)

query_id = "img-001"
record = corpus.get(query_id)
print(f"query image: {query_id}")
for entry in record.index:
    term = th.term(entry.term)
    print(f"  {entry.weight}* {term.label}  ({term.category})")

query = vectorize(record, th)
print("\ntop 10 by full-index similarity:")
for pos, (image_id, score) in enumerate(rank(query, corpus, th, exclude={query_id}).entries[:10], 1):
    print(f"  {pos:2d}. {score:.4f}  {image_id}")

# Similarity over part of the indexing: direction and atmosphere only.
scoped = {"c.direction", "c.atmosphere"}
scoped_query = vectorize(record, th, restriction=scoped)
if scoped_query:
    print(f"\ntop 10 restricted to {sorted(scoped)}:")
    ranked = rank(scoped_query, corpus, th, restriction=scoped, exclude={query_id})
    for pos, (image_id, score) in enumerate(ranked.entries[:10], 1):
        print(f"  {pos:2d}. {score:.4f}  {image_id}")
else:
    print(f"\n{query_id} carries no terms in {sorted(scoped)}; nothing to compare")
