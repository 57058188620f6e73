"""Build and walk similarity graphs: a whole-corpus overview, then an
interactive-style walk expanding nodes outward from one image.

Run from the repository root:  python3 demos/03_similarity_graph.py
"""

from pathlib import Path

from refnav import (
    AlbumStore,
    NavigationSession,
    SessionConfig,
    build_similarity_graph,
    ingest_corpus,
    load_thesaurus,
)

ROOT = Path(__file__).resolve().parent.parent

th = load_thesaurus((ROOT / "data/thesaurus.json").read_text(encoding="utf-8"))
corpus = ingest_corpus((ROOT / "data/sample_corpus.jsonl").read_text(encoding="utf-8"), th)

overview = build_similarity_graph(corpus, th, edge_threshold=0.5, k=4)
print(f"whole-corpus graph at threshold 0.5: "
      f"{len(overview.nodes)} nodes, {len(overview.edges)} edges")
strongest = sorted(overview.edges.items(), key=lambda kv: -kv[1])[:5]
for (u, v), score in strongest:
    print(f"  {score:.4f}  {u} -- {v}")

session = NavigationSession(
    corpus, th, AlbumStore(), config=SessionConfig(graph_k=4, edge_threshold=0.4)
)
session.graph_from_image("img-001")
print(f"\nseeded from img-001: nodes={sorted(session.graph.nodes)}")

for _ in range(3):
    if not session.graph.frontier:
        print("frontier exhausted")
        break
    node = sorted(session.graph.frontier)[0]
    session.expand_node(node)
    print(f"expanded {node}: now {len(session.graph.nodes)} nodes, "
          f"{len(session.graph.edges)} edges, frontier {sorted(session.graph.frontier)}")
