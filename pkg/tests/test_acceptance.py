"""Acceptance suite: one test per release criterion, each printing a
pass/fail line. Run with `pytest tests/test_acceptance.py -v -s`.

All numeric checks use absolute tolerance 1e-12; order checks are exact.
"""

import json
import random
import time

import pytest

from refnav.catalog import dump_corpus, ingest_corpus
from refnav.errors import CategoryCountViolation, WeightOutOfRange
from refnav.navigation import (
    AlbumStore,
    Judgment,
    SessionConfig,
    build_similarity_graph,
    dump_album,
    dump_session,
    parse_album,
    restore_session,
)
from refnav.thesaurus import dump_thesaurus, load_thesaurus
from refnav.vsm import TermVector, rank, reformulate_query, similarity, vectorize

from conftest import (
    make_corpus,
    make_record,
    make_session,
    make_thesaurus_doc,
    random_corpus,
    raw_vectors,
)
from oracles import (
    oracle_centroid,
    oracle_cosine,
    oracle_graph_edges,
    oracle_rank,
)

TOL = 1e-12

P, N = Judgment.POSITIVE, Judgment.NEGATIVE


def report(name, ok=True):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name}")


def random_sparse(rng, max_terms=20):
    terms = rng.sample([f"t{i}" for i in range(40)], rng.randint(1, max_terms))
    return {t: rng.uniform(0.01, 10.0) for t in terms}


def test_similarity_oracle_equivalence():
    """1,000 random sparse pairs: cosine equals the brute-force oracle."""
    rng = random.Random(1001)
    start = time.monotonic()
    for _ in range(1000):
        a, b = random_sparse(rng), random_sparse(rng)
        va, vb = TermVector(a), TermVector(b)
        want = min(oracle_cosine(a, b), 1.0)
        got = similarity(va, vb)
        assert abs(got - want) <= TOL
        assert abs(got - similarity(vb, va)) <= TOL
        assert abs(similarity(va, va) - 1.0) <= TOL
        assert abs(similarity(vb, vb) - 1.0) <= TOL
    elapsed = time.monotonic() - start
    assert elapsed < 5.0
    report(f"similarity oracle equivalence (1000 pairs, {elapsed:.2f}s)")


def test_ranking_equivalence(thesaurus):
    """20 corpora x 50 images x 10 queries: rank() order equals the oracle."""
    start = time.monotonic()
    for seed in range(20):
        rng = random.Random(2000 + seed)
        corpus = random_corpus(thesaurus, 50, rng)
        images = raw_vectors(corpus)
        for image_id in rng.sample(list(corpus.records), 10):
            query = vectorize(corpus.records[image_id], thesaurus)
            engine = rank(query, corpus, thesaurus)
            expected = oracle_rank(images[image_id], images)
            assert engine.ids == [i for i, _ in expected]
    elapsed = time.monotonic() - start
    assert elapsed < 10.0
    report(f"ranking equivalence (20x50x10, {elapsed:.2f}s)")


def test_normative_bounds(thesaurus):
    """Star weights outside 1..4 and category counts other than 7 are rejected."""
    rejected = 0
    fixtures = 0
    for weight in (0, 5):
        fixtures += 1
        line = json.dumps({
            "id": "img-bad", "uri": "mem://x", "info": {},
            "index": [{"term": "c0.t0", "weight": weight}],
        }) + "\n"
        with pytest.raises(WeightOutOfRange):
            ingest_corpus(line, thesaurus)
        rejected += 1
    for count in (6, 8):
        fixtures += 1
        with pytest.raises(CategoryCountViolation):
            load_thesaurus(json.dumps(make_thesaurus_doc(n_categories=count)))
        rejected += 1
    assert rejected == fixtures
    report(f"normative bounds ({rejected}/{fixtures} violation fixtures rejected)")


def test_transition_closure(thesaurus):
    """One scripted session exercises all eleven transitions with invariants
    held after every step, plus the b = g.a identity and an album round-trip."""
    from test_navigation import assert_invariants

    start = time.monotonic()
    corpus = random_corpus(thesaurus, 40, random.Random(404))
    store = AlbumStore()
    s = make_session(corpus, thesaurus, albums=store)

    s.rank_from_image("img-000"); assert_invariants(s)              # a
    s.mosaic_from_ranked(); assert_invariants(s)                    # g
    s.set_mosaic_judgments({s.mosaic.tiles[0]: P, s.mosaic.tiles[1]: N})
    s.fold_mosaic_judgments(); assert_invariants(s)                 # f
    s.graph_from("groups"); assert_invariants(s)                    # h
    s.expand_node(sorted(s.graph.nodes)[0]); assert_invariants(s)   # d
    extra = sorted(s.graph.nodes - s.judged_history)[0]
    s.judge("graph", {extra: P}); assert_invariants(s)              # e
    album = s.album_from("groups", "closure", "scripted"); assert_invariants(s)  # i
    s.search_from_album(album.id); assert_invariants(s)             # j
    s.mosaic_from_image("img-020"); assert_invariants(s)            # b
    s.set_mosaic_judgments({s.mosaic.tiles[0]: P})
    s.next_mosaic(); assert_invariants(s)                           # k
    s.graph_from_image("img-030"); assert_invariants(s)             # c

    letters = [l for l, _ in s.transition_log]
    assert letters == list("agfhdeijbkc")
    assert set(letters) == set("abcdefghijk")

    # compositional identity: b = g after a
    via_b = make_session(corpus, thesaurus).mosaic_from_image("img-005")
    via_ag = make_session(corpus, thesaurus).rank_from_image("img-005").mosaic_from_ranked()
    assert via_b.mosaic.tiles == via_ag.mosaic.tiles

    # i1 -> j round-trip: album {X} searches like ranking from X,
    # once each side's excluded ids are removed from the other
    x = "img-010"
    s1 = make_session(corpus, thesaurus, albums=store)
    s1.rank_from_image("img-000")
    if x not in s1.ranked.ids:
        s1.rank_from_image("img-001")
    s1.judge("ranked", {x: P})
    solo = s1.album_from("groups", "just x")
    s2 = make_session(corpus, thesaurus, albums=store)
    s2.search_from_album(solo.id)
    s3 = make_session(corpus, thesaurus)
    s3.rank_from_image(x)
    assert s2.ranked.ids == s3.ranked.ids

    elapsed = time.monotonic() - start
    assert elapsed < 5.0
    report(f"transition closure a..k ({elapsed:.2f}s)")


def planted_cluster_corpus(thesaurus, rng):
    """100 images: 50 scaled copies of a 3-term target cluster, a bridge seed
    leaning toward two lure terms, 8 lures on those terms, 41 far noise."""
    cluster_terms = ["c0.t0", "c0.t1", "c1.t0"]
    lure_terms = ["c5.t0", "c5.t1"]
    far_terms = sorted(
        t for t in thesaurus.term_ids if t not in cluster_terms + lure_terms
    )
    records = []
    for i in range(50):
        base = [2, 1, 1] if i % 2 else [4, 2, 2]  # collinear weight patterns
        records.append(make_record(
            f"target-{i:02d}", list(zip(cluster_terms, base))))
    records.append(make_record(
        "bridge-00", [("c0.t0", 2), (lure_terms[0], 4), (lure_terms[1], 4)]))
    for i in range(8):
        records.append(make_record(
            f"noise-lure-{i:02d}", [(lure_terms[0], 4), (lure_terms[1], 4)]))
    for i in range(41):
        picked = sorted(rng.sample(far_terms, rng.randint(3, 5)))
        records.append(make_record(
            f"noise-far-{i:02d}", [(t, rng.randint(1, 4)) for t in picked]))
    centroid = oracle_centroid(
        [{t: float(w) for t, w in zip(cluster_terms, [4, 2, 2])}])
    return make_corpus(records), centroid


def test_feedback_behavior(thesaurus):
    """Positive-only reformulation is collinear with the centroid, and k-rounds
    on a planted cluster pull mosaic tiles monotonically toward it."""
    rng = random.Random(777)
    for _ in range(25):
        positives = [TermVector(random_sparse(rng, max_terms=8)) for _ in range(rng.randint(1, 5))]
        query = reformulate_query(None, positives, [])
        want = oracle_centroid([dict(p.components) for p in positives])
        assert abs(similarity(query, TermVector(want)) - 1.0) <= TOL

    corpus, target_centroid = planted_cluster_corpus(thesaurus, rng)
    images = raw_vectors(corpus)
    s = make_session(corpus, thesaurus)
    s.mosaic_from_image("bridge-00")

    def mean_tile_similarity():
        scores = [oracle_cosine(images[t], target_centroid) for t in s.mosaic.tiles]
        return sum(scores) / len(scores)

    means = [mean_tile_similarity()]
    for _ in range(3):
        marks = {t: (P if t.startswith("target-") else N) for t in s.mosaic.tiles}
        s.set_mosaic_judgments(marks)
        s.next_mosaic()
        means.append(mean_tile_similarity())
    for earlier, later in zip(means, means[1:]):
        assert later >= earlier - TOL
    report(f"feedback behavior (round means: {', '.join(f'{m:.4f}' for m in means)})")


def test_graph_oracle(thesaurus):
    """Whole-corpus graph on 30 images equals the all-pairs oracle exactly."""
    corpus = random_corpus(thesaurus, 30, random.Random(606))
    graph = build_similarity_graph(corpus, thesaurus, edge_threshold=0.3, k=8)
    expected = oracle_graph_edges(raw_vectors(corpus), k=8, threshold=0.3)
    assert set(graph.edges) == set(expected)
    for key, want in expected.items():
        assert abs(graph.edges[key] - want) <= TOL
    report(f"graph oracle equivalence ({len(expected)} edges)")


def test_round_trips(thesaurus, tmp_path):
    """Thesaurus, corpus, album, and session snapshot files survive
    serialize -> parse -> serialize byte-identically."""
    th_text = dump_thesaurus(thesaurus)
    assert dump_thesaurus(load_thesaurus(th_text)) == th_text

    corpus = random_corpus(thesaurus, 20, random.Random(505))
    corpus_text = dump_corpus(corpus)
    assert dump_corpus(ingest_corpus(corpus_text, thesaurus)) == corpus_text

    store = AlbumStore(tmp_path)
    s = make_session(corpus, thesaurus, albums=store, restriction={"c0", "c1", "c2"})
    s.mosaic_from_image("img-000")
    s.set_mosaic_judgments({s.mosaic.tiles[0]: P})
    s.next_mosaic()
    s.graph_from("mosaic")
    album = s.album_from("mosaic", "round trip", "archive")

    album_text = (tmp_path / f"{album.id}.json").read_text(encoding="utf-8")
    assert dump_album(parse_album(album_text)) == album_text

    session_text = dump_session(s)
    assert dump_session(restore_session(session_text, corpus, thesaurus, store)) == session_text
    report("round-trips byte-identical (thesaurus, corpus, album, session)")
