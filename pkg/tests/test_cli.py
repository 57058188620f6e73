import json

import pytest

from refnav.catalog import dump_record
from refnav.cli import main
from refnav.thesaurus import dump_thesaurus

from conftest import make_record, make_thesaurus_doc


@pytest.fixture
def paths(tmp_path, thesaurus):
    th_path = tmp_path / "thesaurus.json"
    th_path.write_text(dump_thesaurus(thesaurus), encoding="utf-8")
    records = [
        make_record("img-a", [("c0.t0", 4), ("c1.t1", 2)]),
        make_record("img-b", [("c0.t0", 2), ("c1.t1", 1)]),  # scaled twin of img-a
        make_record("img-c", [("c2.t2", 3)]),
    ]
    corpus_path = tmp_path / "corpus.jsonl"
    corpus_path.write_text("".join(dump_record(r) + "\n" for r in records), encoding="utf-8")
    return str(corpus_path), str(th_path)


def test_index_ok(paths, capsys):
    corpus, thesaurus = paths
    assert main(["index", "--corpus", corpus, "--thesaurus", thesaurus]) == 0
    out = capsys.readouterr().out
    assert "OK: 3 records" in out
    assert "checksum" in out


def test_index_rejects_bad_weight(tmp_path, paths, capsys):
    corpus, thesaurus = paths
    bad = tmp_path / "bad.jsonl"
    bad.write_text(dump_record(make_record("img-x", [("c0.t0", 5)])) + "\n", encoding="utf-8")
    assert main(["index", "--corpus", str(bad), "--thesaurus", thesaurus]) == 1
    err = capsys.readouterr().err
    assert "weight_out_of_range" in err
    assert "img-x" in err


def test_search_query_image_finds_twin(paths, capsys):
    corpus, thesaurus = paths
    assert main(["search", "--corpus", corpus, "--thesaurus", thesaurus,
                 "--query-image", "img-a"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split() == ["1", "1.000000", "img-b"]


def test_search_explicit_terms(paths, capsys):
    corpus, thesaurus = paths
    assert main(["search", "--corpus", corpus, "--thesaurus", thesaurus,
                 "--term", "c2.t2:3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split()[2] == "img-c"


def test_search_weight_out_of_star_range(paths, capsys):
    corpus, thesaurus = paths
    assert main(["search", "--corpus", corpus, "--thesaurus", thesaurus,
                 "--term", "c0.t0:7"]) == 1
    assert "weight_out_of_range" in capsys.readouterr().err


def test_search_unknown_term(paths, capsys):
    corpus, thesaurus = paths
    assert main(["search", "--corpus", corpus, "--thesaurus", thesaurus,
                 "--term", "t.ghost:2"]) == 1
    assert "unknown_term" in capsys.readouterr().err


def test_graph_threshold_one_no_edges(tmp_path, paths, capsys):
    corpus, thesaurus = paths
    # remove the scaled twin so no pair reaches similarity 1.0
    lines = [l for l in open(corpus, encoding="utf-8") if '"img-b"' not in l]
    nodup = tmp_path / "nodup.jsonl"
    nodup.write_text("".join(lines), encoding="utf-8")
    out_file = tmp_path / "graph.json"
    assert main(["graph", "--corpus", str(nodup), "--thesaurus", thesaurus,
                 "--threshold", "1.0", "--output", str(out_file)]) == 0
    doc = json.loads(out_file.read_text(encoding="utf-8"))
    assert doc["edges"] == []
    assert sorted(doc["nodes"]) == ["img-a", "img-c"]


def test_graph_to_stdout(paths, capsys):
    corpus, thesaurus = paths
    assert main(["graph", "--corpus", corpus, "--thesaurus", thesaurus,
                 "--threshold", "0.9"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert ["img-a", "img-b"] in [e[:2] for e in doc["edges"]]


def test_env_var_defaults(paths, capsys, monkeypatch):
    corpus, thesaurus = paths
    monkeypatch.setenv("REFNAV_CORPUS", corpus)
    monkeypatch.setenv("REFNAV_THESAURUS", thesaurus)
    assert main(["index"]) == 0
    assert "OK: 3 records" in capsys.readouterr().out


def test_shipped_sample_data(capsys):
    from pathlib import Path

    root = Path(__file__).resolve().parent.parent
    assert main(["index", "--corpus", str(root / "data/sample_corpus.jsonl"),
                 "--thesaurus", str(root / "data/thesaurus.json")]) == 0
    assert "OK: 30 records" in capsys.readouterr().out
