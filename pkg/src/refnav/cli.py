"""Command line entry point: validate, search, graph, and serve subcommands.

Every flag can also be set through an environment variable with the REFNAV_
prefix (e.g. REFNAV_CORPUS, REFNAV_PORT); explicit flags win.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from ._canon import canon_document
from .errors import EngineError, UnknownImage, UnknownTerm, WeightOutOfRange
from .navigation import SessionConfig, build_similarity_graph
from .service import load_engine
from .vsm import TermVector, rank, vectorize

ENV_PREFIX = "REFNAV_"


def _env(flag: str) -> Optional[str]:
    return os.environ.get(ENV_PREFIX + flag.replace("-", "_").upper())


def _add_corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", default=_env("corpus"), required=_env("corpus") is None,
                        help="path to the corpus JSONL file")
    parser.add_argument("--thesaurus", default=_env("thesaurus"),
                        required=_env("thesaurus") is None,
                        help="path to the thesaurus JSON file")


def _add_engine_args(parser: argparse.ArgumentParser) -> None:
    defaults = SessionConfig()
    parser.add_argument("--mosaic-size", type=int,
                        default=int(_env("mosaic-size") or defaults.mosaic_size))
    parser.add_argument("--graph-k", type=int,
                        default=int(_env("graph-k") or defaults.graph_k))
    parser.add_argument("--edge-threshold", type=float,
                        default=float(_env("edge-threshold") or defaults.edge_threshold))
    parser.add_argument("--graph-seed-count", type=int,
                        default=int(_env("graph-seed-count") or defaults.graph_seed_count))
    parser.add_argument("--alpha", type=float, default=float(_env("alpha") or defaults.alpha))
    parser.add_argument("--beta", type=float, default=float(_env("beta") or defaults.beta))
    parser.add_argument("--gamma", type=float, default=float(_env("gamma") or defaults.gamma))
    parser.add_argument("--use-idf", action="store_true",
                        default=(_env("use-idf") or "").lower() in ("1", "true", "yes"))


def _config_from(args: argparse.Namespace) -> SessionConfig:
    return SessionConfig(
        mosaic_size=args.mosaic_size,
        graph_k=args.graph_k,
        edge_threshold=args.edge_threshold,
        graph_seed_count=args.graph_seed_count,
        alpha=args.alpha,
        beta=args.beta,
        gamma=args.gamma,
        use_idf=args.use_idf,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refnav",
        description="Reference-image retrieval engine: indexing, ranking, graphs, service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="validate a corpus against a thesaurus")
    _add_corpus_args(p_index)

    p_search = sub.add_parser("search", help="rank corpus images against a query")
    _add_corpus_args(p_search)
    p_search.add_argument("--query-image", help="use this image's index as the query")
    p_search.add_argument("--term", action="append", default=[], metavar="TERM:WEIGHT",
                          help="explicit query term (weight 1..4); repeatable")
    p_search.add_argument("--restrict", action="append", default=[], metavar="CATEGORY",
                          help="restrict similarity to these categories; repeatable")
    p_search.add_argument("--top", type=int, default=10)

    p_graph = sub.add_parser("graph", help="emit the whole-corpus similarity graph")
    _add_corpus_args(p_graph)
    p_graph.add_argument("--threshold", type=float,
                         default=float(_env("edge-threshold") or 0.3))
    p_graph.add_argument("--k", type=int, default=int(_env("graph-k") or 8))
    p_graph.add_argument("--restrict", action="append", default=[], metavar="CATEGORY")
    p_graph.add_argument("--output", help="output file (default: stdout)")

    p_serve = sub.add_parser("serve", help="run the HTTP/JSON service")
    _add_corpus_args(p_serve)
    _add_engine_args(p_serve)
    p_serve.add_argument("--host", default=_env("host") or "127.0.0.1")
    p_serve.add_argument("--port", type=int, default=int(_env("port") or 8000))
    p_serve.add_argument("--albums-dir", default=_env("albums-dir"),
                         help="directory persisting albums across restarts")

    return parser


def _parse_query_terms(pairs: list[str], thesaurus) -> dict[str, float]:
    components = {}
    for pair in pairs:
        term, sep, raw_weight = pair.rpartition(":")
        if not sep:
            term, sep, raw_weight = pair.rpartition("=")
        if not sep:
            raise UnknownTerm(f"query term {pair!r} must be TERM:WEIGHT")
        try:
            weight = int(raw_weight)
        except ValueError:
            raise WeightOutOfRange(f"weight {raw_weight!r} is not an integer") from None
        if not 1 <= weight <= 4:
            raise WeightOutOfRange(
                f"term {term!r}: weight {weight} out of the 1..4 star range", term=term
            )
        if thesaurus.term(term) is None:
            raise UnknownTerm(f"unknown term {term!r}", term=term)
        components[term] = float(weight)
    return components


def cmd_index(args: argparse.Namespace) -> int:
    engine = load_engine(args.corpus, args.thesaurus)
    print(f"OK: {len(engine.corpus)} records valid against thesaurus "
          f"version {engine.thesaurus.version}")
    print(f"corpus checksum: {engine.corpus_checksum}")
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    engine = load_engine(args.corpus, args.thesaurus)
    restriction = args.restrict or None
    exclude: set[str] = set()
    if args.query_image:
        record = engine.corpus.get(args.query_image)
        if record is None:
            raise UnknownImage(f"no image {args.query_image!r} in corpus",
                               image=args.query_image)
        query = vectorize(record, engine.thesaurus, restriction=restriction)
        exclude = {args.query_image}
    elif args.term:
        components = _parse_query_terms(args.term, engine.thesaurus)
        query = TermVector(components,
                           scope=frozenset(restriction) if restriction else None)
    else:
        print("error: provide --query-image or at least one --term", file=sys.stderr)
        return 2
    ranked = rank(query, engine.corpus, engine.thesaurus,
                  restriction=restriction, exclude=exclude)
    for position, (image_id, score) in enumerate(ranked.entries[: args.top], start=1):
        print(f"{position:3d}  {score:.6f}  {image_id}")
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    engine = load_engine(args.corpus, args.thesaurus)
    graph = build_similarity_graph(
        engine.corpus, engine.thesaurus,
        restriction=args.restrict or None,
        edge_threshold=args.threshold, k=args.k,
    )
    doc = {
        "nodes": sorted(graph.nodes),
        "edges": [[u, v, s] for (u, v), s in sorted(graph.edges.items())],
    }
    text = canon_document(doc)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    engine = load_engine(args.corpus, args.thesaurus,
                         config=_config_from(args), albums_dir=args.albums_dir)
    app = create_app(engine)
    print(f"serving {len(engine.corpus)} images "
          f"(thesaurus {engine.thesaurus.version}) on {args.host}:{args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "index": cmd_index,
        "search": cmd_search,
        "graph": cmd_graph,
        "serve": cmd_serve,
    }[args.command]
    try:
        return handler(args)
    except EngineError as exc:
        print(f"error ({exc.code}): {exc.message}", file=sys.stderr)
        if exc.detail and "report" in exc.detail:
            for item in exc.detail["report"]:
                print(f"  - {item['message']}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
