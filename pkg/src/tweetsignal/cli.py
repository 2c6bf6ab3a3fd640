"""Command-line pipeline runner.

Subcommands: ingest, mine, series, ccf, granger, forecast, graph, serve.
All numeric output is produced by the same body functions the HTTP service
uses, so both report identical numbers for identical inputs.

Exit codes: 0 success, 2 usage error, 3 data error, 4 statistical degeneracy.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import date

from . import service
from .dynamics import write_series_csv
from .errors import DataError, DegeneracyError, PipelineError, TweetSignalError
from .inference import render_granger_report
from .miner import Graph, GraphEdge, GraphNode
from .pipeline import AnalysisConfig

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_DEGENERATE = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tweetsignal",
        description="Mine keyword itemsets from tweet files and test them against stock series.",
    )
    parser.add_argument("--config", help="key=value config file", default=None)
    parser.add_argument("--corpus", help="tweet file (JSONL, or CSV fallback)", default=None)
    parser.add_argument("--stopwords", help="stopword file override", default=None)
    parser.add_argument(
        "--market",
        action="append",
        default=[],
        metavar="SYMBOL=PATH",
        help="OHLCV csv for a symbol (repeatable)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("ingest", help="load the corpus and print a summary")

    p_mine = sub.add_parser("mine", help="frequent itemsets and association rules")
    p_mine.add_argument("--min-support", type=float, default=None)
    p_mine.add_argument("--max-len", type=int, default=None)
    p_mine.add_argument("--min-confidence", type=float, default=None)
    p_mine.add_argument("--rules", action="store_true", help="also emit association rules")

    p_series = sub.add_parser("series", help="daily support series with moving averages")
    p_series.add_argument("--itemset", required=True, help="comma-separated lowercase terms")
    p_series.add_argument("--short", type=int, default=None)
    p_series.add_argument("--long", type=int, default=None)
    p_series.add_argument("--csv", default=None, help="also write date,value CSV here")

    p_ccf = sub.add_parser("ccf", help="cross-correlation of itemset support vs close price")
    p_ccf.add_argument("--itemset", required=True)
    p_ccf.add_argument("--symbol", required=True)
    p_ccf.add_argument("--max-lag", type=int, default=None)

    p_granger = sub.add_parser("granger", help="Granger causality test, both directions")
    p_granger.add_argument("--itemset", required=True)
    p_granger.add_argument("--symbol", required=True)
    p_granger.add_argument("--lag", type=int, default=None)
    p_granger.add_argument("--transform", choices=("price", "returns"), default="price")
    p_granger.add_argument("--json", action="store_true", help="JSON body instead of text report")

    p_fc = sub.add_parser("forecast", help="autoregressive close-price forecast")
    p_fc.add_argument("--symbol", required=True)
    p_fc.add_argument("-p", type=int, default=1, help="autoregressive order")
    p_fc.add_argument("-d", type=int, default=1, help="differencing order")
    p_fc.add_argument("--horizon", type=int, default=10)

    p_graph = sub.add_parser("graph", help="itemset or rule graph export")
    p_graph.add_argument("--kind", choices=("itemsets", "rules"), required=True)
    p_graph.add_argument("--format", choices=("json", "dot"), default="json")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--static", default=None, help="directory with the built workbench UI")

    return parser


def _load_config(args) -> AnalysisConfig:
    if args.config:
        config = AnalysisConfig.from_file(args.config)
    else:
        if not args.corpus:
            raise UsageError("either --config or --corpus is required")
        config = AnalysisConfig(corpus_path=args.corpus)
    if args.corpus:
        config.corpus_path = args.corpus
    if args.stopwords:
        config.stopwords_path = args.stopwords
    for item in args.market:
        symbol, sep, path = item.partition("=")
        if not sep or not symbol or not path:
            raise UsageError(f"--market expects SYMBOL=PATH, got {item!r}")
        config.market_paths[symbol] = path
    return config


class UsageError(Exception):
    pass


def _emit(body: dict) -> None:
    print(json.dumps(body, sort_keys=True, indent=2))


def _run(args) -> int:
    config = _load_config(args)

    if args.command == "serve":
        if args.port is not None:
            config.port = args.port
        service.serve(config, static_dir=args.static)
        return EXIT_OK

    snap = service.build_snapshot(config)

    if args.command == "ingest":
        first = snap.corpus.tweets[0].timestamp.isoformat() if snap.corpus.tweets else None
        last = snap.corpus.tweets[-1].timestamp.isoformat() if snap.corpus.tweets else None
        _emit(
            {
                "tweets": len(snap.corpus),
                "transactions": len(snap.transactions),
                "days": len(snap.by_day),
                "distinct_terms": len(snap.stats.document_frequency),
                "first_timestamp": first,
                "last_timestamp": last,
                "digest": snap.corpus.source_digest,
                "symbols": sorted(snap.market),
            }
        )
    elif args.command == "mine":
        body = service.itemsets_body(snap, args.min_support, args.max_len)
        if args.rules:
            body["rules"] = service.rules_body(
                snap, args.min_confidence, args.min_support, args.max_len
            )["rules"]
        _emit(body)
    elif args.command == "series":
        body = service.series_body(
            snap, service.parse_itemset(args.itemset), args.short, args.long
        )
        if args.csv:
            with open(args.csv, "w", encoding="utf-8") as fh:
                write_series_csv(
                    fh,
                    [(date.fromisoformat(p["date"]), p["support"]) for p in body["points"]],
                )
        _emit(body)
    elif args.command == "ccf":
        _emit(service.ccf_body(snap, service.parse_itemset(args.itemset), args.symbol, args.max_lag))
    elif args.command == "granger":
        if args.json:
            _emit(
                service.granger_body(
                    snap, service.parse_itemset(args.itemset), args.symbol, args.lag, args.transform
                )
            )
        else:
            s2p, p2s, price_name, support_name = service.granger_results(
                snap, service.parse_itemset(args.itemset), args.symbol, args.lag, args.transform
            )
            print(f"test 1: does {support_name} drive {price_name}?")
            print()
            print(render_granger_report(s2p, effect_name=price_name, cause_name=support_name))
            print()
            print(f"test 2: does {price_name} drive {support_name}?")
            print()
            print(render_granger_report(p2s, effect_name=support_name, cause_name=price_name))
    elif args.command == "forecast":
        _emit(service.forecast_body(snap, args.symbol, args.p, args.d, args.horizon))
    elif args.command == "graph":
        body = service.graph_body(snap, args.kind)
        if args.format == "dot":
            graph = Graph(
                nodes=[GraphNode(n["id"], n["kind"], n["attrs"]) for n in body["nodes"]],
                edges=[GraphEdge(e["from"], e["to"]) for e in body["edges"]],
            )
            print(graph.to_dot())
        else:
            _emit(body)
    else:  # pragma: no cover - argparse enforces the choice set
        raise UsageError(f"unknown command {args.command!r}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegeneracyError as exc:
        print(f"degenerate statistics: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except PipelineError as exc:
        inner = exc.cause
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE if isinstance(inner, DegeneracyError) else EXIT_DATA
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except TweetSignalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def console_entry() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())
