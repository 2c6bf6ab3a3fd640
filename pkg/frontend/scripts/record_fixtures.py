#!/usr/bin/env python3
"""Record API response fixtures for the workbench test suite.

Runs the real service in-process against the deterministic test corpus and
saves response bodies under frontend/tests/fixtures/.  Two fixtures are
synthesized rather than recorded: granger_paper.json carries the classic
published F/p pairs the star-rendering test pins, and the flat forecast
comes from a constant-price series (sigma2 = 0).

Run from the repository root:  python3 frontend/scripts/record_fixtures.py
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(ROOT / "tests"))

from conftest import make_ohlcv_rows, make_tweet_lines  # noqa: E402

from tweetsignal.pipeline import AnalysisConfig  # noqa: E402
from tweetsignal.service import create_app  # noqa: E402

FIXTURES = ROOT / "frontend" / "tests" / "fixtures"


def flat_rows(n_days: int = 40) -> list[str]:
    from datetime import date, timedelta

    rows = ["date,open,high,low,close,volume"]
    day = date(2013, 1, 1)
    added = 0
    while added < n_days:
        if day.weekday() < 5:
            rows.append(f"{day.isoformat()},100.0,100.0,100.0,100.0,1000")
            added += 1
        day += timedelta(days=1)
    return rows


def main() -> None:
    workdir = ROOT / "frontend" / "tests" / ".recording"
    workdir.mkdir(parents=True, exist_ok=True)
    (workdir / "tweets.jsonl").write_text("\n".join(make_tweet_lines()) + "\n")
    (workdir / "aapl.csv").write_text("\n".join(make_ohlcv_rows()) + "\n")
    (workdir / "flat.csv").write_text("\n".join(flat_rows()) + "\n")

    config = AnalysisConfig(
        corpus_path=str(workdir / "tweets.jsonl"),
        market_paths={"AAPL": str(workdir / "aapl.csv"), "FLAT": str(workdir / "flat.csv")},
        min_support=0.05,
        min_confidence=0.4,
        max_len=3,
    )
    FIXTURES.mkdir(parents=True, exist_ok=True)

    recordings = {
        "terms.json": ("/api/terms", {"limit": 100}),
        "associations_apple.json": ("/api/associations", {"term": "apple", "min_corr": 0.1}),
        # windows 10/30 give exactly one crossover signal on this corpus
        "series_single_signal.json": (
            "/api/series",
            {"itemset": "apple,stock", "short": 10, "long": 30},
        ),
        "market_aapl.json": ("/api/market", {"symbol": "AAPL"}),
        "ccf.json": ("/api/ccf", {"itemset": "apple,stock", "symbol": "AAPL", "max_lag": 8}),
        "granger_real.json": ("/api/granger", {"itemset": "apple,stock", "symbol": "AAPL", "lag": 1}),
        "forecast.json": ("/api/forecast", {"symbol": "AAPL", "p": 1, "d": 1, "h": 8}),
        "forecast_flat.json": ("/api/forecast", {"symbol": "FLAT", "p": 0, "d": 1, "h": 6}),
        "graph_itemsets.json": ("/api/graph", {"kind": "itemsets"}),
        "graph_rules.json": ("/api/graph", {"kind": "rules"}),
    }

    with TestClient(create_app(config)) as client:
        for name, (path, params) in recordings.items():
            response = client.get(path, params=params)
            response.raise_for_status()
            (FIXTURES / name).write_text(json.dumps(response.json(), indent=2, sort_keys=True) + "\n")
            print(f"recorded {name}")

        degenerate = client.get("/api/ccf", params={"itemset": "zzzneverseen", "symbol": "AAPL"})
        assert degenerate.status_code == 422
        (FIXTURES / "error_ccf_degenerate.json").write_text(
            json.dumps({"status": 422, "body": degenerate.json()}, indent=2, sort_keys=True) + "\n"
        )
        print("recorded error_ccf_degenerate.json")

        series = json.loads((FIXTURES / "series_single_signal.json").read_text())
        assert len(series["signals"]) == 1, f"expected 1 signal, got {series['signals']}"

        # published-values fixture: real schema, classic F/p pairs
        real = json.loads((FIXTURES / "granger_real.json").read_text())
        paper = json.loads(json.dumps(real))
        paper["support_to_price"].update(
            f_stat=10.0509, p_value=0.0021034, df1=1, df2=87, stars="**"
        )
        paper["price_to_support"].update(
            f_stat=0.3261, p_value=0.5694, df1=1, df2=87, stars=""
        )
        (FIXTURES / "granger_paper.json").write_text(
            json.dumps(paper, indent=2, sort_keys=True) + "\n"
        )
        print("recorded granger_paper.json (synthesized values on real schema)")


if __name__ == "__main__":
    main()
