"""Shared fixtures: a deterministic synthetic tweet corpus and OHLCV file.

The corpus is seeded so every run produces byte-identical files: ~60 days
of tweets whose {apple, stock} co-occurrence rate steps up halfway through,
and a matching weekday random-walk price series.
"""

import json
from datetime import date, datetime, timedelta, timezone
from pathlib import Path

import numpy as np
import pytest

from tweetsignal.pipeline import AnalysisConfig

N_DAYS = 60
START = date(2013, 1, 1)

AUTHORS = ["cnn", "wsj", "reuters", "bloomberg"]
FILLERS = [
    "analyst", "report", "trading", "price", "gains", "losses", "investors",
    "quarterly", "outlook", "tech", "shares", "earnings", "rally", "selloff",
    "futures", "nasdaq", "growth", "revenue", "china", "europe",
]
DECORATIONS = ["$AAPL", "#apple", "@cnn", "http://t.co/x1y2z3", "Apple's event!"]


def _tweet_text(rng, with_pair: bool) -> str:
    words = list(rng.choice(FILLERS, size=rng.integers(2, 6), replace=False))
    if with_pair:
        words += ["apple", "stock"]
        if rng.random() < 0.4:
            words.append("aapl")
        if rng.random() < 0.25:
            words.append(rng.choice(["iphone", "ipad"]))
    elif rng.random() < 0.3:
        words.append(rng.choice(["apple", "stock", "market", "aapl"]))
    rng.shuffle(words)
    if rng.random() < 0.3:
        words.insert(int(rng.integers(0, len(words) + 1)), str(rng.choice(DECORATIONS)))
    return " ".join(words)


def make_tweet_lines() -> list[str]:
    rng = np.random.default_rng(20130101)
    lines = []
    counter = 0
    for day_offset in range(N_DAYS):
        day = START + timedelta(days=day_offset)
        pair_rate = 0.15 if day_offset < N_DAYS // 2 else 0.55
        for _ in range(int(rng.integers(6, 13))):
            counter += 1
            stamp = datetime(
                day.year, day.month, day.day,
                int(rng.integers(0, 24)), int(rng.integers(0, 60)), int(rng.integers(0, 60)),
                tzinfo=timezone.utc,
            )
            record = {
                "id": f"t{counter:05d}",
                "created_at": stamp.isoformat().replace("+00:00", "Z"),
                "user": str(rng.choice(AUTHORS)),
                "text": _tweet_text(rng, rng.random() < pair_rate),
                "retweets": int(rng.integers(0, 50)),  # unknown field, must be ignored
            }
            lines.append(json.dumps(record))
    return lines


def make_ohlcv_rows() -> list[str]:
    rng = np.random.default_rng(450)
    rows = ["date,open,high,low,close,volume"]
    close = 450.0
    for day_offset in range(N_DAYS):
        day = START + timedelta(days=day_offset)
        if day.weekday() >= 5:
            continue
        open_ = close * float(np.exp(rng.normal(0, 0.005)))
        close = close * float(np.exp(rng.normal(0.0005, 0.02)))
        spread = abs(float(rng.normal(0, 0.004)))
        high = max(open_, close) * (1 + spread)
        low = min(open_, close) * (1 - spread)
        open_, high, low, c = (round(v, 2) for v in (open_, high, low, close))
        low = min(low, open_, c)
        high = max(high, open_, c)
        volume = int(rng.integers(5_000_000, 20_000_000))
        rows.append(f"{day.isoformat()},{open_},{high},{low},{c},{volume}")
    return rows


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("fixtures")
    (root / "tweets.jsonl").write_text("\n".join(make_tweet_lines()) + "\n", encoding="utf-8")
    (root / "aapl.csv").write_text("\n".join(make_ohlcv_rows()) + "\n", encoding="utf-8")
    (root / "analysis.cfg").write_text(
        "\n".join(
            [
                "# pipeline fixture config",
                f"corpus_path={root / 'tweets.jsonl'}",
                f"market.AAPL={root / 'aapl.csv'}",
                "min_support=0.05",
                "min_confidence=0.4",
                "max_len=3",
                "short_window=5",
                "long_window=20",
                "lag_order=1",
                "align_mode=drop",
                "port=8123",
            ]
        )
        + "\n",
        encoding="utf-8",
    )
    return root


@pytest.fixture(scope="session")
def analysis_config(data_dir) -> AnalysisConfig:
    return AnalysisConfig.from_file(data_dir / "analysis.cfg")
