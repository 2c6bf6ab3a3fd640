import json
import shutil

import pytest
from fastapi.testclient import TestClient

from tweetsignal import dynamics, inference, market, miner, tokenizer
from tweetsignal.corpus import load_jsonl
from tweetsignal.miner import Itemset
from tweetsignal.pipeline import AnalysisConfig
from tweetsignal.service import build_snapshot, create_app


@pytest.fixture(scope="module")
def client(analysis_config):
    app = create_app(analysis_config)
    with TestClient(app) as c:
        yield c


@pytest.fixture(scope="module")
def snapshot(analysis_config):
    return build_snapshot(analysis_config)


def test_terms_endpoint_matches_stats(client, snapshot):
    body = client.get("/api/terms", params={"limit": 50}).json()
    stats = tokenizer.term_stats(snapshot.transactions)
    expected = stats.top(50)
    assert body["terms"] == [
        {"term": t, "document_frequency": df, "occurrences": occ} for t, df, occ in expected
    ]
    assert len(body["terms"]) == min(50, len(stats.document_frequency))
    truncated = client.get("/api/terms", params={"limit": 5}).json()["terms"]
    assert len(truncated) == 5


def test_terms_ordering_contract(client):
    terms = client.get("/api/terms", params={"limit": 200}).json()["terms"]
    keys = [(-t["document_frequency"], t["term"]) for t in terms]
    assert keys == sorted(keys)


def test_associations_endpoint(client, snapshot):
    body = client.get("/api/associations", params={"term": "apple", "min_corr": 0.2}).json()
    expected = miner.term_associations(snapshot.transactions, "apple", 0.2)
    assert body["associations"] == [{"term": t, "correlation": c} for t, c in expected]
    assert any(entry["term"] == "stock" for entry in body["associations"])


def test_itemsets_endpoint(client, snapshot):
    body = client.get("/api/itemsets", params={"min_support": 0.1, "max_len": 2}).json()
    expected = miner.mine_frequent(snapshot.transactions, 0.1, 2)
    assert body["total_transactions"] == expected.total_transactions
    assert body["itemsets"] == [
        {"terms": list(fi.itemset.terms), "support": fi.support, "count": fi.count}
        for fi in expected.frequent
    ]


def test_rules_endpoint(client, snapshot):
    body = client.get("/api/rules", params={"min_confidence": 0.6}).json()
    mined = miner.mine_frequent(
        snapshot.transactions, snapshot.config.min_support, snapshot.config.max_len
    )
    expected = miner.generate_rules(mined, 0.6)
    assert len(body["rules"]) == len(expected)
    if expected:
        assert body["rules"][0]["confidence"] == expected[0].confidence


def test_series_endpoint(client, snapshot):
    body = client.get(
        "/api/series", params={"itemset": "apple,stock", "short": 3, "long": 8}
    ).json()
    series = dynamics.support_series(snapshot.by_day, Itemset.of(["apple", "stock"]))
    ma = dynamics.build_ma_pair(series.values(), 3, 8)
    assert [p["support"] for p in body["points"]] == [p.support for p in series.points]
    assert [m["value"] for m in body["short_ma"]] == [v for _, v in ma.short_ma]
    assert body["signals"] == [
        {"date": d.isoformat(), "direction": s}
        for d, s in dynamics.crossover_signals(ma)
    ]


def test_market_endpoint(client, snapshot):
    body = client.get("/api/market", params={"symbol": "AAPL"}).json()
    bars = snapshot.market["AAPL"].bars
    assert len(body["bars"]) == len(bars)
    assert body["bars"][0]["close"] == bars[0].close


def test_ccf_endpoint_matches_module(client, snapshot):
    body = client.get(
        "/api/ccf", params={"itemset": "apple,stock", "symbol": "AAPL", "max_lag": 5}
    ).json()
    series = dynamics.support_series(snapshot.by_day, Itemset.of(["apple", "stock"]))
    aligned = dynamics.align(series.values(), market.close_series(snapshot.market["AAPL"]))
    expected = dynamics.ccf([s for _, s, _ in aligned], [c for _, _, c in aligned], 5)
    assert body["lags"] == expected.lags
    assert body["values"] == expected.values


def test_granger_endpoint_matches_module(client, snapshot):
    body = client.get(
        "/api/granger", params={"itemset": "apple,stock", "symbol": "AAPL", "lag": 1}
    ).json()
    series = dynamics.support_series(snapshot.by_day, Itemset.of(["apple", "stock"]))
    aligned = dynamics.align(series.values(), market.close_series(snapshot.market["AAPL"]))
    supports = [s for _, s, _ in aligned]
    closes = [c for _, _, c in aligned]
    expected = inference.granger_test(closes, supports, 1)
    assert body["support_to_price"]["f_stat"] == expected.f_stat
    assert body["support_to_price"]["p_value"] == expected.p_value
    assert body["support_to_price"]["df1"] == expected.df1
    assert body["support_to_price"]["df2"] == expected.df2
    reverse = inference.granger_test(supports, closes, 1)
    assert body["price_to_support"]["f_stat"] == reverse.f_stat


def test_granger_returns_transform(client):
    body = client.get(
        "/api/granger",
        params={"itemset": "apple,stock", "symbol": "AAPL", "lag": 1, "transform": "returns"},
    ).json()
    assert body["transform"] == "returns"
    assert body["support_to_price"]["effect"] == "AAPL.ret"


def test_forecast_endpoint(client):
    body = client.get("/api/forecast", params={"symbol": "AAPL", "p": 1, "d": 1, "h": 6}).json()
    assert len(body["forecasts"]) == 6
    widths = [f["upper95"] - f["lower95"] for f in body["forecasts"]]
    assert all(b >= a - 1e-12 for a, b in zip(widths, widths[1:]))


def test_graph_endpoint(client):
    itemsets = client.get("/api/graph", params={"kind": "itemsets"}).json()
    assert itemsets["kind"] == "itemsets"
    assert {"nodes", "edges"} <= set(itemsets)
    rules = client.get("/api/graph", params={"kind": "rules"}).json()
    assert all(set(e) == {"from", "to"} for e in rules["edges"])


def test_invalid_parameters_are_400(client):
    for path, params in [
        ("/api/terms", {"limit": 0}),
        ("/api/terms", {"limit": "many"}),
        ("/api/series", {"itemset": " , "}),
        ("/api/series", {"itemset": "APPLE"}),
        ("/api/market", {"symbol": "MSFT"}),
        ("/api/graph", {"kind": "pie"}),
        ("/api/granger", {"itemset": "apple", "symbol": "AAPL", "transform": "sqrt"}),
        ("/api/associations", {"term": "notaword"}),
    ]:
        response = client.get(path, params=params)
        assert response.status_code == 400, (path, params, response.text)
        body = response.json()
        assert set(body) == {"stage", "code", "message"}


def test_degenerate_statistics_are_422(client):
    response = client.get("/api/ccf", params={"itemset": "zzzneverseen", "symbol": "AAPL"})
    assert response.status_code == 422
    body = response.json()
    assert body["stage"] == "ccf"
    assert body["code"] == "degeneracy"

    response = client.get("/api/granger", params={"itemset": "zzzneverseen", "symbol": "AAPL"})
    assert response.status_code == 422
    assert response.json()["stage"] == "granger"


def test_responses_byte_identical(client):
    first = client.get("/api/granger", params={"itemset": "apple,stock", "symbol": "AAPL"})
    second = client.get("/api/granger", params={"itemset": "apple,stock", "symbol": "AAPL"})
    assert first.content == second.content


def test_reload_swaps_snapshot(analysis_config, data_dir, tmp_path):
    corpus_copy = tmp_path / "tweets.jsonl"
    shutil.copy(data_dir / "tweets.jsonl", corpus_copy)
    config = AnalysisConfig(
        corpus_path=str(corpus_copy),
        market_paths=dict(analysis_config.market_paths),
        min_support=analysis_config.min_support,
    )
    app = create_app(config)
    with TestClient(app) as client:
        before = client.get("/api/terms", params={"limit": 5}).json()["total_transactions"]
        extra = {
            "id": "zz-extra",
            "created_at": "2013-03-05T10:00:00Z",
            "user": "cnn",
            "text": "apple stock extra tweet",
        }
        with corpus_copy.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(extra) + "\n")
        reloaded = client.post("/api/reload").json()
        assert reloaded["status"] == "ok"
        assert reloaded["tweets"] == before + 1
        after = client.get("/api/terms", params={"limit": 5}).json()["total_transactions"]
        assert after == before + 1


def test_reload_error_is_400(analysis_config, tmp_path):
    corpus_copy = tmp_path / "gone.jsonl"
    shutil.copy(analysis_config.corpus_path, corpus_copy)
    config = AnalysisConfig(
        corpus_path=str(corpus_copy), market_paths=dict(analysis_config.market_paths)
    )
    app = create_app(config)
    with TestClient(app) as client:
        corpus_copy.unlink()
        response = client.post("/api/reload")
        assert response.status_code == 400
        assert response.json()["code"] == "data_error"


def test_corpus_loaded_once_per_snapshot(analysis_config, data_dir):
    snap = build_snapshot(analysis_config)
    assert snap.corpus.source_digest == load_jsonl(data_dir / "tweets.jsonl").source_digest
    assert len(snap.transactions) == len(snap.corpus)
