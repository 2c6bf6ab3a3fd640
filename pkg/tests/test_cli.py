import json

import pytest

from tweetsignal.cli import EXIT_DATA, EXIT_DEGENERATE, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ingest_summary(capsys, data_dir):
    code, out, _ = run(capsys, "--config", str(data_dir / "analysis.cfg"), "ingest")
    assert code == EXIT_OK
    body = json.loads(out)
    assert body["tweets"] == body["transactions"]
    assert body["symbols"] == ["AAPL"]
    assert body["days"] == 60


def test_mine_with_rules(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "--config", str(data_dir / "analysis.cfg"),
        "mine", "--min-support", "0.1", "--rules", "--min-confidence", "0.5",
    )
    assert code == EXIT_OK
    body = json.loads(out)
    assert body["min_support"] == 0.1
    assert all(rule["confidence"] >= 0.5 for rule in body["rules"])


def test_series_csv_export(capsys, data_dir, tmp_path):
    out_csv = tmp_path / "series.csv"
    code, out, _ = run(
        capsys,
        "--config", str(data_dir / "analysis.cfg"),
        "series", "--itemset", "apple,stock", "--csv", str(out_csv),
    )
    assert code == EXIT_OK
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "date,value"
    assert len(lines) == len(json.loads(out)["points"]) + 1


def test_granger_text_report(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "--config", str(data_dir / "analysis.cfg"),
        "granger", "--itemset", "apple,stock", "--symbol", "AAPL",
    )
    assert code == EXIT_OK
    assert out.count("Granger causality test") == 2
    assert "Model 1: AAPL ~ Lags(AAPL, 1:1) + Lags(supp_apple_stock, 1:1)" in out
    assert "Signif. codes:  0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1 ' ' 1" in out
    assert "Res.Df Df" in out


def test_granger_json(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "--config", str(data_dir / "analysis.cfg"),
        "granger", "--itemset", "apple,stock", "--symbol", "AAPL", "--json",
    )
    assert code == EXIT_OK
    body = json.loads(out)
    assert {"support_to_price", "price_to_support"} <= set(body)


def test_ccf_command(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "--config", str(data_dir / "analysis.cfg"),
        "ccf", "--itemset", "apple,stock", "--symbol", "AAPL", "--max-lag", "4",
    )
    assert code == EXIT_OK
    body = json.loads(out)
    assert body["lags"] == list(range(-4, 5))


def test_forecast_command(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "--config", str(data_dir / "analysis.cfg"),
        "forecast", "--symbol", "AAPL", "-p", "1", "-d", "1", "--horizon", "3",
    )
    assert code == EXIT_OK
    assert len(json.loads(out)["forecasts"]) == 3


def test_graph_dot_output(capsys, data_dir):
    code, out, _ = run(
        capsys, "--config", str(data_dir / "analysis.cfg"), "graph", "--kind", "itemsets",
        "--format", "dot",
    )
    assert code == EXIT_OK
    assert out.startswith("digraph")


def test_usage_error_without_corpus(capsys):
    code, _, err = run(capsys, "ingest")
    assert code == EXIT_USAGE
    assert "corpus" in err


def test_usage_error_unknown_command(capsys):
    assert main(["frobnicate"]) == EXIT_USAGE


def test_usage_error_bad_market_spec(capsys, data_dir):
    code, _, err = run(
        capsys, "--corpus", str(data_dir / "tweets.jsonl"), "--market", "AAPL", "ingest"
    )
    assert code == EXIT_USAGE
    assert "SYMBOL=PATH" in err


def test_data_error_missing_corpus(capsys, tmp_path):
    code, _, err = run(capsys, "--corpus", str(tmp_path / "missing.jsonl"), "ingest")
    assert code == EXIT_DATA
    assert "not found" in err


def test_degeneracy_exit_code(capsys, data_dir):
    code, _, err = run(
        capsys,
        "--config", str(data_dir / "analysis.cfg"),
        "ccf", "--itemset", "zzzneverseen", "--symbol", "AAPL",
    )
    assert code == EXIT_DEGENERATE
    assert "zero variance" in err


def test_unknown_symbol_is_usage_error(capsys, data_dir):
    code, _, err = run(
        capsys,
        "--config", str(data_dir / "analysis.cfg"),
        "ccf", "--itemset", "apple", "--symbol", "MSFT",
    )
    assert code == EXIT_USAGE
    assert "unknown symbol" in err
