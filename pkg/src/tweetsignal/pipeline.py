"""End-to-end analysis pipeline and its configuration.

``run_pipeline`` composes the modules in a fixed order (load, tokenize,
mine, daily support, moving averages, market alignment, cross-correlation,
Granger both ways) and returns one structured, deterministic report.
Statistical degeneracies in the correlation/causality stages are recorded
in the report instead of aborting it; data errors abort with a stage label.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from . import corpus as corpus_mod
from . import dynamics, inference, market, miner, tokenizer
from .errors import DataError, DegeneracyError, PipelineError, TweetSignalError

DEFAULT_MAX_LAG = 10


@dataclass
class AnalysisConfig:
    corpus_path: str
    stopwords_path: str | None = None
    market_paths: dict[str, str] = field(default_factory=dict)
    min_support: float = 0.01
    min_confidence: float = 0.5
    max_len: int = 4
    short_window: int = 5
    long_window: int = 20
    lag_order: int = 1
    align_mode: str = "drop"
    port: int = 8000

    def __post_init__(self):
        if not 0.0 <= self.min_support < 1.0:
            raise ValueError(f"min_support must be in [0, 1), got {self.min_support}")
        if not 0.0 <= self.min_confidence <= 1.0:
            raise ValueError(f"min_confidence must be in [0, 1], got {self.min_confidence}")
        if self.max_len < 1:
            raise ValueError(f"max_len must be >= 1, got {self.max_len}")
        if not 1 <= self.short_window < self.long_window:
            raise ValueError(
                f"need 1 <= short_window < long_window, got {self.short_window}, {self.long_window}"
            )
        if self.lag_order < 1:
            raise ValueError(f"lag_order must be >= 1, got {self.lag_order}")
        if self.align_mode not in ("drop", "roll_forward"):
            raise ValueError(f"align_mode must be drop or roll_forward, got {self.align_mode!r}")
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port must be in [1, 65535], got {self.port}")

    @classmethod
    def from_mapping(cls, raw: Mapping[str, str]) -> "AnalysisConfig":
        kwargs: dict = {}
        market_paths: dict[str, str] = {}
        for key, value in raw.items():
            if key.startswith("market."):
                market_paths[key[len("market.") :]] = value
            elif key in ("corpus_path", "stopwords_path", "align_mode"):
                kwargs[key] = value
            elif key in ("min_support", "min_confidence"):
                kwargs[key] = float(value)
            elif key in ("max_len", "short_window", "long_window", "lag_order", "port"):
                kwargs[key] = int(value)
            else:
                raise ValueError(f"unknown config key {key!r}")
        if "corpus_path" not in kwargs:
            raise ValueError("config is missing corpus_path")
        return cls(market_paths=market_paths, **kwargs)

    @classmethod
    def from_file(cls, path) -> "AnalysisConfig":
        """Parse the simple ``key=value`` config format ('#' comments allowed)."""
        path = Path(path)
        if not path.is_file():
            raise DataError(f"config file not found: {path}")
        raw: dict[str, str] = {}
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise DataError(f"{path.name} line {lineno}: expected key=value")
            key, _, value = text.partition("=")
            raw[key.strip()] = value.strip()
        try:
            return cls.from_mapping(raw)
        except ValueError as exc:
            raise DataError(f"{path.name}: {exc}") from exc

    def token_config(self) -> tokenizer.TokenConfig:
        if self.stopwords_path is None:
            return tokenizer.DEFAULT_CONFIG
        return tokenizer.TokenConfig(stopwords=tokenizer.load_stopwords(self.stopwords_path))


@dataclass
class AnalysisReport:
    body: dict

    def to_dict(self) -> dict:
        return self.body

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.body, sort_keys=True, indent=indent)


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except PipelineError:
        raise
    except TweetSignalError as exc:
        raise PipelineError(name, exc) from exc
    except ValueError as exc:
        raise PipelineError(name, exc) from exc


def _granger_dict(result: inference.GrangerResult) -> dict:
    return {
        "lag_order": result.lag_order,
        "f_stat": result.f_stat,
        "p_value": result.p_value,
        "df1": result.df1,
        "df2": result.df2,
        "rss_restricted": result.rss_restricted,
        "rss_unrestricted": result.rss_unrestricted,
        "stars": inference.significance_stars(result.p_value),
    }


def degeneracy_body(stage: str, exc: Exception) -> dict:
    return {"stage": stage, "code": "degeneracy", "message": str(exc)}


def run_pipeline(config: AnalysisConfig, itemset: miner.Itemset, symbol: str) -> AnalysisReport:
    if symbol not in config.market_paths:
        raise PipelineError("market", DataError(f"no market file configured for symbol {symbol!r}"))

    loaded = _stage("corpus", corpus_mod.load_corpus, config.corpus_path)
    token_config = _stage("tokenizer", config.token_config)
    transactions = _stage("tokenizer", tokenizer.to_transactions, loaded, token_config)
    mining = _stage(
        "miner", miner.mine_frequent, transactions, config.min_support, config.max_len
    )
    itemset_support, itemset_count = _stage("miner", miner.support, itemset, transactions)

    by_day = dynamics.group_by_day(transactions)
    series = _stage("dynamics", dynamics.support_series, by_day, itemset)
    ma_pair = _stage(
        "dynamics", dynamics.build_ma_pair, series.values(), config.short_window, config.long_window
    )
    signals = dynamics.crossover_signals(ma_pair)

    prices = _stage("market", market.load_ohlcv_csv, config.market_paths[symbol], symbol)
    closes = market.close_series(prices)
    aligned = _stage("dynamics", dynamics.align, series.values(), closes, config.align_mode)

    errors: dict[str, dict] = {}
    ccf_body = None
    granger_body = None
    if len(aligned) >= 2:
        support_values = [s for _, s, _ in aligned]
        close_values = [c for _, _, c in aligned]
        max_lag = min(DEFAULT_MAX_LAG, len(aligned) - 1)
        try:
            ccf_result = dynamics.ccf(support_values, close_values, max_lag)
            ccf_body = {"max_lag": max_lag, "lags": ccf_result.lags, "values": ccf_result.values}
        except DegeneracyError as exc:
            errors["ccf"] = degeneracy_body("ccf", exc)
        try:
            granger_body = {
                "support_to_price": _granger_dict(
                    inference.granger_test(close_values, support_values, config.lag_order)
                ),
                "price_to_support": _granger_dict(
                    inference.granger_test(support_values, close_values, config.lag_order)
                ),
            }
        except DegeneracyError as exc:
            errors["granger"] = degeneracy_body("granger", exc)
        except ValueError as exc:
            errors["granger"] = {"stage": "granger", "code": "invalid", "message": str(exc)}
    else:
        message = f"only {len(aligned)} aligned days; need at least 2"
        errors["ccf"] = {"stage": "ccf", "code": "too_short", "message": message}
        errors["granger"] = {"stage": "granger", "code": "too_short", "message": message}

    body = {
        "itemset": list(itemset.terms),
        "symbol": symbol,
        "corpus": {
            "tweets": len(loaded),
            "first_date": loaded.tweets[0].timestamp.date().isoformat() if loaded.tweets else None,
            "last_date": loaded.tweets[-1].timestamp.date().isoformat() if loaded.tweets else None,
            "digest": loaded.source_digest,
        },
        "mining": {
            "total_transactions": mining.total_transactions,
            "min_support": mining.min_support,
            "frequent_count": len(mining.frequent),
            "itemset_support": itemset_support,
            "itemset_count": itemset_count,
        },
        "series": {
            "points": [
                {"date": p.date.isoformat(), "support": p.support, "n_transactions": p.n_transactions}
                for p in series.points
            ]
        },
        "moving_averages": {
            "short_window": config.short_window,
            "long_window": config.long_window,
            "short": [{"date": d.isoformat(), "value": v} for d, v in ma_pair.short_ma],
            "long": [{"date": d.isoformat(), "value": v} for d, v in ma_pair.long_ma],
        },
        "signals": [{"date": d.isoformat(), "direction": s} for d, s in signals],
        "alignment": {"mode": config.align_mode, "days": len(aligned)},
        "ccf": ccf_body,
        "granger": granger_body,
        "errors": errors,
    }
    return AnalysisReport(body=body)
