"""HTTP service exposing every analysis to the browser workbench.

All numeric work lives in the ``*_body`` functions, which take an immutable
:class:`Snapshot`; the CLI calls the same functions, so both front doors
produce identical numbers.  ``POST /api/reload`` rebuilds the snapshot from
the configured files and swaps it atomically; in-flight requests keep the
snapshot reference they started with.

Errors use one structured shape ``{stage, code, message}``: HTTP 400 for
invalid parameters or broken input files, 422 for statistical degeneracies
(zero variance, rank-deficient regressions).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import date

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import corpus as corpus_mod
from . import dynamics, inference, market, miner, tokenizer
from .errors import DataError, DegeneracyError
from .pipeline import AnalysisConfig, DEFAULT_MAX_LAG


@dataclass
class Snapshot:
    config: AnalysisConfig
    corpus: corpus_mod.Corpus
    transactions: list[tokenizer.Transaction]
    by_day: dict[date, list[tokenizer.Transaction]]
    stats: tokenizer.TermStats
    market: dict[str, market.PriceSeries]


def build_snapshot(config: AnalysisConfig) -> Snapshot:
    loaded = corpus_mod.load_corpus(config.corpus_path)
    transactions = tokenizer.to_transactions(loaded, config.token_config())
    return Snapshot(
        config=config,
        corpus=loaded,
        transactions=transactions,
        by_day=dynamics.group_by_day(transactions),
        stats=tokenizer.term_stats(transactions),
        market={
            symbol: market.load_ohlcv_csv(path, symbol)
            for symbol, path in sorted(config.market_paths.items())
        },
    )


class SnapshotHolder:
    """Atomic snapshot swap: readers grab ``current`` once and never block."""

    def __init__(self, config: AnalysisConfig):
        self._config = config
        self._lock = threading.Lock()
        self._snapshot = build_snapshot(config)

    @property
    def current(self) -> Snapshot:
        return self._snapshot

    def reload(self) -> Snapshot:
        fresh = build_snapshot(self._config)  # built off-line, then swapped
        with self._lock:
            self._snapshot = fresh
        return fresh


def parse_itemset(raw: str) -> miner.Itemset:
    terms = [t.strip() for t in raw.split(",") if t.strip()]
    if not terms:
        raise ValueError("itemset must contain at least one term")
    for term in terms:
        if term != term.lower():
            raise ValueError(f"itemset terms must be lowercase: {term!r}")
    return miner.Itemset.of(terms)


def _require_symbol(snap: Snapshot, symbol: str) -> market.PriceSeries:
    series = snap.market.get(symbol)
    if series is None:
        known = ", ".join(sorted(snap.market)) or "(none)"
        raise ValueError(f"unknown symbol {symbol!r}; loaded symbols: {known}")
    return series


# --- response bodies shared by HTTP endpoints and CLI subcommands ----------


def terms_body(snap: Snapshot, limit: int = 100) -> dict:
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    return {
        "total_transactions": snap.stats.n_transactions,
        "terms": [
            {"term": t, "document_frequency": df, "occurrences": occ}
            for t, df, occ in snap.stats.top(limit)
        ],
    }


def associations_body(snap: Snapshot, term: str, min_corr: float = 0.1) -> dict:
    pairs = miner.term_associations(snap.transactions, term, min_corr)
    return {
        "term": term,
        "min_corr": min_corr,
        "associations": [{"term": t, "correlation": c} for t, c in pairs],
    }


def _mine(snap: Snapshot, min_support: float | None, max_len: int | None) -> miner.MiningResult:
    cfg = snap.config
    return miner.mine_frequent(
        snap.transactions,
        cfg.min_support if min_support is None else min_support,
        cfg.max_len if max_len is None else max_len,
    )


def itemsets_body(
    snap: Snapshot, min_support: float | None = None, max_len: int | None = None
) -> dict:
    result = _mine(snap, min_support, max_len)
    return {
        "total_transactions": result.total_transactions,
        "min_support": result.min_support,
        "itemsets": [
            {"terms": list(fi.itemset.terms), "support": fi.support, "count": fi.count}
            for fi in result.frequent
        ],
    }


def rules_body(
    snap: Snapshot,
    min_confidence: float | None = None,
    min_support: float | None = None,
    max_len: int | None = None,
) -> dict:
    cfg = snap.config
    threshold = cfg.min_confidence if min_confidence is None else min_confidence
    rules = miner.generate_rules(_mine(snap, min_support, max_len), threshold)
    return {
        "min_confidence": threshold,
        "rules": [
            {
                "antecedent": list(r.antecedent.terms),
                "consequent": list(r.consequent.terms),
                "support": r.support,
                "confidence": r.confidence,
                "lift": r.lift,
            }
            for r in rules
        ],
    }


def series_body(
    snap: Snapshot,
    itemset: miner.Itemset,
    short_window: int | None = None,
    long_window: int | None = None,
) -> dict:
    cfg = snap.config
    series = dynamics.support_series(snap.by_day, itemset)
    ma = dynamics.build_ma_pair(
        series.values(),
        cfg.short_window if short_window is None else short_window,
        cfg.long_window if long_window is None else long_window,
    )
    signals = dynamics.crossover_signals(ma)
    return {
        "itemset": list(itemset.terms),
        "points": [
            {"date": p.date.isoformat(), "support": p.support, "n_transactions": p.n_transactions}
            for p in series.points
        ],
        "short_window": ma.short_window,
        "long_window": ma.long_window,
        "short_ma": [{"date": d.isoformat(), "value": v} for d, v in ma.short_ma],
        "long_ma": [{"date": d.isoformat(), "value": v} for d, v in ma.long_ma],
        "signals": [{"date": d.isoformat(), "direction": s} for d, s in signals],
    }


def market_body(snap: Snapshot, symbol: str) -> dict:
    series = _require_symbol(snap, symbol)
    return {
        "symbol": symbol,
        "bars": [
            {
                "date": b.date.isoformat(),
                "open": b.open,
                "high": b.high,
                "low": b.low,
                "close": b.close,
                "volume": b.volume,
            }
            for b in series.bars
        ],
    }


def _aligned_support_close(
    snap: Snapshot, itemset: miner.Itemset, symbol: str
) -> list[tuple[date, float, float]]:
    series = dynamics.support_series(snap.by_day, itemset)
    closes = market.close_series(_require_symbol(snap, symbol))
    return dynamics.align(series.values(), closes, snap.config.align_mode)


def ccf_body(
    snap: Snapshot, itemset: miner.Itemset, symbol: str, max_lag: int | None = None
) -> dict:
    aligned = _aligned_support_close(snap, itemset, symbol)
    if len(aligned) < 2:
        raise ValueError(f"only {len(aligned)} aligned days; need at least 2")
    if max_lag is None:
        max_lag = min(DEFAULT_MAX_LAG, len(aligned) - 1)
    try:
        result = dynamics.ccf(
            [s for _, s, _ in aligned], [c for _, _, c in aligned], max_lag
        )
    except DegeneracyError as exc:
        exc.stage = "ccf"
        raise
    return {
        "itemset": list(itemset.terms),
        "symbol": symbol,
        "max_lag": max_lag,
        "aligned_days": len(aligned),
        "lags": result.lags,
        "values": result.values,
    }


def granger_results(
    snap: Snapshot,
    itemset: miner.Itemset,
    symbol: str,
    lag_order: int | None = None,
    transform: str = "price",
) -> tuple[inference.GrangerResult, inference.GrangerResult, str, str]:
    """Both test directions plus display names for the two series."""
    if transform not in ("price", "returns"):
        raise ValueError(f"transform must be price or returns, got {transform!r}")
    lag = snap.config.lag_order if lag_order is None else lag_order
    aligned = _aligned_support_close(snap, itemset, symbol)
    supports = [s for _, s, _ in aligned]
    closes = [c for _, _, c in aligned]
    price_name = symbol
    if transform == "returns":
        dated = [(d, c) for d, _, c in aligned]
        closes = [r for _, r in market.log_returns(dated)]
        supports = supports[1:]  # keep the two sides aligned after differencing
        price_name = f"{symbol}.ret"
    support_name = "supp_" + "_".join(itemset.terms)
    try:
        support_to_price = inference.granger_test(closes, supports, lag)
        price_to_support = inference.granger_test(supports, closes, lag)
    except DegeneracyError as exc:
        exc.stage = "granger"
        raise
    return support_to_price, price_to_support, price_name, support_name


def granger_body(
    snap: Snapshot,
    itemset: miner.Itemset,
    symbol: str,
    lag_order: int | None = None,
    transform: str = "price",
) -> dict:
    s2p, p2s, price_name, support_name = granger_results(
        snap, itemset, symbol, lag_order, transform
    )

    def direction(result: inference.GrangerResult, effect: str, cause: str) -> dict:
        return {
            "effect": effect,
            "cause": cause,
            "f_stat": result.f_stat,
            "p_value": result.p_value,
            "df1": result.df1,
            "df2": result.df2,
            "rss_restricted": result.rss_restricted,
            "rss_unrestricted": result.rss_unrestricted,
            "stars": inference.significance_stars(result.p_value),
        }

    return {
        "itemset": list(itemset.terms),
        "symbol": symbol,
        "lag_order": s2p.lag_order,
        "transform": transform,
        "support_to_price": direction(s2p, price_name, support_name),
        "price_to_support": direction(p2s, support_name, price_name),
    }


def forecast_body(snap: Snapshot, symbol: str, p: int = 1, d: int = 1, horizon: int = 10) -> dict:
    if p < 0 or d < 0 or horizon < 1:
        raise ValueError(f"need p >= 0, d >= 0, horizon >= 1; got p={p}, d={d}, h={horizon}")
    closes = [c for _, c in market.close_series(_require_symbol(snap, symbol))]
    try:
        model = inference.ar_fit(closes, p, d)
        steps = inference.ar_forecast(model, closes, horizon)
    except DegeneracyError as exc:
        exc.stage = "forecast"
        raise
    last_bar = _require_symbol(snap, symbol).bars[-1]
    return {
        "symbol": symbol,
        "p": p,
        "d": d,
        "horizon": horizon,
        "last_date": last_bar.date.isoformat(),
        "last_close": last_bar.close,
        "sigma2": model.sigma2,
        "coefficients": [float(c) for c in model.coefficients],
        "forecasts": [
            {"step": k, "point": pt, "lower95": lo, "upper95": hi}
            for k, (pt, lo, hi) in enumerate(steps, start=1)
        ],
    }


def graph_body(snap: Snapshot, kind: str) -> dict:
    if kind == "itemsets":
        graph = miner.itemset_graph(_mine(snap, None, None))
    elif kind == "rules":
        rules = miner.generate_rules(_mine(snap, None, None), snap.config.min_confidence)
        graph = miner.rule_graph(rules)
    else:
        raise ValueError(f"kind must be itemsets or rules, got {kind!r}")
    return {"kind": kind, **graph.to_json_dict()}


# --- FastAPI wiring ---------------------------------------------------------


def _error_body(exc: Exception, code: str) -> dict:
    return {
        "stage": getattr(exc, "stage", "analysis"),
        "code": code,
        "message": str(exc),
    }


def create_app(config: AnalysisConfig, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="tweetsignal", docs_url=None, redoc_url=None)
    holder = SnapshotHolder(config)
    app.state.holder = holder

    @app.exception_handler(RequestValidationError)
    async def _invalid_params(request: Request, exc: RequestValidationError):
        body = {"stage": "params", "code": "invalid_parameter", "message": str(exc.errors())}
        return JSONResponse(status_code=400, content=body)

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content=_error_body(exc, "invalid_parameter"))

    @app.exception_handler(DataError)
    async def _data_error(request: Request, exc: DataError):
        return JSONResponse(status_code=400, content=_error_body(exc, "data_error"))

    @app.exception_handler(DegeneracyError)
    async def _degenerate(request: Request, exc: DegeneracyError):
        return JSONResponse(status_code=422, content=_error_body(exc, "degeneracy"))

    @app.get("/api/terms")
    def get_terms(limit: int = 100):
        return terms_body(holder.current, limit)

    @app.get("/api/associations")
    def get_associations(term: str, min_corr: float = 0.1):
        return associations_body(holder.current, term, min_corr)

    @app.get("/api/itemsets")
    def get_itemsets(min_support: float | None = None, max_len: int | None = None):
        return itemsets_body(holder.current, min_support, max_len)

    @app.get("/api/rules")
    def get_rules(
        min_confidence: float | None = None,
        min_support: float | None = None,
        max_len: int | None = None,
    ):
        return rules_body(holder.current, min_confidence, min_support, max_len)

    @app.get("/api/series")
    def get_series(itemset: str, short: int | None = None, long: int | None = None):
        return series_body(holder.current, parse_itemset(itemset), short, long)

    @app.get("/api/market")
    def get_market(symbol: str):
        return market_body(holder.current, symbol)

    @app.get("/api/ccf")
    def get_ccf(itemset: str, symbol: str, max_lag: int | None = None):
        return ccf_body(holder.current, parse_itemset(itemset), symbol, max_lag)

    @app.get("/api/granger")
    def get_granger(itemset: str, symbol: str, lag: int | None = None, transform: str = "price"):
        return granger_body(holder.current, parse_itemset(itemset), symbol, lag, transform)

    @app.get("/api/forecast")
    def get_forecast(symbol: str, p: int = 1, d: int = 1, h: int = 10):
        return forecast_body(holder.current, symbol, p, d, h)

    @app.get("/api/graph")
    def get_graph(kind: str):
        return graph_body(holder.current, kind)

    @app.post("/api/reload")
    def post_reload():
        snap = holder.reload()
        return {
            "status": "ok",
            "corpus_digest": snap.corpus.source_digest,
            "tweets": len(snap.corpus),
            "symbols": sorted(snap.market),
        }

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="workbench")

    return app


def serve(config: AnalysisConfig, static_dir: str | None = None) -> None:
    """Run the service with uvicorn on the configured port (blocking)."""
    import uvicorn

    uvicorn.run(create_app(config, static_dir), host="127.0.0.1", port=config.port, log_level="warning")
