"""tweetsignal: frequent keyword itemsets from microblog streams, tracked
and statistically tested against stock OHLCV series."""

from .corpus import Corpus, CorpusFilter, Tweet, apply_filter, bucket_by_day, load_csv, load_jsonl
from .dynamics import CcfResult, MAPair, SupportSeries, align, build_ma_pair, ccf, crossover_signals, sma, support_series
from .errors import (
    DataError,
    DegeneracyError,
    PipelineError,
    RankDeficiencyError,
    TweetSignalError,
)
from .inference import (
    ArModel,
    GrangerResult,
    OlsFit,
    ar_fit,
    ar_forecast,
    difference,
    f_upper_tail,
    granger_test,
    ols_fit,
    render_granger_report,
)
from .market import Bar, PriceSeries, close_series, load_ohlcv_csv, log_returns
from .miner import (
    AssociationRule,
    FrequentItemset,
    Itemset,
    MiningResult,
    generate_rules,
    itemset_graph,
    mine_frequent,
    rule_graph,
    support,
    term_associations,
)
from .pipeline import AnalysisConfig, AnalysisReport, run_pipeline
from .tokenizer import TokenConfig, Transaction, normalize_text, term_stats, to_transactions

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "AnalysisReport",
    "ArModel",
    "AssociationRule",
    "Bar",
    "CcfResult",
    "Corpus",
    "CorpusFilter",
    "DataError",
    "DegeneracyError",
    "FrequentItemset",
    "GrangerResult",
    "Itemset",
    "MAPair",
    "MiningResult",
    "OlsFit",
    "PipelineError",
    "PriceSeries",
    "RankDeficiencyError",
    "SupportSeries",
    "TokenConfig",
    "Transaction",
    "Tweet",
    "TweetSignalError",
    "align",
    "apply_filter",
    "ar_fit",
    "ar_forecast",
    "bucket_by_day",
    "build_ma_pair",
    "ccf",
    "close_series",
    "crossover_signals",
    "difference",
    "f_upper_tail",
    "generate_rules",
    "granger_test",
    "itemset_graph",
    "load_csv",
    "load_jsonl",
    "load_ohlcv_csv",
    "log_returns",
    "mine_frequent",
    "normalize_text",
    "ols_fit",
    "render_granger_report",
    "rule_graph",
    "run_pipeline",
    "sma",
    "support",
    "support_series",
    "term_associations",
    "term_stats",
    "to_transactions",
]
