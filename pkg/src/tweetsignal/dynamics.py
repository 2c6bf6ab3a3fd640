"""Per-day itemset support series, moving averages, crossover signals,
calendar alignment with market series, and the cross-correlation function.

CCF convention: ``value(k)`` estimates ``corr(x[t+k], y[t])``, normalized by
the full-sample means and population standard deviations at every lag, so a
self-pair is exactly 1 at lag 0 and every value is bounded by 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date
from typing import Mapping, Sequence

import numpy as np

from . import _accel
from .errors import DegeneracyError
from .miner import Itemset
from .tokenizer import Transaction

DatedValue = tuple[date, float]


@dataclass(frozen=True)
class SupportPoint:
    date: date
    support: float
    n_transactions: int


@dataclass
class SupportSeries:
    itemset: Itemset
    points: list[SupportPoint]

    def values(self) -> list[DatedValue]:
        return [(p.date, p.support) for p in self.points]


def group_by_day(transactions: Sequence[Transaction]) -> dict[date, list[Transaction]]:
    """Transactions partitioned by their UTC date, keys ascending."""
    buckets: dict[date, list[Transaction]] = {}
    for tx in sorted(transactions, key=lambda t: t.date):
        buckets.setdefault(tx.date, []).append(tx)
    return buckets


def support_series(
    transactions_by_day: Mapping[date, Sequence[Transaction]], itemset: Itemset
) -> SupportSeries:
    """Daily support of ``itemset``, one point per day present in the map."""
    if not transactions_by_day:
        raise ValueError("transactions_by_day must be non-empty")
    wanted = frozenset(itemset.terms)
    points = []
    for day in sorted(transactions_by_day):
        txs = transactions_by_day[day]
        if not txs:
            continue
        count = sum(1 for tx in txs if wanted <= tx.terms)
        points.append(SupportPoint(date=day, support=count / len(txs), n_transactions=len(txs)))
    return SupportSeries(itemset=itemset, points=points)


def sma(series: Sequence[DatedValue], window: int) -> list[DatedValue]:
    """Simple moving average over series *positions* (not calendar days).

    The value at point i (i >= window-1) is the mean of the previous
    ``window`` values; shorter series give an empty result.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if len(series) < window:
        return []
    values = np.array([v for _, v in series], dtype=np.float64)
    sums = np.convolve(values, np.ones(window), mode="valid")
    return [
        (series[i + window - 1][0], float(sums[i] / window)) for i in range(len(sums))
    ]


@dataclass
class MAPair:
    short_window: int
    long_window: int
    short_ma: list[DatedValue]
    long_ma: list[DatedValue]


def build_ma_pair(series: Sequence[DatedValue], short_window: int = 5, long_window: int = 20) -> MAPair:
    if short_window >= long_window:
        raise ValueError(
            f"short_window must be < long_window, got {short_window} >= {long_window}"
        )
    return MAPair(
        short_window=short_window,
        long_window=long_window,
        short_ma=sma(series, short_window),
        long_ma=sma(series, long_window),
    )


def crossover_signals(ma: MAPair) -> list[tuple[date, str]]:
    """'up' when the short MA crosses above the long MA, 'down' the reverse.

    Tracked as a regime flip: equality keeps the previous regime, so
    signals always alternate and the first comparable date never signals.
    """
    short = dict(ma.short_ma)
    common = [(d, v, short[d]) for d, v in ma.long_ma if d in short]
    if len(common) < 2:
        return []
    signals = []
    regime = None  # 'above' | 'below' | None while the MAs are tied
    for i, (day, long_value, short_value) in enumerate(common):
        if short_value > long_value:
            if i > 0 and regime != "above":
                signals.append((day, "up"))
            regime = "above"
        elif short_value < long_value:
            if i > 0 and regime != "below":
                signals.append((day, "down"))
            regime = "below"
    return signals


def align(
    a: Sequence[DatedValue], b: Sequence[DatedValue], mode: str = "drop"
) -> list[tuple[date, float, float]]:
    """Pair two dated series.

    ``drop``: inner join on exact dates; a-days without b data vanish.
    ``roll_forward``: a-values on days missing from b are averaged into the
    next b-day together with that day's own value (weekend chatter folds
    into Monday).
    """
    if mode not in ("drop", "roll_forward"):
        raise ValueError(f"unknown align mode {mode!r}")
    b_map = dict(b)
    if mode == "drop":
        return [(d, v, b_map[d]) for d, v in a if d in b_map]

    b_days = sorted(b_map)
    out = []
    pending: list[float] = []
    for d, v in sorted(dict(a).items()):
        if d in b_map:
            bucket = pending + [v]
            out.append((d, sum(bucket) / len(bucket), b_map[d]))
            pending = []
        else:
            later = [day for day in b_days if day > d]
            if later:
                pending.append(v)
            # a-values after the last b-day have nowhere to roll; dropped
    return out


@dataclass
class CcfResult:
    lags: list[int]
    values: list[float]

    def argmax_lag(self) -> int:
        best = max(range(len(self.values)), key=lambda i: self.values[i])
        return self.lags[best]


def ccf(x: Sequence[float], y: Sequence[float], max_lag: int) -> CcfResult:
    """Sample cross-correlation of two equal-length series per the stated
    convention; raises ``DegeneracyError`` when either side has no variance."""
    xv = np.asarray(x, dtype=np.float64)
    yv = np.asarray(y, dtype=np.float64)
    if xv.shape != yv.shape:
        raise ValueError(f"length mismatch: {xv.shape[0]} vs {yv.shape[0]}")
    n = xv.shape[0]
    if n < 2:
        raise ValueError("need at least 2 observations")
    if not 0 <= max_lag < n:
        raise ValueError(f"max_lag must be in [0, {n - 1}], got {max_lag}")
    sx = float(np.std(xv))
    sy = float(np.std(yv))
    if sx == 0.0 or sy == 0.0:
        raise DegeneracyError("cross-correlation undefined: a series has zero variance")
    sums = _accel.lagged_products(xv - xv.mean(), yv - yv.mean(), max_lag)
    # n * (sx*sy) keeps the denominator bit-identical when x and y swap,
    # so ccf(x,y)(k) == ccf(y,x)(-k) holds exactly
    values = sums / (n * (sx * sy))
    return CcfResult(lags=list(range(-max_lag, max_lag + 1)), values=[float(v) for v in values])


def write_series_csv(fh, series: Sequence[DatedValue]) -> None:
    """CSV export with header ``date,value``: ISO dates, 6 decimal places."""
    fh.write("date,value\n")
    for d, v in series:
        if not math.isfinite(v):
            raise ValueError(f"non-finite value at {d}")
        fh.write(f"{d.isoformat()},{v:.6f}\n")
