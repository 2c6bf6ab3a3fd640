"""OHLCV market data: CSV loading and the price projections used downstream.

File format: header exactly ``date,open,high,low,close,volume``, ISO dates,
'.' decimal separator.  Prices are plain 64-bit floats; every downstream
use is statistical.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Protocol, Sequence

from .errors import DataError

OHLCV_HEADER = ["date", "open", "high", "low", "close", "volume"]


@dataclass(frozen=True)
class Bar:
    date: date
    open: float
    high: float
    low: float
    close: float
    volume: int

    def __post_init__(self):
        for name in ("open", "high", "low", "close"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DataError(f"{self.date}: {name} must be a positive finite price")
        if self.volume < 0:
            raise DataError(f"{self.date}: volume must be >= 0")
        if self.low > min(self.open, self.close) or self.high < max(self.open, self.close):
            raise DataError(f"{self.date}: low/high must bracket open/close")
        if self.low > self.high:
            raise DataError(f"{self.date}: low > high")


@dataclass
class PriceSeries:
    symbol: str
    bars: list[Bar]

    def __post_init__(self):
        dates = [b.date for b in self.bars]
        if len(set(dates)) != len(dates):
            raise DataError(f"{self.symbol}: duplicate bar dates")
        if dates != sorted(dates):
            raise DataError(f"{self.symbol}: bars must be sorted ascending by date")


class QuoteClient(Protocol):
    """Seam for a future network quote source returning the same bar shape."""

    def fetch_daily(self, symbol: str) -> Sequence[Bar]: ...


def series_from_bars(symbol: str, bars: Sequence[Bar]) -> PriceSeries:
    return PriceSeries(symbol=symbol, bars=sorted(bars, key=lambda b: b.date))


def load_ohlcv_csv(path, symbol: str) -> PriceSeries:
    path = Path(path)
    if not path.is_file():
        raise DataError(f"market file not found: {path}")
    bars = []
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path.name}: empty market file") from None
        if header != OHLCV_HEADER:
            raise DataError(
                f"{path.name}: expected header {','.join(OHLCV_HEADER)}, got {','.join(header)}"
            )
        for row in reader:
            if not row:
                continue
            where = f"{path.name} line {reader.line_num}"
            if len(row) != 6:
                raise DataError(f"{where}: expected 6 fields, got {len(row)}")
            try:
                bar = Bar(
                    date=date.fromisoformat(row[0]),
                    open=float(row[1]),
                    high=float(row[2]),
                    low=float(row[3]),
                    close=float(row[4]),
                    volume=int(row[5]),
                )
            except DataError as exc:
                raise DataError(f"{where}: {exc}") from exc
            except ValueError as exc:
                raise DataError(f"{where}: malformed row: {exc}") from exc
            bars.append(bar)
    if not bars:
        raise DataError(f"{path.name}: no bars")
    series = series_from_bars(symbol, bars)
    return series


def save_ohlcv_csv(path, series: PriceSeries) -> None:
    """Inverse of the loader; float prices are written with shortest
    round-trip repr so load -> save -> load reproduces identical bars."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(OHLCV_HEADER)
        for b in series.bars:
            writer.writerow(
                [b.date.isoformat(), repr(b.open), repr(b.high), repr(b.low), repr(b.close), b.volume]
            )


def close_series(series: PriceSeries) -> list[tuple[date, float]]:
    return [(b.date, b.close) for b in series.bars]


def volume_series(series: PriceSeries) -> list[tuple[date, int]]:
    return [(b.date, b.volume) for b in series.bars]


def log_returns(series: Sequence[tuple[date, float]]) -> list[tuple[date, float]]:
    """ln(v[i+1]/v[i]) dated at the later date; values must be positive."""
    if len(series) < 2:
        raise ValueError("log returns need at least 2 observations")
    for d, v in series:
        if v <= 0:
            raise ValueError(f"{d}: log returns need positive values, got {v}")
    return [
        (series[i + 1][0], math.log(series[i + 1][1] / series[i][1]))
        for i in range(len(series) - 1)
    ]
