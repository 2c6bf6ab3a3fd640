// Combined dynamics chart: OHLCV candles with volume bars beneath and the
// support-series moving averages on their own (secondary) axis, crossover
// signals marked. Pure SVG string construction.

import { escapeHtml } from "../format.js";
import type { MarketBody, SeriesBody } from "../types.js";

const WIDTH = 920;
const MARGIN = { left: 52, right: 14, top: 12, bottom: 22 };
const PRICE_H = 260;
const VOLUME_H = 70;
const SUPPORT_H = 150;
const GAP = 26;

interface Scale {
  (value: number): number;
}

function linear(domainMin: number, domainMax: number, rangeMin: number, rangeMax: number): Scale {
  const span = domainMax - domainMin || 1;
  return (v) => rangeMin + ((v - domainMin) / span) * (rangeMax - rangeMin);
}

export function renderDynamics(series: SeriesBody, market: MarketBody): string {
  const dates = Array.from(
    new Set([...market.bars.map((b) => b.date), ...series.points.map((p) => p.date)]),
  ).sort();
  if (market.bars.length === 0 || series.points.length === 0 || dates.length === 0) {
    return `<p class="placeholder">No aligned market and tweet days to plot.</p>`;
  }

  const x = new Map<string, number>();
  const innerW = WIDTH - MARGIN.left - MARGIN.right;
  const step = innerW / Math.max(1, dates.length);
  dates.forEach((d, i) => x.set(d, MARGIN.left + step * (i + 0.5)));
  const candleW = Math.max(2, Math.min(11, step * 0.6));

  const totalH = MARGIN.top + PRICE_H + VOLUME_H + GAP + SUPPORT_H + MARGIN.bottom;
  const parts: string[] = [
    `<svg class="dynamics" viewBox="0 0 ${WIDTH} ${totalH}" xmlns="http://www.w3.org/2000/svg">`,
  ];

  // price pane
  const lows = market.bars.map((b) => b.low);
  const highs = market.bars.map((b) => b.high);
  const priceY = linear(Math.min(...lows), Math.max(...highs), MARGIN.top + PRICE_H, MARGIN.top);
  for (const bar of market.bars) {
    const cx = x.get(bar.date)!;
    const up = bar.close >= bar.open;
    const top = priceY(Math.max(bar.open, bar.close));
    const bottom = priceY(Math.min(bar.open, bar.close));
    parts.push(
      `<line class="wick" x1="${cx.toFixed(1)}" x2="${cx.toFixed(1)}"` +
        ` y1="${priceY(bar.high).toFixed(1)}" y2="${priceY(bar.low).toFixed(1)}"/>`,
      `<rect class="candle ${up ? "candle-up" : "candle-down"}" data-date="${bar.date}"` +
        ` x="${(cx - candleW / 2).toFixed(1)}" y="${top.toFixed(1)}"` +
        ` width="${candleW.toFixed(1)}" height="${Math.max(1, bottom - top).toFixed(1)}"/>`,
    );
  }

  // volume pane
  const volTop = MARGIN.top + PRICE_H;
  const maxVol = Math.max(...market.bars.map((b) => b.volume), 1);
  for (const bar of market.bars) {
    const cx = x.get(bar.date)!;
    const h = (bar.volume / maxVol) * (VOLUME_H - 6);
    parts.push(
      `<rect class="volume" data-date="${bar.date}" x="${(cx - candleW / 2).toFixed(1)}"` +
        ` y="${(volTop + VOLUME_H - h).toFixed(1)}" width="${candleW.toFixed(1)}" height="${h.toFixed(1)}"/>`,
    );
  }

  // support pane: raw supports faint, both MAs on the secondary axis
  const supTop = volTop + VOLUME_H + GAP;
  const supValues = [
    ...series.points.map((p) => p.support),
    ...series.short_ma.map((m) => m.value),
    ...series.long_ma.map((m) => m.value),
  ];
  const supY = linear(0, Math.max(...supValues, 1e-9), supTop + SUPPORT_H, supTop);

  const polyline = (values: { date: string; value: number }[], cls: string) => {
    if (values.length === 0) return "";
    const pts = values
      .filter((v) => x.has(v.date))
      .map((v) => `${x.get(v.date)!.toFixed(1)},${supY(v.value).toFixed(1)}`)
      .join(" ");
    return `<polyline class="${cls}" fill="none" points="${pts}"/>`;
  };
  parts.push(
    polyline(
      series.points.map((p) => ({ date: p.date, value: p.support })),
      "support-raw",
    ),
    polyline(series.short_ma, "ma ma-short"),
    polyline(series.long_ma, "ma ma-long"),
  );

  // crossover markers sit on the short MA
  const shortByDate = new Map(series.short_ma.map((m) => [m.date, m.value]));
  for (const signal of series.signals) {
    const cx = x.get(signal.date);
    if (cx === undefined) continue;
    const value = shortByDate.get(signal.date) ?? 0;
    const cy = supY(value);
    const marker =
      signal.direction === "up"
        ? `${cx},${cy - 7} ${cx - 5},${cy + 3} ${cx + 5},${cy + 3}`
        : `${cx},${cy + 7} ${cx - 5},${cy - 3} ${cx + 5},${cy - 3}`;
    parts.push(
      `<polygon class="signal signal-${signal.direction}" data-date="${signal.date}"` +
        ` data-direction="${signal.direction}" points="${marker}"/>`,
    );
  }

  parts.push(
    `<text class="axis-label" x="${MARGIN.left}" y="${MARGIN.top + 10}">${escapeHtml(market.symbol)}</text>`,
    `<text class="axis-label" x="${MARGIN.left}" y="${supTop + 10}">supp{${escapeHtml(series.itemset.join(", "))}} MA ${series.short_window}/${series.long_window}</text>`,
    `</svg>`,
  );
  return parts.filter(Boolean).join("\n");
}
