// Statistics panels: CCF lag bars, the two-direction Granger table with
// significance stars, the forecast fan chart, and the inline warning shown
// for a 422 degeneracy response. The UI computes nothing; every number
// (stars included) comes from the service body.

import { escapeHtml, round2, sig4 } from "../format.js";
import type { ApiErrorBody, CcfBody, ForecastBody, GrangerBody, GrangerDirection } from "../types.js";

const W = 920;

export function renderCcf(body: CcfBody): string {
  const h = 240;
  const mid = h / 2;
  const n = body.lags.length;
  const step = (W - 60) / n;
  const bars = body.lags.map((lag, i) => {
    const v = body.values[i] ?? 0;
    const x = 40 + i * step + step * 0.15;
    const barH = Math.abs(v) * (mid - 24);
    const y = v >= 0 ? mid - barH : mid;
    return (
      `<rect class="ccf-bar" data-lag="${lag}" data-value="${v}"` +
      ` x="${x.toFixed(1)}" y="${y.toFixed(1)}" width="${(step * 0.7).toFixed(1)}" height="${barH.toFixed(1)}"/>` +
      `<text class="lag-label" x="${(x + step * 0.35).toFixed(1)}" y="${h - 4}">${lag}</text>`
    );
  });
  return (
    `<h3>Cross-correlation: supp{${escapeHtml(body.itemset.join(", "))}} vs ${escapeHtml(body.symbol)}` +
    ` (${body.aligned_days} aligned days)</h3>` +
    `<svg class="ccf" viewBox="0 0 ${W} ${h}" xmlns="http://www.w3.org/2000/svg">` +
    `<line class="zero-line" x1="40" x2="${W - 20}" y1="${mid}" y2="${mid}"/>` +
    bars.join("") +
    `</svg>`
  );
}

function grangerRow(label: string, dir: GrangerDirection): string {
  return (
    `<tr data-direction="${label}"><td>${escapeHtml(dir.cause)} &rarr; ${escapeHtml(dir.effect)}</td>` +
    `<td>${dir.df1}</td><td>${dir.df2}</td>` +
    `<td class="f-stat">${sig4(dir.f_stat)}</td>` +
    `<td class="p-value">${sig4(dir.p_value)}</td>` +
    `<td class="stars">${escapeHtml(dir.stars)}</td></tr>`
  );
}

export function renderGranger(body: GrangerBody): string {
  return (
    `<h3>Granger causality, lag ${body.lag_order} (${escapeHtml(body.transform)})</h3>` +
    `<table class="granger"><thead>` +
    `<tr><th>direction</th><th>df1</th><th>df2</th><th>F</th><th>Pr(&gt;F)</th><th></th></tr>` +
    `</thead><tbody>` +
    grangerRow("support_to_price", body.support_to_price) +
    grangerRow("price_to_support", body.price_to_support) +
    `</tbody></table>` +
    `<p class="legend">Signif. codes: 0.001 '***' 0.01 '**' 0.05 '*' 0.1 '.'</p>`
  );
}

export function renderForecast(body: ForecastBody): string {
  const h = 260;
  const steps = body.forecasts;
  if (steps.length === 0) {
    return `<p class="placeholder">No forecast steps returned.</p>`;
  }
  const values = [body.last_close, ...steps.flatMap((s) => [s.lower95, s.upper95, s.point])];
  const vMin = Math.min(...values);
  const vMax = Math.max(...values);
  const span = vMax - vMin || 1;
  const y = (v: number) => 18 + ((vMax - v) / span) * (h - 48);
  const x = (step: number) => 50 + (step / (steps.length || 1)) * (W - 90);

  const bandWidth = steps.reduce((acc, s) => acc + (s.upper95 - s.lower95), 0);
  const band =
    bandWidth > 0
      ? `<polygon class="fan" points="` +
        [
          `${x(0)},${y(body.last_close)}`,
          ...steps.map((s) => `${x(s.step)},${y(s.upper95)}`),
          ...steps.slice().reverse().map((s) => `${x(s.step)},${y(s.lower95)}`),
          `${x(0)},${y(body.last_close)}`,
        ].join(" ") +
        `"/>`
      : "";
  const line =
    `<polyline class="forecast-line" fill="none" points="` +
    [`${x(0)},${y(body.last_close)}`, ...steps.map((s) => `${x(s.step)},${y(s.point)}`)].join(" ") +
    `"/>`;
  return (
    `<h3>${escapeHtml(body.symbol)} forecast: AR(${body.p}), d=${body.d}, ${body.horizon} steps` +
    ` from ${escapeHtml(body.last_date)} (close ${round2(body.last_close)})</h3>` +
    `<svg class="forecast" viewBox="0 0 ${W} ${h}" xmlns="http://www.w3.org/2000/svg">${band}${line}</svg>`
  );
}

/** Inline warning for a 422 response, naming the degenerate stage. */
export function renderDegeneracyWarning(error: ApiErrorBody): string {
  return (
    `<div class="warning" data-stage="${escapeHtml(error.stage)}">` +
    `Statistical degeneracy in stage '${escapeHtml(error.stage)}': ${escapeHtml(error.message)}` +
    `</div>`
  );
}
