// Keyword cloud: inline term list ordered by document frequency, font size
// a monotone (linear) map of frequency. Clicks are wired through the
// data-term attribute by the shell.

import { escapeHtml } from "../format.js";
import type { TermsBody } from "../types.js";

export const CLOUD_MIN_PX = 12;
export const CLOUD_MAX_PX = 40;

export function fontSizeFor(df: number, dfMin: number, dfMax: number): number {
  if (dfMax <= dfMin) return (CLOUD_MIN_PX + CLOUD_MAX_PX) / 2;
  const t = (df - dfMin) / (dfMax - dfMin);
  return CLOUD_MIN_PX + t * (CLOUD_MAX_PX - CLOUD_MIN_PX);
}

export function renderCloud(body: TermsBody, limit = 100): string {
  const terms = body.terms.slice(0, limit);
  if (terms.length === 0) {
    return `<p class="placeholder">No terms yet - load a corpus and reload.</p>`;
  }
  const dfValues = terms.map((t) => t.document_frequency);
  const dfMin = Math.min(...dfValues);
  const dfMax = Math.max(...dfValues);
  const spans = terms.map((entry) => {
    const size = fontSizeFor(entry.document_frequency, dfMin, dfMax);
    const term = escapeHtml(entry.term);
    return (
      `<span class="cloud-term" data-term="${term}" data-df="${entry.document_frequency}"` +
      ` style="font-size:${size.toFixed(1)}px"` +
      ` title="${term}: in ${entry.document_frequency} tweets">${term}</span>`
    );
  });
  return `<div class="cloud">${spans.join(" ")}</div>`;
}
