import { escapeHtml, sig4 } from "../format.js";
import type { AssociationsBody } from "../types.js";

export function renderAssociations(body: AssociationsBody): string {
  if (body.associations.length === 0) {
    return `<p class="placeholder">No terms correlate with "${escapeHtml(body.term)}" at r >= ${body.min_corr}.</p>`;
  }
  const rows = body.associations.map((entry) => {
    const width = Math.max(0, Math.min(1, entry.correlation)) * 100;
    const term = escapeHtml(entry.term);
    return (
      `<tr data-term="${term}"><td class="assoc-term">${term}</td>` +
      `<td class="assoc-bar"><div class="bar" style="width:${width.toFixed(1)}%"></div></td>` +
      `<td class="assoc-value">${sig4(entry.correlation)}</td></tr>`
    );
  });
  return (
    `<h3>Terms associated with "${escapeHtml(body.term)}"</h3>` +
    `<table class="associations"><thead><tr><th>term</th><th></th><th>r</th></tr></thead>` +
    `<tbody>${rows.join("")}</tbody></table>`
  );
}
