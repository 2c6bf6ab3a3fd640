// Graph panel: ring-layout node/edge SVG for the itemset Hasse view and
// the bipartite rule view.

import { escapeHtml, sig4 } from "../format.js";
import type { GraphBody } from "../types.js";

const W = 920;
const H = 560;

export function renderGraph(body: GraphBody): string {
  if (body.nodes.length === 0) {
    return `<p class="placeholder">No ${escapeHtml(body.kind)} to draw at the current thresholds.</p>`;
  }
  const cx = W / 2;
  const cy = H / 2;
  const radius = Math.min(W, H) / 2 - 70;
  const position = new Map<string, { x: number; y: number }>();
  body.nodes.forEach((node, i) => {
    const angle = (2 * Math.PI * i) / body.nodes.length - Math.PI / 2;
    position.set(node.id, {
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    });
  });

  const edges = body.edges
    .filter((e) => position.has(e.from) && position.has(e.to))
    .map((e) => {
      const a = position.get(e.from)!;
      const b = position.get(e.to)!;
      return `<line class="edge" x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}" x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}"/>`;
    });

  const nodes = body.nodes.map((node) => {
    const p = position.get(node.id)!;
    const support = node.attrs["support"];
    const title = typeof support === "number" ? ` (supp ${sig4(support)})` : "";
    return (
      `<g class="node node-${escapeHtml(node.kind)}" data-id="${escapeHtml(node.id)}">` +
      `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="${node.kind === "rule" ? 6 : 9}"/>` +
      `<text x="${(p.x + 11).toFixed(1)}" y="${(p.y + 4).toFixed(1)}">${escapeHtml(node.id)}${title}</text></g>`
    );
  });

  return (
    `<h3>${escapeHtml(body.kind)} graph: ${body.nodes.length} nodes, ${body.edges.length} edges</h3>` +
    `<svg class="graph" viewBox="0 0 ${W} ${H}" xmlns="http://www.w3.org/2000/svg">` +
    edges.join("") +
    nodes.join("") +
    `</svg>`
  );
}
