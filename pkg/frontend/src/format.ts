export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Four significant digits, the convention of classic regression printouts. */
export function sig4(x: number): string {
  if (!Number.isFinite(x)) return String(x);
  if (x === 0) return "0";
  const text = x.toPrecision(4);
  // strip redundant exponent notation for moderate magnitudes
  return Number(text) === Number.parseFloat(text) ? text : String(x);
}

export function round2(x: number): string {
  return x.toFixed(2);
}
