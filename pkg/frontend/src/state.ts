// Workbench state machine. Every transition is a pure function of
// (state, event); the returned request tells the shell which endpoint to
// (re-)fetch, keeping all statistics on the server.

import type { Params } from "./api.js";

export type PanelId =
  | "cloud"
  | "associations"
  | "dynamics"
  | "ccf"
  | "granger"
  | "forecast"
  | "graph";

export interface WorkbenchState {
  selectedItemset: string[];
  selectedSymbol: string;
  maWindows: { short: number; long: number };
  activePanel: PanelId;
  graphKind: "itemsets" | "rules";
  note: string | null; // validation feedback, never blocks the state
}

export type WorkbenchEvent =
  | { kind: "term-clicked"; term: string }
  | { kind: "term-removed"; term: string }
  | { kind: "itemset-entered"; raw: string }
  | { kind: "symbol-changed"; symbol: string }
  | { kind: "windows-changed"; short: number; long: number }
  | { kind: "graph-kind-changed"; graphKind: "itemsets" | "rules" }
  | { kind: "panel-selected"; panel: PanelId };

export interface ApiRequest {
  path: string;
  params: Params;
}

export interface Transition {
  state: WorkbenchState;
  request: ApiRequest | null;
}

export function initialState(): WorkbenchState {
  return {
    selectedItemset: [],
    selectedSymbol: "AAPL",
    maWindows: { short: 5, long: 20 },
    activePanel: "cloud",
    graphKind: "itemsets",
    note: null,
  };
}

const ITEMSET_PANELS: ReadonlySet<PanelId> = new Set(["dynamics", "ccf", "granger"]);

function itemsetParam(state: WorkbenchState): string {
  return state.selectedItemset.join(",");
}

/** The request that keeps the active panel's data fresh for this state. */
export function requestFor(state: WorkbenchState): ApiRequest | null {
  const { activePanel } = state;
  if (ITEMSET_PANELS.has(activePanel) && state.selectedItemset.length === 0) {
    return null; // nothing to plot until terms are chosen
  }
  switch (activePanel) {
    case "cloud":
      return { path: "/api/terms", params: { limit: 100 } };
    case "associations": {
      const last = state.selectedItemset[state.selectedItemset.length - 1];
      return last
        ? { path: "/api/associations", params: { term: last, min_corr: 0.1 } }
        : null;
    }
    case "dynamics":
      return {
        path: "/api/series",
        params: {
          itemset: itemsetParam(state),
          short: state.maWindows.short,
          long: state.maWindows.long,
        },
      };
    case "ccf":
      return {
        path: "/api/ccf",
        params: { itemset: itemsetParam(state), symbol: state.selectedSymbol, max_lag: 8 },
      };
    case "granger":
      return {
        path: "/api/granger",
        params: { itemset: itemsetParam(state), symbol: state.selectedSymbol, lag: 1 },
      };
    case "forecast":
      return {
        path: "/api/forecast",
        params: { symbol: state.selectedSymbol, p: 1, d: 1, h: 10 },
      };
    case "graph":
      return { path: "/api/graph", params: { kind: state.graphKind } };
  }
}

function normalizeTerms(terms: string[]): string[] {
  const seen = new Set<string>();
  const out: string[] = [];
  for (const raw of terms) {
    const term = raw.trim().toLowerCase();
    if (term && !seen.has(term)) {
      seen.add(term);
      out.push(term);
    }
  }
  return out;
}

export function reduce(state: WorkbenchState, event: WorkbenchEvent): Transition {
  let next = state;
  switch (event.kind) {
    case "term-clicked": {
      const terms = normalizeTerms([...state.selectedItemset, event.term]);
      // a cloud click inspects the clicked term's associations next
      next = { ...state, selectedItemset: terms, activePanel: "associations", note: null };
      break;
    }
    case "term-removed":
      next = {
        ...state,
        selectedItemset: state.selectedItemset.filter((t) => t !== event.term),
        note: null,
      };
      break;
    case "itemset-entered":
      next = { ...state, selectedItemset: normalizeTerms(event.raw.split(",")), note: null };
      break;
    case "symbol-changed":
      next = { ...state, selectedSymbol: event.symbol.trim().toUpperCase(), note: null };
      break;
    case "windows-changed": {
      const { short, long } = event;
      if (!(Number.isInteger(short) && Number.isInteger(long) && 1 <= short && short < long)) {
        return {
          state: { ...state, note: `windows must satisfy 1 <= short < long (got ${short}, ${long})` },
          request: null,
        };
      }
      next = { ...state, maWindows: { short, long }, note: null };
      break;
    }
    case "graph-kind-changed":
      next = { ...state, graphKind: event.graphKind, note: null };
      break;
    case "panel-selected":
      next = { ...state, activePanel: event.panel, note: null };
      break;
  }
  return { state: next, request: requestFor(next) };
}
