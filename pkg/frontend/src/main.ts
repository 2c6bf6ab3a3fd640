// Browser shell: binds DOM controls to the pure state machine, fetches
// from the service (cancelling superseded requests), and swaps rendered
// panel markup in. No statistics happen here.

import { ApiClient, ApiError, HttpClient } from "./api.js";
import { initialState, reduce, requestFor, WorkbenchEvent, WorkbenchState } from "./state.js";
import { renderAssociations } from "./render/associations.js";
import { renderCloud } from "./render/cloud.js";
import { renderDynamics } from "./render/dynamics.js";
import { renderCcf, renderDegeneracyWarning, renderForecast, renderGranger } from "./render/inference.js";
import { renderGraph } from "./render/graph.js";
import type {
  AssociationsBody,
  CcfBody,
  ForecastBody,
  GrangerBody,
  GraphBody,
  MarketBody,
  SeriesBody,
  TermsBody,
} from "./types.js";

const client: ApiClient = new HttpClient("");
let state: WorkbenchState = initialState();
let inFlight: AbortController | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function renderStatus() {
  el("itemset-view").textContent = state.selectedItemset.join(", ") || "(none)";
  el<HTMLInputElement>("symbol-input").value = state.selectedSymbol;
  el<HTMLInputElement>("short-input").value = String(state.maWindows.short);
  el<HTMLInputElement>("long-input").value = String(state.maWindows.long);
  el("note").textContent = state.note ?? "";
  document.querySelectorAll<HTMLButtonElement>("nav button[data-panel]").forEach((button) => {
    button.classList.toggle("active", button.dataset.panel === state.activePanel);
  });
}

async function refresh(): Promise<void> {
  renderStatus();
  const request = requestFor(state);
  const panel = el("panel");
  if (!request) {
    panel.innerHTML = `<p class="placeholder">Pick terms from the cloud (or type them) to run this analysis.</p>`;
    return;
  }
  inFlight?.abort();
  const controller = new AbortController();
  inFlight = controller;
  try {
    const body = await client.get(request.path, request.params, controller.signal);
    if (controller !== inFlight) return; // superseded while awaiting
    switch (state.activePanel) {
      case "cloud":
        panel.innerHTML = renderCloud(body as TermsBody);
        break;
      case "associations":
        panel.innerHTML = renderAssociations(body as AssociationsBody);
        break;
      case "dynamics": {
        const market = (await client.get(
          "/api/market",
          { symbol: state.selectedSymbol },
          controller.signal,
        )) as MarketBody;
        if (controller !== inFlight) return;
        panel.innerHTML = renderDynamics(body as SeriesBody, market);
        break;
      }
      case "ccf":
        panel.innerHTML = renderCcf(body as CcfBody);
        break;
      case "granger":
        panel.innerHTML = renderGranger(body as GrangerBody);
        break;
      case "forecast":
        panel.innerHTML = renderForecast(body as ForecastBody);
        break;
      case "graph":
        panel.innerHTML = renderGraph(body as GraphBody);
        break;
    }
  } catch (error) {
    if (controller.signal.aborted) return;
    if (error instanceof ApiError) {
      panel.innerHTML =
        error.status === 422
          ? renderDegeneracyWarning(error.body)
          : `<div class="warning">${error.body.code}: ${error.body.message}</div>`;
    } else {
      panel.innerHTML = `<div class="warning">request failed: ${String(error)}</div>`;
    }
  }
}

function dispatch(event: WorkbenchEvent): void {
  state = reduce(state, event).state;
  void refresh();
}

function bind(): void {
  document.querySelectorAll<HTMLButtonElement>("nav button[data-panel]").forEach((button) => {
    button.addEventListener("click", () =>
      dispatch({ kind: "panel-selected", panel: button.dataset.panel as WorkbenchState["activePanel"] }),
    );
  });
  el<HTMLInputElement>("itemset-input").addEventListener("change", (e) =>
    dispatch({ kind: "itemset-entered", raw: (e.target as HTMLInputElement).value }),
  );
  el<HTMLInputElement>("symbol-input").addEventListener("change", (e) =>
    dispatch({ kind: "symbol-changed", symbol: (e.target as HTMLInputElement).value }),
  );
  const windowsChanged = () =>
    dispatch({
      kind: "windows-changed",
      short: Number(el<HTMLInputElement>("short-input").value),
      long: Number(el<HTMLInputElement>("long-input").value),
    });
  el<HTMLInputElement>("short-input").addEventListener("change", windowsChanged);
  el<HTMLInputElement>("long-input").addEventListener("change", windowsChanged);
  el<HTMLSelectElement>("graph-kind").addEventListener("change", (e) =>
    dispatch({
      kind: "graph-kind-changed",
      graphKind: (e.target as HTMLSelectElement).value as "itemsets" | "rules",
    }),
  );
  el("panel").addEventListener("click", (e) => {
    const target = (e.target as HTMLElement).closest<HTMLElement>(".cloud-term");
    if (target?.dataset.term) {
      dispatch({ kind: "term-clicked", term: target.dataset.term });
    }
  });
  el("reload-button").addEventListener("click", async () => {
    await fetch("/api/reload", { method: "POST" });
    void refresh();
  });
}

bind();
void refresh();
