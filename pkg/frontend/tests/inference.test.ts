import { describe, expect, it } from "vitest";

import {
  renderCcf,
  renderDegeneracyWarning,
  renderForecast,
  renderGranger,
} from "../src/render/inference.js";
import type { ApiErrorBody, CcfBody, ForecastBody, GrangerBody } from "../src/types.js";
import { count, loadFixture } from "./helpers.js";

describe("granger panel", () => {
  const paper = loadFixture<GrangerBody>("granger_paper.json");

  it("renders p=0.002103 with '**' and p=0.5694 with no star", () => {
    const rendered = renderGranger(paper);
    const rows = [...rendered.matchAll(/<tr data-direction[^>]*>.*?<\/tr>/g)].map((m) => m[0]);
    expect(rows).toHaveLength(2);
    const [supportRow, priceRow] = rows;
    expect(supportRow).toContain('<td class="p-value">0.002103</td>');
    expect(supportRow).toContain('<td class="stars">**</td>');
    expect(priceRow).toContain('<td class="p-value">0.5694</td>');
    expect(priceRow).toContain('<td class="stars"></td>');
  });

  it("shows four significant digits of the F statistics", () => {
    const rendered = renderGranger(paper);
    expect(rendered).toContain('<td class="f-stat">10.05</td>');
    expect(rendered).toContain('<td class="f-stat">0.3261</td>');
  });

  it("renders the recorded (real-data) body without errors", () => {
    const real = loadFixture<GrangerBody>("granger_real.json");
    const rendered = renderGranger(real);
    expect(count(rendered, "<tr data-direction")).toBe(2);
    expect(rendered).toContain(real.support_to_price.cause);
  });
});

describe("ccf panel (recorded fixture)", () => {
  const ccf = loadFixture<CcfBody>("ccf.json");

  it("draws one bar per lag, labeled", () => {
    const rendered = renderCcf(ccf);
    expect(count(rendered, 'class="ccf-bar"')).toBe(ccf.lags.length);
    expect(ccf.lags).toEqual(Array.from({ length: 17 }, (_, i) => i - 8));
    expect(rendered).toContain('data-lag="-8"');
    expect(rendered).toContain('data-lag="8"');
  });
});

describe("forecast panel (recorded fixtures)", () => {
  it("draws a fan band plus the point line", () => {
    const body = loadFixture<ForecastBody>("forecast.json");
    const rendered = renderForecast(body);
    expect(rendered).toContain('class="fan"');
    expect(rendered).toContain('class="forecast-line"');
  });

  it("omits the fan when the band has zero width (sigma2 = 0)", () => {
    const flat = loadFixture<ForecastBody>("forecast_flat.json");
    expect(flat.sigma2).toBe(0);
    const rendered = renderForecast(flat);
    expect(rendered).not.toContain('class="fan"');
    expect(rendered).toContain('class="forecast-line"');
  });
});

describe("degeneracy handling (recorded 422)", () => {
  it("shows an inline warning naming the degenerate stage", () => {
    const recorded = loadFixture<{ status: number; body: ApiErrorBody }>(
      "error_ccf_degenerate.json",
    );
    expect(recorded.status).toBe(422);
    const rendered = renderDegeneracyWarning(recorded.body);
    expect(rendered).toContain('data-stage="ccf"');
    expect(rendered).toContain("ccf");
    expect(rendered).toContain("zero variance");
  });
});
