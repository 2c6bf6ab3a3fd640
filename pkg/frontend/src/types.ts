// Response shapes of the /api/* endpoints the workbench consumes.

export interface TermEntry {
  term: string;
  document_frequency: number;
  occurrences: number;
}

export interface TermsBody {
  total_transactions: number;
  terms: TermEntry[];
}

export interface AssociationEntry {
  term: string;
  correlation: number;
}

export interface AssociationsBody {
  term: string;
  min_corr: number;
  associations: AssociationEntry[];
}

export interface SeriesPoint {
  date: string;
  support: number;
  n_transactions: number;
}

export interface DatedValue {
  date: string;
  value: number;
}

export interface Signal {
  date: string;
  direction: "up" | "down";
}

export interface SeriesBody {
  itemset: string[];
  points: SeriesPoint[];
  short_window: number;
  long_window: number;
  short_ma: DatedValue[];
  long_ma: DatedValue[];
  signals: Signal[];
}

export interface BarEntry {
  date: string;
  open: number;
  high: number;
  low: number;
  close: number;
  volume: number;
}

export interface MarketBody {
  symbol: string;
  bars: BarEntry[];
}

export interface CcfBody {
  itemset: string[];
  symbol: string;
  max_lag: number;
  aligned_days: number;
  lags: number[];
  values: number[];
}

export interface GrangerDirection {
  effect: string;
  cause: string;
  f_stat: number;
  p_value: number;
  df1: number;
  df2: number;
  rss_restricted: number;
  rss_unrestricted: number;
  stars: string;
}

export interface GrangerBody {
  itemset: string[];
  symbol: string;
  lag_order: number;
  transform: string;
  support_to_price: GrangerDirection;
  price_to_support: GrangerDirection;
}

export interface ForecastStep {
  step: number;
  point: number;
  lower95: number;
  upper95: number;
}

export interface ForecastBody {
  symbol: string;
  p: number;
  d: number;
  horizon: number;
  last_date: string;
  last_close: number;
  sigma2: number;
  coefficients: number[];
  forecasts: ForecastStep[];
}

export interface GraphBody {
  kind: "itemsets" | "rules";
  nodes: { id: string; kind: string; attrs: Record<string, unknown> }[];
  edges: { from: string; to: string }[];
}

/** Structured error body the service returns with HTTP 400 / 422. */
export interface ApiErrorBody {
  stage: string;
  code: string;
  message: string;
}
