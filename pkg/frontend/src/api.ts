// API access. The HTTP client is the production path; the fixture client
// replays recorded bodies so tests exercise the UI with no server and no
// statistics of their own.

import type { ApiErrorBody } from "./types.js";

export type Params = Record<string, string | number>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(`${body.stage}: ${body.message}`);
  }
}

export interface ApiClient {
  get(path: string, params?: Params, signal?: AbortSignal): Promise<unknown>;
}

export function queryKey(path: string, params: Params = {}): string {
  const pairs = Object.keys(params)
    .sort()
    .map((k) => `${k}=${String(params[k])}`);
  return pairs.length ? `${path}?${pairs.join("&")}` : path;
}

export class HttpClient implements ApiClient {
  constructor(private readonly base: string = "") {}

  async get(path: string, params: Params = {}, signal?: AbortSignal): Promise<unknown> {
    const url = new URL(this.base + path, window.location.origin);
    for (const [key, value] of Object.entries(params)) {
      url.searchParams.set(key, String(value));
    }
    const response = await fetch(url, { signal });
    const body = (await response.json()) as unknown;
    if (!response.ok) {
      throw new ApiError(response.status, body as ApiErrorBody);
    }
    return body;
  }
}

export interface FixtureEntry {
  status?: number;
  body: unknown;
}

/** Replays canned responses keyed by `path?sorted=query`. */
export class FixtureClient implements ApiClient {
  constructor(private readonly fixtures: Record<string, FixtureEntry>) {}

  async get(path: string, params: Params = {}): Promise<unknown> {
    const key = queryKey(path, params);
    const entry = this.fixtures[key];
    if (entry === undefined) {
      throw new Error(`no recorded fixture for ${key}`);
    }
    const status = entry.status ?? 200;
    if (status >= 400) {
      throw new ApiError(status, entry.body as ApiErrorBody);
    }
    return entry.body;
  }
}
