/**
 * Thin client for the planner service. At most one solve request is in
 * flight; a newer call aborts and replaces the older one.
 */

import type { FarmJson, SolveRequest, SolveResponse, StrategyPair } from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export const DEFAULT_BUDGET_MS = 2000;

export class PlannerClient {
  private inflight: AbortController | null = null;

  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async post<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    const payload = await response.json();
    if (!response.ok) {
      const detail = (payload as { error?: string }).error ?? response.statusText;
      if (response.status === 422) {
        throw new ServiceError(422, "no feasible layout — increase substation capacity");
      }
      throw new ServiceError(response.status, detail);
    }
    return payload as T;
  }

  /** Solve with cancel-and-replace semantics. */
  async solve(
    farm: FarmJson,
    strategy: StrategyPair,
    options: { seed?: number; budgetMs?: number } = {},
  ): Promise<SolveResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const request: SolveRequest = {
      farm,
      init: strategy.init,
      delta: strategy.delta,
      seed: options.seed ?? 0,
      time_limit_ms: options.budgetMs ?? DEFAULT_BUDGET_MS,
    };
    try {
      return await this.post<SolveResponse>("/solve", request, controller.signal);
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }

  /** Exact optimum for tiny documents; the service refuses big ones (413). */
  async oracle(farm: FarmJson): Promise<SolveResponse & { proved_optimal: boolean }> {
    return this.post("/oracle", { farm });
  }

  async generate(options: Record<string, unknown> = {}): Promise<FarmJson> {
    const body = await this.post<{ farm: FarmJson }>("/generate", options);
    return body.farm;
  }
}
