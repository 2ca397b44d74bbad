import type {
  CreateResponse,
  ProblemConfig,
  SolutionDoc,
  SweepDoc,
} from "./types.js";

export interface Api {
  createProblem(history: string, config: ProblemConfig): Promise<CreateResponse>;
  solve(id: string, alpha: number, lambda: number): Promise<SolutionDoc>;
  sweep(id: string, alphas: number[], lambdas: number[]): Promise<SweepDoc>;
}

/** Solve rejected because no allocation satisfies the constraints. */
export class InfeasibleError extends Error {
  constructor(message: string, readonly reason: string) {
    super(message);
    this.name = "InfeasibleError";
  }
}

/** Any other non-2xx answer; `field` names the offending input if the
 * service identified one. */
export class RequestError extends Error {
  constructor(message: string, readonly status: number, readonly field?: string) {
    super(message);
    this.name = "RequestError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class HttpApi implements Api {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly baseUrl: string = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async post(path: string, body: unknown): Promise<unknown> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = (await response.json().catch(() => null)) as {
      detail?: { message?: string; reason?: string; field?: string };
    } | null;
    if (response.ok) return payload;
    const detail = payload?.detail;
    if (response.status === 422 && detail?.reason) {
      throw new InfeasibleError(detail.message ?? "infeasible", detail.reason);
    }
    throw new RequestError(
      detail?.message ?? `request failed (${response.status})`,
      response.status,
      detail?.field,
    );
  }

  async createProblem(history: string, config: ProblemConfig): Promise<CreateResponse> {
    return (await this.post("/api/problems", { history, config })) as CreateResponse;
  }

  async solve(id: string, alpha: number, lambda: number): Promise<SolutionDoc> {
    return (await this.post(`/api/problems/${id}/solve`, {
      alpha,
      lambda,
    })) as SolutionDoc;
  }

  async sweep(id: string, alphas: number[], lambdas: number[]): Promise<SweepDoc> {
    return (await this.post(`/api/problems/${id}/sweep`, {
      alphas,
      lambdas,
    })) as SweepDoc;
  }
}
