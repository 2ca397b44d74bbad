// Shapes of the JSON documents the HTTP service produces.  The UI does
// no portfolio math of its own: every number shown comes from one of
// these documents.

export interface IntervalDoc {
  lower: number;
  upper: number;
}

export interface AssetInterval {
  asset: string;
  lower: number;
  upper: number;
}

export interface ProblemSummary {
  n_assets: number;
  n_periods: number;
  assets: string[];
  risk_free_rate: number;
  risk_tolerance: IntervalDoc;
  intervals: AssetInterval[];
}

export interface CreateResponse {
  id: string;
  summary: ProblemSummary;
}

export interface SolutionDoc {
  alpha: number;
  lambda: number;
  status: "optimal";
  objective_value: number;
  assets: string[];
  allocation: number[];
  net_return: IntervalDoc;
  risk: IntervalDoc;
  satisfaction: number;
  transaction_cost: number;
}

export interface SweepRowDoc {
  alpha: number;
  lambda: number;
  status: "optimal" | "infeasible";
  objective_value: number | null;
  allocation: number[] | null;
  return_interval: IntervalDoc | null;
  risk_interval: IntervalDoc | null;
  satisfaction: number | null;
  transaction_cost: number | null;
  infeasible_reason: string | null;
}

export interface SweepDoc {
  fingerprint: string;
  assets: string[];
  alphas: number[];
  lambdas: number[];
  rows: SweepRowDoc[];
}

export interface ProblemConfig {
  risk_free_rate: number;
  forecasts: number[];
  risk_tolerance: [number, number];
  m?: number;
  k?: number[];
  x0?: number[];
  u?: number[];
}
