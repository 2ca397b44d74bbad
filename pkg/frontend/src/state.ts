import { InfeasibleError, type Api } from "./api.js";
import type {
  ProblemConfig,
  ProblemSummary,
  SolutionDoc,
  SweepDoc,
} from "./types.js";

export type SolveOutcome =
  | { kind: "solution"; doc: SolutionDoc }
  | { kind: "infeasible"; reason: string; message: string }
  | { kind: "error"; message: string };

export interface ExplorerState {
  problemId: string | null;
  summary: ProblemSummary | null;
  alpha: number;
  lambda: number;
  tolerance: [number, number];
  outcome: SolveOutcome | null;
  sweep: SweepDoc | null;
  solving: boolean;
  loadError: string | null;
}

export interface StoreOptions {
  debounceMs?: number;
  sweepAlphas?: number[];
  sweepLambdas?: number[];
}

const DEFAULT_DEBOUNCE_MS = 150;
const DEFAULT_SWEEP_ALPHAS = [0.5, 1.0];
const DEFAULT_SWEEP_LAMBDAS = [0, 0.12, 0.24, 0.36, 0.48, 0.6, 0.72, 0.84, 0.96];

/** Holds everything the views render and owns the request discipline:
 * slider edits are debounced, and every solve/sweep response carries
 * the sequence number it was issued under — a reply older than the
 * latest issue is dropped, so the displayed allocation always belongs
 * to the currently selected parameters. */
export class ExplorerStore {
  readonly state: ExplorerState = {
    problemId: null,
    summary: null,
    alpha: 0.5,
    lambda: 0.24,
    tolerance: [0, 0],
    outcome: null,
    sweep: null,
    solving: false,
    loadError: null,
  };

  private readonly debounceMs: number;
  private readonly sweepAlphas: number[];
  private readonly sweepLambdas: number[];
  private readonly listeners = new Set<(state: ExplorerState) => void>();
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private solveSeq = 0;
  private sweepSeq = 0;
  private historyText = "";
  private config: ProblemConfig | null = null;

  constructor(
    private readonly api: Api,
    options: StoreOptions = {},
  ) {
    this.debounceMs = options.debounceMs ?? DEFAULT_DEBOUNCE_MS;
    this.sweepAlphas = options.sweepAlphas ?? DEFAULT_SWEEP_ALPHAS;
    this.sweepLambdas = options.sweepLambdas ?? DEFAULT_SWEEP_LAMBDAS;
  }

  subscribe(listener: (state: ExplorerState) => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  /** POST the problem, then refresh both the solution and the sweep. */
  async loadProblem(historyText: string, config: ProblemConfig): Promise<void> {
    this.state.loadError = null;
    this.emit();
    let created;
    try {
      created = await this.api.createProblem(historyText, config);
    } catch (error) {
      this.state.loadError = error instanceof Error ? error.message : String(error);
      this.emit();
      return;
    }
    this.historyText = historyText;
    this.config = config;
    this.state.problemId = created.id;
    this.state.summary = created.summary;
    this.state.tolerance = [
      created.summary.risk_tolerance.lower,
      created.summary.risk_tolerance.upper,
    ];
    this.state.sweep = null;
    this.emit();
    await Promise.all([this.issueSolve(), this.refreshSweep()]);
  }

  /** Re-create the problem under an edited tolerance interval. */
  async setTolerance(lower: number, upper: number): Promise<void> {
    if (!this.config) return;
    const config: ProblemConfig = {
      ...this.config,
      risk_tolerance: [lower, upper],
    };
    await this.loadProblem(this.historyText, config);
  }

  /** Slider path: debounced so a drag issues one request, not dozens. */
  setParameters(alpha: number, lambda: number): void {
    this.state.alpha = alpha;
    this.state.lambda = lambda;
    this.emit();
    if (this.debounceTimer !== null) clearTimeout(this.debounceTimer);
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      void this.issueSolve();
    }, this.debounceMs);
  }

  /** Chart click: same as moving both sliders to the cell. */
  selectCell(alpha: number, lambda: number): void {
    this.setParameters(alpha, lambda);
  }

  private async issueSolve(): Promise<void> {
    if (this.state.problemId === null) return;
    const ticket = ++this.solveSeq;
    const { problemId, alpha, lambda } = this.state;
    this.state.solving = true;
    this.emit();
    let outcome: SolveOutcome;
    try {
      const doc = await this.api.solve(problemId, alpha, lambda);
      outcome = { kind: "solution", doc };
    } catch (error) {
      if (error instanceof InfeasibleError) {
        outcome = { kind: "infeasible", reason: error.reason, message: error.message };
      } else {
        outcome = {
          kind: "error",
          message: error instanceof Error ? error.message : String(error),
        };
      }
    }
    if (ticket !== this.solveSeq) return; // superseded while in flight
    this.state.outcome = outcome;
    this.state.solving = false;
    this.emit();
  }

  private async refreshSweep(): Promise<void> {
    if (this.state.problemId === null) return;
    const ticket = ++this.sweepSeq;
    try {
      const doc = await this.api.sweep(
        this.state.problemId,
        this.sweepAlphas,
        this.sweepLambdas,
      );
      if (ticket !== this.sweepSeq) return;
      this.state.sweep = doc;
    } catch {
      if (ticket !== this.sweepSeq) return;
      this.state.sweep = null;
    }
    this.emit();
  }
}
