import type { SolveOutcome } from "./state.js";
import type { ProblemSummary } from "./types.js";

const SEGMENT_COLORS = [
  "#4c78a8",
  "#f58518",
  "#54a24b",
  "#b279a2",
  "#e45756",
  "#72b7b2",
  "#9d755d",
  "#eeca3b",
];
const RISK_FREE_COLOR = "#bab0ac";

export function fmt(value: number, digits = 4): string {
  return value.toFixed(digits);
}

export function fmtInterval(lower: number, upper: number): string {
  return `[${fmt(lower)}, ${fmt(upper)}]`;
}

function labelFor(asset: string): string {
  return asset === "risk_free" ? "risk-free" : asset;
}

/** Per-asset estimated return intervals, lower/upper columns. */
export function renderIntervalTable(
  container: HTMLElement,
  summary: ProblemSummary | null,
): void {
  container.textContent = "";
  if (summary === null) return;
  const table = document.createElement("table");
  table.className = "intervals";
  const head = table.insertRow();
  for (const text of ["asset", "lower", "upper"]) {
    const th = document.createElement("th");
    th.textContent = text;
    head.appendChild(th);
  }
  for (const item of summary.intervals) {
    const row = table.insertRow();
    row.insertCell().textContent = item.asset;
    row.insertCell().textContent = fmt(item.lower);
    row.insertCell().textContent = fmt(item.upper);
  }
  container.appendChild(table);
}

/** Allocation as a table plus a stacked bar; the risk-free slot is
 * always labeled "risk-free", never a stock name. */
export function renderAllocation(
  container: HTMLElement,
  outcome: SolveOutcome | null,
): void {
  container.textContent = "";
  if (outcome === null) {
    const notice = document.createElement("p");
    notice.className = "notice";
    notice.textContent = "Load a problem to see an allocation.";
    container.appendChild(notice);
    return;
  }
  if (outcome.kind === "infeasible") {
    const box = document.createElement("div");
    box.className = "infeasible-state";
    const head = document.createElement("p");
    head.textContent = "Infeasible at the selected parameters.";
    const why = document.createElement("p");
    why.className = "reason";
    why.textContent = outcome.message;
    box.append(head, why);
    container.appendChild(box);
    return;
  }
  if (outcome.kind === "error") {
    const box = document.createElement("div");
    box.className = "error-state";
    box.textContent = `Request failed: ${outcome.message}. Adjust a slider to retry.`;
    container.appendChild(box);
    return;
  }

  const doc = outcome.doc;
  const readout = document.createElement("dl");
  readout.className = "readout";
  const pairs: Array<[string, string]> = [
    ["objective", fmt(doc.objective_value)],
    ["net return", fmtInterval(doc.net_return.lower, doc.net_return.upper)],
    ["risk", fmtInterval(doc.risk.lower, doc.risk.upper)],
    ["satisfaction", fmt(doc.satisfaction)],
    ["transaction cost", fmt(doc.transaction_cost)],
  ];
  for (const [term, value] of pairs) {
    const dt = document.createElement("dt");
    dt.textContent = term;
    const dd = document.createElement("dd");
    dd.textContent = value;
    readout.append(dt, dd);
  }
  container.appendChild(readout);

  const bar = document.createElement("div");
  bar.className = "stacked-bar";
  doc.allocation.forEach((weight, index) => {
    if (weight <= 1e-9) return;
    const asset = doc.assets[index] ?? `A${index + 1}`;
    const segment = document.createElement("div");
    segment.className = asset === "risk_free" ? "segment risk-free" : "segment";
    segment.style.width = `${(weight * 100).toFixed(2)}%`;
    segment.style.background =
      asset === "risk_free"
        ? RISK_FREE_COLOR
        : SEGMENT_COLORS[index % SEGMENT_COLORS.length]!;
    segment.title = `${labelFor(asset)}: ${fmt(weight)}`;
    segment.textContent = labelFor(asset);
    bar.appendChild(segment);
  });
  container.appendChild(bar);

  const table = document.createElement("table");
  table.className = "allocation";
  const head = table.insertRow();
  for (const text of ["asset", "weight"]) {
    const th = document.createElement("th");
    th.textContent = text;
    head.appendChild(th);
  }
  doc.assets.forEach((asset, index) => {
    const row = table.insertRow();
    row.insertCell().textContent = labelFor(asset);
    row.insertCell().textContent = fmt(doc.allocation[index] ?? 0);
  });
  container.appendChild(table);
}
