import type { Api } from "./api.js";
import { renderFrontier } from "./chart.js";
import { ExplorerStore, type StoreOptions } from "./state.js";
import { renderAllocation, renderIntervalTable, fmt } from "./views.js";
import type { ProblemConfig } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function slider(id: string, value: number): HTMLInputElement {
  const input = el("input");
  input.type = "range";
  input.id = id;
  input.min = "0";
  input.max = "1";
  input.step = "0.01";
  input.value = String(value);
  return input;
}

function numberInput(id: string, value: number): HTMLInputElement {
  const input = el("input");
  input.type = "number";
  input.id = id;
  input.step = "0.001";
  input.min = "0";
  input.value = String(value);
  return input;
}

/** Builds the explorer into `root` and returns its store.  All data
 * flows through the injected Api, so tests can mount the real UI
 * against a scripted backend. */
export function createExplorer(
  root: HTMLElement,
  api: Api,
  options: StoreOptions = {},
): ExplorerStore {
  const store = new ExplorerStore(api, options);

  const loader = el("section", "loader");
  loader.appendChild(el("h2", undefined, "Problem"));
  const historyInput = el("input");
  historyInput.type = "file";
  historyInput.id = "history-file";
  historyInput.accept = ".csv,text/csv";
  const configInput = el("input");
  configInput.type = "file";
  configInput.id = "config-file";
  configInput.accept = ".json,application/json";
  const loadButton = el("button", undefined, "Load");
  loadButton.id = "load";
  const loadError = el("p", "load-error");
  loadError.hidden = true;
  const historyLabel = el("label", undefined, "history CSV ");
  historyLabel.appendChild(historyInput);
  const configLabel = el("label", undefined, "config JSON ");
  configLabel.appendChild(configInput);
  loader.append(historyLabel, configLabel, loadButton, loadError);

  const summarySection = el("section", "summary");
  summarySection.appendChild(el("h2", undefined, "Return intervals"));
  const intervalContainer = el("div");
  intervalContainer.id = "interval-table";
  summarySection.appendChild(intervalContainer);

  const controls = el("section", "controls");
  controls.appendChild(el("h2", undefined, "Parameters"));
  const alphaSlider = slider("alpha", store.state.alpha);
  const alphaValue = el("span", "value");
  alphaValue.id = "alpha-value";
  const lambdaSlider = slider("lambda", store.state.lambda);
  const lambdaValue = el("span", "value");
  lambdaValue.id = "lambda-value";
  const alphaLabel = el("label", undefined, "satisfaction grade alpha ");
  alphaLabel.append(alphaSlider, alphaValue);
  const lambdaLabel = el("label", undefined, "pessimism weight lambda ");
  lambdaLabel.append(lambdaSlider, lambdaValue);
  const toleranceLow = numberInput("tolerance-low", 0);
  const toleranceHigh = numberInput("tolerance-high", 0);
  const toleranceApply = el("button", undefined, "Apply tolerance");
  toleranceApply.id = "apply-tolerance";
  const toleranceLabel = el("label", undefined, "risk tolerance ");
  toleranceLabel.append(toleranceLow, toleranceHigh, toleranceApply);
  controls.append(alphaLabel, lambdaLabel, toleranceLabel);

  const chartSection = el("section", "chart");
  chartSection.appendChild(el("h2", undefined, "Frontier"));
  const chartContainer = el("div");
  chartContainer.id = "frontier";
  chartSection.appendChild(chartContainer);

  const allocationSection = el("section", "allocation-section");
  allocationSection.appendChild(el("h2", undefined, "Allocation"));
  const statusLine = el("p", "status");
  statusLine.id = "status";
  const allocationContainer = el("div");
  allocationContainer.id = "allocation";
  allocationSection.append(statusLine, allocationContainer);

  root.append(loader, summarySection, controls, chartSection, allocationSection);

  const readFile = (input: HTMLInputElement): Promise<string> => {
    const file = input.files?.[0];
    if (!file) return Promise.reject(new Error("no file selected"));
    return file.text();
  };

  loadButton.addEventListener("click", () => {
    void (async () => {
      try {
        const historyText = await readFile(historyInput);
        const configText = await readFile(configInput);
        const config = JSON.parse(configText) as ProblemConfig;
        await store.loadProblem(historyText, config);
      } catch (error) {
        loadError.hidden = false;
        loadError.textContent =
          error instanceof Error ? error.message : String(error);
      }
    })();
  });

  const onSlide = () => {
    store.setParameters(Number(alphaSlider.value), Number(lambdaSlider.value));
  };
  alphaSlider.addEventListener("input", onSlide);
  lambdaSlider.addEventListener("input", onSlide);

  toleranceApply.addEventListener("click", () => {
    void store.setTolerance(Number(toleranceLow.value), Number(toleranceHigh.value));
  });

  store.subscribe((state) => {
    alphaSlider.value = String(state.alpha);
    lambdaSlider.value = String(state.lambda);
    alphaValue.textContent = fmt(state.alpha, 2);
    lambdaValue.textContent = fmt(state.lambda, 2);
    if (document.activeElement !== toleranceLow) {
      toleranceLow.value = String(state.tolerance[0]);
    }
    if (document.activeElement !== toleranceHigh) {
      toleranceHigh.value = String(state.tolerance[1]);
    }
    loadError.hidden = state.loadError === null;
    loadError.textContent = state.loadError ?? "";
    statusLine.textContent = state.solving
      ? "solving..."
      : state.problemId
        ? `problem ${state.problemId}`
        : "";
    renderIntervalTable(intervalContainer, state.summary);
    renderFrontier(
      chartContainer,
      state.sweep,
      { alpha: state.alpha, lambda: state.lambda },
      (cell) => store.selectCell(cell.alpha, cell.lambda),
    );
    renderAllocation(allocationContainer, state.outcome);
  });

  return store;
}
