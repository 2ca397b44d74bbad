import type { SweepDoc, SweepRowDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 520;
const HEIGHT = 340;
const MARGIN = { top: 16, right: 16, bottom: 48, left: 64 };

export interface CellSelection {
  alpha: number;
  lambda: number;
}

interface PlottedCell {
  row: SweepRowDoc;
  riskMid: number;
  returnMid: number;
}

function midpoint(lower: number, upper: number): number {
  return (lower + upper) / 2;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

/** Scatter of risk-interval midpoint (x) against return-interval
 * midpoint (y), one marker per sweep cell with whiskers spanning the
 * intervals.  Infeasible cells are greyed ticks along the bottom.
 * Clicking any cell reports its grid coordinates. */
export function renderFrontier(
  container: HTMLElement,
  sweep: SweepDoc | null,
  selected: CellSelection,
  onSelect: (cell: CellSelection) => void,
): void {
  container.textContent = "";
  if (sweep === null || sweep.rows.length === 0) {
    const notice = document.createElement("p");
    notice.className = "notice";
    notice.textContent = "No sweep loaded yet.";
    container.appendChild(notice);
    return;
  }

  const plotted: PlottedCell[] = [];
  const infeasible: SweepRowDoc[] = [];
  for (const row of sweep.rows) {
    if (row.status === "optimal" && row.risk_interval && row.return_interval) {
      plotted.push({
        row,
        riskMid: midpoint(row.risk_interval.lower, row.risk_interval.upper),
        returnMid: midpoint(row.return_interval.lower, row.return_interval.upper),
      });
    } else {
      infeasible.push(row);
    }
  }

  if (plotted.length === 0) {
    const notice = document.createElement("p");
    notice.className = "notice";
    notice.textContent =
      "Every cell in the sweep is infeasible at the current tolerance.";
    container.appendChild(notice);
    return;
  }

  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const cell of plotted) {
    const risk = cell.row.risk_interval!;
    const ret = cell.row.return_interval!;
    xMin = Math.min(xMin, risk.lower);
    xMax = Math.max(xMax, risk.upper);
    yMin = Math.min(yMin, ret.lower);
    yMax = Math.max(yMax, ret.upper);
  }
  const xPad = (xMax - xMin || 1e-6) * 0.08;
  const yPad = (yMax - yMin || 1e-6) * 0.08;
  xMin -= xPad;
  xMax += xPad;
  yMin -= yPad;
  yMax += yPad;

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (v: number) => MARGIN.left + ((v - xMin) / (xMax - xMin)) * plotW;
  const sy = (v: number) => MARGIN.top + plotH - ((v - yMin) / (yMax - yMin)) * plotH;

  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "frontier",
    role: "img",
  });

  svg.appendChild(
    svgEl("line", {
      x1: String(MARGIN.left),
      y1: String(MARGIN.top + plotH),
      x2: String(MARGIN.left + plotW),
      y2: String(MARGIN.top + plotH),
      class: "axis",
    }),
  );
  svg.appendChild(
    svgEl("line", {
      x1: String(MARGIN.left),
      y1: String(MARGIN.top),
      x2: String(MARGIN.left),
      y2: String(MARGIN.top + plotH),
      class: "axis",
    }),
  );
  const xLabel = svgEl("text", {
    x: String(MARGIN.left + plotW / 2),
    y: String(HEIGHT - 8),
    "text-anchor": "middle",
    class: "axis-label",
  });
  xLabel.textContent = "risk interval midpoint";
  svg.appendChild(xLabel);
  const yLabel = svgEl("text", {
    x: "14",
    y: String(MARGIN.top + plotH / 2),
    "text-anchor": "middle",
    transform: `rotate(-90 14 ${MARGIN.top + plotH / 2})`,
    class: "axis-label",
  });
  yLabel.textContent = "return interval midpoint";
  svg.appendChild(yLabel);

  const matchesSelection = (row: SweepRowDoc) =>
    Math.abs(row.alpha - selected.alpha) < 1e-9 &&
    Math.abs(row.lambda - selected.lambda) < 1e-9;

  for (const cell of plotted) {
    const { row } = cell;
    const group = svgEl("g", {
      class: matchesSelection(row) ? "cell selected" : "cell",
      "data-alpha": String(row.alpha),
      "data-lambda": String(row.lambda),
    });
    const risk = row.risk_interval!;
    const ret = row.return_interval!;
    group.appendChild(
      svgEl("line", {
        x1: String(sx(risk.lower)),
        y1: String(sy(cell.returnMid)),
        x2: String(sx(risk.upper)),
        y2: String(sy(cell.returnMid)),
        class: "whisker",
      }),
    );
    group.appendChild(
      svgEl("line", {
        x1: String(sx(cell.riskMid)),
        y1: String(sy(ret.lower)),
        x2: String(sx(cell.riskMid)),
        y2: String(sy(ret.upper)),
        class: "whisker",
      }),
    );
    group.appendChild(
      svgEl("circle", {
        cx: String(sx(cell.riskMid)),
        cy: String(sy(cell.returnMid)),
        r: "5",
      }),
    );
    const title = svgEl("title", {});
    title.textContent = `alpha=${row.alpha}, lambda=${row.lambda}`;
    group.appendChild(title);
    group.addEventListener("click", () =>
      onSelect({ alpha: row.alpha, lambda: row.lambda }),
    );
    svg.appendChild(group);
  }

  // infeasible cells keep a greyed, clickable presence along the base
  infeasible.forEach((row, index) => {
    const x = MARGIN.left + 10 + index * 14;
    const group = svgEl("g", {
      class: "cell infeasible",
      "data-alpha": String(row.alpha),
      "data-lambda": String(row.lambda),
    });
    group.appendChild(
      svgEl("rect", {
        x: String(x),
        y: String(MARGIN.top + plotH + 6),
        width: "8",
        height: "8",
      }),
    );
    const title = svgEl("title", {});
    title.textContent = `alpha=${row.alpha}, lambda=${row.lambda}: infeasible`;
    group.appendChild(title);
    group.addEventListener("click", () =>
      onSelect({ alpha: row.alpha, lambda: row.lambda }),
    );
    svg.appendChild(group);
  });

  container.appendChild(svg);
}
