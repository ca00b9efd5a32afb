import type { LatticeDoc, QubitDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const CELL = 26;
const RADIUS = 8;
const MARGIN = 20;

// Colour semantics: red = Clifford pattern member, blue = non-Clifford,
// grey = removed. Solid fill marks qubits measured in sigma-x/sigma-y.
const FILL_RED = "#c0392b";
const FILL_BLUE = "#2457a8";
const FILL_PLAIN = "#ffffff";
const FILL_REMOVED = "#c8c8c8";
const STROKE = "#444444";

function svgNode<T extends keyof SVGElementTagNameMap>(
  parent: Element,
  tag: T,
  attrs: Record<string, string>,
): SVGElementTagNameMap[T] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const key of Object.keys(attrs)) {
    el.setAttribute(key, attrs[key]);
  }
  parent.appendChild(el);
  return el;
}

function cx(q: { col: number }): number {
  return MARGIN + q.col * CELL;
}

function cy(q: { row: number }): number {
  return MARGIN + q.row * CELL;
}

function fillFor(q: QubitDoc): string {
  if (q.highlight === "red") return FILL_RED;
  if (q.highlight === "blue") return FILL_BLUE;
  if (q.label === "sx" || q.label === "sy") return STROKE;
  return FILL_PLAIN;
}

export interface RenderOptions {
  /** Prepared snapshot; its qubits missing from `doc` are drawn grey. */
  baseline?: LatticeDoc | null;
  selected?: number | null;
  onVertexClick?: (id: number) => void;
}

/**
 * Draw a lattice document into the SVG element. The output depends only
 * on `doc`, `baseline` and `selected`; rendering the same documents
 * twice yields byte-identical markup.
 */
export function renderLattice(
  svg: SVGSVGElement,
  doc: LatticeDoc,
  opts: RenderOptions = {},
): void {
  svg.replaceChildren();
  const [rows, cols] = doc.dims;
  const width = 2 * MARGIN + Math.max(cols - 1, 0) * CELL;
  const height = 2 * MARGIN + Math.max(rows - 1, 0) * CELL;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);

  const byId = new Map<number, QubitDoc>();
  for (const q of doc.qubits) {
    byId.set(q.id, q);
  }

  const edgeLayer = svgNode(svg, "g", { class: "edges" });
  for (const [a, b] of doc.edges) {
    const qa = byId.get(a);
    const qb = byId.get(b);
    if (!qa || !qb) continue;
    svgNode(edgeLayer, "line", {
      class: "edge",
      x1: String(cx(qa)),
      y1: String(cy(qa)),
      x2: String(cx(qb)),
      y2: String(cy(qb)),
      stroke: STROKE,
      "stroke-width": "1.5",
    });
  }

  // Removed qubits: in the prepared snapshot but no longer in the doc.
  if (opts.baseline) {
    const ghostLayer = svgNode(svg, "g", { class: "ghosts" });
    for (const q of opts.baseline.qubits) {
      if (byId.has(q.id)) continue;
      svgNode(ghostLayer, "circle", {
        class: "vertex removed",
        "data-id": String(q.id),
        cx: String(cx(q)),
        cy: String(cy(q)),
        r: String(RADIUS),
        fill: FILL_REMOVED,
        stroke: FILL_REMOVED,
      });
    }
  }

  const vertexLayer = svgNode(svg, "g", { class: "vertices" });
  for (const q of doc.qubits) {
    const classes = ["vertex", `hl-${q.highlight}`];
    if (opts.selected === q.id) classes.push("selected");
    const node = svgNode(vertexLayer, "circle", {
      class: classes.join(" "),
      "data-id": String(q.id),
      cx: String(cx(q)),
      cy: String(cy(q)),
      r: String(RADIUS),
      fill: fillFor(q),
      stroke: opts.selected === q.id ? "#e8a033" : STROKE,
      "stroke-width": opts.selected === q.id ? "3" : "1.5",
    });
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `q${q.id} (${q.row}, ${q.col}) ${q.label ?? ""}`.trimEnd();
    node.appendChild(title);
    if (opts.onVertexClick) {
      const id = q.id;
      node.addEventListener("click", () => opts.onVertexClick!(id));
    }
  }
}

/** Adjacent vertex ids, read off the document's edge list. */
export function neighbourIds(doc: LatticeDoc, vertex: number): number[] {
  const out: number[] = [];
  for (const [a, b] of doc.edges) {
    if (a === vertex) out.push(b);
    else if (b === vertex) out.push(a);
  }
  return out.sort((x, y) => x - y);
}

export interface BasisChoice {
  axis: "x" | "y" | "z";
  b0?: number;
}

/**
 * Measurement basis picker for a clicked vertex. Picking sigma-x on a
 * vertex with neighbours asks for the b0 special neighbour first.
 */
export function openBasisPicker(
  host: HTMLElement,
  vertex: number,
  neighbours: number[],
  onPick: (choice: BasisChoice) => void,
): void {
  host.replaceChildren();
  const box = document.createElement("div");
  box.className = "basis-picker";
  const title = document.createElement("div");
  title.className = "picker-title";
  title.textContent = `measure q${vertex}`;
  box.appendChild(title);

  const axisButton = (axis: "x" | "y" | "z", label: string) => {
    const btn = document.createElement("button");
    btn.className = "basis-btn";
    btn.dataset.axis = axis;
    btn.textContent = label;
    btn.addEventListener("click", () => {
      if (axis === "x" && neighbours.length > 0) {
        showB0Step();
      } else {
        host.replaceChildren();
        onPick({ axis });
      }
    });
    box.appendChild(btn);
  };
  axisButton("x", "σx");
  axisButton("y", "σy");
  axisButton("z", "σz");

  const showB0Step = () => {
    box.replaceChildren();
    const prompt = document.createElement("div");
    prompt.className = "picker-title";
    prompt.textContent = `b0 for q${vertex}`;
    box.appendChild(prompt);
    for (const nb of neighbours) {
      const btn = document.createElement("button");
      btn.className = "b0-btn";
      btn.dataset.b0 = String(nb);
      btn.textContent = `q${nb}`;
      btn.addEventListener("click", () => {
        host.replaceChildren();
        onPick({ axis: "x", b0: nb });
      });
      box.appendChild(btn);
    }
  };

  host.appendChild(box);
}

export function closeBasisPicker(host: HTMLElement): void {
  host.replaceChildren();
}
