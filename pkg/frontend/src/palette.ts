import { ApiError } from "./client.js";
import type { AlgorithmDoc, Diagnostic, SessionState, TileDoc } from "./types.js";

export const TILE_KINDS = [
  "input",
  "wire",
  "hadamard",
  "s",
  "t",
  "rotx",
  "roty",
  "rotz",
  "cnot",
  "readout",
] as const;

export type PlacementResult =
  | { ok: true; state: SessionState }
  | { ok: false; diagnostics: Diagnostic[] };

/**
 * The draft document under edit. Every change is sent to the service as
 * a full grid replacement; only acknowledged documents are kept, so a
 * rejected placement leaves the draft exactly as it was.
 */
export class DraftGrid {
  private acknowledged: AlgorithmDoc = { version: 1, name: "", tiles: [] };

  constructor(
    private readonly push: (doc: AlgorithmDoc) => Promise<SessionState>,
  ) {}

  get doc(): AlgorithmDoc {
    return this.acknowledged;
  }

  async place(tile: TileDoc): Promise<PlacementResult> {
    return this.replace({
      ...this.acknowledged,
      tiles: [...this.acknowledged.tiles, tile],
    });
  }

  async remove(row: number, col: number): Promise<PlacementResult> {
    return this.replace({
      ...this.acknowledged,
      tiles: this.acknowledged.tiles.filter(
        (t) => t.row !== row || t.col !== col,
      ),
    });
  }

  async clear(): Promise<PlacementResult> {
    return this.replace({ ...this.acknowledged, tiles: [] });
  }

  /** Replace the whole document, e.g. when loading a saved algorithm. */
  async load(doc: AlgorithmDoc): Promise<PlacementResult> {
    return this.replace(doc);
  }

  private async replace(attempt: AlgorithmDoc): Promise<PlacementResult> {
    try {
      const state = await this.push(attempt);
      this.acknowledged = attempt;
      return { ok: true, state };
    } catch (err) {
      if (err instanceof ApiError && err.detail.diagnostics) {
        return { ok: false, diagnostics: err.detail.diagnostics };
      }
      throw err;
    }
  }
}

const TILE_GLYPHS: Record<string, string> = {
  input: "in",
  wire: "─",
  hadamard: "H",
  s: "S",
  t: "T",
  rotx: "Rx",
  roty: "Ry",
  rotz: "Rz",
  cnot: "⊕",
  readout: "M",
};

/**
 * Draw the draft tiles and any rejection markers. Markers sit at the
 * diagnostic's cells so the collision is visible at the offending tile.
 */
export function renderDraft(
  container: HTMLElement,
  doc: AlgorithmDoc,
  markers: Diagnostic[] = [],
): void {
  container.replaceChildren();
  for (const tile of doc.tiles) {
    const el = document.createElement("div");
    el.className = `tile tile-${tile.kind}`;
    el.dataset.kind = tile.kind;
    el.dataset.row = String(tile.row);
    el.dataset.col = String(tile.col);
    el.style.gridRow = String(tile.row + 1);
    el.style.gridColumn = String(tile.col + 1);
    el.textContent = TILE_GLYPHS[tile.kind] ?? tile.kind;
    if (tile.theta !== undefined) {
      el.title = `theta = ${tile.theta}`;
    }
    container.appendChild(el);
  }
  for (const diag of markers) {
    for (const [row, col] of diag.cells) {
      const mark = document.createElement("div");
      mark.className = "collision-marker";
      mark.dataset.row = String(row);
      mark.dataset.col = String(col);
      mark.style.gridRow = String(row + 1);
      mark.style.gridColumn = String(col + 1);
      mark.title = diag.message;
      container.appendChild(mark);
    }
  }
}
