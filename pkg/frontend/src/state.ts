import type { LatticeDoc, Metrics, SessionState } from "./types.js";

export type Mode = "simulator" | "modeller";

export type Selection =
  | { kind: "tile"; row: number; col: number }
  | { kind: "vertex"; id: number }
  | null;

/**
 * Admits one mutating request at a time. A call made while another is
 * in flight is skipped, not queued; the UI disables its inputs via
 * `locked` while waiting for the acknowledgement.
 */
export class MutationGate {
  private busy = false;

  get locked(): boolean {
    return this.busy;
  }

  async run<T>(op: () => Promise<T>): Promise<T | undefined> {
    if (this.busy) {
      return undefined;
    }
    this.busy = true;
    try {
      return await op();
    } finally {
      this.busy = false;
    }
  }
}

/**
 * What the page shows. The banner and lattice fields hold the last
 * server-acknowledged documents verbatim; nothing here recomputes
 * metrics or graph content from scratch.
 */
export class ViewState {
  mode: Mode = "simulator";
  selection: Selection = null;
  sessionId: string | null = null;
  version = 0;
  banner: Metrics | null = null;
  /** Current lattice document, as last returned by the service. */
  lattice: LatticeDoc | null = null;
  /** Prepared lattice snapshot; qubits missing from `lattice` render grey. */
  baseline: LatticeDoc | null = null;
  /** Pending compile-dialog entries, keyed "kind@row,col". */
  thetaEntries = new Map<string, string>();
  readonly gate = new MutationGate();

  /** Adopt a full session state response. */
  acknowledge(state: SessionState): void {
    this.sessionId = state.session_id;
    this.version = state.version;
    this.banner = state.metrics;
    this.lattice = state.lattice;
    if (!state.prepared) {
      this.baseline = null;
      this.selection = null;
    }
  }

  /** Adopt a mutation response carrying a lattice and version. */
  advance(version: number, lattice: LatticeDoc): void {
    this.version = version;
    this.lattice = lattice;
  }

  selectVertex(id: number): void {
    this.selection = { kind: "vertex", id };
  }

  selectedVertex(): number | null {
    return this.selection?.kind === "vertex" ? this.selection.id : null;
  }
}
