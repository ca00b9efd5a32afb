/**
 * JSON document shapes exchanged with the session service.
 *
 * These mirror the service schemas verbatim; the client never derives
 * any of these values itself.
 */

export type Pair = [number, number];

export interface Metrics {
  min_lattice: Pair;
  qubit_count: number;
  t_count: number;
}

export interface TileDoc {
  kind: string;
  row: number;
  col: number;
  theta?: number;
}

export interface AlgorithmDoc {
  version: number;
  name: string;
  tiles: TileDoc[];
}

export interface QubitDoc {
  id: number;
  row: number;
  col: number;
  role: string;
  label: string | null;
  highlight: "red" | "blue" | "none";
}

export interface LatticeDoc {
  dims: Pair;
  qubits: QubitDoc[];
  edges: Pair[];
}

export interface SessionState {
  session_id: string;
  name: string;
  version: number;
  prepared: boolean;
  metrics: Metrics;
  lattice: LatticeDoc;
}

export interface MeasurementRecord {
  vertex: number;
  axis: "x" | "y" | "z";
  sign: "+" | "-";
  b0: number | null;
  corrections: Record<string, string>;
}

export interface MeasureResponse {
  record: MeasurementRecord;
  version: number;
  lattice: LatticeDoc;
}

export interface LcResponse {
  vertex: number;
  version: number;
  lattice: LatticeDoc;
}

export interface MinimizeResponse {
  lc_sequence: number[];
  complete: boolean;
  cz_count: number;
  version: number;
  lattice: LatticeDoc;
}

export interface RotationSite {
  kind: string;
  row: number;
  col: number;
}

export interface ThetaBindingDoc extends RotationSite {
  theta: number;
}

export interface CompileResponse {
  qasm: string;
  qubits: number;
}

export interface SubmissionResult {
  endpoint: string;
  status: number;
  body: string;
  ok: boolean;
  warning: string | null;
}

export interface HistoryEvent {
  seq: number;
  op: string;
  args: Record<string, unknown>;
}

export interface GraphDoc {
  vertices: { id: number; row?: number; col?: number }[];
  edges: Pair[];
}

/** One entry of a 422 layout detail: where and why a placement failed. */
export interface Diagnostic {
  severity: string;
  rule: string;
  message: string;
  cells: Pair[];
  tiles: [string, number, number][];
}

export interface ErrorDetail {
  kind: string;
  message: string;
  vertex?: number;
  version?: number;
  diagnostics?: Diagnostic[];
  missing?: RotationSite[];
  unknown?: RotationSite[];
}
