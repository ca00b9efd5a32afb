import { ApiError, ForgeClient } from "./client.js";
import { renderBanner } from "./banner.js";
import { ViewState } from "./state.js";
import { DraftGrid, renderDraft, TILE_KINDS } from "./palette.js";
import {
  closeBasisPicker,
  neighbourIds,
  openBasisPicker,
  renderLattice,
} from "./lattice.js";
import { CompileDialog } from "./dialog.js";
import type { Diagnostic, RotationSite } from "./types.js";

const DEFAULT_ROWS = 8;
const DEFAULT_COLS = 56;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  return param ?? "http://localhost:8000";
}

export function boot(): () => void {
  const client = new ForgeClient(apiBase());
  const state = new ViewState();

  const banner = el<HTMLElement>("banner");
  const status = el<HTMLElement>("status");
  const paletteBox = el<HTMLElement>("palette");
  const cellLayer = el<HTMLElement>("cells");
  const tileLayer = el<HTMLElement>("tiles");
  const svg = el<HTMLElement>("lattice") as unknown as SVGSVGElement;
  const picker = el<HTMLElement>("picker");
  const refreshPrompt = el<HTMLElement>("refresh-prompt");
  const dialogRoot = el<HTMLElement>("dialog");

  let currentKind: string = "wire";
  let markers: Diagnostic[] = [];

  const draft = new DraftGrid((doc) => {
    if (!state.sessionId) throw new Error("no session");
    return client.replaceGrid(state.sessionId, doc);
  });

  const dialog = new CompileDialog(dialogRoot, {
    compile: (bindings) => client.compile(state.sessionId!, bindings),
    submit: (qasm) => client.submit(state.sessionId!, { qasm }),
    onFocusSite: (site: RotationSite | null) => {
      for (const node of tileLayer.querySelectorAll(".tile.focused")) {
        node.classList.remove("focused");
      }
      if (!site) return;
      const sel = `.tile[data-row="${site.row}"][data-col="${site.col}"]`;
      tileLayer.querySelector(sel)?.classList.add("focused");
    },
  });

  const note = (text: string) => {
    status.textContent = text;
  };

  const redrawDraft = () => {
    renderDraft(tileLayer, draft.doc, markers);
    renderBanner(banner, state.banner);
  };

  const redrawLattice = () => {
    if (!state.lattice) return;
    renderLattice(svg, state.lattice, {
      baseline: state.baseline,
      selected: state.selectedVertex(),
      onVertexClick: pickBasis,
    });
  };

  // One mutating request at a time; inputs grey out while waiting.
  const mutate = async (op: () => Promise<void>) => {
    if (state.gate.locked) return;
    document.body.classList.add("busy");
    try {
      await state.gate.run(async () => {
        try {
          await op();
        } catch (err) {
          if (err instanceof ApiError && err.status === 409) {
            refreshPrompt.classList.add("open");
            note(err.message);
          } else if (err instanceof ApiError) {
            note(err.message);
          } else {
            throw err;
          }
        }
      });
    } finally {
      document.body.classList.remove("busy");
    }
  };

  const pickBasis = (id: number) => {
    if (!state.lattice) return;
    state.selectVertex(id);
    redrawLattice();
    openBasisPicker(picker, id, neighbourIds(state.lattice, id), (choice) => {
      void mutate(async () => {
        const res = await client.measure(state.sessionId!, {
          vertex: id,
          axis: choice.axis,
          ...(choice.b0 !== undefined ? { b0: choice.b0 } : {}),
        });
        state.advance(res.version, res.lattice);
        state.selection = null;
        redrawLattice();
        note(`measured q${id} in ${choice.axis}`);
      });
    });
  };

  // Palette buttons select which tile the next canvas click places.
  for (const kind of TILE_KINDS) {
    const btn = document.createElement("button");
    btn.className = "palette-btn";
    btn.dataset.kind = kind;
    btn.textContent = kind;
    if (kind === currentKind) btn.classList.add("active");
    btn.addEventListener("click", () => {
      currentKind = kind;
      for (const other of paletteBox.querySelectorAll(".palette-btn")) {
        other.classList.toggle("active", other === btn);
      }
    });
    paletteBox.appendChild(btn);
  }

  // Clickable placement cells under the tile overlay.
  for (let row = 0; row < DEFAULT_ROWS; row++) {
    for (let col = 0; col < DEFAULT_COLS; col++) {
      const cell = document.createElement("div");
      cell.className = "cell";
      cell.style.gridRow = String(row + 1);
      cell.style.gridColumn = String(col + 1);
      cell.addEventListener("click", () => {
        void mutate(async () => {
          const result = await draft.place({ kind: currentKind, row, col });
          if (result.ok) {
            markers = [];
            state.acknowledge(result.state);
          } else {
            markers = result.diagnostics;
          }
          redrawDraft();
        });
      });
      cellLayer.appendChild(cell);
    }
  }

  el<HTMLButtonElement>("clear-grid").addEventListener("click", () => {
    void mutate(async () => {
      const result = await draft.clear();
      if (result.ok) {
        markers = [];
        state.acknowledge(result.state);
      }
      redrawDraft();
    });
  });

  el<HTMLButtonElement>("generate-layout").addEventListener("click", () => {
    void mutate(async () => {
      const doc = await client.layout(state.sessionId!);
      const session = await client.getSession(state.sessionId!);
      state.acknowledge(session);
      state.baseline = doc;
      state.lattice = doc;
      state.mode = "modeller";
      document.body.dataset.mode = state.mode;
      redrawLattice();
      note(`layout ready, ${doc.qubits.length} qubits`);
    });
  });

  el<HTMLButtonElement>("reset-lattice").addEventListener("click", () => {
    void mutate(async () => {
      const session = await client.reset(state.sessionId!);
      state.acknowledge(session);
      state.baseline = session.lattice;
      redrawLattice();
      note("lattice reset");
    });
  });

  el<HTMLButtonElement>("minimize-cz").addEventListener("click", () => {
    void mutate(async () => {
      const res = await client.minimizeCz(state.sessionId!);
      state.advance(res.version, res.lattice);
      redrawLattice();
      note(
        `${res.cz_count} CZ after ${res.lc_sequence.length} complementations` +
          (res.complete ? "" : " (budget hit)"),
      );
    });
  });

  el<HTMLButtonElement>("open-dialog").addEventListener("click", () => {
    void (async () => {
      const sites = await client.rotations(state.sessionId!);
      dialog.open(sites);
    })();
  });

  el<HTMLButtonElement>("refresh-view").addEventListener("click", () => {
    void (async () => {
      const session = await client.getSession(state.sessionId!);
      state.acknowledge(session);
      refreshPrompt.classList.remove("open");
      state.selection = null;
      closeBasisPicker(picker);
      redrawLattice();
      note("view refreshed");
    })();
  });

  for (const mode of ["simulator", "modeller"] as const) {
    el<HTMLButtonElement>(`tab-${mode}`).addEventListener("click", () => {
      state.mode = mode;
      document.body.dataset.mode = mode;
    });
  }

  // Keystroke o: local complementation at the selected vertex.
  const onKeydown = (ev: KeyboardEvent) => {
    if (ev.key !== "o" || state.mode !== "modeller") return;
    const vertex = state.selectedVertex();
    if (vertex === null) return;
    void mutate(async () => {
      const res = await client.localComplement(state.sessionId!, vertex);
      state.advance(res.version, res.lattice);
      redrawLattice();
      note(`complemented at q${vertex}`);
    });
  };
  document.addEventListener("keydown", onKeydown);

  // Open an empty session; the palette builds the document from there.
  void (async () => {
    try {
      const session = await client.createSession();
      state.acknowledge(session);
      document.body.dataset.mode = state.mode;
      redrawDraft();
      note(`session ${session.session_id}`);
    } catch (err) {
      note(`cannot reach service at ${client.baseUrl}: ${String(err)}`);
    }
  })();

  return () => document.removeEventListener("keydown", onKeydown);
}

if (typeof document !== "undefined" && document.getElementById("banner")) {
  document.addEventListener("DOMContentLoaded", () => boot());
  if (document.readyState !== "loading") boot();
}
