import type { Metrics } from "./types.js";

const ZERO: Metrics = { min_lattice: [0, 0], qubit_count: 0, t_count: 0 };

/**
 * Top-margin resource banner. `metrics` must be taken from a service
 * response; passing null renders the empty-draft banner.
 */
export function renderBanner(el: HTMLElement, metrics: Metrics | null): void {
  const m = metrics ?? ZERO;
  el.replaceChildren();
  const cell = (cls: string, text: string) => {
    const span = document.createElement("span");
    span.className = cls;
    span.textContent = text;
    el.appendChild(span);
  };
  cell("banner-lattice", `[${m.min_lattice[0]},${m.min_lattice[1]}]`);
  cell("banner-qubits", `${m.qubit_count} qubits`);
  cell("banner-t", `T ${m.t_count}`);
}
