import { beforeEach, describe, expect, it } from "vitest";

import { renderBanner } from "../src/banner.js";
import type { SessionState } from "../src/types.js";

import sessionReference from "./fixtures/session_reference.json";
import sessionEmpty from "./fixtures/session_empty.json";

let el: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="banner"></div>';
  el = document.getElementById("banner")!;
});

describe("metrics banner", () => {
  it("shows the reference draft numbers exactly as the service sent them", () => {
    const metrics = (sessionReference as SessionState).metrics;
    renderBanner(el, metrics);
    expect(el.querySelector(".banner-lattice")!.textContent).toBe("[8,53]");
    expect(el.querySelector(".banner-t")!.textContent).toBe("T 2");
    // Traceability: every rendered number equals a response field.
    expect(el.querySelector(".banner-lattice")!.textContent).toBe(
      `[${metrics.min_lattice[0]},${metrics.min_lattice[1]}]`,
    );
    expect(el.querySelector(".banner-qubits")!.textContent).toBe(
      `${metrics.qubit_count} qubits`,
    );
    expect(el.querySelector(".banner-t")!.textContent).toBe(
      `T ${metrics.t_count}`,
    );
  });

  it("renders the zero banner for an empty draft", () => {
    renderBanner(el, (sessionEmpty as SessionState).metrics);
    expect(el.querySelector(".banner-lattice")!.textContent).toBe("[0,0]");
    expect(el.querySelector(".banner-qubits")!.textContent).toBe("0 qubits");
    expect(el.querySelector(".banner-t")!.textContent).toBe("T 0");
  });

  it("treats a missing banner as the zero banner", () => {
    renderBanner(el, null);
    expect(el.textContent).toBe("[0,0]0 qubitsT 0");
  });

  it("replaces previous content on re-render", () => {
    renderBanner(el, (sessionReference as SessionState).metrics);
    renderBanner(el, null);
    expect(el.querySelectorAll("span")).toHaveLength(3);
    expect(el.querySelector(".banner-lattice")!.textContent).toBe("[0,0]");
  });
});
