import { beforeEach, describe, expect, it, vi } from "vitest";

import { ApiError } from "../src/client.js";
import { CompileDialog, siteKey } from "../src/dialog.js";
import type { RotationSite, SubmissionResult } from "../src/types.js";

import rotations from "./fixtures/rotations_reference.json";
import compileOk from "./fixtures/compile_ok.json";
import submissionOk from "./fixtures/submission_ok.json";
import submissionRejected from "./fixtures/submission_rejected.json";

const sites = rotations as RotationSite[];

function setInput(root: HTMLElement, site: RotationSite, value: string): void {
  const input = root.querySelector<HTMLInputElement>(
    `input[data-site="${siteKey(site)}"]`,
  )!;
  input.value = value;
}

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="dialog"></div>';
  root = document.getElementById("dialog")!;
});

describe("rotation form", () => {
  it("lists every pending rotation with kind and [row, column]", () => {
    const dialog = new CompileDialog(root, {
      compile: vi.fn(),
      submit: vi.fn(),
    });
    dialog.open(sites);
    const labels = [...root.querySelectorAll(".theta-label")].map(
      (el) => el.textContent,
    );
    expect(labels).toEqual([
      "rotz [0, 48]",
      "rotz [2, 14]",
      "rotz [2, 48]",
      "rotz [4, 48]",
      "rotz [5, 48]",
    ]);
    expect(labels).toHaveLength(5);
  });

  it("parses decimal and scientific notation", () => {
    const dialog = new CompileDialog(root, {
      compile: vi.fn(),
      submit: vi.fn(),
    });
    dialog.open(sites);
    const values = ["0.25", "-3.141592653589793", "1e-3", " 2.5 ", "0"];
    sites.forEach((site, i) => setInput(root, site, values[i]));
    const bindings = dialog.readBindings()!;
    expect(bindings.map((b) => b.theta)).toEqual([
      0.25, -3.141592653589793, 0.001, 2.5, 0,
    ]);
    expect(bindings[0]).toEqual({ kind: "rotz", row: 0, col: 48, theta: 0.25 });
  });

  it("rejects non-numeric and empty values with field-level errors", () => {
    const dialog = new CompileDialog(root, {
      compile: vi.fn(),
      submit: vi.fn(),
    });
    dialog.open(sites);
    const values = ["abc", "0.5", "", "pi/2", "1.0"];
    sites.forEach((site, i) => setInput(root, site, values[i]));
    expect(dialog.readBindings()).toBeNull();

    const bad = root.querySelector<HTMLInputElement>(
      `input[data-site="${siteKey(sites[0])}"]`,
    )!;
    expect(bad.classList.contains("invalid")).toBe(true);
    expect(
      bad.parentElement!.querySelector(".theta-error")!.textContent,
    ).toBe("not a number");

    const good = root.querySelector<HTMLInputElement>(
      `input[data-site="${siteKey(sites[1])}"]`,
    )!;
    expect(good.classList.contains("invalid")).toBe(false);
  });

  it("clears a field error once the value is fixed", () => {
    const dialog = new CompileDialog(root, {
      compile: vi.fn(),
      submit: vi.fn(),
    });
    dialog.open(sites);
    sites.forEach((site) => setInput(root, site, "abc"));
    dialog.readBindings();
    sites.forEach((site) => setInput(root, site, "1.5"));
    expect(dialog.readBindings()).toHaveLength(5);
    expect(
      root.querySelectorAll("input.invalid"),
    ).toHaveLength(0);
  });

  it("notifies which site has focus for tile highlighting", () => {
    const focused: (RotationSite | null)[] = [];
    const dialog = new CompileDialog(root, {
      compile: vi.fn(),
      submit: vi.fn(),
      onFocusSite: (site) => focused.push(site),
    });
    dialog.open(sites);
    const input = root.querySelector<HTMLInputElement>(
      `input[data-site="${siteKey(sites[2])}"]`,
    )!;
    input.dispatchEvent(new FocusEvent("focus"));
    input.dispatchEvent(new FocusEvent("blur"));
    expect(focused).toEqual([sites[2], null]);
  });
});

describe("compilation", () => {
  it("does not POST while any field is invalid", async () => {
    const compile = vi.fn();
    const dialog = new CompileDialog(root, { compile, submit: vi.fn() });
    dialog.open(sites);
    sites.forEach((site) => setInput(root, site, "oops"));
    expect(await dialog.compile()).toBeNull();
    expect(compile).not.toHaveBeenCalled();
  });

  it("POSTs the bindings and shows the program with a download link", async () => {
    const compile = vi.fn().mockResolvedValue(compileOk);
    const dialog = new CompileDialog(root, { compile, submit: vi.fn() });
    dialog.open(sites);
    sites.forEach((site) => setInput(root, site, "0.25"));
    const program = await dialog.compile();
    expect(program).toEqual(compileOk);
    expect(compile).toHaveBeenCalledWith(
      sites.map((site) => ({ ...site, theta: 0.25 })),
    );
    expect(root.querySelector(".qasm-text")!.textContent).toBe(compileOk.qasm);
    const link = root.querySelector<HTMLAnchorElement>(".download-link")!;
    expect(link.download).toBe("program.txt");
    expect(decodeURIComponent(link.href.split(",")[1])).toBe(compileOk.qasm);
  });

  it("skips straight to download when there are no rotations", async () => {
    const compile = vi.fn().mockResolvedValue(compileOk);
    const dialog = new CompileDialog(root, { compile, submit: vi.fn() });
    dialog.open([]);
    await Promise.resolve();
    await Promise.resolve();
    expect(compile).toHaveBeenCalledWith([]);
    expect(root.querySelectorAll(".theta-row")).toHaveLength(0);
    expect(root.querySelector(".download-link")).not.toBeNull();
  });

  it("surfaces a compile rejection as a warning", async () => {
    const compile = vi
      .fn()
      .mockRejectedValue(
        new ApiError(422, { kind: "binding", message: "missing rotations" }),
      );
    const dialog = new CompileDialog(root, { compile, submit: vi.fn() });
    dialog.open(sites);
    sites.forEach((site) => setInput(root, site, "1"));
    expect(await dialog.compile()).toBeNull();
    expect(root.querySelector(".warning-banner")!.textContent).toContain(
      "missing rotations",
    );
  });
});

describe("submission", () => {
  async function compiled(
    submit: (qasm: string) => Promise<SubmissionResult>,
  ): Promise<CompileDialog> {
    const dialog = new CompileDialog(root, {
      compile: vi.fn().mockResolvedValue(compileOk),
      submit,
    });
    dialog.open(sites);
    sites.forEach((site) => setInput(root, site, "0.5"));
    await dialog.compile();
    return dialog;
  }

  it("sends the compiled text and reports success", async () => {
    const submit = vi.fn().mockResolvedValue(submissionOk);
    const dialog = await compiled(submit);
    const result = await dialog.submit();
    expect(result!.ok).toBe(true);
    expect(submit).toHaveBeenCalledWith(compileOk.qasm);
    expect(root.querySelector(".notice-banner")!.textContent).toContain(
      "status 200",
    );
  });

  it("shows the recorded status when the queue rejects the program", async () => {
    const submit = vi.fn().mockResolvedValue(submissionRejected);
    const dialog = await compiled(submit);
    const result = await dialog.submit();
    expect(result!.ok).toBe(false);
    const warning = root.querySelector(".warning-banner")!.textContent!;
    expect(warning).toContain("status 400");
    expect(warning).toContain("queue rejected the program");
  });

  it("shows transport failures as warnings", async () => {
    const submit = vi
      .fn()
      .mockRejectedValue(
        new ApiError(502, { kind: "submission", message: "endpoint unreachable" }),
      );
    const dialog = await compiled(submit);
    expect(await dialog.submit()).toBeNull();
    expect(root.querySelector(".warning-banner")!.textContent).toContain(
      "endpoint unreachable",
    );
  });

  it("refuses to submit before a successful compile", async () => {
    const submit = vi.fn();
    const dialog = new CompileDialog(root, {
      compile: vi.fn().mockResolvedValue(compileOk),
      submit,
    });
    dialog.open(sites);
    expect(await dialog.submit()).toBeNull();
    expect(submit).not.toHaveBeenCalled();
  });
});
