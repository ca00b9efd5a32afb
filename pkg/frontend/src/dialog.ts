import type {
  CompileResponse,
  RotationSite,
  SubmissionResult,
  ThetaBindingDoc,
} from "./types.js";
import { ApiError } from "./client.js";

export interface DialogActions {
  compile(bindings: ThetaBindingDoc[]): Promise<CompileResponse>;
  submit(qasm: string): Promise<SubmissionResult>;
  /** Highlight the grid tile matching the focused field (null on blur). */
  onFocusSite?: (site: RotationSite | null) => void;
}

export function siteKey(site: RotationSite): string {
  return `${site.kind}@${site.row},${site.col}`;
}

/**
 * Rotation-angle dialog shown before compilation. One field per pending
 * rotation site; submission is blocked until every field parses as a
 * number. With no pending rotations the form is skipped and the dialog
 * goes straight to compile-and-download.
 */
export class CompileDialog {
  private sites: RotationSite[] = [];
  private program: CompileResponse | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly actions: DialogActions,
  ) {}

  open(sites: RotationSite[]): void {
    this.sites = sites;
    this.program = null;
    this.root.replaceChildren();
    this.root.classList.add("open");

    const form = document.createElement("div");
    form.className = "theta-form";
    for (const site of sites) {
      form.appendChild(this.fieldRow(site));
    }
    this.root.appendChild(form);

    const controls = document.createElement("div");
    controls.className = "dialog-controls";
    const compileBtn = document.createElement("button");
    compileBtn.className = "compile-btn";
    compileBtn.textContent = "Compile";
    compileBtn.addEventListener("click", () => void this.compile());
    controls.appendChild(compileBtn);
    this.root.appendChild(controls);

    const output = document.createElement("div");
    output.className = "dialog-output";
    this.root.appendChild(output);

    // Nothing to bind: compile right away so only download/submit remain.
    if (sites.length === 0) {
      void this.compile();
    }
  }

  close(): void {
    this.root.classList.remove("open");
    this.root.replaceChildren();
  }

  private fieldRow(site: RotationSite): HTMLElement {
    const row = document.createElement("label");
    row.className = "theta-row";
    const text = document.createElement("span");
    text.className = "theta-label";
    text.textContent = `${site.kind} [${site.row}, ${site.col}]`;
    row.appendChild(text);

    const input = document.createElement("input");
    input.type = "text";
    input.className = "theta-input";
    input.dataset.site = siteKey(site);
    input.placeholder = "θ";
    input.addEventListener("focus", () => this.actions.onFocusSite?.(site));
    input.addEventListener("blur", () => this.actions.onFocusSite?.(null));
    row.appendChild(input);

    const err = document.createElement("span");
    err.className = "theta-error";
    row.appendChild(err);
    return row;
  }

  /**
   * Read the form. Marks invalid fields and returns null if any value
   * is missing or not a number.
   */
  readBindings(): ThetaBindingDoc[] | null {
    const bindings: ThetaBindingDoc[] = [];
    let valid = true;
    for (const site of this.sites) {
      const input = this.root.querySelector<HTMLInputElement>(
        `input[data-site="${siteKey(site)}"]`,
      );
      const err = input?.parentElement?.querySelector<HTMLElement>(".theta-error");
      const raw = input?.value.trim() ?? "";
      const theta = Number(raw);
      if (raw === "" || !Number.isFinite(theta)) {
        valid = false;
        input?.classList.add("invalid");
        if (err) err.textContent = "not a number";
        continue;
      }
      input?.classList.remove("invalid");
      if (err) err.textContent = "";
      bindings.push({ ...site, theta });
    }
    return valid ? bindings : null;
  }

  async compile(): Promise<CompileResponse | null> {
    const bindings = this.readBindings();
    if (bindings === null) {
      return null;
    }
    const output = this.output();
    try {
      this.program = await this.actions.compile(bindings);
    } catch (err) {
      this.showWarning(err instanceof ApiError ? err.message : String(err));
      return null;
    }
    output.replaceChildren();

    const pre = document.createElement("pre");
    pre.className = "qasm-text";
    pre.textContent = this.program.qasm;
    output.appendChild(pre);

    const link = document.createElement("a");
    link.className = "download-link";
    link.textContent = "Download .txt";
    link.download = "program.txt";
    link.href =
      "data:text/plain;charset=utf-8," + encodeURIComponent(this.program.qasm);
    output.appendChild(link);

    const submitBtn = document.createElement("button");
    submitBtn.className = "submit-btn";
    submitBtn.textContent = "Submit";
    submitBtn.addEventListener("click", () => void this.submit());
    output.appendChild(submitBtn);
    return this.program;
  }

  async submit(): Promise<SubmissionResult | null> {
    if (!this.program) {
      return null;
    }
    let result: SubmissionResult;
    try {
      result = await this.actions.submit(this.program.qasm);
    } catch (err) {
      this.showWarning(err instanceof ApiError ? err.message : String(err));
      return null;
    }
    if (!result.ok) {
      this.showWarning(
        `submission returned status ${result.status}: ${result.body}`,
      );
    } else {
      this.showNotice(`submitted, status ${result.status}`);
    }
    return result;
  }

  private output(): HTMLElement {
    return this.root.querySelector<HTMLElement>(".dialog-output")!;
  }

  private showWarning(message: string): void {
    const el = document.createElement("div");
    el.className = "warning-banner";
    el.textContent = message;
    this.output().appendChild(el);
  }

  private showNotice(message: string): void {
    const el = document.createElement("div");
    el.className = "notice-banner";
    el.textContent = message;
    this.output().appendChild(el);
  }
}
