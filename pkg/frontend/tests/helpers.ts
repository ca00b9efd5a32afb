import { vi } from "vitest";

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

/**
 * Canned fetch. Responses queue per "METHOD /path"; the last queued
 * response for a route is sticky so repeated calls keep working.
 */
export class FetchStub {
  readonly calls: RecordedCall[] = [];
  private queues = new Map<string, { status: number; payload: unknown }[]>();

  on(method: string, path: string, status: number, payload: unknown): this {
    const key = `${method} ${path}`;
    const queue = this.queues.get(key) ?? [];
    queue.push({ status, payload });
    this.queues.set(key, queue);
    return this;
  }

  install(): void {
    vi.stubGlobal(
      "fetch",
      vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
        const url = new URL(String(input));
        const method = (init?.method ?? "GET").toUpperCase();
        const body =
          init?.body !== undefined ? JSON.parse(String(init.body)) : undefined;
        this.calls.push({ method, path: url.pathname, body });
        const queue = this.queues.get(`${method} ${url.pathname}`);
        if (!queue || queue.length === 0) {
          throw new Error(`no stubbed response for ${method} ${url.pathname}`);
        }
        const next = queue.length > 1 ? queue.shift()! : queue[0];
        return new Response(JSON.stringify(next.payload), {
          status: next.status,
          headers: { "Content-Type": "application/json" },
        });
      }),
    );
  }

  callsTo(method: string, path: string): RecordedCall[] {
    return this.calls.filter((c) => c.method === method && c.path === path);
  }
}

/** Drain pending promise chains kicked off by event handlers. */
export async function settle(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}
