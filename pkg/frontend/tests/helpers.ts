/** Mock fetch backed by the recorded API responses. */

import type { FetchLike, FetchResponse } from "../src/api";

import fixtures from "./fixtures/api.json";

const RECORDED: Record<string, unknown> = fixtures as Record<string, unknown>;

export function fixtureBody<T>(path: string): T {
  if (!(path in RECORDED)) {
    throw new Error(`no recorded response for ${path}`);
  }
  return RECORDED[path] as T;
}

export interface FetchLog {
  requests: string[];
}

export function recordedFetch(log?: FetchLog): FetchLike {
  return (url: string): Promise<FetchResponse> => {
    log?.requests.push(url);
    if (!(url in RECORDED)) {
      return Promise.reject(new Error(`no recorded response for ${url}`));
    }
    const body = RECORDED[url];
    return Promise.resolve({
      ok: true,
      status: 200,
      json: () => Promise.resolve(body),
    });
  };
}

/** A fetch whose responses resolve only when the test releases them.
 * Multiple requests for the same URL queue up and release oldest first.
 */
export function deferredFetch(): {
  fetch: FetchLike;
  release: (url: string, body: unknown, ok?: boolean) => void;
  pending: () => string[];
} {
  const waiting = new Map<string, ((resp: FetchResponse) => void)[]>();
  return {
    fetch: (url: string) =>
      new Promise<FetchResponse>((resolve) => {
        const queue = waiting.get(url) ?? [];
        queue.push(resolve);
        waiting.set(url, queue);
      }),
    release: (url: string, body: unknown, ok = true) => {
      const queue = waiting.get(url);
      if (!queue || queue.length === 0) throw new Error(`nothing waiting on ${url}`);
      const resolve = queue.shift()!;
      if (queue.length === 0) waiting.delete(url);
      resolve({ ok, status: ok ? 200 : 400, json: () => Promise.resolve(body) });
    },
    pending: () => [...waiting.entries()].flatMap(([url, queue]) => queue.map(() => url)),
  };
}

/** Let queued microtasks and the controller's await chain advance. */
export function tick(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
