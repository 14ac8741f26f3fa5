/**
 * End-to-end flow against the real backend mesh:
 * load a fixture, annotate an item via a suggestion chip, link a domain,
 * and check the canvas counts match a fresh /analysis/graph fetch.
 * Every UI request must pass through the gateway base URL.
 *
 * Spawns the Python services (scripts/run_all.py) on dedicated ports;
 * requires the backend package to be installed (pip install -e .).
 */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve, dirname } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { Store } from "../src/store.js";
import type { UiConfig } from "../src/types.js";

const REPO_ROOT = resolve(dirname(fileURLToPath(import.meta.url)), "..", "..");
const GATEWAY = "http://127.0.0.1:18705";
const TOKEN = "demo-writer-token";

const PORTS = {
  STORE_PORT: "18700",
  ITEM_PORT: "18701",
  CONVERT_PORT: "18702",
  ANNOT_PORT: "18703",
  ANALYSIS_PORT: "18704",
  GATEWAY_PORT: "18705",
};

let mesh: ChildProcess | null = null;
let dataDir = "";

async function gatewayReady(): Promise<boolean> {
  try {
    const health = await fetch(`${GATEWAY}/healthz`);
    if (!health.ok) return false;
    // proxied request proves the upstreams are up too
    const items = await fetch(`${GATEWAY}/items`, {
      headers: { Authorization: `Bearer ${TOKEN}` },
    });
    return items.ok;
  } catch {
    return false;
  }
}

async function apiFetch(path: string, init: RequestInit = {}): Promise<Response> {
  return fetch(`${GATEWAY}${path}`, {
    ...init,
    headers: {
      Authorization: `Bearer ${TOKEN}`,
      ...(init.headers ?? {}),
    },
  });
}

async function seedFixture(): Promise<void> {
  const kg = [
    "<urn:d:R> <https://vocab.example.org/easlit#narrower> <urn:d:A> .",
    "<urn:d:R> <https://vocab.example.org/easlit#narrower> <urn:d:B> .",
    "<urn:d:A> <https://vocab.example.org/easlit#narrower> <urn:d:A1> .",
    '<urn:d:R> <http://www.w3.org/2000/01/rdf-schema#label> "Root" .',
    '<urn:d:A> <http://www.w3.org/2000/01/rdf-schema#label> "Algorithms" .',
  ].join("\n");
  const kgResponse = await apiFetch("/stores/knowledge-graph/quads", {
    method: "POST",
    headers: { "Content-Type": "application/n-quads" },
    body: kg,
  });
  expect(kgResponse.ok).toBe(true);

  const items = [
    { stem: "Define the term RDF.", domain: "urn:d:A" },
    { stem: "Compare two sorting algorithms.", domain: "urn:d:A1" },
    { stem: "List the OSI layers.", domain: null },
  ];
  for (const spec of items) {
    const payload: Record<string, unknown> = {
      stem: spec.stem,
      points: 1,
      hasAnswer: [{ answerText: "an answer", isCorrect: true }],
    };
    if (spec.domain) payload.linksDomain = [{ "@id": spec.domain }];
    const response = await apiFetch("/items", {
      method: "POST",
      headers: { "Content-Type": "application/ld+json" },
      body: JSON.stringify(payload),
    });
    expect(response.status).toBe(201);
  }
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "easlit-e2e-"));
  mesh = spawn(
    "python3",
    [join(REPO_ROOT, "scripts", "run_all.py"), "--data-dir", dataDir],
    { env: { ...process.env, ...PORTS }, stdio: "ignore" },
  );
  const deadline = Date.now() + 60_000;
  while (!(await gatewayReady())) {
    if (Date.now() > deadline) throw new Error("backend mesh did not start");
    await new Promise((r) => setTimeout(r, 500));
  }
  await seedFixture();
}, 90_000);

afterAll(async () => {
  if (mesh) {
    mesh.kill("SIGTERM");
    await new Promise((r) => setTimeout(r, 1500));
    mesh.kill("SIGKILL");
  }
  if (dataDir) rmSync(dataDir, { recursive: true, force: true });
});

describe("end-to-end annotation loop", () => {
  it("suggestion chip -> annotation -> canvas counts match a fresh fetch", async () => {
    const config: UiConfig = {
      gatewayBaseUrl: GATEWAY,
      apiToken: TOKEN,
      defaultRoot: "urn:d:R",
      defaultDepth: 3,
    };
    const seen: string[] = [];
    const recordingFetch = (async (
      input: RequestInfo | URL,
      init?: RequestInit,
    ) => {
      seen.push(String(input));
      return fetch(input, init);
    }) as typeof fetch;

    const store = new Store();
    store.dispatch({ type: "config-loaded", config });
    const app = new App(store, new ApiClient(config, recordingFetch));

    // load the fixture into the UI state
    await app.refreshItems();
    await app.refreshGraph();
    const before = store.getState();
    expect(before.items.length).toBe(3);
    const rootBefore = before.graph!.nodes.find((n) => n.iri === "urn:d:R")!;
    expect(rootBefore.cumulativeCount).toBe(2); // two linked items so far

    // open the editor: suggestions arrive, led by "remember" for a Define stem
    const target = before.items.find((i) =>
      i.stem.startsWith("Define"),
    )!;
    await app.selectItem(target.iri);
    const suggestions = store.getState().suggestions;
    expect(suggestions.length).toBeGreaterThan(0);
    expect(suggestions[0].level).toBe("remember");

    // accept the top chip: item updates in place, canvas refreshes
    await app.applyBloom(target.iri, suggestions[0].level, "educator");
    const annotated = store
      .getState()
      .items.find((i) => i.iri === target.iri)!;
    expect(annotated.bloomLevel).toBe("remember");
    expect(annotated.version).toBe(target.version + 1);

    // link the unlinked item to domain B, then refresh the canvas
    const unlinked = store
      .getState()
      .items.find((i) => i.domains.length === 0)!;
    await app.api.linkDomain(unlinked.iri, "urn:d:B");
    await app.refreshGraph();

    // canvas counts equal a fresh /analysis/graph fetch done outside the UI
    const fresh = await (
      await apiFetch("/analysis/graph?root=urn%3Ad%3AR&depth=3")
    ).json();
    expect(store.getState().graph).toEqual(fresh);
    const rootAfter = store
      .getState()
      .graph!.nodes.find((n) => n.iri === "urn:d:R")!;
    expect(rootAfter.cumulativeCount).toBe(3);

    // bloom filter narrows the items view to the annotated item
    await app.setFilters("remember", null);
    expect(store.getState().items.map((i) => i.iri)).toEqual([target.iri]);

    // every UI request went through the gateway base URL
    expect(seen.length).toBeGreaterThan(5);
    for (const url of seen) {
      expect(url.startsWith(`${GATEWAY}/`)).toBe(true);
    }
  }, 60_000);
});
