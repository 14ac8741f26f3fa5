import { describe, expect, it } from "vitest";

import { initialState, reduce, type AppState } from "../src/store.js";
import {
  renderBanner,
  renderCanvas,
  renderEditor,
  renderItemsView,
} from "../src/views.js";
import type { Item } from "../src/types.js";

function item(iri: string, overrides: Partial<Item> = {}): Item {
  return {
    iri,
    stem: "q",
    points: "1",
    bloomLevel: null,
    domains: [],
    version: 1,
    answers: [],
    ...overrides,
  };
}

function withItems(items: Item[]): AppState {
  return reduce(initialState(), { type: "items-loaded", items });
}

describe("renderItemsView", () => {
  it("shows the empty state on an empty instance", () => {
    expect(renderItemsView(withItems([]))).toContain("no items");
  });

  it("renders one clickable row per item", () => {
    const html = renderItemsView(
      withItems([item("urn:i:1", { stem: "What is RDF?" })]),
    );
    expect(html).toContain('data-item-iri="urn:i:1"');
    expect(html).toContain("What is RDF?");
  });

  it("escapes markup in stems", () => {
    const html = renderItemsView(
      withItems([item("urn:i:1", { stem: "<script>x</script>" })]),
    );
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("renderEditor", () => {
  it("renders suggestion chips with matched cues", () => {
    let state = withItems([item("urn:i:1", { stem: "Define RDF." })]);
    state = reduce(state, { type: "item-selected", iri: "urn:i:1" });
    state = reduce(state, {
      type: "suggestions-loaded",
      suggestions: [
        {
          level: "remember",
          levelIri: "urn:bloom:remember",
          score: 0.25,
          matchedCues: ["define"],
        },
      ],
    });
    const html = renderEditor(state);
    expect(html).toContain('data-action="apply-bloom"');
    expect(html).toContain('data-level="remember"');
    expect(html).toContain("cues: define");
  });

  it("shows the conflict dialog instead of the form", () => {
    let state = withItems([item("urn:i:1")]);
    state = reduce(state, { type: "item-selected", iri: "urn:i:1" });
    state = reduce(state, { type: "version-conflict", iri: "urn:i:1" });
    const html = renderEditor(state);
    expect(html).toContain("conflict-dialog");
    expect(html).toContain('data-action="reload-item"');
    expect(html).not.toContain("save-points");
  });
});

describe("renderCanvas", () => {
  it("renders an empty-state canvas without a graph", () => {
    expect(renderCanvas(initialState())).toContain("no domain graph");
  });

  it("shows labels with cumulative counts and tooltips with direct counts", () => {
    const state = reduce(initialState(), {
      type: "graph-loaded",
      root: "urn:d:R",
      depth: 3,
      graph: {
        root: "urn:d:R",
        depth: 3,
        totalItems: 4,
        unmatchedLinks: 1,
        nodes: [
          { iri: "urn:d:R", label: "R", directCount: 0, cumulativeCount: 4 },
          { iri: "urn:d:A", label: "A", directCount: 1, cumulativeCount: 3 },
        ],
        edges: [{ parentIri: "urn:d:R", childIri: "urn:d:A" }],
      },
    });
    const html = renderCanvas(state);
    expect(html).toContain("R (4)");
    expect(html).toContain("A (3)");
    expect(html).toContain("<title>direct: 1</title>");
    expect(html).toContain('data-node-iri="urn:d:A"');
    expect(html).toContain("unmatched links: 1");
  });
});

describe("renderBanner", () => {
  it("includes the request id and a token hint on auth failures", () => {
    const state = reduce(initialState(), {
      type: "request-failed",
      message: "missing bearer token",
      requestId: "req-1",
    });
    const html = renderBanner(state);
    expect(html).toContain("request req-1");
    expect(html).toContain("token in config.json");
  });
});
