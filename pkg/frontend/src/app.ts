/**
 * Action creators: talk to the gateway, dispatch results into the store.
 *
 * Concurrent requests per view are allowed; each carries a sequence number
 * and a response is discarded if a newer request for the same view has
 * started since (stale-response discarding).
 */

import { ApiClient, ApiError } from "./api.js";
import type { Store } from "./store.js";

export class App {
  private seq = { items: 0, graph: 0, suggest: 0 };

  constructor(
    public readonly store: Store,
    public readonly api: ApiClient,
  ) {}

  private fail(err: unknown): void {
    const apiErr = err instanceof ApiError ? err : null;
    this.store.dispatch({
      type: "request-failed",
      message: apiErr ? apiErr.message : String(err),
      requestId: apiErr ? apiErr.requestId : null,
    });
  }

  async refreshItems(): Promise<void> {
    const ticket = ++this.seq.items;
    this.store.dispatch({ type: "items-loading" });
    try {
      const items = await this.api.listItems(this.store.getState().filters);
      if (ticket !== this.seq.items) return; // a newer refresh superseded us
      this.store.dispatch({ type: "items-loaded", items });
    } catch (err) {
      if (ticket !== this.seq.items) return;
      this.fail(err);
    }
  }

  async setFilters(
    bloomLevel: string | null,
    domainIri: string | null,
  ): Promise<void> {
    this.store.dispatch({ type: "filters-set", bloomLevel, domainIri });
    await this.refreshItems();
  }

  async selectItem(iri: string | null): Promise<void> {
    this.store.dispatch({ type: "item-selected", iri });
    if (iri === null) return;
    const item = this.store.getState().items.find((i) => i.iri === iri);
    if (!item) return;
    const ticket = ++this.seq.suggest;
    try {
      const suggestions = await this.api.suggestBloom(item.stem);
      if (ticket !== this.seq.suggest) return;
      if (this.store.getState().selectedIri !== iri) return;
      this.store.dispatch({ type: "suggestions-loaded", suggestions });
    } catch (err) {
      if (ticket !== this.seq.suggest) return;
      this.fail(err);
    }
  }

  /** Educator picks a suggestion chip: set the level, then re-sync. */
  async applyBloom(iri: string, level: string, annotator: string): Promise<void> {
    try {
      await this.api.setBloom(iri, level, annotator);
      const item = await this.api.getItem(iri);
      this.store.dispatch({ type: "item-updated", item });
    } catch (err) {
      this.fail(err);
      return;
    }
    await this.refreshGraph();
  }

  /** Field edits go through optimistic versioning; 409 opens the conflict prompt. */
  async saveFields(
    iri: string,
    expectedVersion: number,
    payload: Record<string, unknown>,
  ): Promise<void> {
    try {
      const item = await this.api.updateItem(iri, expectedVersion, payload);
      this.store.dispatch({ type: "item-updated", item });
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.store.dispatch({ type: "version-conflict", iri });
        return;
      }
      this.fail(err);
    }
  }

  /** Conflict prompt's "reload" choice: drop local edits, fetch fresh state. */
  async reloadItem(iri: string): Promise<void> {
    try {
      const item = await this.api.getItem(iri);
      this.store.dispatch({ type: "item-updated", item });
      this.store.dispatch({ type: "conflict-dismissed" });
    } catch (err) {
      this.fail(err);
    }
  }

  async refreshGraph(root?: string, depth?: number): Promise<void> {
    const state = this.store.getState();
    const useRoot = root ?? state.graphRoot;
    const useDepth = depth ?? state.graphDepth;
    if (!useRoot) return;
    const ticket = ++this.seq.graph;
    try {
      const graph = await this.api.distributionGraph(useRoot, useDepth);
      if (ticket !== this.seq.graph) return;
      this.store.dispatch({
        type: "graph-loaded",
        graph,
        root: useRoot,
        depth: useDepth,
      });
    } catch (err) {
      if (ticket !== this.seq.graph) return;
      this.fail(err);
    }
  }

  /** Canvas node click: narrow the items view to that domain subtree node. */
  async filterByDomain(domainIri: string): Promise<void> {
    const { filters } = this.store.getState();
    await this.setFilters(filters.bloomLevel, domainIri);
  }
}
