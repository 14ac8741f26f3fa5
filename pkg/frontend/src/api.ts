/** Gateway API client. Every request goes through config.gatewayBaseUrl. */

import { itemsFromDocument } from "./jsonld.js";
import type {
  DistributionGraph,
  Item,
  Suggestion,
  UiConfig,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
    public readonly requestId: string | null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface ItemFilters {
  bloomLevel?: string | null;
  domainIri?: string | null;
}

/** The trailing id segment of an item IRI, as the REST paths expect. */
export function itemIdFromIri(iri: string): string {
  return iri.slice(iri.lastIndexOf("/") + 1);
}

export class ApiClient {
  constructor(
    private readonly config: UiConfig,
    private readonly fetchFn: typeof fetch = globalThis.fetch,
  ) {}

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<unknown> {
    const base = this.config.gatewayBaseUrl.replace(/\/$/, "");
    const headers: Record<string, string> = {
      Authorization: `Bearer ${this.config.apiToken}`,
    };
    const init: RequestInit = { method, headers };
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
      init.body = JSON.stringify(body);
    }
    let response: Response;
    try {
      response = await this.fetchFn(`${base}${path}`, init);
    } catch (err) {
      throw new ApiError(`gateway unreachable: ${String(err)}`, 0, null);
    }
    if (!response.ok) {
      const requestId = response.headers.get("x-request-id");
      let detail = response.statusText;
      try {
        const parsed = (await response.json()) as { detail?: unknown };
        if (parsed.detail !== undefined) {
          detail =
            typeof parsed.detail === "string"
              ? parsed.detail
              : JSON.stringify(parsed.detail);
        }
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(detail, response.status, requestId);
    }
    return response.json();
  }

  async listItems(filters: ItemFilters = {}): Promise<Item[]> {
    const params = new URLSearchParams();
    if (filters.bloomLevel) params.set("bloomLevel", filters.bloomLevel);
    if (filters.domainIri) params.set("domainIri", filters.domainIri);
    const query = params.toString();
    const doc = await this.request("GET", `/items${query ? `?${query}` : ""}`);
    return itemsFromDocument(doc);
  }

  async getItem(iri: string): Promise<Item> {
    const doc = await this.request(
      "GET",
      `/items/${encodeURIComponent(itemIdFromIri(iri))}`,
    );
    const [item] = itemsFromDocument(doc);
    if (!item) throw new ApiError(`no item in response for ${iri}`, 0, null);
    return item;
  }

  async updateItem(
    iri: string,
    expectedVersion: number,
    payload: Record<string, unknown>,
  ): Promise<Item> {
    const id = encodeURIComponent(itemIdFromIri(iri));
    const doc = await this.request(
      "PATCH",
      `/items/${id}?expectedVersion=${expectedVersion}`,
      payload,
    );
    return itemsFromDocument(doc)[0];
  }

  async suggestBloom(stem: string): Promise<Suggestion[]> {
    const doc = (await this.request("POST", "/suggest/bloom", { stem })) as {
      suggestions: Suggestion[];
    };
    return doc.suggestions;
  }

  async setBloom(
    itemIri: string,
    level: string,
    annotator: string,
  ): Promise<void> {
    const id = encodeURIComponent(itemIdFromIri(itemIri));
    await this.request("POST", `/annotation/items/${id}/annotations/bloom`, {
      level,
      annotator,
    });
  }

  async linkDomain(itemIri: string, domainIri: string): Promise<void> {
    const id = encodeURIComponent(itemIdFromIri(itemIri));
    await this.request("POST", `/annotation/items/${id}/links/domain`, {
      domainIri,
    });
  }

  async distributionGraph(
    root: string,
    depth: number,
  ): Promise<DistributionGraph> {
    const params = new URLSearchParams({ root, depth: String(depth) });
    return (await this.request(
      "GET",
      `/analysis/graph?${params}`,
    )) as DistributionGraph;
  }
}
