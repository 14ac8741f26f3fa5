/** Runtime configuration, fetched next to the bundle (/app/config.json). */

import type { UiConfig } from "./types.js";

export async function loadConfig(
  fetchFn: typeof fetch = globalThis.fetch,
): Promise<UiConfig> {
  const response = await fetchFn("config.json");
  if (!response.ok) {
    throw new Error(`config.json not available (${response.status})`);
  }
  const raw = (await response.json()) as Partial<UiConfig>;
  if (!raw.gatewayBaseUrl) {
    throw new Error("config.json must set gatewayBaseUrl");
  }
  return {
    gatewayBaseUrl: raw.gatewayBaseUrl,
    apiToken: raw.apiToken ?? "",
    defaultRoot: raw.defaultRoot ?? "",
    defaultDepth: raw.defaultDepth ?? 3,
  };
}
