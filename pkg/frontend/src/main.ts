/** Browser entry point: bootstrap, render loop, event delegation. */

import { ApiClient } from "./api.js";
import { App } from "./app.js";
import { loadConfig } from "./config.js";
import { Store } from "./store.js";
import { renderPage } from "./views.js";

function wireEvents(rootEl: HTMLElement, app: App): void {
  const store = app.store;

  rootEl.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const actionEl = target.closest<HTMLElement>("[data-action]");
    if (actionEl) {
      const iri = actionEl.dataset.itemIri ?? "";
      switch (actionEl.dataset.action) {
        case "dismiss-banner":
          store.dispatch({ type: "banner-dismissed" });
          return;
        case "dismiss-conflict":
          store.dispatch({ type: "conflict-dismissed" });
          return;
        case "reload-item":
          void app.reloadItem(iri);
          return;
        case "apply-bloom":
          void app.applyBloom(iri, actionEl.dataset.level ?? "", "educator");
          return;
        case "save-points": {
          const input = rootEl.querySelector<HTMLInputElement>(
            ".editor input[name=points]",
          );
          void app.saveFields(iri, Number(actionEl.dataset.version), {
            points: Number(input?.value ?? "0"),
          });
          return;
        }
        case "clear-domain":
          void app.setFilters(store.getState().filters.bloomLevel, null);
          return;
      }
    }
    const row = target.closest<HTMLElement>("tr[data-item-iri]");
    if (row) {
      void app.selectItem(row.dataset.itemIri ?? null);
      return;
    }
    const node = target.closest<HTMLElement>("g[data-node-iri]");
    if (node) {
      void app.filterByDomain(node.dataset.nodeIri ?? "");
    }
  });

  rootEl.addEventListener("change", (event) => {
    const target = event.target as HTMLElement;
    const filters = store.getState().filters;
    if (target.matches("[data-filter=bloom]")) {
      const level = (target as HTMLSelectElement).value || null;
      void app.setFilters(level, filters.domainIri);
    } else if (target.matches("[data-filter=domain]")) {
      const iri = (target as HTMLInputElement).value.trim() || null;
      void app.setFilters(filters.bloomLevel, iri);
    }
  });

  // pan by drag, zoom by wheel — both only mutate the viewBox in the store
  let dragging: { x: number; y: number } | null = null;
  rootEl.addEventListener("mousedown", (event) => {
    if ((event.target as HTMLElement).closest("svg.canvas")) {
      dragging = { x: event.clientX, y: event.clientY };
    }
  });
  rootEl.addEventListener("mousemove", (event) => {
    if (!dragging) return;
    const vb = store.getState().viewBox;
    const scale = vb.width / 800;
    store.dispatch({
      type: "view-box-set",
      viewBox: {
        ...vb,
        x: vb.x - (event.clientX - dragging.x) * scale,
        y: vb.y - (event.clientY - dragging.y) * scale,
      },
    });
    dragging = { x: event.clientX, y: event.clientY };
  });
  rootEl.addEventListener("mouseup", () => {
    dragging = null;
  });
  rootEl.addEventListener(
    "wheel",
    (event) => {
      if (!(event.target as HTMLElement).closest("svg.canvas")) return;
      event.preventDefault();
      const vb = store.getState().viewBox;
      const factor = event.deltaY > 0 ? 1.15 : 1 / 1.15;
      const width = vb.width * factor;
      const height = vb.height * factor;
      store.dispatch({
        type: "view-box-set",
        viewBox: {
          x: vb.x + (vb.width - width) / 2,
          y: vb.y + (vb.height - height) / 2,
          width,
          height,
        },
      });
    },
    { passive: false },
  );
}

export async function bootstrap(rootEl: HTMLElement): Promise<App> {
  const store = new Store();
  let app: App;
  try {
    const config = await loadConfig();
    store.dispatch({ type: "config-loaded", config });
    app = new App(store, new ApiClient(config));
  } catch (err) {
    rootEl.innerHTML = `<div class="banner" role="alert">${String(err)}</div>`;
    throw err;
  }
  store.subscribe((state) => {
    rootEl.innerHTML = renderPage(state);
  });
  wireEvents(rootEl, app);
  rootEl.innerHTML = renderPage(store.getState());
  await Promise.all([app.refreshItems(), app.refreshGraph()]);
  return app;
}

const rootEl = document.getElementById("app");
if (rootEl) {
  void bootstrap(rootEl);
}
