/** Pure render functions: AppState in, HTML/SVG strings out. */

import { layoutGraph, nodeRadius } from "./layout.js";
import type { AppState } from "./store.js";
import type { Item } from "./types.js";

export const BLOOM_LEVELS = [
  "remember",
  "understand",
  "apply",
  "analyze",
  "evaluate",
  "create",
];

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderBanner(state: AppState): string {
  if (!state.banner) return "";
  const requestId = state.banner.requestId
    ? ` <span class="request-id">request ${escapeHtml(state.banner.requestId)}</span>`
    : "";
  const hint =
    state.banner.message.includes("401") ||
    state.banner.message.toLowerCase().includes("token")
      ? " Check the API token in config.json."
      : "";
  return (
    `<div class="banner" role="alert">` +
    `${escapeHtml(state.banner.message)}${hint}${requestId}` +
    `<button data-action="dismiss-banner">dismiss</button></div>`
  );
}

function bloomOptions(selected: string | null): string {
  const blank = `<option value=""${selected ? "" : " selected"}>any level</option>`;
  return (
    blank +
    BLOOM_LEVELS.map(
      (level) =>
        `<option value="${level}"${level === selected ? " selected" : ""}>${level}</option>`,
    ).join("")
  );
}

export function renderItemsView(state: AppState): string {
  const { filters } = state;
  const controls =
    `<div class="filters">` +
    `<select data-filter="bloom">${bloomOptions(filters.bloomLevel)}</select>` +
    `<input data-filter="domain" placeholder="domain IRI" value="${escapeHtml(filters.domainIri ?? "")}">` +
    (filters.domainIri
      ? `<button data-action="clear-domain">clear domain</button>`
      : "") +
    `</div>`;
  if (state.itemsLoading) {
    return `${controls}<p class="loading">loading items…</p>`;
  }
  if (state.items.length === 0) {
    return `${controls}<p class="empty-state">no items</p>`;
  }
  const rows = state.items
    .map((item) => {
      const selected = item.iri === state.selectedIri ? ' class="selected"' : "";
      return (
        `<tr data-item-iri="${escapeHtml(item.iri)}"${selected}>` +
        `<td>${escapeHtml(item.stem)}</td>` +
        `<td>${escapeHtml(item.bloomLevel ?? "—")}</td>` +
        `<td>${escapeHtml(item.points)}</td>` +
        `<td>${item.version}</td></tr>`
      );
    })
    .join("");
  return (
    `${controls}<table class="items">` +
    `<thead><tr><th>stem</th><th>bloom</th><th>points</th><th>v</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

function selectedItem(state: AppState): Item | null {
  return state.items.find((i) => i.iri === state.selectedIri) ?? null;
}

export function renderEditor(state: AppState): string {
  const item = selectedItem(state);
  if (!item) return `<p class="empty-state">select an item to annotate</p>`;
  if (state.conflictIri === item.iri) {
    return (
      `<div class="conflict-dialog" role="alertdialog">` +
      `<p>Someone else changed this item since you loaded it.</p>` +
      `<button data-action="reload-item" data-item-iri="${escapeHtml(item.iri)}">reload latest</button>` +
      `<button data-action="dismiss-conflict">keep editing</button></div>`
    );
  }
  const answers = item.answers
    .map(
      (a) =>
        `<li class="${a.correct ? "correct" : ""}">${escapeHtml(a.text)}</li>`,
    )
    .join("");
  const chips = state.suggestions
    .map(
      (s) =>
        `<button class="chip" data-action="apply-bloom" ` +
        `data-item-iri="${escapeHtml(item.iri)}" data-level="${escapeHtml(s.level)}" ` +
        `title="cues: ${escapeHtml(s.matchedCues.join(", "))}">` +
        `${escapeHtml(s.level)} (${s.score.toFixed(2)})</button>`,
    )
    .join("");
  return (
    `<div class="editor" data-item-iri="${escapeHtml(item.iri)}">` +
    `<h3>${escapeHtml(item.stem)}</h3>` +
    `<ul class="answers">${answers}</ul>` +
    `<p>current level: <strong class="current-bloom">${escapeHtml(item.bloomLevel ?? "unset")}</strong></p>` +
    `<div class="suggestions">${chips || "<em>no suggestions</em>"}</div>` +
    `<label>points <input name="points" value="${escapeHtml(item.points)}"></label>` +
    `<button data-action="save-points" data-item-iri="${escapeHtml(item.iri)}" ` +
    `data-version="${item.version}">save</button></div>`
  );
}

export function renderCanvas(state: AppState): string {
  const graph = state.graph;
  const vb = state.viewBox;
  const viewBox = `${vb.x} ${vb.y} ${vb.width} ${vb.height}`;
  if (!graph || graph.nodes.length === 0) {
    return (
      `<svg class="canvas" viewBox="${viewBox}">` +
      `<text x="20" y="40" class="empty-state">no domain graph</text></svg>`
    );
  }
  const positions = layoutGraph(graph);
  const edges = graph.edges
    .map((edge) => {
      const from = positions.get(edge.parentIri);
      const to = positions.get(edge.childIri);
      if (!from || !to) return "";
      return `<line x1="${from.x.toFixed(1)}" y1="${from.y.toFixed(1)}" x2="${to.x.toFixed(1)}" y2="${to.y.toFixed(1)}"/>`;
    })
    .join("");
  const nodes = graph.nodes
    .map((node) => {
      const pos = positions.get(node.iri)!;
      const r = nodeRadius(node.cumulativeCount);
      return (
        `<g class="node" data-node-iri="${escapeHtml(node.iri)}">` +
        `<title>direct: ${node.directCount}</title>` +
        `<circle cx="${pos.x.toFixed(1)}" cy="${pos.y.toFixed(1)}" r="${r.toFixed(1)}"/>` +
        `<text x="${pos.x.toFixed(1)}" y="${(pos.y + r + 14).toFixed(1)}">` +
        `${escapeHtml(node.label)} (${node.cumulativeCount})</text></g>`
      );
    })
    .join("");
  return (
    `<svg class="canvas" viewBox="${viewBox}">` +
    `<g class="edges">${edges}</g><g class="nodes">${nodes}</g></svg>` +
    `<p class="graph-meta">items: ${graph.totalItems}, unmatched links: ${graph.unmatchedLinks}</p>`
  );
}

export function renderPage(state: AppState): string {
  return (
    renderBanner(state) +
    `<div class="columns">` +
    `<section id="items-view">${renderItemsView(state)}</section>` +
    `<section id="editor-view">${renderEditor(state)}</section>` +
    `<section id="canvas-view">${renderCanvas(state)}</section>` +
    `</div>`
  );
}
