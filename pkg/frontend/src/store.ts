/** Single-store unidirectional state flow: dispatch(action) -> reduce -> render. */

import type {
  DistributionGraph,
  Item,
  Suggestion,
  UiConfig,
} from "./types.js";

export interface Banner {
  message: string;
  requestId: string | null;
}

export interface ViewBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface AppState {
  config: UiConfig | null;
  items: Item[];
  itemsLoading: boolean;
  filters: { bloomLevel: string | null; domainIri: string | null };
  selectedIri: string | null;
  suggestions: Suggestion[];
  graph: DistributionGraph | null;
  graphRoot: string;
  graphDepth: number;
  viewBox: ViewBox;
  banner: Banner | null;
  conflictIri: string | null;
}

export const DEFAULT_VIEW_BOX: ViewBox = { x: 0, y: 0, width: 800, height: 600 };

export function initialState(): AppState {
  return {
    config: null,
    items: [],
    itemsLoading: false,
    filters: { bloomLevel: null, domainIri: null },
    selectedIri: null,
    suggestions: [],
    graph: null,
    graphRoot: "",
    graphDepth: 3,
    viewBox: { ...DEFAULT_VIEW_BOX },
    banner: null,
    conflictIri: null,
  };
}

export type Action =
  | { type: "config-loaded"; config: UiConfig }
  | { type: "items-loading" }
  | { type: "items-loaded"; items: Item[] }
  | { type: "filters-set"; bloomLevel: string | null; domainIri: string | null }
  | { type: "item-selected"; iri: string | null }
  | { type: "suggestions-loaded"; suggestions: Suggestion[] }
  | { type: "item-updated"; item: Item }
  | { type: "graph-loaded"; graph: DistributionGraph; root: string; depth: number }
  | { type: "view-box-set"; viewBox: ViewBox }
  | { type: "request-failed"; message: string; requestId: string | null }
  | { type: "version-conflict"; iri: string }
  | { type: "conflict-dismissed" }
  | { type: "banner-dismissed" };

export function reduce(state: AppState, action: Action): AppState {
  switch (action.type) {
    case "config-loaded":
      return {
        ...state,
        config: action.config,
        graphRoot: action.config.defaultRoot,
        graphDepth: action.config.defaultDepth,
      };
    case "items-loading":
      return { ...state, itemsLoading: true };
    case "items-loaded":
      return { ...state, items: action.items, itemsLoading: false };
    case "filters-set":
      return {
        ...state,
        filters: { bloomLevel: action.bloomLevel, domainIri: action.domainIri },
      };
    case "item-selected":
      return { ...state, selectedIri: action.iri, suggestions: [] };
    case "suggestions-loaded":
      return { ...state, suggestions: action.suggestions };
    case "item-updated":
      return {
        ...state,
        items: state.items.map((item) =>
          item.iri === action.item.iri ? action.item : item,
        ),
        conflictIri: null,
      };
    case "graph-loaded":
      return {
        ...state,
        graph: action.graph,
        graphRoot: action.root,
        graphDepth: action.depth,
      };
    case "view-box-set":
      return { ...state, viewBox: action.viewBox };
    case "request-failed":
      return {
        ...state,
        itemsLoading: false,
        banner: { message: action.message, requestId: action.requestId },
      };
    case "version-conflict":
      return { ...state, conflictIri: action.iri };
    case "conflict-dismissed":
      return { ...state, conflictIri: null };
    case "banner-dismissed":
      return { ...state, banner: null };
  }
}

export type Listener = (state: AppState) => void;

export class Store {
  private state: AppState;
  private listeners: Listener[] = [];

  constructor(state: AppState = initialState()) {
    this.state = state;
  }

  getState(): AppState {
    return this.state;
  }

  dispatch(action: Action): void {
    this.state = reduce(this.state, action);
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}
