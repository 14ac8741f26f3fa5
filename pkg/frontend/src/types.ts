/** Shared data shapes exchanged with the gateway. */

export interface UiConfig {
  gatewayBaseUrl: string;
  apiToken: string;
  defaultRoot: string;
  defaultDepth: number;
}

export interface Answer {
  text: string;
  correct: boolean;
}

export interface Item {
  iri: string;
  stem: string;
  points: string;
  bloomLevel: string | null;
  domains: string[];
  version: number;
  answers: Answer[];
}

export interface Suggestion {
  level: string;
  levelIri: string;
  score: number;
  matchedCues: string[];
}

export interface GraphNode {
  iri: string;
  label: string;
  directCount: number;
  cumulativeCount: number;
}

export interface GraphEdge {
  parentIri: string;
  childIri: string;
}

export interface DistributionGraph {
  root: string;
  depth: number;
  totalItems: number;
  unmatchedLinks: number;
  nodes: GraphNode[];
  edges: GraphEdge[];
}
