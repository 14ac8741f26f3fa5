/**
 * Deterministic node-link layout: tiers by hop distance from the root,
 * seeded jitter so repeated renders (and screenshots) are identical.
 */

import type { DistributionGraph } from "./types.js";

export interface Position {
  x: number;
  y: number;
}

/** mulberry32: tiny seeded PRNG, good enough for layout jitter. */
export function seededRandom(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function tiersFromRoot(graph: DistributionGraph): Map<string, number> {
  const children = new Map<string, string[]>();
  for (const edge of graph.edges) {
    const list = children.get(edge.parentIri) ?? [];
    list.push(edge.childIri);
    children.set(edge.parentIri, list);
  }
  const tier = new Map<string, number>();
  let frontier = graph.nodes.some((n) => n.iri === graph.root)
    ? [graph.root]
    : [];
  let depth = 0;
  while (frontier.length > 0) {
    const next: string[] = [];
    for (const iri of frontier) {
      if (tier.has(iri)) continue;
      tier.set(iri, depth);
      next.push(...(children.get(iri) ?? []));
    }
    frontier = next;
    depth += 1;
  }
  // nodes unreachable from the root (shouldn't happen in a view) go last
  for (const node of graph.nodes) {
    if (!tier.has(node.iri)) tier.set(node.iri, depth);
  }
  return tier;
}

export function layoutGraph(
  graph: DistributionGraph,
  width = 800,
  height = 600,
  seed = 42,
): Map<string, Position> {
  const tier = tiersFromRoot(graph);
  const byTier = new Map<number, string[]>();
  for (const node of graph.nodes) {
    const t = tier.get(node.iri) ?? 0;
    const list = byTier.get(t) ?? [];
    list.push(node.iri);
    byTier.set(t, list);
  }
  const tierCount = Math.max(1, byTier.size);
  const random = seededRandom(seed);
  const positions = new Map<string, Position>();
  const levels = [...byTier.keys()].sort((a, b) => a - b);
  levels.forEach((level, row) => {
    const iris = byTier.get(level)!.sort();
    const y = ((row + 1) / (tierCount + 1)) * height;
    iris.forEach((iri, index) => {
      const x = ((index + 1) / (iris.length + 1)) * width;
      positions.set(iri, {
        x: x + (random() - 0.5) * 16,
        y: y + (random() - 0.5) * 10,
      });
    });
  });
  return positions;
}

/** Node radius encodes cumulativeCount (sqrt scale, clamped). */
export function nodeRadius(cumulativeCount: number): number {
  return Math.min(40, 8 + 5 * Math.sqrt(cumulativeCount));
}
