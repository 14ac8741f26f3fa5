/** Minimal readers for the compacted JSON-LD documents the item API serves. */

import type { Answer, Item } from "./types.js";

type Node = Record<string, unknown>;

const BLOOM_IRI_PREFIX = "bloom-";

function asArray<T>(value: T | T[] | undefined): T[] {
  if (value === undefined) return [];
  return Array.isArray(value) ? value : [value];
}

function idOf(value: unknown): string {
  if (typeof value === "string") return value;
  if (value && typeof value === "object" && "@id" in value) {
    return String((value as Node)["@id"]);
  }
  return "";
}

function scalarOf(value: unknown): unknown {
  if (value && typeof value === "object" && "@value" in value) {
    return (value as Node)["@value"];
  }
  return value;
}

/** "…easlit#bloom-remember" -> "remember" */
export function bloomNameFromIri(iri: string): string {
  const fragment = iri.includes("#") ? iri.slice(iri.indexOf("#") + 1) : iri;
  return fragment.startsWith(BLOOM_IRI_PREFIX)
    ? fragment.slice(BLOOM_IRI_PREFIX.length)
    : fragment;
}

function answerFromNode(node: Node): Answer {
  return {
    text: String(scalarOf(node["answerText"]) ?? ""),
    correct: scalarOf(node["isCorrect"]) === true,
  };
}

function ordinalOf(node: Node): number {
  const raw = scalarOf(node["ordinal"]);
  return typeof raw === "number" ? raw : Number(raw ?? 0);
}

/**
 * Extract items from a compacted document: item nodes carry a `stem`;
 * their `hasAnswer` references resolve against sibling answer nodes.
 */
export function itemsFromDocument(doc: unknown): Item[] {
  if (!doc || typeof doc !== "object") return [];
  const graph = asArray((doc as Node)["@graph"] as Node | Node[] | undefined);
  const byId = new Map<string, Node>();
  for (const node of graph) byId.set(idOf(node["@id"] ?? node), node);

  const items: Item[] = [];
  for (const node of graph) {
    if (!("stem" in node)) continue;
    const answerNodes = asArray(node["hasAnswer"])
      .map((ref) => byId.get(idOf(ref)))
      .filter((n): n is Node => n !== undefined)
      .sort((a, b) => ordinalOf(a) - ordinalOf(b));
    const bloomRef = node["bloomLevel"];
    items.push({
      iri: idOf(node["@id"]),
      stem: String(scalarOf(node["stem"]) ?? ""),
      points: String(scalarOf(node["points"]) ?? "0"),
      bloomLevel: bloomRef ? bloomNameFromIri(idOf(bloomRef)) : null,
      domains: asArray(node["linksDomain"]).map(idOf).sort(),
      version: Number(scalarOf(node["version"]) ?? 0),
      answers: answerNodes.map(answerFromNode),
    });
  }
  return items.sort((a, b) => (a.iri < b.iri ? -1 : 1));
}
