"""Domain-hierarchy view extraction and item/domain distribution counts."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..rdf import Dataset, Iri, Literal, Quad
from ..vocab import LABEL, LINKS_DOMAIN, NARROWER

Edge = tuple[str, str]  # (parent, child) along a narrower edge


class CycleError(ValueError):
    def __init__(self, member: str) -> None:
        super().__init__(f"domain hierarchy contains a cycle through {member}")
        self.member = member


@dataclass
class DomainView:
    """Nodes within `depth` narrower-hops of root, plus edges among them."""

    root: str
    depth: int
    nodes: set[str] = field(default_factory=set)
    edges: set[Edge] = field(default_factory=set)
    labels: dict[str, str] = field(default_factory=dict)


def build_view(root: str, depth: int, edges: set[Edge],
               labels: dict[str, str], known_nodes: set[str]) -> DomainView:
    """BFS by hop count; an absent root yields an empty view."""
    if root not in known_nodes:
        return DomainView(root, depth)
    included = {root}
    frontier = {root}
    for _ in range(depth):
        frontier = {c for p, c in edges if p in frontier} - included
        if not frontier:
            break
        included |= frontier
    return DomainView(
        root=root,
        depth=depth,
        nodes=included,
        edges={(p, c) for p, c in edges if p in included and c in included},
        labels={n: labels[n] for n in included if n in labels},
    )


def view_dataset(view: DomainView) -> Dataset:
    quads = [Quad(Iri(p), Iri(NARROWER), Iri(c)) for p, c in view.edges]
    quads += [Quad(Iri(n), Iri(LABEL), Literal(text))
              for n, text in view.labels.items()]
    return Dataset(quads)


def links_dataset(links: set[Edge]) -> Dataset:
    return Dataset(Quad(Iri(item), Iri(LINKS_DOMAIN), Iri(domain))
                   for item, domain in links)


def display_label(iri: str, labels: dict[str, str]) -> str:
    if iri in labels:
        return labels[iri]
    if "#" in iri:
        return iri.rsplit("#", 1)[-1]
    return iri.rstrip("/").rsplit("/", 1)[-1]


def _topological_order(nodes: set[str], edges: set[Edge]) -> list[str]:
    """Children-first order; raises CycleError naming a cycle member."""
    children: dict[str, set[str]] = {n: set() for n in nodes}
    indegree = {n: 0 for n in nodes}
    for parent, child in edges:
        if child not in children[parent]:
            children[parent].add(child)
            indegree[child] += 1
    ready = sorted(n for n in nodes if indegree[n] == 0)
    order: list[str] = []
    while ready:
        node = ready.pop(0)
        order.append(node)
        for child in sorted(children[node]):
            indegree[child] -= 1
            if indegree[child] == 0:
                ready.append(child)
        ready.sort()
    if len(order) != len(nodes):
        leftover = min(n for n in nodes if indegree[n] > 0)
        raise CycleError(leftover)
    return list(reversed(order))  # leaves first


def compute_distribution(view: DomainView, combined: Dataset) -> dict:
    """Distribution counts from the single appended data record.

    Cumulative counts use distinct-item semantics: the per-node item sets
    are accumulated leaves-first, so an item linking several descendants
    is counted once at each ancestor.
    """
    links = {
        (q.subject.value, q.object.value) for q in combined
        if q.predicate.value == LINKS_DOMAIN
        and isinstance(q.subject, Iri) and isinstance(q.object, Iri)
    }
    edges = {
        (q.subject.value, q.object.value) for q in combined
        if q.predicate.value == NARROWER
        and isinstance(q.subject, Iri) and isinstance(q.object, Iri)
        and q.subject.value in view.nodes and q.object.value in view.nodes
    }
    direct: dict[str, set[str]] = {n: set() for n in view.nodes}
    unmatched = 0
    for item, domain in links:
        if domain in direct:
            direct[domain].add(item)
        else:
            unmatched += 1
    children: dict[str, set[str]] = {n: set() for n in view.nodes}
    for parent, child in edges:
        children[parent].add(child)
    cumulative: dict[str, set[str]] = {}
    for node in _topological_order(view.nodes, edges):
        acc = set(direct[node])
        for child in children[node]:
            acc |= cumulative[child]
        cumulative[node] = acc
    return {
        "root": view.root,
        "depth": view.depth,
        "totalItems": len({item for item, _ in links}),
        "unmatchedLinks": unmatched,
        "nodes": [
            {
                "iri": node,
                "label": display_label(node, view.labels),
                "directCount": len(direct[node]),
                "cumulativeCount": len(cumulative[node]),
            }
            for node in sorted(view.nodes)
        ],
    }


def visualization_graph(view: DomainView, combined: Dataset) -> dict:
    report = compute_distribution(view, combined)
    return {
        "nodes": report["nodes"],
        "edges": [{"parentIri": p, "childIri": c}
                  for p, c in sorted(view.edges)],
    }
