"""HTTP client wrapper for one named store inside the graph-store service."""

from __future__ import annotations

import httpx

from .rdf import (
    Binding,
    Dataset,
    Iri,
    QuadPattern,
    Term,
    Variable,
    parse_nquads,
    serialize_nquads,
)
from .wire import term_from_json, term_to_json


class StoreUnavailableError(Exception):
    pass


def _position_json(p: Term | Variable | None) -> dict:
    if isinstance(p, Variable):
        return {"type": "var", "value": p.name}
    return term_to_json(p)


class StoreClient:
    def __init__(self, http: httpx.Client, store: str) -> None:
        self.http = http
        self.store = store

    def _request(self, method: str, path: str, **kwargs) -> httpx.Response:
        try:
            response = self.http.request(method, path, **kwargs)
        except httpx.HTTPError as exc:
            raise StoreUnavailableError(str(exc)) from exc
        if response.status_code >= 500:
            raise StoreUnavailableError(
                f"store returned {response.status_code}: {response.text}"
            )
        return response

    def insert(self, ds: Dataset) -> int:
        r = self._request(
            "POST", f"/stores/{self.store}/quads",
            content=serialize_nquads(ds),
            headers={"Content-Type": "application/n-quads"},
        )
        r.raise_for_status()
        return r.json()["inserted"]

    def delete_pattern(self, pattern: QuadPattern) -> int:
        body = {
            "subject": _position_json(pattern.subject),
            "predicate": _position_json(pattern.predicate),
            "object": _position_json(pattern.object),
            "graph": _position_json(pattern.graph),
        }
        r = self._request("DELETE", f"/stores/{self.store}/quads", json=body)
        r.raise_for_status()
        return r.json()["deleted"]

    def query(self, bgp: list[QuadPattern]) -> list[Binding]:
        body = {"bgp": [{
            "subject": _position_json(p.subject),
            "predicate": _position_json(p.predicate),
            "object": _position_json(p.object),
            "graph": _position_json(p.graph),
        } for p in bgp]}
        r = self._request("POST", f"/stores/{self.store}/query", json=body)
        r.raise_for_status()
        return [
            {name: term_from_json(t) for name, t in binding.items()}
            for binding in r.json()["bindings"]
        ]

    def get_graph(self, iri: Iri | None = None) -> Dataset:
        params = {"iri": iri.value} if iri is not None else None
        r = self._request("GET", f"/stores/{self.store}/graphs", params=params)
        r.raise_for_status()
        return parse_nquads(r.text)

    def healthy(self) -> bool:
        try:
            return self.http.get("/healthz").status_code == 200
        except httpx.HTTPError:
            return False
