"""Domain-analysis service: reduced hierarchy views and item distribution."""

from __future__ import annotations

import os
from dataclasses import dataclass

import httpx
from fastapi import FastAPI, HTTPException, Request

from ..openapi import install_self_description
from ..rdf import Iri, Literal, QuadPattern, Variable, append
from ..service_common import install_internal_auth_warning
from ..storeclient import StoreClient, StoreUnavailableError
from ..vocab import LABEL, LINKS_DOMAIN, NARROWER
from .core import (
    CycleError,
    DomainView,
    build_view,
    compute_distribution,
    links_dataset,
    view_dataset,
    visualization_graph,
)

DEFAULT_DEPTH = 3


@dataclass
class AnalysisServiceConfig:
    data_store_url: str = ""
    kg_store_url: str = ""

    @classmethod
    def from_env(cls, environ=os.environ) -> "AnalysisServiceConfig":
        return cls(
            data_store_url=environ.get("ANALYSIS_DATA_STORE_URL", "http://localhost:8000"),
            kg_store_url=environ.get("ANALYSIS_KG_STORE_URL", "http://localhost:8000"),
        )


def create_app(config: AnalysisServiceConfig,
               data_http: httpx.Client | None = None,
               kg_http: httpx.Client | None = None) -> FastAPI:
    app = FastAPI(title="domain-analysis", openapi_url=None,
                  docs_url=None, redoc_url=None)
    data_client = data_http or httpx.Client(base_url=config.data_store_url, timeout=30)
    kg_client = kg_http or httpx.Client(base_url=config.kg_store_url, timeout=30)
    data_store = StoreClient(data_client, "easlit-data")
    kg_store = StoreClient(kg_client, "knowledge-graph")

    @app.exception_handler(StoreUnavailableError)
    async def store_unavailable(request: Request, exc: StoreUnavailableError):
        from fastapi.responses import JSONResponse
        return JSONResponse({"detail": f"graph store unavailable: {exc}"},
                            status_code=503)

    def kg_hierarchy() -> tuple[set[tuple[str, str]], dict[str, str]]:
        edges = {
            (b["p"].value, b["c"].value)
            for b in kg_store.query(
                [QuadPattern(Variable("p"), Iri(NARROWER), Variable("c"))])
            if isinstance(b["p"], Iri) and isinstance(b["c"], Iri)
        }
        labels = {}
        for b in kg_store.query(
                [QuadPattern(Variable("s"), Iri(LABEL), Variable("l"))]):
            if isinstance(b["s"], Iri) and isinstance(b["l"], Literal):
                labels[b["s"].value] = b["l"].lexical
        return edges, labels

    def root_known(root: str, edges, labels) -> bool:
        mentioned = {n for e in edges for n in e} | set(labels)
        if root in mentioned:
            return True
        if kg_store.query([QuadPattern(Iri(root), Variable("p"), Variable("o"))]):
            return True
        return bool(kg_store.query(
            [QuadPattern(Variable("s"), Variable("p"), Iri(root))]))

    def fetch_view(root: str, depth: int) -> DomainView:
        if depth < 0:
            raise HTTPException(400, "depth must be non-negative")
        edges, labels = kg_hierarchy()
        known = {n for e in edges for n in e} | set(labels)
        if root_known(root, edges, labels):
            known.add(root)
        return build_view(root, depth, edges, labels, known)

    def item_links():
        return {
            (b["i"].value, b["d"].value)
            for b in data_store.query(
                [QuadPattern(Variable("i"), Iri(LINKS_DOMAIN), Variable("d"))])
            if isinstance(b["i"], Iri) and isinstance(b["d"], Iri)
        }

    def combined_record(view: DomainView):
        # item links and the reduced view travel as one appended record
        return append(links_dataset(item_links()), view_dataset(view))

    @app.get("/analysis/distribution",
             responses={400: {"description": "Bad parameters"},
                        422: {"description": "Cyclic domain hierarchy"},
                        503: {"description": "Graph store unavailable"}},
             summary="Item/domain distribution counts under a root domain")
    def distribution(root: str, depth: int = DEFAULT_DEPTH) -> dict:
        view = fetch_view(root, depth)
        try:
            return compute_distribution(view, combined_record(view))
        except CycleError as exc:
            raise HTTPException(
                422, {"message": str(exc), "cycleMember": exc.member})

    @app.get("/analysis/graph",
             responses={400: {"description": "Bad parameters"},
                        422: {"description": "Cyclic domain hierarchy"},
                        503: {"description": "Graph store unavailable"}},
             summary="Domain hierarchy with counts, for canvas rendering")
    def graph(root: str, depth: int = DEFAULT_DEPTH) -> dict:
        view = fetch_view(root, depth)
        try:
            return visualization_graph(view, combined_record(view))
        except CycleError as exc:
            raise HTTPException(
                422, {"message": str(exc), "cycleMember": exc.member})

    @app.get("/healthz", summary="Service health")
    def healthz() -> dict:
        return {"status": "ok"}

    install_self_description(app, "domain-analysis")
    install_internal_auth_warning(app, "domain-analysis")
    return app
