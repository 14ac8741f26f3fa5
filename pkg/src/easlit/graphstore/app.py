"""HTTP surface of the quad-store service."""

from __future__ import annotations

from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import JSONResponse

from ..openapi import install_self_description
from ..rdf import (
    Iri,
    JsonLdError,
    NQuadsParseError,
    PatternError,
    match_pattern,
    parse_jsonld,
    parse_nquads,
    serialize_nquads,
)
from ..service_common import install_internal_auth_warning
from ..wire import WireError, binding_to_json, pattern_from_json
from .store import (
    GraphStoreConfig,
    StoreReadOnlyError,
    StoreRegistry,
    UnknownStoreError,
)

NQUADS_TYPES = ("application/n-quads", "text/x-nquads", "text/plain")

_ERR_404 = {404: {"description": "Unknown store"}}
_ERR_WRITE = {
    400: {"description": "Malformed payload"},
    404: {"description": "Unknown store"},
    503: {"description": "Store is read-only after an I/O failure"},
}


def create_app(config: GraphStoreConfig) -> FastAPI:
    registry = StoreRegistry(config)

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        registry.snapshot_all()

    app = FastAPI(title="graph-store", openapi_url=None, docs_url=None,
                  redoc_url=None, lifespan=lifespan)
    app.state.registry = registry

    def store_or_404(name: str):
        try:
            return registry.get(name)
        except UnknownStoreError:
            raise HTTPException(404, f"unknown store: {name}")

    @app.post("/stores/{store}/quads", responses=_ERR_WRITE,
              summary="Insert a batch of quads (N-Quads or JSON-LD body)")
    async def insert_quads(store: str, request: Request) -> JSONResponse:
        target = store_or_404(store)
        body = (await request.body()).decode("utf-8")
        content_type = request.headers.get("content-type", "").split(";")[0].strip()
        try:
            if content_type in NQUADS_TYPES:
                quads = parse_nquads(body)
            else:
                quads = parse_jsonld(body)
        except (NQuadsParseError, JsonLdError) as exc:
            raise HTTPException(400, str(exc))
        try:
            inserted = target.insert(quads)
        except StoreReadOnlyError:
            raise HTTPException(503, f"store {store} is read-only")
        return JSONResponse({"inserted": inserted})

    @app.delete("/stores/{store}/quads", responses=_ERR_WRITE,
                summary="Delete all quads matching one pattern")
    async def delete_matching(store: str, request: Request) -> JSONResponse:
        target = store_or_404(store)
        try:
            pattern = pattern_from_json(await request.json(), omitted_graph="any")
        except (WireError, ValueError) as exc:
            raise HTTPException(400, str(exc))
        try:
            deleted = target.delete(pattern)
        except StoreReadOnlyError:
            raise HTTPException(503, f"store {store} is read-only")
        return JSONResponse({"deleted": deleted})

    @app.post("/stores/{store}/query",
              responses={400: {"description": "Bad pattern"}, **_ERR_404},
              summary="Evaluate a basic graph pattern")
    async def query_bgp(store: str, request: Request) -> JSONResponse:
        target = store_or_404(store)
        payload = await request.json()
        raw_bgp = payload.get("bgp") if isinstance(payload, dict) else None
        if not raw_bgp:
            raise HTTPException(400, "body must be {'bgp': [pattern, ...]} and non-empty")
        try:
            bgp = [pattern_from_json(p) for p in raw_bgp]
            bindings = match_pattern(target.dataset, bgp)
        except (WireError, PatternError) as exc:
            raise HTTPException(400, str(exc))
        return JSONResponse({"bindings": [binding_to_json(b) for b in bindings]})

    @app.get("/stores/{store}/graphs", responses=_ERR_404,
             summary="Fetch one graph (or the whole dataset) as canonical N-Quads")
    def get_graph(store: str, iri: str | None = None) -> Response:
        target = store_or_404(store)
        if iri is None:
            selected = target.dataset
        elif iri == "default":
            selected = target.dataset.graph(None)
        else:
            try:
                selected = target.dataset.graph(Iri(iri))
            except ValueError as exc:
                raise HTTPException(400, str(exc))
        text = serialize_nquads(selected)
        return Response(text, media_type="application/n-quads")

    @app.post("/stores/{store}/snapshot", responses=_ERR_404,
              summary="Force a snapshot to disk")
    def force_snapshot(store: str) -> JSONResponse:
        target = store_or_404(store)
        target.snapshot()
        return JSONResponse({"snapshotted": True})

    @app.get("/healthz", summary="Service health")
    def healthz() -> JSONResponse:
        healthy = registry.healthy()
        body = {
            "status": "ok" if healthy else "unhealthy",
            "stores": {
                name: {"quads": len(s.dataset), "readOnly": s.read_only}
                for name, s in registry.stores.items()
            },
        }
        return JSONResponse(body, status_code=200 if healthy else 503)

    install_self_description(app, "graph-store")
    install_internal_auth_warning(app, "graph-store")
    return app
