"""Item and learning-outcome lifecycle service."""

from __future__ import annotations

import os
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone

import httpx
from fastapi import FastAPI, HTTPException, Request, Response

from ..openapi import install_self_description
from ..rdf import Dataset, Iri, Quad, QuadPattern, Variable, serialize_jsonld
from ..service_common import install_internal_auth_warning
from ..storeclient import StoreClient, StoreUnavailableError
from ..vocab import ASSESSES_OUTCOME, BLOOM_LEVEL, HAS_ANSWER, ITEM_TYPE, LINKS_DOMAIN, OUTCOME_TYPE
from ..rdf import RDF_TYPE
from .model import (
    DEFAULT_CONTEXT,
    EntityValidationError,
    Item,
    LearningOutcome,
    extension_quads,
    item_from_quads,
    item_to_quads,
    normalize_bloom,
    outcome_from_quads,
    outcome_to_quads,
    parse_item_payload,
    parse_outcome_payload,
)

LD_JSON = "application/ld+json"


@dataclass
class ItemServiceConfig:
    base_url: str
    store_url: str = ""

    def __post_init__(self) -> None:
        self.base_url = self.base_url.rstrip("/")

    @classmethod
    def from_env(cls, environ=os.environ) -> "ItemServiceConfig":
        return cls(
            base_url=environ.get("ITEM_BASE_URL", "http://localhost:8001"),
            store_url=environ.get("ITEM_STORE_URL", "http://localhost:8000"),
        )


def _now_iso() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class ItemRepository:
    """Quad-level persistence of items and outcomes in the easlit-data store."""

    def __init__(self, store: StoreClient, base_url: str) -> None:
        self.store = store
        self.base_url = base_url

    def mint_iri(self, kind: str) -> str:
        return f"{self.base_url}/{kind}/{uuid.uuid4()}"

    def footprint(self, iri: str) -> Dataset | None:
        bindings = self.store.query([QuadPattern(Iri(iri), Variable("p"), Variable("o"))])
        if not bindings:
            return None
        quads = [Quad(Iri(iri), b["p"], b["o"]) for b in bindings]
        for b in bindings:
            if b["p"].value == HAS_ANSWER and isinstance(b["o"], Iri):
                node = b["o"]
                for ab in self.store.query([QuadPattern(node, Variable("p"), Variable("o"))]):
                    quads.append(Quad(node, ab["p"], ab["o"]))
        return Dataset(quads)

    def save(self, ds: Dataset, previous: Dataset | None = None) -> None:
        if previous is not None:
            for subject in {q.subject for q in previous}:
                self.store.delete_pattern(
                    QuadPattern(subject, Variable("p"), Variable("o"))
                )
        self.store.insert(ds)

    def remove(self, footprint: Dataset) -> None:
        for subject in {q.subject for q in footprint}:
            self.store.delete_pattern(QuadPattern(subject, Variable("p"), Variable("o")))

    def list_subjects(self, entity_type: str, extra: list[QuadPattern]) -> list[str]:
        bgp = [QuadPattern(Variable("s"), Iri(RDF_TYPE), Iri(entity_type))] + extra
        return sorted({
            b["s"].value for b in self.store.query(bgp) if isinstance(b["s"], Iri)
        })


def create_app(config: ItemServiceConfig, store_http: httpx.Client | None = None) -> FastAPI:
    app = FastAPI(title="item-service", openapi_url=None, docs_url=None, redoc_url=None)
    http = store_http or httpx.Client(base_url=config.store_url, timeout=30)
    repo = ItemRepository(StoreClient(http, "easlit-data"), config.base_url)
    app.state.repo = repo
    app.state.config = config

    @app.exception_handler(StoreUnavailableError)
    async def store_unavailable(request: Request, exc: StoreUnavailableError):
        from fastapi.responses import JSONResponse
        return JSONResponse({"detail": f"graph store unavailable: {exc}"}, status_code=503)

    def item_iri(item_id: str) -> str:
        return f"{config.base_url}/items/{item_id}"

    def outcome_iri(outcome_id: str) -> str:
        return f"{config.base_url}/outcomes/{outcome_id}"

    def ld_response(ds: Dataset, status_code: int = 200) -> Response:
        return Response(serialize_jsonld(ds, DEFAULT_CONTEXT),
                        media_type=LD_JSON, status_code=status_code)

    def load_item(iri: str) -> tuple[Item, Dataset]:
        footprint = repo.footprint(iri)
        if footprint is None:
            raise HTTPException(404, f"no such item: {iri}")
        try:
            return item_from_quads(iri, footprint), footprint
        except EntityValidationError:
            raise HTTPException(404, f"no such item: {iri}")

    # -- items -------------------------------------------------------------

    @app.post("/items", status_code=201,
              responses={400: {"description": "Validation error"},
                         503: {"description": "Graph store unavailable"}},
              summary="Create an item from a JSON-LD payload")
    async def create_item(request: Request) -> Response:
        try:
            payload = parse_item_payload((await request.body()).decode("utf-8"))
        except EntityValidationError as exc:
            raise HTTPException(400, {"message": str(exc), "fields": exc.fields})
        missing = [name for name, value in
                   (("stem", payload.stem), ("answers", payload.answers)) if not value]
        if missing:
            raise HTTPException(400, {"message": "missing required fields",
                                      "fields": missing})
        item = Item(
            iri=repo.mint_iri("items"),
            stem=payload.stem,
            answers=payload.answers,
            points=payload.points if payload.points is not None else 0,
            bloom_level=payload.bloom_level,
            domain_links=payload.domain_links or frozenset(),
            outcome_links=payload.outcome_links or frozenset(),
            version=1,
            created_at=_now_iso(),
        )
        try:
            item.extension = extension_quads(item.iri, payload.extension)
        except EntityValidationError as exc:
            raise HTTPException(400, {"message": str(exc), "fields": exc.fields})
        repo.save(item_to_quads(item))
        return ld_response(item_to_quads(item), status_code=201)

    @app.get("/items", summary="List items, filterable by Bloom level and domain",
             responses={400: {"description": "Bad filter"}})
    def list_items(bloomLevel: str | None = None, domainIri: str | None = None,
                   page: int = 1, pageSize: int = 50) -> Response:
        extra = []
        if bloomLevel is not None:
            try:
                extra.append(QuadPattern(Variable("s"), Iri(BLOOM_LEVEL),
                                         Iri(normalize_bloom(bloomLevel))))
            except EntityValidationError as exc:
                raise HTTPException(400, str(exc))
        if domainIri is not None:
            extra.append(QuadPattern(Variable("s"), Iri(LINKS_DOMAIN), Iri(domainIri)))
        subjects = repo.list_subjects(ITEM_TYPE, extra)
        start = (max(page, 1) - 1) * pageSize
        combined = Dataset()
        for iri in subjects[start:start + pageSize]:
            footprint = repo.footprint(iri)
            if footprint:
                combined = combined.union(footprint)
        return ld_response(combined)

    @app.get("/items/{item_id}", responses={404: {"description": "No such item"}},
             summary="Fetch one item with its extension data")
    def get_item(item_id: str) -> Response:
        _, footprint = load_item(item_iri(item_id))
        return ld_response(footprint)

    @app.patch("/items/{item_id}",
               responses={400: {"description": "Validation error"},
                          404: {"description": "No such item"},
                          409: {"description": "Version conflict"}},
               summary="Update fields present in the payload; optimistic version check")
    async def update_item(item_id: str, request: Request,
                          expectedVersion: int | None = None) -> Response:
        iri = item_iri(item_id)
        current, footprint = load_item(iri)
        if expectedVersion is not None and expectedVersion != current.version:
            raise HTTPException(
                409, {"message": "version conflict", "storedVersion": current.version})
        try:
            payload = parse_item_payload((await request.body()).decode("utf-8"))
            new_extension = extension_quads(iri, payload.extension)
        except EntityValidationError as exc:
            raise HTTPException(400, {"message": str(exc), "fields": exc.fields})
        updated = Item(
            iri=iri,
            stem=payload.stem if payload.stem is not None else current.stem,
            answers=payload.answers if payload.answers is not None else current.answers,
            points=payload.points if payload.points is not None else current.points,
            bloom_level=payload.bloom_level if payload.bloom_level is not None
            else current.bloom_level,
            domain_links=payload.domain_links if payload.domain_links is not None
            else current.domain_links,
            outcome_links=payload.outcome_links if payload.outcome_links is not None
            else current.outcome_links,
            version=current.version + 1,
            created_at=current.created_at,
            extension=current.extension.union(new_extension),
        )
        repo.save(item_to_quads(updated), previous=footprint)
        return ld_response(item_to_quads(updated))

    @app.delete("/items/{item_id}", responses={404: {"description": "No such item"}},
                summary="Delete an item and its answer nodes")
    def delete_item(item_id: str) -> dict:
        _, footprint = load_item(item_iri(item_id))
        repo.remove(footprint)
        return {"deleted": item_iri(item_id)}

    # -- learning outcomes ---------------------------------------------------

    def load_outcome(iri: str) -> tuple[LearningOutcome, Dataset]:
        footprint = repo.footprint(iri)
        if footprint is None:
            raise HTTPException(404, f"no such outcome: {iri}")
        try:
            return outcome_from_quads(iri, footprint), footprint
        except EntityValidationError:
            raise HTTPException(404, f"no such outcome: {iri}")

    @app.post("/outcomes", status_code=201,
              responses={400: {"description": "Validation error"}},
              summary="Create a learning outcome")
    async def create_outcome(request: Request) -> Response:
        try:
            payload = parse_outcome_payload((await request.body()).decode("utf-8"))
        except EntityValidationError as exc:
            raise HTTPException(400, {"message": str(exc), "fields": exc.fields})
        if not payload.label:
            raise HTTPException(400, {"message": "missing required fields",
                                      "fields": ["label"]})
        outcome = LearningOutcome(
            iri=repo.mint_iri("outcomes"),
            label=payload.label,
            description=payload.description,
            domain_links=payload.domain_links or frozenset(),
            version=1,
            created_at=_now_iso(),
        )
        outcome.extension = extension_quads(outcome.iri, payload.extension)
        repo.save(outcome_to_quads(outcome))
        return ld_response(outcome_to_quads(outcome), status_code=201)

    @app.get("/outcomes", summary="List learning outcomes")
    def list_outcomes(page: int = 1, pageSize: int = 50) -> Response:
        subjects = repo.list_subjects(OUTCOME_TYPE, [])
        start = (max(page, 1) - 1) * pageSize
        combined = Dataset()
        for iri in subjects[start:start + pageSize]:
            footprint = repo.footprint(iri)
            if footprint:
                combined = combined.union(footprint)
        return ld_response(combined)

    @app.get("/outcomes/{outcome_id}", responses={404: {"description": "No such outcome"}},
             summary="Fetch one learning outcome")
    def get_outcome(outcome_id: str) -> Response:
        _, footprint = load_outcome(outcome_iri(outcome_id))
        return ld_response(footprint)

    @app.patch("/outcomes/{outcome_id}",
               responses={400: {"description": "Validation error"},
                          404: {"description": "No such outcome"},
                          409: {"description": "Version conflict"}},
               summary="Update a learning outcome")
    async def update_outcome(outcome_id: str, request: Request,
                             expectedVersion: int | None = None) -> Response:
        iri = outcome_iri(outcome_id)
        current, footprint = load_outcome(iri)
        if expectedVersion is not None and expectedVersion != current.version:
            raise HTTPException(
                409, {"message": "version conflict", "storedVersion": current.version})
        try:
            payload = parse_outcome_payload((await request.body()).decode("utf-8"))
            new_extension = extension_quads(iri, payload.extension)
        except EntityValidationError as exc:
            raise HTTPException(400, {"message": str(exc), "fields": exc.fields})
        updated = LearningOutcome(
            iri=iri,
            label=payload.label if payload.label is not None else current.label,
            description=payload.description if payload.description is not None
            else current.description,
            domain_links=payload.domain_links if payload.domain_links is not None
            else current.domain_links,
            version=current.version + 1,
            created_at=current.created_at,
            extension=current.extension.union(new_extension),
        )
        repo.save(outcome_to_quads(updated), previous=footprint)
        return ld_response(outcome_to_quads(updated))

    @app.delete("/outcomes/{outcome_id}",
                responses={404: {"description": "No such outcome"}},
                summary="Delete a learning outcome")
    def delete_outcome(outcome_id: str) -> dict:
        _, footprint = load_outcome(outcome_iri(outcome_id))
        repo.remove(footprint)
        return {"deleted": outcome_iri(outcome_id)}

    @app.get("/healthz", summary="Service health")
    def healthz() -> dict:
        return {"status": "ok", "instanceBase": config.base_url}

    install_self_description(app, "item-service")
    install_internal_auth_warning(app, "item-service")
    return app
