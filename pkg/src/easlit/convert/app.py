"""Format conversion service: CSV and JSON-LD item export/import."""

from __future__ import annotations

import os
from dataclasses import dataclass
from datetime import datetime, timezone
from decimal import Decimal

import httpx
from fastapi import FastAPI, HTTPException, Request, Response

from ..items.model import Item, item_from_quads
from ..openapi import install_self_description
from ..rdf import (
    RDF_LANG_STRING,
    RDF_TYPE,
    XSD_STRING,
    Dataset,
    Iri,
    Literal,
    parse_jsonld,
)
from ..service_common import install_internal_auth_warning
from ..vocab import BLOOM_IRIS, IMPORTED_FROM, ITEM_TYPE
from .csvcodec import CsvFormatError, CsvRow, bloom_name, decode_csv, encode_csv

LD_JSON = "application/ld+json"


@dataclass
class ConvertServiceConfig:
    item_service_url: str = ""

    @classmethod
    def from_env(cls, environ=os.environ) -> "ConvertServiceConfig":
        return cls(item_service_url=environ.get(
            "CONVERT_ITEM_SERVICE_URL", "http://localhost:8001"))


def _now_iso() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


# -- item <-> request payload helpers ---------------------------------------


def _extension_value(obj) -> object:
    if isinstance(obj, Iri):
        return {"@id": obj.value}
    assert isinstance(obj, Literal)
    if obj.datatype == XSD_STRING and obj.language is None:
        return obj.lexical
    if obj.datatype == RDF_LANG_STRING:
        return {"@value": obj.lexical, "@language": obj.language}
    return {"@value": obj.lexical, "@type": obj.datatype}


def item_payload_json(item: Item, extra: dict | None = None) -> dict:
    """The JSON-LD request body that recreates this item via the item service."""
    payload: dict = {
        "stem": item.stem,
        "points": str(item.points),
        "hasAnswer": [
            {"answerText": a.text, "isCorrect": a.correct, "ordinal": a.ordinal}
            for a in sorted(item.answers, key=lambda a: a.ordinal)
        ],
        "linksDomain": [{"@id": d} for d in sorted(item.domain_links)],
        "assessesOutcome": [{"@id": o} for o in sorted(item.outcome_links)],
    }
    if item.bloom_level:
        payload["bloomLevel"] = {"@id": item.bloom_level}
    for quad in sorted(item.extension, key=lambda q: (q.predicate.value, str(q.object))):
        value = _extension_value(quad.object)
        existing = payload.get(quad.predicate.value)
        if existing is None:
            payload[quad.predicate.value] = value
        elif isinstance(existing, list):
            existing.append(value)
        else:
            payload[quad.predicate.value] = [existing, value]
    payload.update(extra or {})
    return payload


def row_from_item(item: Item) -> CsvRow:
    ordered = sorted(item.answers, key=lambda a: a.ordinal)
    return CsvRow(
        id=item.iri,
        stem=item.stem,
        answers=[a.text for a in ordered],
        correct=[a.correct for a in ordered],
        points=str(item.points),
        bloom_level=bloom_name(item.bloom_level),
        domain_uris=sorted(item.domain_links),
        outcome_uris=sorted(item.outcome_links),
        version=item.version,
    )


def row_payload_json(row: CsvRow) -> dict:
    payload: dict = {
        "stem": row.stem,
        "points": row.points,
        "hasAnswer": [
            {"answerText": text, "isCorrect": correct, "ordinal": position}
            for position, (text, correct) in enumerate(zip(row.answers, row.correct))
        ],
        "linksDomain": [{"@id": d} for d in sorted(row.domain_uris)],
        "assessesOutcome": [{"@id": o} for o in sorted(row.outcome_uris)],
    }
    if row.bloom_level:
        payload["bloomLevel"] = {"@id": BLOOM_IRIS[row.bloom_level]}
    return payload


def row_matches_item(row: CsvRow, item: Item) -> bool:
    """True when importing the row would not change any CSV-visible field."""
    ordered = sorted(item.answers, key=lambda a: a.ordinal)
    return (
        row.stem == item.stem
        and row.answers == [a.text for a in ordered]
        and row.correct == [a.correct for a in ordered]
        and Decimal(row.points) == item.points
        and row.bloom_level == bloom_name(item.bloom_level)
        and set(row.domain_uris) == set(item.domain_links)
        and set(row.outcome_uris) == set(item.outcome_links)
    )


def items_equal(a: Item, b: Item) -> bool:
    """Content equality, ignoring server-managed version/createdAt."""
    return (
        a.stem == b.stem
        and sorted(a.answers, key=lambda x: x.ordinal)
        == sorted(b.answers, key=lambda x: x.ordinal)
        and a.points == b.points
        and a.bloom_level == b.bloom_level
        and a.domain_links == b.domain_links
        and a.outcome_links == b.outcome_links
        and a.extension == b.extension
    )


def items_in_dataset(ds: Dataset) -> list[str]:
    return sorted({
        q.subject.value for q in ds
        if q.predicate.value == RDF_TYPE and isinstance(q.object, Iri)
        and q.object.value == ITEM_TYPE and isinstance(q.subject, Iri)
    })


class ImportReport:
    def __init__(self) -> None:
        self.created: list[str] = []
        self.updated: list[str] = []
        self.skipped = 0
        self.errors: list[tuple[int, str]] = []

    def to_json(self, total_rows: int) -> dict:
        return {
            "created": {"count": len(self.created), "iris": self.created},
            "updated": {"count": len(self.updated), "iris": self.updated},
            "skipped": self.skipped,
            "errors": [{"row": n, "message": m}
                       for n, m in sorted(self.errors)],
            "totalRows": total_rows,
        }


class ItemServiceClient:
    """Thin item-service wrapper shared by the conversion routes."""

    def __init__(self, http: httpx.Client) -> None:
        self.http = http
        self._base: str | None = None

    def instance_base(self) -> str:
        if self._base is None:
            r = self.http.get("/healthz")
            r.raise_for_status()
            self._base = r.json()["instanceBase"].rstrip("/")
        return self._base

    def item_id(self, iri: str) -> str | None:
        prefix = self.instance_base() + "/items/"
        return iri[len(prefix):] if iri.startswith(prefix) else None

    def fetch(self, iri: str) -> Item | None:
        item_id = self.item_id(iri)
        if item_id is None:
            return None
        r = self.http.get(f"/items/{item_id}")
        if r.status_code == 404:
            return None
        r.raise_for_status()
        return item_from_quads(iri, parse_jsonld(r.text))

    def fetch_all(self, params: dict | None = None) -> list[Item]:
        items: list[Item] = []
        page, page_size = 1, 100
        while True:
            r = self.http.get("/items", params={
                **(params or {}), "page": page, "pageSize": page_size})
            if r.status_code == 400:
                raise HTTPException(400, r.json().get("detail"))
            r.raise_for_status()
            ds = parse_jsonld(r.text)
            subjects = items_in_dataset(ds)
            items.extend(item_from_quads(iri, ds) for iri in subjects)
            if len(subjects) < page_size:
                return items
            page += 1

    def create(self, payload: dict) -> tuple[str | None, str | None]:
        """Returns (new IRI, error message)."""
        r = self.http.post("/items", json=payload)
        if r.status_code != 201:
            return None, f"create rejected: {r.json().get('detail')}"
        created = items_in_dataset(parse_jsonld(r.text))
        return created[0], None

    def update(self, iri: str, payload: dict,
               expected_version: int | None) -> str | None:
        """Returns an error message, or None on success."""
        item_id = self.item_id(iri)
        params = {}
        if expected_version is not None:
            params["expectedVersion"] = expected_version
        r = self.http.patch(f"/items/{item_id}", json=payload, params=params)
        if r.status_code == 409:
            stored = r.json()["detail"]["storedVersion"]
            return f"version conflict: stored version is {stored}"
        if r.status_code >= 400:
            return f"update rejected: {r.json().get('detail')}"
        return None


def create_app(config: ConvertServiceConfig,
               item_http: httpx.Client | None = None) -> FastAPI:
    app = FastAPI(title="convert-service", openapi_url=None,
                  docs_url=None, redoc_url=None)
    http = item_http or httpx.Client(base_url=config.item_service_url, timeout=30)
    client = ItemServiceClient(http)
    app.state.client = client

    def select_items(ids: str | None, bloomLevel: str | None,
                     domainIri: str | None) -> tuple[list[Item], list[str]]:
        if ids:
            items, errors = [], []
            for iri in ids.split(","):
                iri = iri.strip()
                item = client.fetch(iri)
                if item is None:
                    errors.append(f"unknown item: {iri}")
                else:
                    items.append(item)
            return items, errors
        params = {}
        if bloomLevel:
            params["bloomLevel"] = bloomLevel
        if domainIri:
            params["domainIri"] = domainIri
        return client.fetch_all(params), []

    @app.get("/export/items.csv",
             responses={400: {"description": "Bad filter"}},
             summary="Export items as CSV (lossy: extension data omitted)")
    def export_csv(ids: str | None = None, bloomLevel: str | None = None,
                   domainIri: str | None = None) -> Response:
        items, errors = select_items(ids, bloomLevel, domainIri)
        text = encode_csv([row_from_item(i) for i in items],
                          client.instance_base(), _now_iso(), errors)
        return Response(text, media_type="text/csv")

    @app.post("/import/items.csv",
              responses={400: {"description": "Unusable CSV header"}},
              summary="Import items from CSV; empty id creates, id updates")
    async def import_csv(request: Request) -> dict:
        try:
            decoded = decode_csv((await request.body()).decode("utf-8"))
        except (CsvFormatError, UnicodeDecodeError) as exc:
            raise HTTPException(400, str(exc))
        report = ImportReport()
        report.errors.extend(decoded.row_errors)
        for number, row in decoded.rows:
            if not row.id:
                iri, error = client.create(row_payload_json(row))
                if error:
                    report.errors.append((number, error))
                else:
                    report.created.append(iri)
                continue
            current = client.fetch(row.id)
            if current is None:
                report.errors.append((number, f"unknown item: {row.id}"))
                continue
            if row_matches_item(row, current):
                report.skipped += 1
                continue
            error = client.update(row.id, row_payload_json(row), row.version)
            if error:
                report.errors.append((number, error))
            else:
                report.updated.append(row.id)
        return report.to_json(decoded.total_rows)

    @app.get("/export/items.jsonld",
             responses={400: {"description": "Bad filter"}},
             summary="Export items as JSON-LD, including extension data")
    def export_jsonld(ids: str | None = None, bloomLevel: str | None = None,
                      domainIri: str | None = None) -> Response:
        from ..items.model import DEFAULT_CONTEXT, item_to_quads
        from ..rdf import serialize_jsonld

        items, errors = select_items(ids, bloomLevel, domainIri)
        if errors:
            raise HTTPException(400, "; ".join(errors))
        combined = Dataset()
        for item in items:
            combined = combined.union(item_to_quads(item))
        return Response(serialize_jsonld(combined, DEFAULT_CONTEXT),
                        media_type=LD_JSON)

    @app.post("/import/items.jsonld",
              responses={400: {"description": "Unparseable document"}},
              summary="Import a JSON-LD item document; foreign items are cloned")
    async def import_jsonld(request: Request) -> dict:
        try:
            ds = parse_jsonld((await request.body()).decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as exc:
            raise HTTPException(400, f"unparseable JSON-LD: {exc}")
        subjects = items_in_dataset(ds)
        report = ImportReport()
        for number, iri in enumerate(subjects, start=1):
            incoming = item_from_quads(iri, ds)
            if client.item_id(iri) is None:
                # foreign instance: clone locally, recording provenance
                payload = item_payload_json(
                    incoming, extra={IMPORTED_FROM: {"@id": iri}})
                new_iri, error = client.create(payload)
                if error:
                    report.errors.append((number, error))
                else:
                    report.created.append(new_iri)
                continue
            current = client.fetch(iri)
            if current is None:
                report.errors.append((number, f"unknown item: {iri}"))
                continue
            if items_equal(incoming, current):
                report.skipped += 1
                continue
            error = client.update(iri, item_payload_json(incoming),
                                  incoming.version)
            if error:
                report.errors.append((number, error))
            else:
                report.updated.append(iri)
        return report.to_json(len(subjects))

    @app.get("/healthz", summary="Service health")
    def healthz() -> dict:
        return {"status": "ok"}

    install_self_description(app, "convert-service")
    install_internal_auth_warning(app, "convert-service")
    return app
