"""Annotation service: Bloom annotation, domain linking, suggestion heuristic."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

import httpx
from fastapi import FastAPI, HTTPException, Request

from ..items.model import EntityValidationError, normalize_bloom
from ..openapi import install_self_description
from ..service_common import install_internal_auth_warning
from ..vocab import ANNOTATED_BY, BLOOM_LEVEL_BY_IRI, BLOOM_ORDER
from .suggest import load_lexicon, suggest_bloom


@dataclass
class AnnotationServiceConfig:
    item_service_url: str = ""
    lexicon_path: Path | None = None

    @classmethod
    def from_env(cls, environ=os.environ) -> "AnnotationServiceConfig":
        path = environ.get("ANNOT_LEXICON_PATH")
        return cls(
            item_service_url=environ.get("ANNOT_ITEM_SERVICE_URL", "http://localhost:8001"),
            lexicon_path=Path(path) if path else None,
        )


def create_app(config: AnnotationServiceConfig,
               item_http: httpx.Client | None = None) -> FastAPI:
    app = FastAPI(title="annotation-service", openapi_url=None,
                  docs_url=None, redoc_url=None)
    items = item_http or httpx.Client(base_url=config.item_service_url, timeout=30)
    lexicon = load_lexicon(config.lexicon_path)
    app.state.lexicon = lexicon

    def fetch_item_node(item_id: str) -> dict:
        r = items.get(f"/items/{item_id}")
        if r.status_code == 404:
            raise HTTPException(404, f"no such item: {item_id}")
        r.raise_for_status()
        doc = json.loads(r.text)
        nodes = [n for n in doc.get("@graph", []) if "stem" in n]
        if not nodes:
            raise HTTPException(404, f"no such item: {item_id}")
        return nodes[0]

    def patch_item(item_id: str, payload: dict) -> None:
        r = items.patch(f"/items/{item_id}", json=payload)
        if r.status_code == 404:
            raise HTTPException(404, f"no such item: {item_id}")
        if r.status_code >= 400:
            raise HTTPException(r.status_code, r.json().get("detail"))

    def current_links(node: dict) -> set[str]:
        raw = node.get("linksDomain", [])
        raw = raw if isinstance(raw, list) else [raw]
        return {v["@id"] if isinstance(v, dict) else v for v in raw}

    @app.post("/items/{item_id}/annotations/bloom",
              responses={400: {"description": "Unknown Bloom level"},
                         404: {"description": "No such item"}},
              summary="Set an item's Bloom level with annotator provenance")
    async def set_bloom(item_id: str, request: Request) -> dict:
        body = await request.json()
        level, annotator = body.get("level"), body.get("annotator", "unknown")
        try:
            level_iri = normalize_bloom(level)
        except EntityValidationError as exc:
            raise HTTPException(400, {"message": str(exc), "validLevels": BLOOM_ORDER})
        fetch_item_node(item_id)
        patch_item(item_id, {
            "bloomLevel": {"@id": level_iri},
            ANNOTATED_BY: str(annotator),
        })
        return {"item": item_id, "bloomLevel": BLOOM_LEVEL_BY_IRI[level_iri]}

    @app.post("/items/{item_id}/links/domain",
              responses={400: {"description": "Bad domain IRI"},
                         404: {"description": "No such item"}},
              summary="Link an item to a domain node (idempotent)")
    async def link_domain(item_id: str, request: Request) -> dict:
        body = await request.json()
        domain = body.get("domainIri")
        if not isinstance(domain, str) or ":" not in domain:
            raise HTTPException(400, f"domainIri must be an absolute IRI, got {domain!r}")
        node = fetch_item_node(item_id)
        links = current_links(node)
        if domain in links:
            return {"item": item_id, "added": 0}
        links.add(domain)
        patch_item(item_id, {"linksDomain": [{"@id": d} for d in sorted(links)]})
        return {"item": item_id, "added": 1}

    @app.delete("/items/{item_id}/links/domain",
                responses={404: {"description": "No such item"}},
                summary="Unlink an item from a domain node")
    async def unlink_domain(item_id: str, request: Request) -> dict:
        body = await request.json()
        domain = body.get("domainIri")
        node = fetch_item_node(item_id)
        links = current_links(node)
        if domain not in links:
            return {"item": item_id, "removed": 0}
        links.discard(domain)
        patch_item(item_id, {"linksDomain": [{"@id": d} for d in sorted(links)]})
        return {"item": item_id, "removed": 1}

    @app.post("/suggest/bloom", summary="Rank Bloom levels for a stem text")
    async def suggest(request: Request) -> dict:
        body = await request.json()
        stem = body.get("stem", "")
        suggestions = suggest_bloom(stem, lexicon)
        return {"suggestions": [
            {
                "level": BLOOM_LEVEL_BY_IRI[s.level],
                "levelIri": s.level,
                "score": s.score,
                "matchedCues": list(s.matched_cues),
            }
            for s in suggestions
        ]}

    @app.get("/healthz", summary="Service health")
    def healthz() -> dict:
        return {"status": "ok"}

    install_self_description(app, "annotation-service")
    install_internal_auth_warning(app, "annotation-service")
    return app
