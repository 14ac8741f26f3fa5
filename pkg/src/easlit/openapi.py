"""OpenAPI 3.0 self-description generated from a FastAPI route table.

Every service serves ``GET /openapi.json`` built by introspecting its own
routes, so the document can never drift from what the service actually
exposes. Documents validate against the vendored OpenAPI 3.0 meta-schema.
"""

from __future__ import annotations

import json
import re
from importlib import resources
from typing import Any

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from fastapi.routing import APIRoute
from jsonschema import Draft4Validator

_PARAM_RE = re.compile(r"\{([^}:]+)(?::[^}]*)?\}")
_SKIP_METHODS = {"HEAD", "OPTIONS"}


def _normalize_path(path: str) -> str:
    # starlette converter suffixes ({x:path}) are not OpenAPI syntax
    return _PARAM_RE.sub(lambda m: "{" + m.group(1) + "}", path)


def iter_routes(app: FastAPI) -> list[tuple[str, str]]:
    """(method, path) pairs the app actually serves, lowercased methods."""
    pairs = []
    for route in app.routes:
        if not isinstance(route, APIRoute):
            continue
        for method in sorted(route.methods or ()):
            if method in _SKIP_METHODS:
                continue
            pairs.append((method.lower(), _normalize_path(route.path)))
    return sorted(pairs)


def build_openapi(app: FastAPI, title: str, version: str = "1.0.0") -> dict[str, Any]:
    paths: dict[str, Any] = {}
    for route in app.routes:
        if not isinstance(route, APIRoute):
            continue
        path = _normalize_path(route.path)
        item = paths.setdefault(path, {})
        params = _PARAM_RE.findall(route.path)
        for method in sorted(route.methods or ()):
            if method in _SKIP_METHODS:
                continue
            ok_status = str(route.status_code or 200)
            responses: dict[str, Any] = {ok_status: {"description": "Success"}}
            for code, meta in (route.responses or {}).items():
                responses[str(code)] = {
                    "description": str(meta.get("description", "Error"))
                }
            operation: dict[str, Any] = {
                "operationId": f"{method.lower()}_{route.name}",
                "responses": responses,
            }
            if route.summary or route.description:
                operation["summary"] = (
                    route.summary or route.description.splitlines()[0]
                )
            if params:
                operation["parameters"] = [
                    {
                        "name": name,
                        "in": "path",
                        "required": True,
                        "schema": {"type": "string"},
                    }
                    for name in params
                ]
            item[method.lower()] = operation
    return {
        "openapi": "3.0.3",
        "info": {"title": title, "version": version},
        "paths": dict(sorted(paths.items())),
    }


def meta_schema() -> dict[str, Any]:
    text = resources.files("easlit.data").joinpath("openapi-3.0-schema.json").read_text()
    return json.loads(text)


def validate_openapi(doc: dict[str, Any]) -> None:
    """Raise jsonschema.ValidationError if doc is not a valid OpenAPI 3.0 document."""
    Draft4Validator(meta_schema()).validate(doc)


def install_self_description(app: FastAPI, title: str) -> None:
    @app.get("/openapi.json", summary="OpenAPI description of this service")
    def openapi_doc() -> JSONResponse:
        return JSONResponse(build_openapi(app, title))
