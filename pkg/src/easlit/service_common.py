"""Bits shared by all HTTP services."""

from __future__ import annotations

import logging

from fastapi import FastAPI, Request

log = logging.getLogger("easlit.services")

INTERNAL_AUTH_HEADER = "X-Internal-Auth"


def install_internal_auth_warning(app: FastAPI, service: str) -> None:
    """Warn (never reject) when a request arrives without the gateway's
    internal-auth header; direct service access is a deployment concern."""

    @app.middleware("http")
    async def warn_missing_internal_auth(request: Request, call_next):
        if request.url.path != "/healthz" and INTERNAL_AUTH_HEADER not in request.headers:
            log.warning(
                "%s: request to %s without %s header (not via gateway?)",
                service, request.url.path, INTERNAL_AUTH_HEADER,
            )
        return await call_next(request)
