"""API gateway: prefix routing, bearer auth, rate limiting, proxying."""

from __future__ import annotations

import json
import logging
import time
import uuid

import httpx
from fastapi import FastAPI, Request, Response

from ..service_common import INTERNAL_AUTH_HEADER
from .config import MUTATING_METHODS, GatewayConfig, forward_path, match_route
from .ratelimit import Clock, TokenBucket

logger = logging.getLogger("easlit.gateway")

# hop-by-hop and recomputed headers never forwarded either direction
_SKIP_REQUEST_HEADERS = {"host", "content-length", "connection", "transfer-encoding"}
_SKIP_RESPONSE_HEADERS = {"content-length", "connection", "transfer-encoding",
                          "content-encoding", "date", "server"}


def create_app(config: GatewayConfig,
               upstream_clients: dict[str, httpx.Client] | None = None,
               clock: Clock = time.monotonic) -> FastAPI:
    app = FastAPI(title="gateway", openapi_url=None, docs_url=None, redoc_url=None)
    clients: dict[str, httpx.Client] = dict(upstream_clients or {})
    tokens = {t.token: t for t in config.tokens}
    buckets = {t.token: TokenBucket(t.capacity, t.refill_per_second, clock)
               for t in config.tokens}
    request_log: list[dict] = []
    app.state.request_log = request_log

    if config.static_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/app", StaticFiles(directory=config.static_dir, html=True),
                  name="app")

    def client_for(upstream: str) -> httpx.Client:
        if upstream not in clients:
            clients[upstream] = httpx.Client(base_url=upstream,
                                             timeout=config.timeout_seconds)
        return clients[upstream]

    def log_request(entry: dict) -> None:
        request_log.append(entry)
        logger.info(json.dumps(entry, sort_keys=True))

    def reject(status: int, detail: str, request_id: str, token: str | None,
               path: str, upstream: str | None, started: float,
               headers: dict | None = None) -> Response:
        log_request({"requestId": request_id, "token": token, "path": path,
                     "upstream": upstream, "status": status,
                     "millis": round((time.perf_counter() - started) * 1000, 3)})
        return Response(json.dumps({"detail": detail, "requestId": request_id}),
                        status_code=status, media_type="application/json",
                        headers={"X-Request-Id": request_id, **(headers or {})})

    @app.api_route("/{full_path:path}",
                   methods=["GET", "POST", "PUT", "PATCH", "DELETE"])
    async def proxy(full_path: str, request: Request) -> Response:
        started = time.perf_counter()
        request_id = str(uuid.uuid4())
        path = "/" + full_path
        if path == "/healthz":
            return Response(json.dumps({"status": "ok"}),
                            media_type="application/json",
                            headers={"X-Request-Id": request_id})
        token_value: str | None = None
        is_health = path.endswith("/healthz")
        if not is_health:
            auth = request.headers.get("authorization", "")
            scheme, _, credential = auth.partition(" ")
            if scheme.lower() != "bearer" or credential not in tokens:
                return reject(401, "missing or unknown bearer token", request_id,
                              None, path, None, started,
                              headers={"WWW-Authenticate": "Bearer"})
            token = tokens[credential]
            token_value = token.token
            if token.role == "read" and request.method in MUTATING_METHODS:
                return reject(403, "write role required for mutating requests",
                              request_id, token_value, path, None, started)
            allowed, retry_after = buckets[token_value].acquire()
            if not allowed:
                return reject(429, "rate limit exceeded", request_id,
                              token_value, path, None, started,
                              headers={"Retry-After": str(retry_after)})
        route = match_route(config.routes, path)
        if route is None:
            return reject(404, f"no route for {path}", request_id,
                          token_value, path, None, started)
        target = forward_path(route, path)
        headers = {k: v for k, v in request.headers.items()
                   if k.lower() not in _SKIP_REQUEST_HEADERS}
        headers["X-Request-Id"] = request_id
        headers["X-Forwarded-For"] = request.client.host if request.client else "unknown"
        headers[INTERNAL_AUTH_HEADER] = config.internal_secret
        body = await request.body()
        try:
            upstream_response = client_for(route.upstream).request(
                request.method,
                target + (f"?{request.url.query}" if request.url.query else ""),
                content=body,
                headers=headers,
            )
        except httpx.TimeoutException:
            return reject(504, "upstream timed out", request_id, token_value,
                          path, route.upstream, started)
        except httpx.HTTPError as exc:
            return reject(502, f"upstream unreachable: {exc}", request_id,
                          token_value, path, route.upstream, started)
        log_request({
            "requestId": request_id,
            "token": token_value,
            "path": path,
            "upstream": route.upstream,
            "status": upstream_response.status_code,
            "millis": round((time.perf_counter() - started) * 1000, 3),
        })
        response_headers = {
            k: v for k, v in upstream_response.headers.items()
            if k.lower() not in _SKIP_RESPONSE_HEADERS
        }
        response_headers["X-Request-Id"] = request_id
        return Response(upstream_response.content,
                        status_code=upstream_response.status_code,
                        headers=response_headers)

    return app
