"""Gateway configuration: route table, API tokens, limits."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..rdf import is_absolute_iri

MUTATING_METHODS = frozenset({"POST", "PUT", "PATCH", "DELETE"})


class GatewayConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Route:
    prefix: str
    upstream: str
    strip_prefix: bool = False


@dataclass(frozen=True)
class ApiToken:
    token: str
    role: str  # "read" | "write"
    capacity: int
    refill_per_second: float


@dataclass
class GatewayConfig:
    routes: list[Route] = field(default_factory=list)
    tokens: list[ApiToken] = field(default_factory=list)
    timeout_seconds: float = 30.0
    static_dir: Path | None = None
    internal_secret: str = "gateway-internal"

    def __post_init__(self) -> None:
        prefixes = [r.prefix for r in self.routes]
        if len(prefixes) != len(set(prefixes)):
            raise GatewayConfigError("route prefixes must be unique")
        for route in self.routes:
            if not route.prefix.startswith("/"):
                raise GatewayConfigError(f"prefix must start with /: {route.prefix!r}")
            if not is_absolute_iri(route.upstream):
                raise GatewayConfigError(f"upstream must be absolute: {route.upstream!r}")
        token_values = [t.token for t in self.tokens]
        if len(token_values) != len(set(token_values)):
            raise GatewayConfigError("tokens must be unique")
        for token in self.tokens:
            if token.role not in ("read", "write"):
                raise GatewayConfigError(f"role must be read or write: {token.role!r}")
            if token.capacity < 1:
                raise GatewayConfigError("token capacity must be >= 1")
            if token.refill_per_second <= 0:
                raise GatewayConfigError("refillPerSecond must be positive")

    @classmethod
    def from_json(cls, text: str) -> "GatewayConfig":
        raw = json.loads(text)
        static_dir = raw.get("staticDir")
        return cls(
            routes=[Route(r["prefix"], r["upstream"], bool(r.get("stripPrefix", False)))
                    for r in raw.get("routes", [])],
            tokens=[ApiToken(t["token"], t["role"], int(t["capacity"]),
                             float(t["refillPerSecond"]))
                    for t in raw.get("tokens", [])],
            timeout_seconds=float(raw.get("timeoutSeconds", 30.0)),
            static_dir=Path(static_dir) if static_dir else None,
            internal_secret=raw.get("internalSecret", "gateway-internal"),
        )

    @classmethod
    def load(cls, path: Path | str) -> "GatewayConfig":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def from_env(cls, environ=os.environ) -> "GatewayConfig":
        path = environ.get("GATEWAY_CONFIG")
        if not path:
            raise GatewayConfigError("GATEWAY_CONFIG must point at a config file")
        return cls.load(path)


def match_route(routes: list[Route], path: str) -> Route | None:
    """Longest-prefix match on segment boundaries; pure in (path, table)."""
    best = None
    for route in routes:
        prefix = route.prefix.rstrip("/") or "/"
        if path == prefix or path.startswith(prefix + "/") or prefix == "/":
            if best is None or len(prefix) > len(best.prefix.rstrip("/")):
                best = route
    return best


def forward_path(route: Route, path: str) -> str:
    if not route.strip_prefix:
        return path
    stripped = path[len(route.prefix.rstrip("/")):]
    return stripped if stripped.startswith("/") else "/" + stripped if stripped else "/"
