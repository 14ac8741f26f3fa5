from .app import create_app
from .config import (
    MUTATING_METHODS,
    ApiToken,
    GatewayConfig,
    GatewayConfigError,
    Route,
    forward_path,
    match_route,
)
from .ratelimit import TokenBucket

__all__ = [
    "ApiToken", "GatewayConfig", "GatewayConfigError", "MUTATING_METHODS",
    "Route", "TokenBucket", "create_app", "forward_path", "match_route",
]
