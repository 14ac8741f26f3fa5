#!/usr/bin/env python3
"""Run one easlit service under uvicorn, configured from the environment.

Usage:
    python3 scripts/run_service.py SERVICE [--host HOST] [--port PORT]

SERVICE is one of: graph-store, item-service, convert-service,
annotation-service, domain-analysis, gateway.

Each service reads its own environment variables (see README.md); the port
defaults to the service's *_PORT variable, falling back to the values below.
"""

from __future__ import annotations

import argparse
import os
import sys

import uvicorn


def build_graph_store():
    from easlit.graphstore import GraphStoreConfig, create_app
    return create_app(GraphStoreConfig.from_env())


def build_item_service():
    from easlit.items import ItemServiceConfig, create_app
    return create_app(ItemServiceConfig.from_env())


def build_convert_service():
    from easlit.convert import ConvertServiceConfig, create_app
    return create_app(ConvertServiceConfig.from_env())


def build_annotation_service():
    from easlit.annotate import AnnotationServiceConfig, create_app
    return create_app(AnnotationServiceConfig.from_env())


def build_domain_analysis():
    from easlit.analysis import AnalysisServiceConfig, create_app
    return create_app(AnalysisServiceConfig.from_env())


def build_gateway():
    from easlit.gateway import GatewayConfig, create_app
    return create_app(GatewayConfig.from_env())


SERVICES = {
    "graph-store": (build_graph_store, "STORE_PORT", 8000),
    "item-service": (build_item_service, "ITEM_PORT", 8001),
    "convert-service": (build_convert_service, "CONVERT_PORT", 8002),
    "annotation-service": (build_annotation_service, "ANNOT_PORT", 8003),
    "domain-analysis": (build_domain_analysis, "ANALYSIS_PORT", 8004),
    "gateway": (build_gateway, "GATEWAY_PORT", 8080),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("service", choices=sorted(SERVICES))
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=None)
    args = parser.parse_args()

    builder, port_var, default_port = SERVICES[args.service]
    port = args.port or int(os.environ.get(port_var, default_port))
    try:
        app = builder()
    except Exception as exc:  # configuration errors should exit cleanly
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(1)
    uvicorn.run(app, host=args.host, port=port, log_level="info")


if __name__ == "__main__":
    main()
