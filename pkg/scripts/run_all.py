#!/usr/bin/env python3
"""Start the whole service mesh locally: six processes plus a gateway config.

Usage:
    python3 scripts/run_all.py [--data-dir DIR] [--static-dir DIR]

Ports (override via the usual *_PORT variables):
    graph-store 8000, item-service 8001, convert-service 8002,
    annotation-service 8003, domain-analysis 8004, gateway 8080.

A gateway config with two demo tokens is written to DATA_DIR/gateway.json:
    demo-writer-token (role write), demo-reader-token (role read).
Pass --static-dir to serve a built web UI from the gateway at /app.
Stop everything with Ctrl-C.
"""

from __future__ import annotations

import argparse
import json
import os
import signal
import subprocess
import sys
import time
from pathlib import Path

HERE = Path(__file__).resolve().parent


def port(var: str, default: int) -> int:
    return int(os.environ.get(var, default))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", type=Path, default=Path("./easlit-data"))
    parser.add_argument("--static-dir", type=Path, default=None)
    parser.add_argument("--host", default="127.0.0.1")
    args = parser.parse_args()

    data_dir = args.data_dir.resolve()
    data_dir.mkdir(parents=True, exist_ok=True)
    host = args.host

    ports = {
        "graph-store": port("STORE_PORT", 8000),
        "item-service": port("ITEM_PORT", 8001),
        "convert-service": port("CONVERT_PORT", 8002),
        "annotation-service": port("ANNOT_PORT", 8003),
        "domain-analysis": port("ANALYSIS_PORT", 8004),
        "gateway": port("GATEWAY_PORT", 8080),
    }
    url = {name: f"http://{host}:{p}" for name, p in ports.items()}

    gateway_config = {
        "routes": [
            {"prefix": "/stores", "upstream": url["graph-store"]},
            {"prefix": "/items", "upstream": url["item-service"]},
            {"prefix": "/outcomes", "upstream": url["item-service"]},
            {"prefix": "/export", "upstream": url["convert-service"]},
            {"prefix": "/import", "upstream": url["convert-service"]},
            {"prefix": "/annotation", "upstream": url["annotation-service"],
             "stripPrefix": True},
            {"prefix": "/suggest", "upstream": url["annotation-service"]},
            {"prefix": "/analysis", "upstream": url["domain-analysis"]},
        ],
        "tokens": [
            {"token": "demo-writer-token", "role": "write",
             "capacity": 50, "refillPerSecond": 25.0},
            {"token": "demo-reader-token", "role": "read",
             "capacity": 50, "refillPerSecond": 25.0},
        ],
        "timeoutSeconds": 30,
    }
    if args.static_dir:
        gateway_config["staticDir"] = str(args.static_dir.resolve())
    config_path = data_dir / "gateway.json"
    config_path.write_text(json.dumps(gateway_config, indent=2))

    env_per_service = {
        "graph-store": {"STORE_DATA_DIR": str(data_dir)},
        "item-service": {"ITEM_BASE_URL": url["item-service"],
                         "ITEM_STORE_URL": url["graph-store"]},
        "convert-service": {"CONVERT_ITEM_SERVICE_URL": url["item-service"]},
        "annotation-service": {"ANNOT_ITEM_SERVICE_URL": url["item-service"]},
        "domain-analysis": {"ANALYSIS_DATA_STORE_URL": url["graph-store"],
                            "ANALYSIS_KG_STORE_URL": url["graph-store"]},
        "gateway": {"GATEWAY_CONFIG": str(config_path)},
    }

    procs: list[subprocess.Popen] = []
    signal.signal(signal.SIGTERM, lambda *_: sys.exit(0))
    try:
        for name, extra_env in env_per_service.items():
            env = {**os.environ, **extra_env}
            procs.append(subprocess.Popen(
                [sys.executable, str(HERE / "run_service.py"), name,
                 "--host", host, "--port", str(ports[name])],
                env=env))
            time.sleep(0.3)  # let the store come up before its dependents
        print(f"gateway listening on {url['gateway']} "
              f"(config: {config_path})")
        print("tokens: demo-writer-token (write), demo-reader-token (read)")
        signal.pause()
    except KeyboardInterrupt:
        pass
    finally:
        for proc in procs:
            proc.terminate()
        for proc in procs:
            proc.wait(timeout=10)


if __name__ == "__main__":
    main()
