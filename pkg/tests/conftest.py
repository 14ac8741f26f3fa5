"""Service wiring fixtures: every service runs in-process behind a TestClient,
and inter-service HTTP clients are TestClients pointed at the upstream app."""

import time
from dataclasses import dataclass, field

import pytest
from fastapi import FastAPI
from fastapi.testclient import TestClient

from easlit.analysis import AnalysisServiceConfig
from easlit.analysis import create_app as create_analysis_app
from easlit.annotate import AnnotationServiceConfig
from easlit.annotate import create_app as create_annot_app
from easlit.convert import ConvertServiceConfig
from easlit.convert import create_app as create_convert_app
from easlit.gateway import ApiToken, GatewayConfig, Route
from easlit.gateway import create_app as create_gateway_app
from easlit.graphstore import GraphStoreConfig
from easlit.graphstore import create_app as create_store_app
from easlit.items import ItemServiceConfig
from easlit.items import create_app as create_item_app


@dataclass
class ItemStack:
    store_app: FastAPI
    item_app: FastAPI
    store: TestClient
    items: TestClient
    base_url: str = "https://a.example.org"
    extras: dict = field(default_factory=dict)


def build_item_stack(data_dir, base_url="https://a.example.org") -> ItemStack:
    store_app = create_store_app(GraphStoreConfig(data_dir=data_dir))
    store_client = TestClient(store_app, base_url="http://graph-store")
    item_app = create_item_app(
        ItemServiceConfig(base_url=base_url), store_http=store_client
    )
    return ItemStack(
        store_app=store_app,
        item_app=item_app,
        store=store_client,
        items=TestClient(item_app, base_url="http://item-service"),
        base_url=base_url,
    )


DEFAULT_TOKENS = [
    ApiToken("writer-token", "write", capacity=500, refill_per_second=500.0),
    ApiToken("reader-token", "read", capacity=500, refill_per_second=500.0),
]

DEFAULT_ROUTES = [
    Route("/stores", "http://graph-store"),
    Route("/items", "http://item-service"),
    Route("/outcomes", "http://item-service"),
    Route("/export", "http://convert-service"),
    Route("/import", "http://convert-service"),
    Route("/annotation", "http://annotation-service", strip_prefix=True),
    Route("/suggest", "http://annotation-service"),
    Route("/analysis", "http://domain-analysis"),
]


@dataclass
class FullStack:
    store: TestClient
    items: TestClient
    convert: TestClient
    annotate: TestClient
    analysis: TestClient
    gateway: TestClient
    gateway_app: FastAPI
    base_url: str
    extras: dict = field(default_factory=dict)

    @property
    def request_log(self) -> list:
        return self.gateway_app.state.request_log

    def auth(self, token="writer-token") -> dict:
        return {"Authorization": f"Bearer {token}"}


def build_full_stack(data_dir, base_url="https://a.example.org",
                     tokens=None, routes=None, clock=time.monotonic,
                     static_dir=None) -> FullStack:
    store_app = create_store_app(GraphStoreConfig(data_dir=data_dir))
    store = TestClient(store_app, base_url="http://graph-store")
    item_app = create_item_app(ItemServiceConfig(base_url=base_url), store_http=store)
    items = TestClient(item_app, base_url="http://item-service")
    convert = TestClient(create_convert_app(ConvertServiceConfig(), item_http=items),
                         base_url="http://convert-service")
    annotate = TestClient(create_annot_app(AnnotationServiceConfig(), item_http=items),
                          base_url="http://annotation-service")
    analysis = TestClient(
        create_analysis_app(AnalysisServiceConfig(), data_http=store, kg_http=store),
        base_url="http://domain-analysis")
    config = GatewayConfig(routes=list(routes or DEFAULT_ROUTES),
                           tokens=list(tokens or DEFAULT_TOKENS),
                           static_dir=static_dir)
    upstreams = {str(c.base_url).rstrip("/"): c
                 for c in (store, items, convert, annotate, analysis)}
    gateway_app = create_gateway_app(config, upstream_clients=upstreams, clock=clock)
    return FullStack(
        store=store, items=items, convert=convert, annotate=annotate,
        analysis=analysis,
        gateway=TestClient(gateway_app, base_url="http://gateway"),
        gateway_app=gateway_app, base_url=base_url,
    )


@pytest.fixture()
def full_stack(tmp_path) -> FullStack:
    return build_full_stack(tmp_path)


@pytest.fixture()
def item_stack(tmp_path) -> ItemStack:
    return build_item_stack(tmp_path)


@pytest.fixture()
def item_client(item_stack) -> TestClient:
    return item_stack.items
