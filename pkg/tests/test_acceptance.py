"""End-to-end acceptance suite: one test per system-level guarantee."""

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal

from fastapi.testclient import TestClient

from easlit.batchcli import TransformOptions, push_csv, transform_csv
from easlit.convert import ConvertServiceConfig, decode_csv
from easlit.convert import create_app as create_convert_app
from easlit.gateway import ApiToken, Route, TokenBucket, match_route
from easlit.graphstore import GraphStoreConfig
from easlit.graphstore import create_app as create_store_app
from easlit.items.model import item_from_quads
from easlit.openapi import iter_routes, validate_openapi
from easlit.rdf import (
    Dataset,
    Iri,
    JsonLdContext,
    Literal,
    Quad,
    append,
    isomorphic,
    match_pattern,
    parse_jsonld,
    parse_nquads,
    serialize_jsonld,
    serialize_nquads,
)
from easlit.vocab import BLOOM_IRIS, IMPORTED_FROM, LABEL, LINKS_DOMAIN, NARROWER

from conftest import build_full_stack, build_item_stack
from helpers import bindings_as_sets, brute_force_bgp, random_bgp, random_dataset
from test_domain_analysis import oracle_report, random_case, run_production
from test_gateway import FakeClock, limited_gateway
from test_item_service import MINIMAL, create_item, item_node


def test_criterion_1_serialization_round_trips():
    """200 random datasets survive N-Quads and JSON-LD round trips in <10s."""
    rng = random.Random(101)
    contexts = [
        JsonLdContext({}),
        JsonLdContext({f"p{i}": f"urn:p:{i}" for i in range(5)}),
        JsonLdContext({"zero": "urn:p:0", "one": "urn:p:1"}, vocab="urn:v#"),
    ]
    started = time.perf_counter()
    for _ in range(200):
        ds = random_dataset(rng, max_quads=30, max_blanks=8)
        assert isomorphic(ds, parse_nquads(serialize_nquads(ds)))
        assert isomorphic(ds, parse_jsonld(serialize_jsonld(ds)))
        for ctx in contexts:  # context exchange changes keys, never meaning
            assert isomorphic(ds, parse_jsonld(serialize_jsonld(ds, ctx)))
    assert time.perf_counter() - started < 10.0


def test_criterion_2_pattern_query_matches_brute_force():
    rng = random.Random(202)
    mismatches = 0
    for _ in range(100):
        ds = random_dataset(rng, max_quads=30, max_blanks=6)
        bgp = random_bgp(rng, ds, max_patterns=3)
        if bindings_as_sets(match_pattern(ds, bgp)) != \
                bindings_as_sets(brute_force_bgp(ds, bgp)):
            mismatches += 1
    assert mismatches == 0


def test_criterion_3_open_world_extension_quads(full_stack):
    """New statements on stored items break nothing and read back verbatim."""
    rng = random.Random(303)
    iris = [item_node(create_item(full_stack.items, points=i))["@id"]
            for i in range(5)]
    before = {
        iri: item_from_quads(iri, parse_jsonld(
            full_stack.items.get(f"/items/{iri.rsplit('/', 1)[-1]}").text))
        for iri in iris
    }
    extras = Dataset(
        Quad(Iri(rng.choice(iris)), Iri(f"urn:novel:{n}"), Literal(f"value {n}"))
        for n in range(50)
    )
    r = full_stack.store.post(
        "/stores/easlit-data/quads", content=serialize_nquads(extras),
        headers={"Content-Type": "application/n-quads"})
    assert r.status_code == 200 and r.json()["inserted"] == 50

    for iri in iris:
        footprint = parse_jsonld(
            full_stack.items.get(f"/items/{iri.rsplit('/', 1)[-1]}").text)
        after = item_from_quads(iri, footprint)
        # no core-field read changed
        assert (after.stem, after.answers, after.points, after.version) == \
            (before[iri].stem, before[iri].answers, before[iri].points,
             before[iri].version)
        # every extension quad returned verbatim
        mine = Dataset(q for q in extras if q.subject == Iri(iri))
        assert mine.quads <= footprint.quads
    for probe in ("/items", "/export/items.csv", "/export/items.jsonld",
                  "/suggest/bloom", "/analysis/graph?root=urn:d:R"):
        client = {"/items": full_stack.items,
                  "/suggest/bloom": full_stack.annotate,
                  "/analysis/graph?root=urn:d:R": full_stack.analysis}.get(
            probe, full_stack.convert)
        if probe == "/suggest/bloom":
            response = client.post(probe, json={"stem": "define x"})
        else:
            response = client.get(probe)
        assert 200 <= response.status_code < 300, probe


def test_criterion_4_external_consumer_via_gateway(full_stack):
    """A third-party client joins items with a result table using only the
    public item API through the gateway."""
    levels = ["remember", "understand", "apply", "analyze", "evaluate"]
    fixture = {}
    for n in range(10):
        node = item_node(create_item(
            full_stack.items, stem=f"Question {n}",
            bloomLevel=levels[n % len(levels)]))
        fixture[node["@id"]] = levels[n % len(levels)]
    mock_results = {iri: {"score": k % 4, "attempts": k + 1}
                    for k, iri in enumerate(sorted(fixture))}

    full_stack.request_log.clear()
    headers = full_stack.auth("reader-token")
    listing = full_stack.gateway.get("/items", params={"pageSize": 50},
                                     headers=headers)
    assert listing.status_code == 200
    ds = parse_jsonld(listing.text)
    joined = []
    for iri in sorted(fixture):
        item = item_from_quads(iri, ds)
        assert item.bloom_level == BLOOM_IRIS[fixture[iri]]
        joined.append({"item": iri, "bloom": item.bloom_level,
                       **mock_results[iri]})
    assert len(joined) == 10
    # every call the consumer made went to the public item API
    assert full_stack.request_log, "gateway saw no traffic"
    assert all(entry["path"].startswith("/items")
               for entry in full_stack.request_log)


def test_criterion_5_batch_round_trip_with_conflict(full_stack):
    for n in range(10):
        create_item(full_stack.items, points=n)

    def store_state():
        return parse_nquads(
            full_stack.store.get("/stores/easlit-data/graphs").text)

    # fetch -> push untouched: store no-op
    before = store_state()
    export = full_stack.convert.get("/export/items.csv").text
    report = push_csv(full_stack.convert, full_stack.items, export)
    assert report["skipped"] == 10 and not report["errors"]
    assert isomorphic(before, store_state())

    # fetch -> +1 points -> push: exactly +1 points and +1 version everywhere
    export = full_stack.convert.get("/export/items.csv").text
    edited, touched = transform_csv(export, TransformOptions(points_delta=Decimal(1)))
    assert touched == 10
    report = push_csv(full_stack.convert, full_stack.items, edited)
    assert report["updated"]["count"] == 10 and not report["errors"]
    originals = {r.id: r for _, r in decode_csv(export).rows}
    for _, row in decode_csv(full_stack.convert.get("/export/items.csv").text).rows:
        assert Decimal(row.points) == Decimal(originals[row.id].points) + 1
        assert row.version == originals[row.id].version + 1

    # concurrent edit between fetch and push: one conflict row, no data loss
    export = full_stack.convert.get("/export/items.csv").text
    edited, _ = transform_csv(export, TransformOptions(points_delta=Decimal(1)))
    victim = decode_csv(export).rows[0][1]
    victim_id = victim.id.rsplit("/", 1)[-1]
    full_stack.items.patch(f"/items/{victim_id}", json={"stem": "edited elsewhere"})
    report = push_csv(full_stack.convert, full_stack.items, edited)
    assert len(report["errors"]) == 1
    assert "version conflict" in report["errors"][0]["message"]
    assert report["updated"]["count"] == 9
    survivor = item_node(full_stack.items.get(f"/items/{victim_id}"))
    assert survivor["stem"] == "edited elsewhere"  # concurrent edit kept


def test_criterion_6_distribution_matches_oracle():
    rng = random.Random(606)
    for _ in range(50):
        case = random_case(rng)
        assert run_production(*case) == oracle_report(*case), case
    # worked 4-node fixture
    edges = {("urn:d:R", "urn:d:A"), ("urn:d:R", "urn:d:B"),
             ("urn:d:A", "urn:d:A1")}
    links = {("urn:i:i1", "urn:d:A"), ("urn:i:i2", "urn:d:A1"),
             ("urn:i:i3", "urn:d:B"), ("urn:i:i4", "urn:d:A1")}
    nodes = {n for e in edges for n in e}
    report = run_production("urn:d:R", 3, edges, {}, links, nodes)
    counts = {n["iri"]: (n["directCount"], n["cumulativeCount"])
              for n in report["nodes"]}
    assert counts == {"urn:d:A": (1, 3), "urn:d:A1": (2, 2),
                      "urn:d:B": (1, 1), "urn:d:R": (0, 4)}


def test_criterion_7_gateway_routing_and_burst_bound():
    table = [Route("/items", "http://items"),
             Route("/items/special", "http://special"),
             Route("/stores", "http://stores"),
             Route("/analysis", "http://analysis"),
             Route("/export", "http://convert")]
    probes = {
        "/items": "http://items", "/items/1": "http://items",
        "/items/1/answers/0": "http://items",
        "/items/special": "http://special",
        "/items/special/9": "http://special",
        "/items/specialized": "http://items",
        "/stores": "http://stores", "/stores/easlit-data/quads": "http://stores",
        "/stores/kg/query": "http://stores",
        "/analysis": "http://analysis",
        "/analysis/distribution": "http://analysis",
        "/analysis/graph": "http://analysis",
        "/export": "http://convert", "/export/items.csv": "http://convert",
        "/export/items.jsonld": "http://convert",
        "/itemsfoo": None, "/storesx": None, "/": None, "/nowhere": None,
        "/exporter": None,
    }
    assert len(probes) == 20
    for path, expected in probes.items():
        route = match_route(table, path)
        assert (route.upstream if route else None) == expected, path

    # capacity 5, refill 1/s under a simulated clock
    clock = FakeClock()
    gw = limited_gateway(clock, [ApiToken("t", "read", 5, 1.0)])
    auth = {"Authorization": "Bearer t"}
    codes = [gw.get("/ping", headers=auth).status_code for _ in range(6)]
    assert codes == [200] * 5 + [429]
    assert gw.get("/ping", headers=auth).headers["Retry-After"] == "1"

    # 100 parallel hits on one frozen-clock bucket: no lost updates
    bucket = TokenBucket(5, 1.0, clock)
    with ThreadPoolExecutor(max_workers=20) as pool:
        accepted = sum(pool.map(lambda _: bucket.acquire()[0], range(100)))
    assert accepted == 5


def test_criterion_8_durability_over_1000_ops(tmp_path):
    rng = random.Random(808)
    pool = [Quad(Iri(f"urn:s:{s}"), Iri(f"urn:p:{p}"), Literal(str(v)),
                 rng.choice([None, Iri("urn:g:1")]))
            for s in range(6) for p in range(4) for v in range(4)]
    expected: set[Quad] = set()
    config = GraphStoreConfig(data_dir=tmp_path, snapshot_every=64)

    with TestClient(create_store_app(config), base_url="http://graph-store") as store:
        for _ in range(1000):
            quad = rng.choice(pool)
            if rng.random() < 0.7:
                store.post("/stores/easlit-data/quads",
                           content=serialize_nquads(Dataset([quad])),
                           headers={"Content-Type": "application/n-quads"})
                expected.add(quad)
            else:
                pattern = {
                    "subject": {"type": "iri", "value": quad.subject.value},
                    "predicate": {"type": "iri", "value": quad.predicate.value},
                    "object": {"type": "var", "value": "o"},
                }
                if quad.graph is not None:
                    pattern["graph"] = {"type": "iri", "value": quad.graph.value}
                else:
                    pattern["graph"] = {"type": "default"}
                store.request("DELETE", "/stores/easlit-data/quads", json=pattern)
                expected -= {q for q in pool
                             if (q.subject, q.predicate, q.graph)
                             == (quad.subject, quad.predicate, quad.graph)}
    # clean restart (snapshot written on shutdown)
    with TestClient(create_store_app(config), base_url="http://graph-store") as store:
        recovered = parse_nquads(store.get("/stores/easlit-data/graphs").text)
        assert isomorphic(recovered, Dataset(expected))

        # crash without shutdown: acknowledged writes must survive via the WAL
        extra = Quad(Iri("urn:s:crash"), Iri("urn:p:crash"), Literal("ack"))
        r = store.post("/stores/easlit-data/quads",
                       content=serialize_nquads(Dataset([extra])),
                       headers={"Content-Type": "application/n-quads"})
        assert r.status_code == 200
        expected.add(extra)
        # leaving the with-block would snapshot; simulate the crash instead
        crash = TestClient(create_store_app(config), base_url="http://graph-store")
        recovered = parse_nquads(crash.get("/stores/easlit-data/graphs").text)
    assert isomorphic(recovered, Dataset(expected))


def test_criterion_9_openapi_descriptions(full_stack):
    services = [full_stack.store, full_stack.items, full_stack.convert,
                full_stack.annotate, full_stack.analysis]
    for client in services:
        doc = client.get("/openapi.json").json()
        documented = sorted((m, p) for p, item in doc["paths"].items()
                            for m in item)
        assert sorted(iter_routes(client.app)) == documented
        validate_openapi(doc)


def test_criterion_10_multi_instance_origin(tmp_path):
    a = build_item_stack(tmp_path / "a", "https://a.example.org")
    b = build_item_stack(tmp_path / "b", "https://b.example.org")
    for stack in (a, b):
        app = create_convert_app(ConvertServiceConfig(), item_http=stack.items)
        stack.extras["convert"] = TestClient(app, base_url="http://convert")
        for n in range(3):
            create_item(stack.items, stem=f"{stack.base_url} q{n}")
    export_a = a.extras["convert"].get("/export/items.jsonld").text
    export_b = b.extras["convert"].get("/export/items.jsonld").text

    report = a.extras["convert"].post("/import/items.jsonld",
                                      content=export_b).json()
    assert report["created"]["count"] == 3
    origins = set()
    for clone_iri in report["created"]["iris"]:
        assert clone_iri.startswith("https://a.example.org/items/")
        node = item_node(a.items.get(f"/items/{clone_iri.rsplit('/', 1)[-1]}"))
        origin = node[IMPORTED_FROM]["@id"]
        assert origin.startswith("https://b.example.org/items/")
        origins.add(origin)
    assert len(origins) == 3

    # appending both exports: origin-encoding IRIs can never collide
    ds_a, ds_b = parse_jsonld(export_a), parse_jsonld(export_b)
    combined = append(ds_a, ds_b)
    subjects_a = {q.subject.value for q in ds_a if isinstance(q.subject, Iri)}
    subjects_b = {q.subject.value for q in ds_b if isinstance(q.subject, Iri)}
    assert subjects_a & subjects_b == set()
    assert len(combined) == len(ds_a) + len(ds_b)
