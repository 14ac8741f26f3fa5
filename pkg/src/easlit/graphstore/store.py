"""Durable quad store: in-memory set, write-ahead log, atomic snapshots."""

from __future__ import annotations

import json
import logging
import os
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path

from ..rdf import Dataset, QuadPattern, match_single, parse_nquads, serialize_nquads
from ..wire import pattern_from_json, term_to_json

log = logging.getLogger(__name__)

STORE_NAME_RE = re.compile(r"^[a-z][a-z0-9\-]{0,63}$")
DEFAULT_STORES = ("easlit-data", "knowledge-graph")


class StoreError(Exception):
    pass


class UnknownStoreError(StoreError):
    pass


class StoreReadOnlyError(StoreError):
    pass


def _pattern_to_json(pattern: QuadPattern) -> dict:
    from ..rdf import Variable

    def pos(p):
        if isinstance(p, Variable):
            return {"type": "var", "value": p.name}
        return term_to_json(p)

    return {
        "subject": pos(pattern.subject),
        "predicate": pos(pattern.predicate),
        "object": pos(pattern.object),
        "graph": pos(pattern.graph),
    }


class QuadStore:
    """One named store. Writes are serialized by a lock and logged to the WAL
    before being applied; the in-memory dataset reference is swapped atomically
    so readers never see a half-applied batch."""

    def __init__(self, name: str, data_dir: Path, snapshot_every: int = 256) -> None:
        if not STORE_NAME_RE.match(name):
            raise StoreError(f"invalid store name: {name!r}")
        self.name = name
        self.data_dir = Path(data_dir)
        self.snapshot_every = snapshot_every
        self.snapshot_path = self.data_dir / f"{name}.nq"
        self.wal_path = self.data_dir / f"{name}.wal"
        self._lock = threading.Lock()
        self.read_only = False
        self.dirty_ops = 0
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._dataset = self._recover()

    # -- recovery ---------------------------------------------------------

    def _recover(self) -> Dataset:
        quads: set = set()
        if self.snapshot_path.exists():
            quads = set(parse_nquads(self.snapshot_path.read_text(encoding="utf-8")))
        if self.wal_path.exists():
            for line in self.wal_path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError:
                    # torn tail write from a crash; everything before it is intact
                    log.warning("store %s: dropping torn WAL tail", self.name)
                    break
                if entry["op"] == "insert":
                    quads |= parse_nquads(entry["nquads"]).quads
                elif entry["op"] == "delete":
                    pattern = pattern_from_json(entry["pattern"], omitted_graph="any")
                    quads -= set(match_single(Dataset(quads), pattern))
                self.dirty_ops += 1
        return Dataset(quads)

    # -- reads ------------------------------------------------------------

    @property
    def dataset(self) -> Dataset:
        return self._dataset

    # -- writes -----------------------------------------------------------

    def _wal_append(self, entry: dict) -> None:
        try:
            with open(self.wal_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(entry) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        except OSError:
            self.read_only = True
            log.exception("store %s: WAL write failed, entering read-only mode", self.name)
            raise StoreReadOnlyError(self.name)

    def _check_writable(self) -> None:
        if self.read_only:
            raise StoreReadOnlyError(self.name)

    def insert(self, quads: Dataset) -> int:
        with self._lock:
            self._check_writable()
            before = self._dataset.quads
            new = before | quads.quads
            inserted = len(new) - len(before)
            if inserted:
                self._wal_append({"op": "insert", "nquads": serialize_nquads(quads)})
                self._dataset = Dataset(new)
                self._after_write()
            return inserted

    def delete(self, pattern: QuadPattern) -> int:
        with self._lock:
            self._check_writable()
            doomed = set(match_single(self._dataset, pattern))
            if doomed:
                self._wal_append({"op": "delete", "pattern": _pattern_to_json(pattern)})
                self._dataset = Dataset(self._dataset.quads - doomed)
                self._after_write()
            return len(doomed)

    def _after_write(self) -> None:
        self.dirty_ops += 1
        if self.dirty_ops >= self.snapshot_every:
            self._snapshot_locked()

    # -- snapshots --------------------------------------------------------

    def snapshot(self) -> None:
        with self._lock:
            self._snapshot_locked()

    def _snapshot_locked(self) -> None:
        if self.read_only:
            return
        tmp = self.snapshot_path.with_suffix(".nq.tmp")
        try:
            with open(tmp, "w", encoding="utf-8") as fh:
                fh.write(serialize_nquads(self._dataset))
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self.snapshot_path)
            self.wal_path.write_text("", encoding="utf-8")
            self.dirty_ops = 0
        except OSError:
            self.read_only = True
            log.exception("store %s: snapshot failed, entering read-only mode", self.name)


@dataclass
class GraphStoreConfig:
    data_dir: Path
    store_names: tuple[str, ...] = DEFAULT_STORES
    snapshot_every: int = 256

    @classmethod
    def from_env(cls, environ=os.environ) -> "GraphStoreConfig":
        return cls(data_dir=Path(environ.get("STORE_DATA_DIR", "./store-data")))


@dataclass
class StoreRegistry:
    config: GraphStoreConfig
    stores: dict[str, QuadStore] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in self.config.store_names:
            self.stores[name] = QuadStore(
                name, self.config.data_dir, self.config.snapshot_every
            )

    def get(self, name: str) -> QuadStore:
        try:
            return self.stores[name]
        except KeyError:
            raise UnknownStoreError(name) from None

    def snapshot_all(self) -> None:
        for store in self.stores.values():
            store.snapshot()

    def healthy(self) -> bool:
        return not any(s.read_only for s in self.stores.values())
