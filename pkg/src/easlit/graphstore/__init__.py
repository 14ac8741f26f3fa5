from .app import create_app
from .store import GraphStoreConfig, QuadStore, StoreRegistry, UnknownStoreError

__all__ = ["GraphStoreConfig", "QuadStore", "StoreRegistry", "UnknownStoreError", "create_app"]
