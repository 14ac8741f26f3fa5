"""E-assessment item platform: RDF core, graph store, REST services, gateway, batch CLI."""

__version__ = "0.1.0"
