"""RDF value model, JSON-LD subset, N-Quads I/O, pattern matching, isomorphism."""

from .isomorphism import isomorphic
from .jsonld import (
    JsonLdContext,
    JsonLdError,
    JsonLdParseError,
    JsonLdWarning,
    UnsupportedFeatureError,
    compact,
    expand,
    parse_jsonld,
    serialize_jsonld,
)
from .merge import append
from .nquads import NQuadsParseError, parse_nquads, serialize_nquads, serialize_quad, serialize_term
from .pattern import (
    Binding,
    PatternError,
    QuadPattern,
    Variable,
    match_pattern,
    match_single,
)
from .terms import (
    RDF_LANG_STRING,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Dataset,
    Iri,
    Literal,
    Quad,
    RdfValueError,
    Term,
    is_absolute_iri,
)

__all__ = [
    "BlankNode", "Binding", "Dataset", "Iri", "JsonLdContext", "JsonLdError",
    "JsonLdParseError", "JsonLdWarning", "Literal", "NQuadsParseError",
    "PatternError", "Quad", "QuadPattern", "RdfValueError", "Term",
    "UnsupportedFeatureError", "Variable",
    "RDF_LANG_STRING", "RDF_TYPE",
    "XSD_BOOLEAN", "XSD_DATETIME", "XSD_DECIMAL", "XSD_DOUBLE", "XSD_INTEGER",
    "XSD_STRING",
    "append", "compact", "expand", "is_absolute_iri", "isomorphic",
    "match_pattern", "match_single", "parse_jsonld", "parse_nquads",
    "serialize_jsonld", "serialize_nquads", "serialize_quad", "serialize_term",
]
