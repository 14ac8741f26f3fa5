"""JSON wire encoding for terms, patterns and bindings used by the HTTP APIs.

Term encoding:
    {"type": "iri", "value": "..."}
    {"type": "bnode", "value": "label"}
    {"type": "literal", "value": "...", "datatype"?: "...", "lang"?: "..."}
    {"type": "var", "value": "name"}          (patterns only)
    {"type": "default"}                        (graph position only)

A pattern is {"subject": t, "predicate": t, "object": t, "graph"?: t}; an
omitted graph means the default graph in queries and a wildcard in deletes.
"""

from __future__ import annotations

from typing import Any

from .rdf import (
    RDF_LANG_STRING,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    QuadPattern,
    Term,
    Variable,
)


class WireError(ValueError):
    pass


def term_to_json(term: Term | None) -> dict[str, Any]:
    if term is None:
        return {"type": "default"}
    if isinstance(term, Iri):
        return {"type": "iri", "value": term.value}
    if isinstance(term, BlankNode):
        return {"type": "bnode", "value": term.label}
    if isinstance(term, Literal):
        out: dict[str, Any] = {"type": "literal", "value": term.lexical}
        if term.language is not None:
            out["lang"] = term.language
        elif term.datatype != XSD_STRING:
            out["datatype"] = term.datatype
        return out
    raise WireError(f"cannot encode {term!r}")


def term_from_json(obj: Any, allow_var: bool = False):
    if not isinstance(obj, dict) or "type" not in obj:
        raise WireError(f"malformed term object: {obj!r}")
    kind = obj["type"]
    try:
        if kind == "iri":
            return Iri(obj["value"])
        if kind == "bnode":
            return BlankNode(obj["value"])
        if kind == "literal":
            if "lang" in obj:
                return Literal(obj["value"], RDF_LANG_STRING, obj["lang"])
            return Literal(obj["value"], obj.get("datatype", XSD_STRING))
        if kind == "default":
            return None
        if kind == "var" and allow_var:
            return Variable(obj["value"])
    except (KeyError, ValueError) as exc:
        raise WireError(f"bad term object {obj!r}: {exc}") from exc
    raise WireError(f"unknown term type: {kind!r}")


def pattern_from_json(obj: Any, omitted_graph: str = "default") -> QuadPattern:
    """Decode a pattern. ``omitted_graph`` picks what a missing graph position
    means: "default" (queries) or "any" (deletes, wildcard variable)."""
    if not isinstance(obj, dict):
        raise WireError("pattern must be a JSON object")
    missing = {"subject", "predicate", "object"} - set(obj)
    if missing:
        raise WireError(f"pattern missing positions: {sorted(missing)}")
    if "graph" in obj:
        graph = term_from_json(obj["graph"], allow_var=True)
    elif omitted_graph == "any":
        graph = Variable("_g")
    else:
        graph = None
    return QuadPattern(
        term_from_json(obj["subject"], allow_var=True),
        term_from_json(obj["predicate"], allow_var=True),
        term_from_json(obj["object"], allow_var=True),
        graph,
    )


def binding_to_json(binding: dict[str, Term]) -> dict[str, Any]:
    return {name: term_to_json(term) for name, term in binding.items()}
