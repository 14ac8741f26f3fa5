"""JSON-LD subset: parse to quads, expand, compact, serialize.

Supported: inline ``@context`` term maps (plus ``@vocab``/``@base``), ``@id``,
``@type``, ``@graph``, string/number/boolean literals, ``@value`` objects,
nested node objects, arrays of values. Anything else raises
:class:`UnsupportedFeatureError`. Unknown keys with no ``@vocab`` are dropped
with a :class:`JsonLdWarning`.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Any
from urllib.parse import urljoin

from .terms import (
    RDF_LANG_STRING,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Dataset,
    Iri,
    Literal,
    Quad,
    SubjectTerm,
    Term,
    is_absolute_iri,
)

RESERVED_KEYWORDS = {"@id", "@type", "@context", "@graph"}
_SUPPORTED_KEYWORDS = {"@id", "@type", "@context", "@graph", "@value", "@language"}
_UNSUPPORTED_KEYWORDS = {
    "@reverse", "@list", "@set", "@container", "@index", "@nest",
    "@included", "@direction", "@version", "@json", "@none", "@propagate",
    "@protected", "@import",
}


class JsonLdError(ValueError):
    pass


class JsonLdParseError(JsonLdError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnsupportedFeatureError(JsonLdError):
    def __init__(self, keyword: str, detail: str = "") -> None:
        msg = f"unsupported JSON-LD feature: {keyword}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.keyword = keyword


class JsonLdWarning(UserWarning):
    pass


@dataclass(frozen=True)
class JsonLdContext:
    term_map: dict[str, str] = field(default_factory=dict)
    vocab: str | None = None
    base: str | None = None

    def __post_init__(self) -> None:
        for name, iri in self.term_map.items():
            if name in RESERVED_KEYWORDS:
                raise JsonLdError(f"reserved keyword used as term name: {name}")
            if not iri:
                raise JsonLdError(f"term {name!r} maps to an empty IRI")
            if not is_absolute_iri(iri):
                raise JsonLdError(f"term {name!r} maps to a non-absolute IRI: {iri!r}")

    def to_json(self) -> dict[str, str]:
        ctx = dict(sorted(self.term_map.items()))
        if self.vocab is not None:
            ctx["@vocab"] = self.vocab
        if self.base is not None:
            ctx["@base"] = self.base
        return ctx

    @classmethod
    def from_json(cls, raw: Any) -> "JsonLdContext":
        if raw is None:
            return cls()
        if not isinstance(raw, dict):
            raise UnsupportedFeatureError(
                "@context", "only inline object contexts are supported"
            )
        term_map: dict[str, str] = {}
        vocab = base = None
        for key, value in raw.items():
            if key == "@vocab":
                vocab = value
            elif key == "@base":
                base = value
            elif key.startswith("@"):
                raise UnsupportedFeatureError(key)
            elif isinstance(value, str):
                term_map[key] = value
            else:
                raise UnsupportedFeatureError(
                    "@context", f"expanded term definition for {key!r}"
                )
        return cls(term_map, vocab, base)

    def reverse_map(self) -> dict[str, str]:
        """IRI -> short name; ambiguity resolved to the smallest name, with a warning."""
        rev: dict[str, str] = {}
        for name in sorted(self.term_map):
            iri = self.term_map[name]
            if iri in rev:
                warnings.warn(
                    f"context maps both {rev[iri]!r} and {name!r} to {iri}; "
                    f"using {rev[iri]!r}",
                    JsonLdWarning,
                    stacklevel=3,
                )
            else:
                rev[iri] = name
        return rev


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise JsonLdParseError(exc.msg, exc.pos) from exc


def _check_keyword(key: str) -> None:
    if key in _UNSUPPORTED_KEYWORDS:
        raise UnsupportedFeatureError(key)
    if key.startswith("@") and key not in _SUPPORTED_KEYWORDS:
        raise UnsupportedFeatureError(key)


def _expand_key(key: str, ctx: JsonLdContext) -> str | None:
    if key in ctx.term_map:
        return ctx.term_map[key]
    if is_absolute_iri(key):
        return key
    if ctx.vocab is not None:
        return ctx.vocab + key
    warnings.warn(
        f"dropping key {key!r}: no context mapping and no @vocab",
        JsonLdWarning,
        stacklevel=4,
    )
    return None


def _expand_id(value: Any, ctx: JsonLdContext) -> str:
    if not isinstance(value, str):
        raise JsonLdError(f"@id must be a string, got {value!r}")
    if value.startswith("_:"):
        return value
    if ctx.base is not None and not is_absolute_iri(value):
        return urljoin(ctx.base, value)
    return value


def _expand_type_value(value: Any, ctx: JsonLdContext) -> list[str]:
    values = value if isinstance(value, list) else [value]
    out = []
    for v in values:
        if not isinstance(v, str):
            raise JsonLdError(f"@type values must be strings, got {v!r}")
        expanded = _expand_key(v, ctx)
        if expanded is not None:
            out.append(expanded)
    return out


def _expand_value(value: Any, ctx: JsonLdContext) -> list[Any]:
    if isinstance(value, list):
        out: list[Any] = []
        for item in value:
            out.extend(_expand_value(item, ctx))
        return out
    if value is None:
        return []
    if isinstance(value, dict):
        if "@value" in value:
            vo: dict[str, Any] = {"@value": value["@value"]}
            for key in value:
                _check_keyword(key)
                if key == "@type":
                    vo["@type"] = _expand_id(value[key], ctx)
                elif key == "@language":
                    vo["@language"] = value[key]
                elif key != "@value":
                    raise UnsupportedFeatureError(
                        key, "only @type/@language allowed in value objects"
                    )
            return [vo]
        if set(value) == {"@id"}:
            return [{"@id": _expand_id(value["@id"], ctx)}]
        return [_expand_node(value, ctx)]
    return [{"@value": value}]


def _expand_node(node: dict[str, Any], ctx: JsonLdContext) -> dict[str, Any]:
    expanded: dict[str, Any] = {}
    for key, value in node.items():
        if key == "@context":
            continue
        _check_keyword(key)
        if key == "@id":
            expanded["@id"] = _expand_id(value, ctx)
        elif key == "@type":
            expanded["@type"] = _expand_type_value(value, ctx)
        elif key == "@graph":
            items = value if isinstance(value, list) else [value]
            expanded["@graph"] = [_expand_node(item, ctx) for item in items]
        elif key == "@value" or key == "@language":
            raise JsonLdError(f"{key} not allowed directly in a node object")
        elif value is None:
            continue  # null-valued keys are dropped
        else:
            iri = _expand_key(key, ctx)
            if iri is None:
                continue
            values = _expand_value(value, ctx)
            if values or value == []:
                # an explicit empty array survives (clears the property)
                expanded.setdefault(iri, []).extend(values)
    return expanded


def expand_to_nodes(text: str, base: str | None = None) -> list[dict[str, Any]]:
    doc = _load_json(text)
    if isinstance(doc, list):
        nodes = doc
        ctx = JsonLdContext(base=base) if base else JsonLdContext()
        return [_expand_node(n, ctx) for n in nodes]
    if not isinstance(doc, dict):
        raise JsonLdError("top-level JSON-LD document must be an object or array")
    ctx = JsonLdContext.from_json(doc.get("@context"))
    if base is not None and ctx.base is None:
        ctx = JsonLdContext(ctx.term_map, ctx.vocab, base)
    if set(doc) <= {"@context", "@graph"} and "@graph" in doc:
        items = doc["@graph"]
        items = items if isinstance(items, list) else [items]
        return [_expand_node(item, ctx) for item in items]
    expanded = _expand_node(doc, ctx)
    return [expanded] if expanded else []


def expand(text: str) -> str:
    """Expand a document: absolute-IRI keys, value objects, no ``@context``."""
    return json.dumps(expand_to_nodes(text), sort_keys=True, ensure_ascii=False)


class _BlankAllocator:
    def __init__(self, taken: set[str]) -> None:
        self.taken = set(taken)
        self.counter = 0

    def fresh(self) -> BlankNode:
        while True:
            label = f"b{self.counter}"
            self.counter += 1
            if label not in self.taken:
                self.taken.add(label)
                return BlankNode(label)


def _collect_labels(nodes: list[dict[str, Any]], labels: set[str]) -> None:
    for node in nodes:
        if not isinstance(node, dict):
            continue
        node_id = node.get("@id")
        if isinstance(node_id, str) and node_id.startswith("_:"):
            labels.add(node_id[2:])
        for key, value in node.items():
            if key == "@graph":
                _collect_labels(value, labels)
            elif not key.startswith("@") and isinstance(value, list):
                _collect_labels([v for v in value if isinstance(v, dict)], labels)
                for v in value:
                    if isinstance(v, dict) and isinstance(v.get("@id"), str) \
                            and v["@id"].startswith("_:"):
                        labels.add(v["@id"][2:])


def _literal_from_value_object(vo: dict[str, Any]) -> Literal:
    value = vo["@value"]
    if "@language" in vo:
        return Literal(str(value), RDF_LANG_STRING, vo["@language"])
    if "@type" in vo:
        if isinstance(value, bool):
            lexical = "true" if value else "false"
        else:
            lexical = str(value)
        return Literal(lexical, vo["@type"])
    if isinstance(value, bool):
        return Literal("true" if value else "false", XSD_BOOLEAN)
    if isinstance(value, int):
        return Literal(str(value), XSD_INTEGER)
    if isinstance(value, float):
        if value.is_integer():
            return Literal(str(int(value)), XSD_INTEGER)
        return Literal(repr(value), XSD_DOUBLE)
    if isinstance(value, str):
        return Literal(value)
    raise JsonLdError(f"cannot map @value to a literal: {value!r}")


def _node_ref(node_id: str) -> SubjectTerm:
    if node_id.startswith("_:"):
        return BlankNode(node_id[2:])
    if not is_absolute_iri(node_id):
        raise JsonLdError(f"node @id is not an absolute IRI: {node_id!r}")
    return Iri(node_id)


def _node_to_quads(
    node: dict[str, Any],
    graph: Iri | None,
    alloc: _BlankAllocator,
    quads: list[Quad],
) -> SubjectTerm:
    subject = _node_ref(node["@id"]) if "@id" in node else alloc.fresh()
    for t in node.get("@type", []):
        quads.append(Quad(subject, Iri(RDF_TYPE), Iri(t), graph))
    if "@graph" in node:
        if isinstance(subject, BlankNode):
            raise UnsupportedFeatureError("@graph", "blank-node graph names")
        for inner in node["@graph"]:
            _node_to_quads(inner, subject, alloc, quads)
    for key, values in node.items():
        if key.startswith("@"):
            continue
        predicate = Iri(key)
        for vo in values:
            obj: Term
            if "@value" in vo:
                obj = _literal_from_value_object(vo)
            elif set(vo) == {"@id"}:
                obj = _node_ref(vo["@id"])
            else:
                obj = _node_to_quads(vo, graph, alloc, quads)
            quads.append(Quad(subject, predicate, obj, graph))
    return subject


def parse_jsonld(text: str, base: str | None = None) -> Dataset:
    nodes = expand_to_nodes(text, base=base)
    labels: set[str] = set()
    _collect_labels(nodes, labels)
    alloc = _BlankAllocator(labels)
    quads: list[Quad] = []
    for node in nodes:
        _node_to_quads(node, None, alloc, quads)
    return Dataset(quads)


def _compact_value(vo: Any, rev: dict[str, str]) -> Any:
    if not isinstance(vo, dict):
        return vo
    if "@value" in vo:
        if set(vo) == {"@value"}:
            return vo["@value"]
        return dict(vo)
    if set(vo) == {"@id"}:
        return {"@id": vo["@id"]}
    return _compact_node(vo, rev)


def _compact_node(node: dict[str, Any], rev: dict[str, str]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in node.items():
        if key == "@id":
            out["@id"] = value
        elif key == "@type":
            names = [rev.get(t, t) for t in value]
            out["@type"] = names[0] if len(names) == 1 else names
        elif key == "@graph":
            out["@graph"] = [_compact_node(n, rev) for n in value]
        else:
            name = rev.get(key, key)
            compacted = [_compact_value(v, rev) for v in value]
            out[name] = compacted[0] if len(compacted) == 1 else compacted
    return out


def compact(expanded_text: str, ctx: JsonLdContext) -> str:
    doc = _load_json(expanded_text)
    nodes = doc if isinstance(doc, list) else [doc]
    rev = ctx.reverse_map()
    compacted = [_compact_node(n, rev) for n in nodes]
    ctx_json = ctx.to_json()
    result: dict[str, Any]
    if len(compacted) == 1:
        result = dict(compacted[0])
    else:
        result = {"@graph": compacted}
    if ctx_json:
        result = {"@context": ctx_json, **result}
    return json.dumps(result, sort_keys=True, ensure_ascii=False)


def _term_sort_key(term: SubjectTerm) -> str:
    return term.value if isinstance(term, Iri) else "_:" + term.label


def _object_to_json(obj: Term) -> Any:
    if isinstance(obj, Iri):
        return {"@id": obj.value}
    if isinstance(obj, BlankNode):
        return {"@id": "_:" + obj.label}
    if obj.language is not None:
        return {"@value": obj.lexical, "@language": obj.language}
    if obj.datatype == XSD_STRING:
        return obj.lexical
    if obj.datatype == XSD_INTEGER:
        # only canonical lexical forms may ride as native JSON numbers,
        # otherwise the round-trip would rewrite the lexical form
        try:
            if str(int(obj.lexical)) == obj.lexical:
                return int(obj.lexical)
        except ValueError:
            pass
    if obj.datatype == XSD_BOOLEAN and obj.lexical in ("true", "false"):
        return obj.lexical == "true"
    return {"@value": obj.lexical, "@type": obj.datatype}


def _graph_to_nodes(quads: list[Quad], rev: dict[str, str]) -> list[dict[str, Any]]:
    by_subject: dict[SubjectTerm, list[Quad]] = {}
    for q in quads:
        by_subject.setdefault(q.subject, []).append(q)
    nodes = []
    for subject in sorted(by_subject, key=_term_sort_key):
        node: dict[str, Any] = {"@id": _term_sort_key(subject)}
        types = []
        props: dict[str, list[Any]] = {}
        for q in by_subject[subject]:
            if q.predicate.value == RDF_TYPE and isinstance(q.object, Iri):
                types.append(q.object.value)
            else:
                key = rev.get(q.predicate.value, q.predicate.value)
                props.setdefault(key, []).append(_object_to_json(q.object))
        if types:
            types.sort()
            node["@type"] = types[0] if len(types) == 1 else types
        for key in sorted(props):
            values = sorted(props[key], key=lambda v: json.dumps(v, sort_keys=True))
            node[key] = values[0] if len(values) == 1 else values
        nodes.append(node)
    return nodes


def serialize_jsonld(ds: Dataset, ctx: JsonLdContext | None = None) -> str:
    """Deterministic JSON-LD for a dataset; named graphs become ``@graph`` nodes."""
    ctx = ctx or JsonLdContext()
    rev = ctx.reverse_map()
    top = _graph_to_nodes([q for q in ds if q.graph is None], rev)
    for graph_iri in sorted(ds.graph_names(), key=lambda g: g.value):
        inner = _graph_to_nodes([q for q in ds if q.graph == graph_iri], rev)
        top.append({"@id": graph_iri.value, "@graph": inner})
    top.sort(key=lambda n: n["@id"])
    doc = {"@context": ctx.to_json(), "@graph": top}
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2)
