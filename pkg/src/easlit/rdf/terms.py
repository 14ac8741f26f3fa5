"""RDF value model: terms, quads, datasets.

Everything here is immutable after construction and safe to share across
threads. Datasets have set semantics: inserting a quad twice is a no-op.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

XSD = "http://www.w3.org/2001/XMLSchema#"
XSD_STRING = XSD + "string"
XSD_INTEGER = XSD + "integer"
XSD_DOUBLE = XSD + "double"
XSD_BOOLEAN = XSD + "boolean"
XSD_DECIMAL = XSD + "decimal"
XSD_DATETIME = XSD + "dateTime"
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDF_TYPE = RDF_NS + "type"
RDF_LANG_STRING = RDF_NS + "langString"

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_BLANK_LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")
_LANG_RE = re.compile(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$")


class RdfValueError(ValueError):
    """Raised when a term or quad violates the model invariants."""


def is_absolute_iri(value: str) -> bool:
    return bool(_SCHEME_RE.match(value))


@dataclass(frozen=True)
class Iri:
    value: str

    def __post_init__(self) -> None:
        if not is_absolute_iri(self.value):
            raise RdfValueError(f"not an absolute IRI (missing scheme): {self.value!r}")

    def __repr__(self) -> str:
        return f"Iri({self.value!r})"


@dataclass(frozen=True)
class BlankNode:
    label: str

    def __post_init__(self) -> None:
        if not _BLANK_LABEL_RE.match(self.label):
            raise RdfValueError(f"invalid blank node label: {self.label!r}")

    def __repr__(self) -> str:
        return f"BlankNode({self.label!r})"


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: str = XSD_STRING
    language: str | None = None

    def __post_init__(self) -> None:
        if self.language is not None:
            if not _LANG_RE.match(self.language):
                raise RdfValueError(f"invalid language tag: {self.language!r}")
            if self.datatype != RDF_LANG_STRING:
                raise RdfValueError(
                    "language-tagged literal must use the rdf:langString datatype"
                )
        elif self.datatype == RDF_LANG_STRING:
            raise RdfValueError("rdf:langString literal requires a language tag")
        if not is_absolute_iri(self.datatype):
            raise RdfValueError(f"datatype must be an absolute IRI: {self.datatype!r}")

    def __repr__(self) -> str:
        return f"Literal({self.lexical!r}, {self.datatype!r}, {self.language!r})"


Term = Union[Iri, BlankNode, Literal]
SubjectTerm = Union[Iri, BlankNode]
GraphTerm = Union[Iri, None]  # None marks the default graph


@dataclass(frozen=True)
class Quad:
    subject: SubjectTerm
    predicate: Iri
    object: Term
    graph: GraphTerm = None

    def __post_init__(self) -> None:
        if isinstance(self.subject, Literal):
            raise RdfValueError("quad subject may not be a literal")
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise RdfValueError(f"invalid quad subject: {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise RdfValueError("quad predicate must be an IRI")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise RdfValueError(f"invalid quad object: {self.object!r}")
        if self.graph is not None and not isinstance(self.graph, Iri):
            raise RdfValueError("quad graph must be an IRI or None (default graph)")


class Dataset:
    """An immutable set of quads."""

    __slots__ = ("_quads",)

    def __init__(self, quads: Iterable[Quad] = ()) -> None:
        object.__setattr__(self, "_quads", frozenset(quads))

    @property
    def quads(self) -> frozenset[Quad]:
        return self._quads

    def __len__(self) -> int:
        return len(self._quads)

    def __iter__(self) -> Iterator[Quad]:
        return iter(self._quads)

    def __contains__(self, quad: object) -> bool:
        return quad in self._quads

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self._quads == other._quads

    def __hash__(self) -> int:
        return hash(self._quads)

    def __repr__(self) -> str:
        return f"Dataset({len(self._quads)} quads)"

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Dataset is immutable")

    def union(self, other: "Dataset | Iterable[Quad]") -> "Dataset":
        """Plain set union. No blank-node renaming; see merge.append for that."""
        return Dataset(self._quads | frozenset(other))

    def blank_labels(self) -> set[str]:
        labels: set[str] = set()
        for q in self._quads:
            if isinstance(q.subject, BlankNode):
                labels.add(q.subject.label)
            if isinstance(q.object, BlankNode):
                labels.add(q.object.label)
        return labels

    def graph(self, graph: GraphTerm) -> "Dataset":
        """Quads belonging to one graph (None = default graph)."""
        return Dataset(q for q in self._quads if q.graph == graph)

    def graph_names(self) -> set[Iri]:
        return {q.graph for q in self._quads if q.graph is not None}

    def subjects(self) -> set[SubjectTerm]:
        return {q.subject for q in self._quads}
