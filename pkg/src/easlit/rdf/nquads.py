"""N-Quads parsing and serialization.

Canonical output: one quad per line, lines sorted lexicographically, UTF-8.
"""

from __future__ import annotations

import re

from .terms import (
    RDF_LANG_STRING,
    XSD_STRING,
    BlankNode,
    Dataset,
    GraphTerm,
    Iri,
    Literal,
    Quad,
    SubjectTerm,
    Term,
)


class NQuadsParseError(ValueError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


_LITERAL_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_IRI_BAD = re.compile(r'[\x00-\x20<>"{}|^`\\]')


def _escape_literal(text: str) -> str:
    out = []
    for ch in text:
        if ch in _LITERAL_ESCAPES:
            out.append(_LITERAL_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _escape_iri(value: str) -> str:
    return _IRI_BAD.sub(lambda m: f"\\u{ord(m.group(0)):04X}", value)


def serialize_term(term: Term | None) -> str:
    if term is None:
        raise ValueError("default graph has no term serialization")
    if isinstance(term, Iri):
        return f"<{_escape_iri(term.value)}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        body = f'"{_escape_literal(term.lexical)}"'
        if term.language is not None:
            return f"{body}@{term.language}"
        if term.datatype == XSD_STRING:
            return body
        return f"{body}^^<{_escape_iri(term.datatype)}>"
    raise TypeError(f"not a term: {term!r}")


def serialize_quad(quad: Quad) -> str:
    parts = [
        serialize_term(quad.subject),
        serialize_term(quad.predicate),
        serialize_term(quad.object),
    ]
    if quad.graph is not None:
        parts.append(serialize_term(quad.graph))
    return " ".join(parts) + " ."


def serialize_nquads(ds: Dataset) -> str:
    lines = sorted(serialize_quad(q) for q in ds)
    return "".join(line + "\n" for line in lines)


class _LineScanner:
    def __init__(self, text: str, lineno: int) -> None:
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def error(self, message: str) -> NQuadsParseError:
        return NQuadsParseError(message, self.lineno)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _unescape(self, raw: str, what: str) -> str:
        out = []
        i = 0
        simple = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
                  '"': '"', "'": "'", "\\": "\\"}
        while i < len(raw):
            ch = raw[i]
            if ch != "\\":
                out.append(ch)
                i += 1
                continue
            if i + 1 >= len(raw):
                raise self.error(f"dangling escape in {what}")
            code = raw[i + 1]
            if code in simple:
                out.append(simple[code])
                i += 2
            elif code == "u":
                hexpart = raw[i + 2 : i + 6]
                if len(hexpart) != 4:
                    raise self.error(f"bad \\u escape in {what}")
                out.append(chr(int(hexpart, 16)))
                i += 6
            elif code == "U":
                hexpart = raw[i + 2 : i + 10]
                if len(hexpart) != 8:
                    raise self.error(f"bad \\U escape in {what}")
                out.append(chr(int(hexpart, 16)))
                i += 10
            else:
                raise self.error(f"unknown escape \\{code} in {what}")
        return "".join(out)

    def read_iri(self) -> Iri:
        if self.peek() != "<":
            raise self.error("expected '<'")
        end = self.text.find(">", self.pos + 1)
        if end == -1:
            raise self.error("unterminated IRI")
        raw = self.text[self.pos + 1 : end]
        self.pos = end + 1
        try:
            return Iri(self._unescape(raw, "IRI"))
        except ValueError as exc:
            raise self.error(str(exc)) from exc

    def read_blank(self) -> BlankNode:
        if not self.text.startswith("_:", self.pos):
            raise self.error("expected blank node")
        m = re.match(r"[A-Za-z0-9_]+", self.text[self.pos + 2 :])
        if not m:
            raise self.error("empty blank node label")
        self.pos += 2 + m.end()
        return BlankNode(m.group(0))

    def read_literal(self) -> Literal:
        if self.peek() != '"':
            raise self.error("expected literal")
        i = self.pos + 1
        while i < len(self.text):
            if self.text[i] == "\\":
                i += 2
                continue
            if self.text[i] == '"':
                break
            i += 1
        else:
            raise self.error("unterminated literal")
        lexical = self._unescape(self.text[self.pos + 1 : i], "literal")
        self.pos = i + 1
        if self.peek() == "@":
            m = re.match(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)", self.text[self.pos:])
            if not m:
                raise self.error("bad language tag")
            self.pos += m.end()
            return Literal(lexical, RDF_LANG_STRING, m.group(1))
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            dt = self.read_iri()
            return Literal(lexical, dt.value)
        return Literal(lexical)

    def read_subject(self) -> SubjectTerm:
        if self.peek() == "<":
            return self.read_iri()
        if self.peek() == "_":
            return self.read_blank()
        raise self.error("expected IRI or blank node subject")

    def read_object(self) -> Term:
        if self.peek() == "<":
            return self.read_iri()
        if self.peek() == "_":
            return self.read_blank()
        if self.peek() == '"':
            return self.read_literal()
        raise self.error("expected IRI, blank node or literal object")


def parse_nquads(text: str) -> Dataset:
    quads: list[Quad] = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        sc = _LineScanner(line, lineno)
        sc.skip_ws()
        subject = sc.read_subject()
        sc.skip_ws()
        if sc.peek() != "<":
            raise sc.error("predicate must be an IRI")
        predicate = sc.read_iri()
        sc.skip_ws()
        obj = sc.read_object()
        sc.skip_ws()
        graph: GraphTerm = None
        if sc.peek() in "<_":
            g = sc.read_subject()
            if isinstance(g, BlankNode):
                raise sc.error("blank-node graph labels are not supported")
            graph = g
            sc.skip_ws()
        if sc.peek() != ".":
            raise sc.error("expected terminating '.'")
        sc.pos += 1
        sc.skip_ws()
        if not sc.at_end() and not sc.text[sc.pos:].lstrip().startswith("#"):
            raise sc.error("trailing garbage after '.'")
        try:
            quads.append(Quad(subject, predicate, obj, graph))
        except ValueError as exc:
            raise NQuadsParseError(str(exc), lineno) from exc
    return Dataset(quads)
