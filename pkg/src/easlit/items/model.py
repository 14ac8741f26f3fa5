"""Item and learning-outcome entities and their quad mapping."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Any

from .. import vocab
from ..rdf import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_INTEGER,
    Dataset,
    Iri,
    JsonLdContext,
    JsonLdError,
    Literal,
    Quad,
    is_absolute_iri,
)
from ..rdf.jsonld import expand_to_nodes

DEFAULT_CONTEXT = JsonLdContext(dict(vocab.DEFAULT_CONTEXT_TERMS))


class EntityValidationError(ValueError):
    def __init__(self, message: str, fields: list[str] | None = None) -> None:
        super().__init__(message)
        self.fields = fields or []


@dataclass(frozen=True)
class Answer:
    text: str
    correct: bool
    ordinal: int


@dataclass
class Item:
    iri: str
    stem: str
    answers: list[Answer]
    points: Decimal
    bloom_level: str | None = None  # full vocabulary IRI
    domain_links: frozenset[str] = frozenset()
    outcome_links: frozenset[str] = frozenset()
    version: int = 1
    created_at: str = ""
    extension: Dataset = field(default_factory=Dataset)

    def answer_iri(self, ordinal: int) -> str:
        return f"{self.iri}/answers/{ordinal}"


@dataclass
class LearningOutcome:
    iri: str
    label: str
    description: str | None = None
    domain_links: frozenset[str] = frozenset()
    version: int = 1
    created_at: str = ""
    extension: Dataset = field(default_factory=Dataset)


@dataclass
class ItemPayload:
    """Fields present in a create/update request; absent fields stay None."""

    stem: str | None = None
    answers: list[Answer] | None = None
    points: Decimal | None = None
    bloom_level: str | None = None
    domain_links: frozenset[str] | None = None
    outcome_links: frozenset[str] | None = None
    extension: list[tuple[str, Any]] = field(default_factory=list)  # (predicate, value obj)


@dataclass
class OutcomePayload:
    label: str | None = None
    description: str | None = None
    domain_links: frozenset[str] | None = None
    extension: list[tuple[str, Any]] = field(default_factory=list)


def normalize_bloom(value: Any) -> str:
    """Accept a level name or its IRI; return the IRI."""
    if isinstance(value, dict):
        value = value.get("@id") or value.get("@value")
    if not isinstance(value, str):
        raise EntityValidationError(f"bloomLevel must be a string, got {value!r}")
    if value in vocab.BLOOM_LEVEL_BY_IRI:
        return value
    if value in vocab.BLOOM_IRIS:
        return vocab.BLOOM_IRIS[value]
    raise EntityValidationError(
        f"unknown bloomLevel {value!r}; valid levels: {', '.join(vocab.BLOOM_ORDER)}",
        ["bloomLevel"],
    )


def _parse_points(value: Any) -> Decimal:
    if isinstance(value, dict):
        value = value.get("@value")
    try:
        points = Decimal(str(value))
    except (InvalidOperation, TypeError):
        raise EntityValidationError(f"points must be a decimal, got {value!r}", ["points"])
    if points < 0:
        raise EntityValidationError("points must be non-negative", ["points"])
    return points


def _scalar(vo: Any) -> Any:
    return vo.get("@value") if isinstance(vo, dict) and "@value" in vo else vo


def _iri_values(values: list[Any], what: str) -> frozenset[str]:
    out = set()
    for vo in values:
        iri = vo.get("@id") if isinstance(vo, dict) else vo
        if not isinstance(iri, str) or not is_absolute_iri(iri):
            raise EntityValidationError(f"{what} must be absolute IRIs, got {iri!r}", [what])
        out.add(iri)
    return frozenset(out)


def _expand_payload(text: str) -> list[dict[str, Any]]:
    """Expand a payload with the default context merged under any inline one."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EntityValidationError(f"malformed JSON: {exc.msg}")
    if isinstance(doc, dict):
        inline = doc.get("@context") or {}
        if not isinstance(inline, dict):
            raise EntityValidationError("only inline object @context is supported")
        doc = {**doc, "@context": {**vocab.DEFAULT_CONTEXT_TERMS, **inline}}
    try:
        return expand_to_nodes(json.dumps(doc))
    except JsonLdError as exc:
        raise EntityValidationError(str(exc))


def _parse_answers(values: list[Any], node_index: dict[str, dict]) -> list[Answer]:
    answers = []
    for position, vo in enumerate(values):
        if isinstance(vo, dict) and set(vo) == {"@id"} and vo["@id"] in node_index:
            vo = node_index[vo["@id"]]
        if not isinstance(vo, dict) or "@value" in vo:
            raise EntityValidationError(
                "answers must be objects with answerText/isCorrect", ["answers"]
            )
        texts = vo.get(vocab.ANSWER_TEXT, [])
        corrects = vo.get(vocab.IS_CORRECT, [])
        ordinals = vo.get(vocab.ORDINAL, [])
        if not texts:
            raise EntityValidationError("answer is missing answerText", ["answers"])
        text = str(_scalar(texts[0]))
        correct = _scalar(corrects[0]) if corrects else False
        if isinstance(correct, str):
            correct = correct == "true"
        ordinal = int(_scalar(ordinals[0])) if ordinals else position
        answers.append(Answer(text, bool(correct), ordinal))
    answers.sort(key=lambda a: a.ordinal)
    if [a.ordinal for a in answers] != list(range(len(answers))):
        raise EntityValidationError("answer ordinals must be contiguous from 0", ["answers"])
    return answers


def _split_payload_nodes(text: str) -> tuple[dict[str, Any], dict[str, dict]]:
    nodes = _expand_payload(text)
    if not nodes:
        raise EntityValidationError("payload encodes no node object")
    node_index = {n["@id"]: n for n in nodes if "@id" in n}
    roots = [n for n in nodes if vocab.STEM in n or vocab.LABEL in n
             or vocab.ITEM_TYPE in n.get("@type", []) or vocab.OUTCOME_TYPE in n.get("@type", [])]
    root = roots[0] if roots else nodes[0]
    return root, node_index


def parse_item_payload(text: str) -> ItemPayload:
    root, node_index = _split_payload_nodes(text)
    payload = ItemPayload()
    for key, values in root.items():
        if key in ("@id", "@type", "@graph"):
            continue
        if key == vocab.STEM:
            payload.stem = str(_scalar(values[0]))
        elif key == vocab.HAS_ANSWER:
            payload.answers = _parse_answers(values, node_index)
        elif key == vocab.POINTS:
            payload.points = _parse_points(values[0])
        elif key == vocab.BLOOM_LEVEL:
            payload.bloom_level = normalize_bloom(values[0])
        elif key == vocab.LINKS_DOMAIN:
            payload.domain_links = _iri_values(values, "domainLinks")
        elif key == vocab.ASSESSES_OUTCOME:
            payload.outcome_links = _iri_values(values, "outcomeLinks")
        elif key in (vocab.VERSION, vocab.CREATED_AT):
            continue  # server-managed
        else:
            payload.extension.extend((key, vo) for vo in values)
    return payload


def parse_outcome_payload(text: str) -> OutcomePayload:
    root, _ = _split_payload_nodes(text)
    payload = OutcomePayload()
    for key, values in root.items():
        if key in ("@id", "@type", "@graph"):
            continue
        if key == vocab.LABEL:
            payload.label = str(_scalar(values[0]))
        elif key == vocab.DESCRIPTION:
            payload.description = str(_scalar(values[0]))
        elif key == vocab.LINKS_DOMAIN:
            payload.domain_links = _iri_values(values, "domainLinks")
        elif key in (vocab.VERSION, vocab.CREATED_AT):
            continue
        else:
            payload.extension.extend((key, vo) for vo in values)
    return payload


def extension_quads(subject: str, extension: list[tuple[str, Any]]) -> Dataset:
    """Turn (predicate, expanded value object) pairs into quads on subject."""
    from ..rdf.jsonld import _literal_from_value_object  # same literal typing rules

    quads = []
    for predicate, vo in extension:
        if predicate in vocab.CORE_PREDICATES:
            raise EntityValidationError(
                f"core predicate {predicate} cannot be written as extension data"
            )
        if isinstance(vo, dict) and "@value" in vo:
            obj = _literal_from_value_object(vo)
        elif isinstance(vo, dict) and "@id" in vo:
            obj = Iri(vo["@id"])
        else:
            raise EntityValidationError(
                f"extension values must be literals or IRI references, got {vo!r}"
            )
        quads.append(Quad(Iri(subject), Iri(predicate), obj))
    return Dataset(quads)


# -- quad mapping ----------------------------------------------------------


def item_to_quads(item: Item) -> Dataset:
    subject = Iri(item.iri)
    quads = [
        Quad(subject, Iri(RDF_TYPE), Iri(vocab.ITEM_TYPE)),
        Quad(subject, Iri(vocab.STEM), Literal(item.stem)),
        Quad(subject, Iri(vocab.POINTS), Literal(str(item.points), XSD_DECIMAL)),
        Quad(subject, Iri(vocab.VERSION), Literal(str(item.version), XSD_INTEGER)),
        Quad(subject, Iri(vocab.CREATED_AT), Literal(item.created_at, XSD_DATETIME)),
    ]
    if item.bloom_level:
        quads.append(Quad(subject, Iri(vocab.BLOOM_LEVEL), Iri(item.bloom_level)))
    for link in item.domain_links:
        quads.append(Quad(subject, Iri(vocab.LINKS_DOMAIN), Iri(link)))
    for link in item.outcome_links:
        quads.append(Quad(subject, Iri(vocab.ASSESSES_OUTCOME), Iri(link)))
    for answer in item.answers:
        node = Iri(item.answer_iri(answer.ordinal))
        quads += [
            Quad(subject, Iri(vocab.HAS_ANSWER), node),
            Quad(node, Iri(vocab.ANSWER_TEXT), Literal(answer.text)),
            Quad(node, Iri(vocab.IS_CORRECT),
                 Literal("true" if answer.correct else "false", XSD_BOOLEAN)),
            Quad(node, Iri(vocab.ORDINAL), Literal(str(answer.ordinal), XSD_INTEGER)),
        ]
    return Dataset(quads).union(item.extension)


def outcome_to_quads(outcome: LearningOutcome) -> Dataset:
    subject = Iri(outcome.iri)
    quads = [
        Quad(subject, Iri(RDF_TYPE), Iri(vocab.OUTCOME_TYPE)),
        Quad(subject, Iri(vocab.LABEL), Literal(outcome.label)),
        Quad(subject, Iri(vocab.VERSION), Literal(str(outcome.version), XSD_INTEGER)),
        Quad(subject, Iri(vocab.CREATED_AT), Literal(outcome.created_at, XSD_DATETIME)),
    ]
    if outcome.description is not None:
        quads.append(Quad(subject, Iri(vocab.DESCRIPTION), Literal(outcome.description)))
    for link in outcome.domain_links:
        quads.append(Quad(subject, Iri(vocab.LINKS_DOMAIN), Iri(link)))
    return Dataset(quads).union(outcome.extension)


def _literal_of(ds: Dataset, subject: str, predicate: str) -> str | None:
    for q in ds:
        if isinstance(q.subject, Iri) and q.subject.value == subject \
                and q.predicate.value == predicate and isinstance(q.object, Literal):
            return q.object.lexical
    return None


def item_from_quads(iri: str, ds: Dataset) -> Item:
    """Rebuild an item from its stored quad footprint.

    The footprint is every quad whose subject is the item IRI or one of its
    answer nodes; anything with a non-core predicate lands in extension.
    """
    answer_nodes = []
    core: list[Quad] = []
    extension: list[Quad] = []
    stem = points = bloom = version = created = None
    domain_links: set[str] = set()
    outcome_links: set[str] = set()
    for q in ds:
        if not isinstance(q.subject, Iri) or q.subject.value != iri:
            continue
        p = q.predicate.value
        if p == RDF_TYPE:
            core.append(q)
        elif p == vocab.STEM and isinstance(q.object, Literal):
            stem = q.object.lexical
        elif p == vocab.POINTS and isinstance(q.object, Literal):
            points = q.object.lexical
        elif p == vocab.BLOOM_LEVEL and isinstance(q.object, Iri):
            bloom = q.object.value
        elif p == vocab.VERSION and isinstance(q.object, Literal):
            version = q.object.lexical
        elif p == vocab.CREATED_AT and isinstance(q.object, Literal):
            created = q.object.lexical
        elif p == vocab.LINKS_DOMAIN and isinstance(q.object, Iri):
            domain_links.add(q.object.value)
        elif p == vocab.ASSESSES_OUTCOME and isinstance(q.object, Iri):
            outcome_links.add(q.object.value)
        elif p == vocab.HAS_ANSWER and isinstance(q.object, Iri):
            answer_nodes.append(q.object.value)
        elif p not in vocab.CORE_PREDICATES:
            extension.append(q)
    if stem is None:
        raise EntityValidationError(f"stored item {iri} has no stem", ["stem"])
    answers = []
    for node in answer_nodes:
        text = _literal_of(ds, node, vocab.ANSWER_TEXT)
        correct = _literal_of(ds, node, vocab.IS_CORRECT)
        ordinal = _literal_of(ds, node, vocab.ORDINAL)
        if text is None or ordinal is None:
            raise EntityValidationError(f"answer node {node} is incomplete", ["answers"])
        answers.append(Answer(text, correct == "true", int(ordinal)))
    answers.sort(key=lambda a: a.ordinal)
    return Item(
        iri=iri,
        stem=stem,
        answers=answers,
        points=Decimal(points) if points is not None else Decimal(0),
        bloom_level=bloom,
        domain_links=frozenset(domain_links),
        outcome_links=frozenset(outcome_links),
        version=int(version) if version is not None else 1,
        created_at=created or "",
        extension=Dataset(extension),
    )


def outcome_from_quads(iri: str, ds: Dataset) -> LearningOutcome:
    label = _literal_of(ds, iri, vocab.LABEL)
    if label is None:
        raise EntityValidationError(f"stored outcome {iri} has no label", ["label"])
    extension = [
        q for q in ds
        if isinstance(q.subject, Iri) and q.subject.value == iri
        and q.predicate.value not in vocab.CORE_PREDICATES
        and q.predicate.value != RDF_TYPE
    ]
    domain_links = frozenset(
        q.object.value for q in ds
        if isinstance(q.subject, Iri) and q.subject.value == iri
        and q.predicate.value == vocab.LINKS_DOMAIN and isinstance(q.object, Iri)
    )
    version = _literal_of(ds, iri, vocab.VERSION)
    return LearningOutcome(
        iri=iri,
        label=label,
        description=_literal_of(ds, iri, vocab.DESCRIPTION),
        domain_links=domain_links,
        version=int(version) if version is not None else 1,
        created_at=_literal_of(ds, iri, vocab.CREATED_AT) or "",
        extension=Dataset(extension),
    )
