"""Shared fixtures: random dataset generators and independent oracles."""

from __future__ import annotations

import itertools
import random

from easlit.rdf import (
    RDF_LANG_STRING,
    XSD_BOOLEAN,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Dataset,
    Iri,
    Literal,
    Quad,
    QuadPattern,
    Variable,
)

_DATATYPES = [XSD_STRING, XSD_INTEGER, XSD_DOUBLE, XSD_BOOLEAN, "urn:dt:custom"]
_LANGS = ["en", "de", "en-US"]


def random_literal(rng: random.Random) -> Literal:
    roll = rng.random()
    if roll < 0.2:
        return Literal(rng.choice(["hi", "a|b", 'quo"te', "line\nbreak", "\\back"]),
                       RDF_LANG_STRING, rng.choice(_LANGS))
    dt = rng.choice(_DATATYPES)
    if dt == XSD_INTEGER:
        return Literal(str(rng.randint(-100, 100)), dt)
    if dt == XSD_BOOLEAN:
        return Literal(rng.choice(["true", "false"]), dt)
    if dt == XSD_DOUBLE:
        return Literal(rng.choice(["1.5", "-0.25", "2e3"]), dt)
    return Literal(rng.choice(["", "x", "täxt", "a,b", "tab\there"]), dt)


def random_dataset(rng: random.Random, max_quads: int = 30, max_blanks: int = 8) -> Dataset:
    n_blanks = rng.randint(0, max_blanks)
    blanks = [BlankNode(f"n{i}") for i in range(n_blanks)]
    iris = [Iri(f"urn:ex:{i}") for i in range(8)]
    preds = [Iri(f"urn:p:{i}") for i in range(5)]
    graphs = [None, None, Iri("urn:g:1"), Iri("urn:g:2")]
    quads = set()
    for _ in range(rng.randint(0, max_quads)):
        subject = rng.choice(blanks + iris) if blanks else rng.choice(iris)
        roll = rng.random()
        if roll < 0.4:
            obj = random_literal(rng)
        elif roll < 0.7 and blanks:
            obj = rng.choice(blanks)
        else:
            obj = rng.choice(iris)
        quads.add(Quad(subject, rng.choice(preds), obj, rng.choice(graphs)))
    return Dataset(quads)


def random_bgp(rng: random.Random, ds: Dataset, max_patterns: int = 3) -> list[QuadPattern]:
    """Patterns biased toward terms occurring in the dataset so joins hit."""
    quads = list(ds) or [Quad(Iri("urn:ex:0"), Iri("urn:p:0"), Literal("x"))]
    var_names = ["s", "p", "o", "g", "x", "y"]
    patterns = []
    for _ in range(rng.randint(1, max_patterns)):
        q = rng.choice(quads)
        positions = list((q.subject, q.predicate, q.object, q.graph))
        for i in range(4):
            if rng.random() < 0.45:
                positions[i] = Variable(rng.choice(var_names))
        if positions[3] is None and not isinstance(positions[3], Variable):
            pass  # default graph stays concrete
        patterns.append(QuadPattern(*positions))
    return patterns


def brute_force_bgp(ds: Dataset, bgp: list[QuadPattern]) -> list[dict]:
    """Nested-loop evaluation: try every assignment of patterns to quads."""
    quads = list(ds)
    solutions = set()
    for combo in itertools.product(quads, repeat=len(bgp)):
        binding: dict = {}
        ok = True
        for pattern, quad in zip(bgp, combo):
            actuals = (quad.subject, quad.predicate, quad.object, quad.graph)
            for pat, actual in zip(pattern.positions(), actuals):
                if isinstance(pat, Variable):
                    if actual is None:  # variables never bind the default graph
                        ok = False
                        break
                    if pat.name in binding:
                        if binding[pat.name] != actual:
                            ok = False
                            break
                    else:
                        binding[pat.name] = actual
                elif pat != actual:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            solutions.add(frozenset(binding.items()))
    return [dict(sol) for sol in solutions]


def bindings_as_sets(bindings: list[dict]) -> set:
    return {frozenset(b.items()) for b in bindings}


def random_item(rng: random.Random, base: str = "https://a.example.org"):
    """A structurally valid random item for quad-mapping round trips."""
    from decimal import Decimal

    from easlit.items import Answer, Item

    iri = f"{base}/items/{rng.randrange(10**9)}"
    n_answers = rng.randint(1, 4)
    answers = [
        Answer(rng.choice(["4", "a|b", "tr,ue", 'say "hi"', "täxt"]),
               rng.random() < 0.5, i)
        for i in range(n_answers)
    ]
    from easlit import vocab
    extension = Dataset(
        Quad(Iri(iri), Iri(f"urn:ext:{i}"), Literal(f"v{rng.randrange(100)}"))
        for i in range(rng.randint(0, 3))
    )
    return Item(
        iri=iri,
        stem=rng.choice(["2+2=?", "Define the term RDF.", "Compare A and B"]),
        answers=answers,
        points=Decimal(rng.choice(["0", "1", "2.5", "10"])),
        bloom_level=rng.choice([None] + list(vocab.BLOOM_IRIS.values())),
        domain_links=frozenset(f"urn:d:{rng.randrange(5)}" for _ in range(rng.randint(0, 2))),
        outcome_links=frozenset(),
        version=rng.randint(1, 5),
        created_at="2026-01-01T00:00:00Z",
        extension=extension,
    )
