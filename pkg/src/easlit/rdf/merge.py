"""Dataset append with blank-node capture avoidance."""

from __future__ import annotations

import re

from .terms import BlankNode, Dataset, Quad

_FRESH_PREFIX_RE = re.compile(r"^m(\d+)_")


def append(a: Dataset, b: Dataset) -> Dataset:
    """Union of two datasets; b's blank nodes are renamed so they can never
    collide with a's. Renaming prefix is `m{n}_` with the smallest n not
    already in use, keeping the result deterministic."""
    b_blanks = b.blank_labels()
    if not b_blanks:
        return a.union(b)
    used = {
        int(m.group(1))
        for label in a.blank_labels() | b_blanks
        for m in [_FRESH_PREFIX_RE.match(label)]
        if m
    }
    n = 0
    while n in used:
        n += 1
    prefix = f"m{n}_"

    def rename(term):
        if isinstance(term, BlankNode):
            return BlankNode(prefix + term.label)
        return term

    renamed = (
        Quad(rename(q.subject), q.predicate, rename(q.object), q.graph) for q in b
    )
    return a.union(renamed)
