"""Dataset isomorphism under blank-node relabeling."""

from __future__ import annotations

from .nquads import serialize_quad
from .terms import BlankNode, Dataset, Quad, Term


def _rename(quad: Quad, mapping: dict[str, str]) -> Quad:
    def sub(term):
        if isinstance(term, BlankNode) and term.label in mapping:
            return BlankNode(mapping[term.label])
        return term

    return Quad(sub(quad.subject), quad.predicate, sub(quad.object), quad.graph)


def _signature(label: str, quads: frozenset[Quad]) -> tuple:
    """Structural fingerprint of a blank node, independent of any labels."""
    rows = []
    for q in quads:
        s_blank = isinstance(q.subject, BlankNode)
        o_blank = isinstance(q.object, BlankNode)
        if s_blank and q.subject.label == label:
            other = "*" if o_blank else serialize_quad(q).split(" ", 2)[2]
            rows.append(("s", q.predicate.value, other, q.graph.value if q.graph else ""))
        if o_blank and isinstance(q.object, BlankNode) and q.object.label == label:
            rows.append(("o", q.predicate.value,
                         "*" if s_blank else serialize_quad(q).split(" ", 1)[0],
                         q.graph.value if q.graph else ""))
    return tuple(sorted(rows))


def isomorphic(a: Dataset, b: Dataset) -> bool:
    """True iff a blank-node bijection makes the quad sets equal."""
    if len(a) != len(b):
        return False
    a_blanks = sorted(a.blank_labels())
    b_blanks = sorted(b.blank_labels())
    if len(a_blanks) != len(b_blanks):
        return False
    if not a_blanks:
        return a.quads == b.quads

    def has_blank(q: Quad) -> bool:
        return isinstance(q.subject, BlankNode) or isinstance(q.object, BlankNode)

    a_ground = {q for q in a if not has_blank(q)}
    b_ground = {q for q in b if not has_blank(q)}
    if a_ground != b_ground:
        return False
    a_quads = a.quads - a_ground
    b_quads = b.quads - b_ground

    sig_a = {lbl: _signature(lbl, a_quads) for lbl in a_blanks}
    sig_b = {lbl: _signature(lbl, b_quads) for lbl in b_blanks}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return False
    candidates = {
        lbl: [other for other in b_blanks if sig_b[other] == sig_a[lbl]]
        for lbl in a_blanks
    }
    # most-constrained-first ordering keeps the backtracking shallow
    order = sorted(a_blanks, key=lambda lbl: len(candidates[lbl]))
    rank = {lbl: i for i, lbl in enumerate(order)}

    def quad_labels(q: Quad) -> list[str]:
        return [t.label for t in (q.subject, q.object) if isinstance(t, BlankNode)]

    # quads become checkable once their last-assigned label is placed
    ready: dict[str, list[Quad]] = {lbl: [] for lbl in order}
    for q in a_quads:
        last = max(quad_labels(q), key=lambda lbl: rank[lbl])
        ready[last].append(q)

    def backtrack(idx: int, mapping: dict[str, str], used: set[str]) -> bool:
        if idx == len(order):
            return True
        lbl = order[idx]
        for target in candidates[lbl]:
            if target in used:
                continue
            mapping[lbl] = target
            used.add(target)
            if all(_rename(q, mapping) in b_quads for q in ready[lbl]):
                if backtrack(idx + 1, mapping, used):
                    return True
            del mapping[lbl]
            used.discard(target)
        return False

    return backtrack(0, {}, set())
